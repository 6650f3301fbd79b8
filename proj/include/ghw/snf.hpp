#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "ghw/numeric.hpp"

namespace ghw {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Nonzero invariant factors d1 | d2 | ... | dr (all positive) of an integer
/// matrix, by Smith normal form reduction with smallest-absolute-value
/// pivoting. All arithmetic is overflow-checked and throws IntegerOverflow
/// rather than wrapping. Rows may be ragged only if empty; every nonempty row
/// must have `cols` entries.
inline std::vector<std::int64_t> smith_invariant_factors(IntMatrix m, std::size_t cols) {
  std::size_t const rows = m.size();
  for (auto& r : m) r.resize(cols, 0);
  std::vector<std::int64_t> diag;
  std::size_t t = 0;
  auto abs_checked = [](std::int64_t v) { return v < 0 ? checked_neg(v) : v; };

  while (t < rows && t < cols) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t pi = rows, pj = cols;
      std::int64_t best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && (best == 0 || abs_checked(m[i][j]) < best)) {
            best = abs_checked(m[i][j]);
            pi = i;
            pj = j;
          }
      if (best == 0) return diag;
      std::swap(m[t], m[pi]);
      if (pj != t)
        for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pj]);

      std::int64_t const p = m[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        std::int64_t q = m[i][t] / p;
        for (std::size_t j = t; j < cols; ++j) m[i][j] = checked_sub(m[i][j], checked_mul(q, m[t][j]));
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        std::int64_t q = m[t][j] / p;
        for (std::size_t i = t; i < rows; ++i) m[i][j] = checked_sub(m[i][j], checked_mul(q, m[i][t]));
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // The pivot must divide the whole trailing block; otherwise fold the
      // offending row into row t and reduce again.
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % p != 0) {
            for (std::size_t k = t; k < cols; ++k) m[t][k] = checked_add(m[t][k], m[i][k]);
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    diag.push_back(abs_checked(m[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace ghw
