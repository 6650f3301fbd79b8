#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ghw {

enum class ErrorKind {
  OrderCapExceeded,
  InvalidTable,
  BadPermutation,
  MethodMismatch,
  NotASubset,
  IntegerOverflow,
  BudgetExceeded,
  UnknownOrder,
  UnsupportedIndexZero,
  BadDegree,
  NotInCore,
  NotNormal,
  NoWitness,
  NotAHomomorphism,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::BadPermutation: return "BadPermutation";
    case ErrorKind::MethodMismatch: return "MethodMismatch";
    case ErrorKind::NotASubset: return "NotASubset";
    case ErrorKind::IntegerOverflow: return "IntegerOverflow";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::UnknownOrder: return "UnknownOrder";
    case ErrorKind::UnsupportedIndexZero: return "UnsupportedIndexZero";
    case ErrorKind::BadDegree: return "BadDegree";
    case ErrorKind::NotInCore: return "NotInCore";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, std::size_t column, std::string const& msg)
      : Error(ErrorKind::ParseError,
              source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        source_(std::move(source)),
        line_(line),
        column_(column) {}

  std::string const& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string source_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace ghw
