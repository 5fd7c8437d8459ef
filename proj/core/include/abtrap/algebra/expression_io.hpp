#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "abtrap/algebra/rational_function.hpp"

namespace abtrap::algebra {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Parses the infix grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' ['-'] integer)?
///   primary := number | identifier | '(' expr ')'
///
/// Numbers may be written as integers or decimals with an optional exponent;
/// they are converted exactly.
RationalFunction parse_expression(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const Polynomial& p);
/// Deterministic serialization that parse_expression reads back exactly.
std::string to_string(const RationalFunction& f);

}  // namespace abtrap::algebra
