#pragma once

#include <map>
#include <string>
#include <vector>

#include "abtrap/algebra/polynomial.hpp"

namespace abtrap::algebra {

/// Exact rational function over Q in phase-space coordinates and parameters.
///
/// Always held in canonical form: numerator and denominator are coprime and
/// the denominator's leading coefficient (lex order) is 1, so two values are
/// mathematically equal exactly when they compare equal.  Zero is 0/1.
class RationalFunction {
 public:
  RationalFunction() : den_(1L) {}
  RationalFunction(long value);  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& value);  // NOLINT(google-explicit-constructor)
  RationalFunction(const Polynomial& p);  // NOLINT(google-explicit-constructor)
  explicit RationalFunction(const Symbol& s);
  explicit RationalFunction(const std::string& symbol_name);
  /// Throws std::domain_error when den is the zero polynomial.
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.is_constant(); }
  bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;
  bool contains(const Symbol& s) const noexcept { return num_.contains(s) || den_.contains(s); }
  std::vector<Symbol> symbols() const;

  RationalFunction derivative(const Symbol& s) const;
  RationalFunction pow(int e) const;
  RationalFunction inverse() const;
  RationalFunction operator-() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  void rescale();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace abtrap::algebra
