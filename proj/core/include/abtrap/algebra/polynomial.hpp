#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace abtrap::algebra {

using Rational = mpq_class;

/// A named indeterminate.  Phase-space coordinates x1, x2, p1, p2 sort first
/// (in that order); every other symbol sorts after them by name.
class Symbol {
 public:
  explicit Symbol(std::string name);

  const std::string& name() const noexcept { return name_; }
  int phase_index() const noexcept { return phase_index_; }
  bool is_phase_variable() const noexcept { return phase_index_ >= 0; }

  friend bool operator==(const Symbol& a, const Symbol& b) noexcept {
    return a.name_ == b.name_;
  }
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) noexcept;

 private:
  std::string name_;
  int phase_index_ = -1;
};

bool is_valid_identifier(const std::string& text) noexcept;

/// Power product of symbols, stored sparse and sorted by symbol order.
class Monomial {
 public:
  using Factor = std::pair<Symbol, std::uint32_t>;

  Monomial() = default;
  explicit Monomial(const Symbol& s, std::uint32_t exponent = 1);

  const std::vector<Factor>& factors() const noexcept { return factors_; }
  bool is_one() const noexcept { return factors_.empty(); }
  std::uint32_t degree(const Symbol& s) const noexcept;
  std::uint32_t total_degree() const noexcept;
  bool contains(const Symbol& s) const noexcept { return degree(s) != 0; }

  /// Copy with `s` removed.
  Monomial without(const Symbol& s) const;
  bool divides(const Monomial& other) const noexcept;
  /// Requires divides(other); returns other / *this.
  Monomial quotient_of(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) noexcept = default;
  /// Pure lexicographic order induced by symbol order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept;

  static Monomial gcd(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  Polynomial(long value);  // NOLINT(google-explicit-constructor)
  Polynomial(const Rational& value);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const Symbol& s);
  Polynomial(const Monomial& m, const Rational& c);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  /// Constant term value; only meaningful when is_constant().
  Rational constant_value() const;

  /// Largest term under lex order; requires !is_zero().
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }

  std::uint32_t degree(const Symbol& s) const noexcept;
  std::uint32_t total_degree() const noexcept;
  bool contains(const Symbol& s) const noexcept { return degree(s) != 0; }
  /// Sorted list of symbols that occur.
  std::vector<Symbol> symbols() const;
  /// Coefficient of s^k viewed as a polynomial in s.
  Polynomial coefficient(const Symbol& s, std::uint32_t k) const;

  Polynomial derivative(const Symbol& s) const;
  Polynomial pow(std::uint32_t e) const;
  Polynomial operator-() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Exact quotient a / b, or nullopt when b does not divide a.
  static std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);
  /// Monic greatest common divisor (leading coefficient 1); gcd(0, 0) = 0.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);
  /// Pseudo-remainder of a by b with respect to s.
  static Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, const Symbol& s);

  /// Divide by the leading coefficient.  Zero stays zero.
  Polynomial monic() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  Terms terms_;
};

}  // namespace abtrap::algebra
