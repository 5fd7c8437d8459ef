#pragma once

#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "abtrap/algebra/rational_function.hpp"

namespace abtrap::algebra {

// Phase-space coordinates.
const Symbol& x1();
const Symbol& x2();
const Symbol& p1();
const Symbol& p2();
const std::array<Symbol, 2>& coordinates();
const std::array<Symbol, 2>& momenta();

/// Named trap parameters used throughout the symbolic layer.
namespace param {
inline constexpr const char* mu = "mu";
inline constexpr const char* omega_c = "omega_c";
inline constexpr const char* omega_0 = "omega_0";
inline constexpr const char* omega_P = "omega_P";
inline constexpr const char* a = "a";
inline constexpr const char* alpha = "alpha";
}  // namespace param

RationalFunction var(const std::string& name);

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SubstitutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical Poisson bracket  sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i).
RationalFunction poisson_bracket(const RationalFunction& f, const RationalFunction& g);

using Bindings = std::map<Symbol, RationalFunction>;

/// Simultaneous substitution of symbols (phase variables or parameters).
/// Throws SubstitutionError if the denominator becomes identically zero.
RationalFunction substitute(const RationalFunction& f, const Bindings& bindings);

using NumericPoint = std::map<Symbol, Rational>;

/// Exact value at a point.  Throws EvaluationError for unbound symbols or a
/// vanishing denominator.
Rational evaluate(const RationalFunction& f, const NumericPoint& point);

/// Which symbols are declared strictly positive.
class Assumptions {
 public:
  Assumptions() = default;
  explicit Assumptions(std::set<std::string> positive) : positive_(std::move(positive)) {}

  /// mu, omega_c, omega_P, a, plus omega_0 and alpha.
  static Assumptions physical();

  bool is_positive(const Symbol& s) const { return positive_.count(s.name()) != 0; }
  void declare_positive(const std::string& name) { positive_.insert(name); }
  const std::set<std::string>& positive() const noexcept { return positive_; }

 private:
  std::set<std::string> positive_;
};

enum class Sign { negative, zero, positive, indeterminate };

/// Sign decided from term structure alone: every term must have the same
/// coefficient sign and consist of positive symbols or even powers, with at
/// least one strictly positive term.  Anything else is indeterminate.
Sign sign_under(const Polynomial& p, const Assumptions& assumptions);
Sign sign_under(const RationalFunction& f, const Assumptions& assumptions);

}  // namespace abtrap::algebra
