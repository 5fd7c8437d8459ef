#include "abtrap/algebra/phase_space.hpp"

#include <algorithm>

namespace abtrap::algebra {

const Symbol& x1() {
  static const Symbol s("x1");
  return s;
}
const Symbol& x2() {
  static const Symbol s("x2");
  return s;
}
const Symbol& p1() {
  static const Symbol s("p1");
  return s;
}
const Symbol& p2() {
  static const Symbol s("p2");
  return s;
}

const std::array<Symbol, 2>& coordinates() {
  static const std::array<Symbol, 2> xs{x1(), x2()};
  return xs;
}

const std::array<Symbol, 2>& momenta() {
  static const std::array<Symbol, 2> ps{p1(), p2()};
  return ps;
}

RationalFunction var(const std::string& name) { return RationalFunction(Symbol(name)); }

RationalFunction poisson_bracket(const RationalFunction& f, const RationalFunction& g) {
  RationalFunction out;
  for (std::size_t i = 0; i < 2; ++i) {
    const Symbol& x = coordinates()[i];
    const Symbol& p = momenta()[i];
    out += f.derivative(x) * g.derivative(p) - f.derivative(p) * g.derivative(x);
  }
  return out;
}

namespace {

// Substitutes into a polynomial, returning numerator and denominator over a
// common denominator built from the maximal power of each binding's
// denominator.
std::pair<Polynomial, Polynomial> substitute_polynomial(const Polynomial& p, const Bindings& bindings) {
  std::map<Symbol, std::uint32_t> max_power;
  for (const auto& [sym, value] : bindings) {
    if (!value.is_polynomial()) max_power[sym] = p.degree(sym);
  }
  Polynomial den(1L);
  for (const auto& [sym, e] : max_power) den *= bindings.at(sym).denominator().pow(e);

  Polynomial num;
  for (const auto& [mono, coeff] : p.terms()) {
    Polynomial term(Monomial{}, coeff);
    for (const auto& [sym, e] : mono.factors()) {
      const auto it = bindings.find(sym);
      if (it == bindings.end()) {
        term *= Polynomial(Monomial(sym, e), Rational(1));
        continue;
      }
      const RationalFunction& value = it->second;
      term *= value.numerator().pow(e);
      const auto mp = max_power.find(sym);
      if (mp != max_power.end()) term *= value.denominator().pow(mp->second - e);
      else term *= Polynomial(Rational(1) / value.denominator().constant_value()).pow(e);
    }
    // Symbols bound to non-polynomials but absent from this monomial still
    // need their full denominator power.
    for (const auto& [sym, emax] : max_power) {
      if (mono.degree(sym) == 0) term *= bindings.at(sym).denominator().pow(emax);
    }
    num += term;
  }
  return {num, den};
}

}  // namespace

RationalFunction substitute(const RationalFunction& f, const Bindings& bindings) {
  if (bindings.empty()) return f;
  const auto [nn, nd] = substitute_polynomial(f.numerator(), bindings);
  const auto [dn, dd] = substitute_polynomial(f.denominator(), bindings);
  if (dn.is_zero()) throw SubstitutionError("substitution makes the denominator identically zero");
  return RationalFunction(nn * dd, nd * dn);
}

namespace {

Rational evaluate_polynomial(const Polynomial& p, const NumericPoint& point) {
  Rational total = 0;
  for (const auto& [mono, coeff] : p.terms()) {
    Rational term = coeff;
    for (const auto& [sym, e] : mono.factors()) {
      const auto it = point.find(sym);
      if (it == point.end()) throw EvaluationError("symbol '" + sym.name() + "' is not bound");
      Rational power = 1;
      for (std::uint32_t k = 0; k < e; ++k) power *= it->second;
      term *= power;
    }
    total += term;
  }
  return total;
}

}  // namespace

Rational evaluate(const RationalFunction& f, const NumericPoint& point) {
  const Rational den = evaluate_polynomial(f.denominator(), point);
  if (den == 0) throw EvaluationError("denominator vanishes at the evaluation point");
  return evaluate_polynomial(f.numerator(), point) / den;
}

Assumptions Assumptions::physical() {
  return Assumptions({param::mu, param::omega_c, param::omega_P, param::a, param::omega_0, param::alpha});
}

Sign sign_under(const Polynomial& p, const Assumptions& assumptions) {
  if (p.is_zero()) return Sign::zero;
  int sign = 0;
  bool strict = false;
  for (const auto& [mono, coeff] : p.terms()) {
    const int s = sgn(coeff);
    if (sign == 0) sign = s;
    if (s != sign) return Sign::indeterminate;
    bool term_strict = true;
    for (const auto& [sym, e] : mono.factors()) {
      if (assumptions.is_positive(sym)) continue;
      if (e % 2 == 1) return Sign::indeterminate;
      term_strict = false;
    }
    strict = strict || term_strict;
  }
  if (!strict) return Sign::indeterminate;
  return sign > 0 ? Sign::positive : Sign::negative;
}

Sign sign_under(const RationalFunction& f, const Assumptions& assumptions) {
  const Sign n = sign_under(f.numerator(), assumptions);
  if (n == Sign::zero || n == Sign::indeterminate) return n;
  const Sign d = sign_under(f.denominator(), assumptions);
  if (d == Sign::indeterminate || d == Sign::zero) return Sign::indeterminate;
  return (n == d) ? Sign::positive : Sign::negative;
}

}  // namespace abtrap::algebra
