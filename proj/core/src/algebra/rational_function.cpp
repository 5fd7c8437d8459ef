#include "abtrap/algebra/rational_function.hpp"

#include <algorithm>
#include <stdexcept>

namespace abtrap::algebra {

RationalFunction::RationalFunction(long value) : num_(value), den_(1L) {}

RationalFunction::RationalFunction(const Rational& value) : num_(value), den_(1L) {}

RationalFunction::RationalFunction(const Polynomial& p) : num_(p), den_(1L) {}

RationalFunction::RationalFunction(const Symbol& s) : num_(s), den_(1L) {}

RationalFunction::RationalFunction(const std::string& symbol_name)
    : RationalFunction(Symbol(symbol_name)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1L);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = Polynomial::gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *Polynomial::divide_exact(num_, g);
      den_ = *Polynomial::divide_exact(den_, g);
    }
  }
  rescale();
}

void RationalFunction::rescale() {
  const Rational scale = Rational(1) / den_.leading_coefficient();
  num_ *= scale;
  den_ *= scale;
}

Rational RationalFunction::constant_value() const {
  if (!is_constant()) throw std::logic_error("rational function is not constant");
  return num_.constant_value() / den_.constant_value();
}

std::vector<Symbol> RationalFunction::symbols() const {
  auto out = num_.symbols();
  const auto more = den_.symbols();
  out.insert(out.end(), more.begin(), more.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RationalFunction RationalFunction::derivative(const Symbol& s) const {
  if (!contains(s)) return RationalFunction{};
  if (!den_.contains(s)) return RationalFunction(num_.derivative(s), den_);
  return RationalFunction(num_.derivative(s) * den_ - num_ * den_.derivative(s), den_ * den_);
}

RationalFunction RationalFunction::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFunction out;
  out.num_ = num_.pow(static_cast<std::uint32_t>(e));
  out.den_ = den_.pow(static_cast<std::uint32_t>(e));
  out.rescale();
  return out;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of the zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction out = *this;
  out.num_ = -out.num_;
  return out;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  // gcd(num, den) of the sum divides gcd(den_, o.den_)
  const Polynomial g = Polynomial::gcd(den_, o.den_);
  const Polynomial d1 = *Polynomial::divide_exact(den_, g);
  const Polynomial d2 = *Polynomial::divide_exact(o.den_, g);
  num_ = num_ * d2 + o.num_ * d1;
  den_ = den_ * d2;
  if (num_.is_zero()) return *this = RationalFunction{};
  if (!g.is_constant()) {
    const Polynomial h = Polynomial::gcd(num_, g);
    if (!h.is_constant()) {
      num_ = *Polynomial::divide_exact(num_, h);
      den_ = *Polynomial::divide_exact(den_, h);
    }
  }
  rescale();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunction{};
  const Polynomial g1 = Polynomial::gcd(num_, o.den_);
  const Polynomial g2 = Polynomial::gcd(o.num_, den_);
  const Polynomial a = g1.is_constant() ? num_ : *Polynomial::divide_exact(num_, g1);
  const Polynomial d = g1.is_constant() ? o.den_ : *Polynomial::divide_exact(o.den_, g1);
  const Polynomial c = g2.is_constant() ? o.num_ : *Polynomial::divide_exact(o.num_, g2);
  const Polynomial b = g2.is_constant() ? den_ : *Polynomial::divide_exact(den_, g2);
  num_ = a * c;
  den_ = b * d;
  rescale();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) { return *this *= o.inverse(); }

}  // namespace abtrap::algebra
