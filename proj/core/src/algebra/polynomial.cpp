#include "abtrap/algebra/polynomial.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iterator>
#include <map>
#include <random>
#include <stdexcept>

namespace abtrap::algebra {

namespace {

constexpr std::array<const char*, 4> kPhaseNames = {"x1", "x2", "p1", "p2"};

int phase_index_of(const std::string& name) noexcept {
  for (int i = 0; i < static_cast<int>(kPhaseNames.size()); ++i) {
    if (name == kPhaseNames[static_cast<std::size_t>(i)]) return i;
  }
  return -1;
}

}  // namespace

bool is_valid_identifier(const std::string& text) noexcept {
  if (text.empty()) return false;
  const auto first = static_cast<unsigned char>(text.front());
  if (!(std::isalpha(first) || first == '_')) return false;
  return std::all_of(text.begin(), text.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_';
  });
}

Symbol::Symbol(std::string name) : name_(std::move(name)), phase_index_(phase_index_of(name_)) {
  if (!is_valid_identifier(name_)) {
    throw std::invalid_argument("invalid symbol name '" + name_ + "'");
  }
}

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) noexcept {
  const bool pa = a.is_phase_variable();
  const bool pb = b.is_phase_variable();
  if (pa && pb) return a.phase_index_ <=> b.phase_index_;
  if (pa != pb) return pa ? std::strong_ordering::less : std::strong_ordering::greater;
  const int c = a.name_.compare(b.name_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(const Symbol& s, std::uint32_t exponent) {
  if (exponent != 0) factors_.emplace_back(s, exponent);
}

std::uint32_t Monomial::degree(const Symbol& s) const noexcept {
  for (const auto& [sym, e] : factors_) {
    if (sym == s) return e;
  }
  return 0;
}

std::uint32_t Monomial::total_degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::without(const Symbol& s) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (!(f.first == s)) out.factors_.push_back(f);
  }
  return out;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (const auto& [sym, e] : factors_) {
    if (other.degree(sym) < e) return false;
  }
  return true;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial out;
  for (const auto& [sym, e] : other.factors_) {
    const std::uint32_t mine = degree(sym);
    if (mine > e) throw std::logic_error("monomial does not divide");
    if (e > mine) out.factors_.emplace_back(sym, e - mine);
  }
  return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      out.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      out.factors_.push_back(*ib++);
    } else {
      out.factors_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (true) {
    const bool ea = ia == a.factors_.end();
    const bool eb = ib == b.factors_.end();
    if (ea && eb) return std::strong_ordering::equal;
    // A symbol present in only one monomial makes that monomial larger.
    if (eb || (!ea && ia->first < ib->first)) return std::strong_ordering::greater;
    if (ea || ib->first < ia->first) return std::strong_ordering::less;
    if (ia->second != ib->second) return ia->second <=> ib->second;
    ++ia;
    ++ib;
  }
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial out;
  for (const auto& [sym, e] : a.factors_) {
    const std::uint32_t other = b.degree(sym);
    const std::uint32_t m = std::min(e, other);
    if (m != 0) out.factors_.emplace_back(sym, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(long value) : Polynomial(Rational(value)) {}

Polynomial::Polynomial(const Rational& value) {
  if (value != 0) terms_.emplace(Monomial{}, value);
}

Polynomial::Polynomial(const Symbol& s) { terms_.emplace(Monomial{s}, Rational(1)); }

Polynomial::Polynomial(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.emplace(m, c);
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Polynomial::degree(const Symbol& s) const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.degree(s));
  return d;
}

std::uint32_t Polynomial::total_degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.first.total_degree());
  return d;
}

std::vector<Symbol> Polynomial::symbols() const {
  std::vector<Symbol> out;
  for (const auto& t : terms_) {
    for (const auto& f : t.first.factors()) out.push_back(f.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polynomial Polynomial::coefficient(const Symbol& s, std::uint32_t k) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.degree(s) == k) out.terms_.emplace(m.without(s), c);
  }
  return out;
}

Polynomial Polynomial::derivative(const Symbol& s) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    const std::uint32_t e = m.degree(s);
    if (e == 0) continue;
    Monomial reduced = m.without(s) * Monomial(s, e - 1);
    out.add_term(reduced, c * e);
  }
  return out;
}

Polynomial Polynomial::pow(std::uint32_t e) const {
  Polynomial result(1L);
  Polynomial base = *this;
  while (e != 0) {
    if ((e & 1U) != 0) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  return result;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  out *= Rational(1) / leading_coefficient();
  return out;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Polynomial quotient;
  Polynomial rest = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial& lr = rest.leading_monomial();
    if (!lb.divides(lr)) return std::nullopt;
    const Polynomial step(lb.quotient_of(lr), rest.leading_coefficient() / cb);
    quotient += step;
    rest -= step * b;
  }
  return quotient;
}

Polynomial Polynomial::pseudo_remainder(const Polynomial& a, const Polynomial& b, const Symbol& s) {
  const std::uint32_t db = b.degree(s);
  const Polynomial lead_b = b.coefficient(s, db);
  Polynomial rest = a;
  while (!rest.is_zero() && rest.degree(s) >= db) {
    const std::uint32_t dr = rest.degree(s);
    const Polynomial lead_r = rest.coefficient(s, dr);
    rest = lead_b * rest - lead_r * Polynomial(Monomial(s, dr - db), Rational(1)) * b;
  }
  return rest;
}

namespace {

Polynomial content_in(const Polynomial& p, const Symbol& s) {
  Polynomial c;
  const std::uint32_t d = p.degree(s);
  for (std::uint32_t k = 0; k <= d; ++k) {
    const Polynomial coeff = p.coefficient(s, k);
    if (coeff.is_zero()) continue;
    c = Polynomial::gcd(c, coeff);
    if (c.is_constant()) break;
  }
  return c;
}

Polynomial primitive_in(const Polynomial& p, const Symbol& s) {
  const Polynomial c = content_in(p, s);
  auto q = Polynomial::divide_exact(p, c);
  if (!q) throw std::logic_error("content does not divide polynomial");
  return q->monic();
}

Polynomial monomial_gcd(const Monomial& m, const Polynomial& p) {
  Monomial g = m;
  for (const auto& t : p.terms()) {
    g = Monomial::gcd(g, t.first);
    if (g.is_one()) break;
  }
  return Polynomial(g, Rational(1));
}

}  // namespace

namespace {

// Images modulo the Mersenne prime 2^61 - 1.
using Residue = std::uint64_t;
using Univariate = std::vector<Residue>;
constexpr Residue kPrime = (Residue{1} << 61) - 1;

Residue mul_mod(Residue a, Residue b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  Residue r = static_cast<Residue>(prod & kPrime) + static_cast<Residue>(prod >> 61);
  if (r >= kPrime) r -= kPrime;
  return r;
}

Residue add_mod(Residue a, Residue b) {
  Residue r = a + b;
  if (r >= kPrime) r -= kPrime;
  return r;
}

Residue sub_mod(Residue a, Residue b) { return a >= b ? a - b : a + kPrime - b; }

Residue pow_mod(Residue a, Residue e) {
  Residue out = 1;
  while (e != 0) {
    if ((e & 1) != 0) out = mul_mod(out, a);
    a = mul_mod(a, a);
    e >>= 1;
  }
  return out;
}

Residue inv_mod(Residue a) { return pow_mod(a, kPrime - 2); }

std::optional<Residue> reduce_mod(const Rational& q) {
  static const mpz_class prime(std::to_string(kPrime));
  const mpz_class n = ((q.get_num() % prime) + prime) % prime;
  const mpz_class d = ((q.get_den() % prime) + prime) % prime;
  if (d == 0) return std::nullopt;
  return mul_mod(static_cast<Residue>(n.get_ui()), inv_mod(static_cast<Residue>(d.get_ui())));
}

void trim(Univariate& u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
}

/// p with every symbol except v replaced by its value at `point`, mod p.
std::optional<Univariate> image(const Polynomial& p, const Symbol& v, const std::map<Symbol, Residue>& point) {
  Univariate out(p.degree(v) + 1, 0);
  for (const auto& [mono, coeff] : p.terms()) {
    const auto c = reduce_mod(coeff);
    if (!c) return std::nullopt;
    Residue term = *c;
    std::uint32_t dv = 0;
    for (const auto& [sym, e] : mono.factors()) {
      if (sym == v) dv = e;
      else term = mul_mod(term, pow_mod(point.at(sym), e));
    }
    out[dv] = add_mod(out[dv], term);
  }
  trim(out);
  return out;
}

std::size_t univariate_gcd_degree(Univariate a, Univariate b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    const Residue inv_lead = inv_mod(b.back());
    while (a.size() >= b.size()) {
      const Residue factor = mul_mod(a.back(), inv_lead);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = sub_mod(a[shift + i], mul_mod(factor, b[i]));
      a.pop_back();
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

/// Upper bound on deg_v gcd(a, b) from univariate images at points where
/// neither leading coefficient in v vanishes.
std::uint32_t gcd_degree_bound(const Polynomial& a, const Polynomial& b, const Symbol& v,
                               const std::vector<Symbol>& symbols) {
  const std::uint32_t da = a.degree(v);
  const std::uint32_t db = b.degree(v);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(da) * 131 + db);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::map<Symbol, Residue> point;
    for (const auto& s : symbols) {
      if (s != v) point.emplace(s, 2 + rng() % (kPrime - 3));
    }
    const auto ia = image(a, v, point);
    const auto ib = image(b, v, point);
    if (!ia || !ib || ia->size() != da + 1 || ib->size() != db + 1) continue;
    return static_cast<std::uint32_t>(univariate_gcd_degree(*ia, *ib));
  }
  return std::min(da, db);
}

/// Partial evaluation at exact values.
Polynomial evaluate_at(const Polynomial& p, const std::map<Symbol, Rational>& values) {
  Polynomial out;
  for (const auto& [mono, coeff] : p.terms()) {
    Rational c = coeff;
    Monomial rest;
    for (const auto& [sym, e] : mono.factors()) {
      const auto it = values.find(sym);
      if (it == values.end()) {
        rest = rest * Monomial(sym, e);
        continue;
      }
      for (std::uint32_t k = 0; k < e; ++k) c *= it->second;
    }
    out += Polynomial(rest, c);
  }
  return out;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1L);
  if (a.is_monomial()) return monomial_gcd(a.leading_monomial(), b);
  if (b.is_monomial()) return monomial_gcd(b.leading_monomial(), a);
  if (a.monic() == b.monic()) return a.monic();

  const auto sa = a.symbols();
  const auto sb = b.symbols();
  std::vector<Symbol> all;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(all));
  std::vector<Symbol> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));

  std::map<Symbol, std::uint32_t> bound;
  for (const auto& s : common) {
    const std::uint32_t d = gcd_degree_bound(a, b, s, all);
    if (d > 0) bound.emplace(s, d);
  }
  if (bound.empty()) return Polynomial(1L);

  const auto attains = [&](const Polynomial& p, const std::vector<Symbol>& syms) {
    for (const auto& s : syms) {
      const auto it = bound.find(s);
      if (it == bound.end() || it->second != p.degree(s)) return false;
    }
    return true;
  };
  if (attains(b, sb)) {
    if (divide_exact(a, b)) return b.monic();
  }
  if (attains(a, sa)) {
    if (divide_exact(b, a)) return a.monic();
  }

  // Symbols absent from the gcd can be fixed at integers; a candidate that
  // divides both inputs is then the gcd.
  std::vector<Symbol> absent;
  for (const auto& s : all) {
    if (bound.count(s) == 0) absent.push_back(s);
  }
  if (!absent.empty()) {
    std::mt19937_64 rng(0x2545f4914f6cdd1dULL + all.size());
    for (int attempt = 0; attempt < 2; ++attempt) {
      std::map<Symbol, Rational> values;
      for (const auto& s : absent) values.emplace(s, Rational(static_cast<long>(2 + rng() % 997)));
      const Polynomial ea = evaluate_at(a, values);
      const Polynomial eb = evaluate_at(b, values);
      if (ea.is_zero() || eb.is_zero()) continue;
      const Polynomial candidate = gcd(ea, eb);
      if (divide_exact(a, candidate) && divide_exact(b, candidate)) return candidate.monic();
    }
  }

  Symbol v = bound.begin()->first;
  for (const auto& [s, d] : bound) {
    if (std::max(a.degree(s), b.degree(s)) < std::max(a.degree(v), b.degree(v))) v = s;
  }

  const Polynomial ca = content_in(a, v);
  const Polynomial cb = content_in(b, v);
  Polynomial pa = *divide_exact(a, ca);
  Polynomial pb = *divide_exact(b, cb);
  const Polynomial c = gcd(ca, cb);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    pb = r.is_zero() ? std::move(r) : primitive_in(r, v);
  }
  return (c * primitive_in(pa, v)).monic();
}

}  // namespace abtrap::algebra
