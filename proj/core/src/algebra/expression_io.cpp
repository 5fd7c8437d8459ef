#include "abtrap/algebra/expression_io.hpp"

#include <cctype>
#include <limits>

namespace abtrap::algebra {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RationalFunction parse() {
    RationalFunction value = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return value;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction value = term();
    while (true) {
      if (accept('+')) value += term();
      else if (accept('-')) value -= term();
      else return value;
    }
  }

  RationalFunction term() {
    RationalFunction value = unary();
    while (true) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RationalFunction d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        value /= d;
      } else {
        return value;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    if (!negative) accept('+');
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", start);
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    const int e = std::stoi(digits);
    if (negative && base.is_zero()) throw ParseError("negative power of zero", start);
    return base.pow(negative ? -e : e);
  }

  RationalFunction primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
        ++pos_;
      }
      return RationalFunction(Symbol(std::string(text_.substr(start, pos_ - start))));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  RationalFunction number() {
    const std::size_t start = pos_;
    std::string mantissa;
    std::size_t frac_digits = 0;
    bool seen_point = false;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
        mantissa.push_back(c);
        if (seen_point) ++frac_digits;
      } else if (c == '.' && !seen_point) {
        seen_point = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (mantissa.empty()) throw ParseError("malformed number", start);
    long exponent = 0;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      bool neg = false;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) neg = text_[p++] == '-';
      const std::size_t digits_start = p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p])) != 0) ++p;
      if (p == digits_start || p - digits_start > 4) throw ParseError("malformed exponent", pos_);
      exponent = std::stol(std::string(text_.substr(digits_start, p - digits_start)));
      if (neg) exponent = -exponent;
      pos_ = p;
    }
    exponent -= static_cast<long>(frac_digits);
    mpz_class value(mantissa, 10);
    mpz_class scale = 1;
    for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) scale *= 10;
    Rational q = exponent >= 0 ? Rational(value * scale) : Rational(value, scale);
    q.canonicalize();
    return RationalFunction(q);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string monomial_string(const Monomial& m) {
  std::string out;
  for (const auto& [sym, e] : m.factors()) {
    if (!out.empty()) out += '*';
    out += sym.name();
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

}  // namespace

RationalFunction parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [mono, coeff] = *it;
    const bool negative = sgn(coeff) < 0;
    const Rational magnitude = abs(coeff);
    std::string body;
    if (mono.is_one()) {
      body = to_string(magnitude);
    } else if (magnitude == 1) {
      body = monomial_string(mono);
    } else {
      body = to_string(magnitude) + "*" + monomial_string(mono);
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::string to_string(const RationalFunction& f) {
  if (f.is_polynomial()) return to_string(f.numerator());
  return "(" + to_string(f.numerator()) + ")/(" + to_string(f.denominator()) + ")";
}

}  // namespace abtrap::algebra
