#include "tgerm/polynomial.hpp"

#include <cctype>
#include <vector>

namespace tgerm {

const std::array<std::string, kPolyVars>& poly_var_names() {
  static const std::array<std::string, kPolyVars> names = {"x", "y", "z", "t", "u", "v"};
  return names;
}

int poly_var_index(char name) {
  switch (name) {
    case 'x':
      return 0;
    case 'y':
      return 1;
    case 'z':
      return 2;
    case 't':
      return 3;
    case 'u':
      return 4;
    case 'v':
      return 5;
    default:
      return -1;
  }
}

Poly Poly::constant(const Cyclotomic& c) {
  Poly p;
  p.add_term(Exponents{}, c);
  return p;
}

Poly Poly::variable(int index) {
  if (index < 0 || index >= kPolyVars) throw std::out_of_range("Poly::variable: index out of range");
  Exponents e{};
  e[static_cast<std::size_t>(index)] = 1;
  return monomial(e, Cyclotomic(1, Rational(1)));
}

Poly Poly::monomial(const Exponents& e, const Cyclotomic& c) {
  Poly p;
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Exponents& e, const Cyclotomic& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Cyclotomic Poly::constant_term() const {
  auto it = terms_.find(Exponents{});
  return it == terms_.end() ? Cyclotomic() : it->second;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      out.add_term(e, c1 * c2);
    }
  return out;
}

Poly Poly::scaled(const Cyclotomic& c) const {
  Poly out;
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw std::invalid_argument("Poly::pow: negative exponent");
  Poly result = constant(Cyclotomic(1, Rational(1)));
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

Poly Poly::substitute(const std::array<Poly, kPolyVars>& images) const {
  std::array<std::vector<Poly>, kPolyVars> powers;
  auto power_of = [&](std::size_t var, int k) -> const Poly& {
    auto& cache = powers[var];
    if (cache.empty()) cache.push_back(constant(Cyclotomic(1, Rational(1))));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[var]);
    return cache[static_cast<std::size_t>(k)];
  };
  Poly out;
  for (const auto& [e, c] : terms_) {
    Poly term = constant(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * power_of(i, e[i]);
    out += term;
  }
  return out;
}

Poly Poly::with_zero(std::initializer_list<int> vars) const {
  Poly out;
  for (const auto& [e, c] : terms_) {
    bool keep = true;
    for (int v : vars)
      if (e[static_cast<std::size_t>(v)] > 0) keep = false;
    if (keep) out.terms_.emplace(e, c);
  }
  return out;
}

Poly Poly::derivative(int var) const {
  Poly out;
  const auto v = static_cast<std::size_t>(var);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponents d = e;
    d[v] -= 1;
    out.add_term(d, c * Cyclotomic(1, Rational(e[v])));
  }
  return out;
}

Cyclotomic Poly::evaluate(const std::array<Cyclotomic, kPolyVars>& point) const {
  Cyclotomic sum;
  for (const auto& [e, c] : terms_) {
    Cyclotomic term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term *= point[i].pow(e[i]);
    sum += term;
  }
  return sum;
}

int Poly::projective_degree() const {
  if (terms_.empty()) return -1;
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    const int d = e[0] + e[1] + e[2] + e[3];
    if (deg >= 0 && d != deg) throw std::invalid_argument("not homogeneous in x, y, z, t: " + to_string());
    deg = d;
  }
  return deg;
}

bool Poly::is_projectively_homogeneous() const {
  try {
    projective_degree();
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

namespace {

std::string monomial_text(const Exponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += poly_var_names()[i];
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const std::string mono = monomial_text(e);
    bool negative = false;
    std::string coeff;
    if (auto rm = c.as_root_multiple()) {
      auto [r, k] = *rm;
      negative = r < 0;
      if (negative) r = -r;
      if (k == 0) {
        if (r != 1 || mono.empty()) coeff = tgerm::to_string(r);
      } else {
        const std::string root = k == 1 ? "e" : "e^" + std::to_string(k);
        coeff = r == 1 ? root : tgerm::to_string(r) + "*" + root;
      }
    } else {
      coeff = "(" + c.to_string() + ")";
    }
    std::string body = coeff;
    if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
    if (out.empty())
      out = (negative ? "-" : "") + body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, int n, const std::map<char, std::int64_t>& params)
      : s_(text), n_(n), params_(params) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at column " + std::to_string(pos_ + 1) + " of \"" + s_ + "\": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool starts_factor() {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  BigInt number() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return BigInt(s_.substr(start, pos_ - start));
  }

  Poly one() const { return Poly::constant(Cyclotomic(1, Rational(1))); }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool negative = false;
      if (first) {
        if (accept('-'))
          negative = true;
        else
          accept('+');
      } else if (accept('-')) {
        negative = true;
      } else if (!accept('+')) {
        break;
      }
      Poly t = term();
      acc = negative ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const Poly d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division only by a non-zero constant");
        acc = acc.scaled(d.constant_term().inverse());
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (!accept('^')) return base;
    const auto k = exponent();
    if (k < 0) {
      if (!base.is_constant() || base.is_zero()) fail("negative exponent on a non-constant");
      return Poly::constant(base.constant_term().pow(k));
    }
    if (k > 10000) fail("exponent too large");
    return base.pow(static_cast<int>(k));
  }

  std::int64_t exponent() {
    if (accept('-')) return -exponent();
    if (accept('(')) {
      const auto v = int_expr();
      expect(')');
      return v;
    }
    return int_atom();
  }

  std::int64_t int_expr() {
    std::int64_t acc = 0;
    bool first = true;
    for (;;) {
      std::int64_t sign = 1;
      if (accept('-'))
        sign = -1;
      else if (!accept('+') && !first)
        break;
      acc += sign * int_term();
      first = false;
    }
    return acc;
  }

  std::int64_t int_term() {
    std::int64_t acc = int_factor();
    for (;;) {
      if (accept('*')) {
        acc *= int_factor();
      } else if (starts_factor()) {
        acc *= int_factor();
      } else {
        return acc;
      }
    }
  }

  std::int64_t int_factor() {
    if (accept('-')) return -int_factor();
    if (accept('(')) {
      const auto v = int_expr();
      expect(')');
      return v;
    }
    return int_atom();
  }

  std::int64_t int_atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const BigInt v = number();
      if (v > 1000000) fail("integer too large");
      return static_cast<std::int64_t>(v);
    }
    if (auto it = params_.find(c); it != params_.end()) {
      ++pos_;
      return it->second;
    }
    fail("expected an integer or a parameter");
  }

  Poly atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Poly::constant(Cyclotomic(n_, Rational(number())));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      if (c == 'e') return Poly::constant(Cyclotomic::root(n_, 1));
      if (const int v = poly_var_index(c); v >= 0) return Poly::variable(v);
      if (auto it = params_.find(c); it != params_.end())
        return Poly::constant(Cyclotomic(n_, Rational(BigInt(it->second))));
      --pos_;
      fail("unknown symbol '" + std::string(1, c) + "'");
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
  int n_;
  const std::map<char, std::int64_t>& params_;
};

}  // namespace

Poly parse_poly(const std::string& text, int n, const std::map<char, std::int64_t>& params) {
  if (n < 1) throw ParseError("root-of-unity order must be >= 1");
  for (const auto& [name, value] : params) {
    (void)value;
    if (name == 'e' || poly_var_index(name) >= 0)
      throw ParseError("parameter name '" + std::string(1, name) + "' clashes with a variable");
  }
  return Parser(text, n, params).parse();
}

}  // namespace tgerm
