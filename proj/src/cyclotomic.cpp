#include "tgerm/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace tgerm {

namespace {

using RPoly = std::vector<Rational>;

void trim(RPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly mul(const RPoly& a, const RPoly& b) {
  if (a.empty() || b.empty()) return {};
  RPoly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

RPoly sub(const RPoly& a, const RPoly& b) {
  RPoly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

/// (quotient, remainder) of a by non-zero b.
std::pair<RPoly, RPoly> divmod(RPoly a, RPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  RPoly q(a.size() - b.size() + 1, Rational(0));
  const Rational lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Rational f = a.back() / lead;
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[j + shift] -= f * b[j];
    trim(a);
  }
  trim(q);
  return {q, a};
}

std::int64_t mod_pos(std::int64_t k, std::int64_t n) {
  auto r = k % n;
  return r < 0 ? r + n : r;
}

bool is_perfect_square(const BigInt& v, BigInt& root) {
  if (v < 0) return false;
  root = boost::multiprecision::sqrt(v);
  return root * root == v;
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be >= 1");
  static std::mutex mu;
  static std::map<int, RPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  RPoly p(static_cast<std::size_t>(n) + 1, Rational(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) p = divmod(p, cyclotomic_polynomial(d)).first;
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(int n, const Rational& r) : n_(n) {
  const auto& phi = cyclotomic_polynomial(n);
  c_.assign(phi.size() - 1, Rational(0));
  c_[0] = r;
}

Cyclotomic Cyclotomic::from_poly(int n, std::vector<Rational> coeffs) {
  Cyclotomic out(n);
  out.c_ = std::move(coeffs);
  out.reduce();
  return out;
}

Cyclotomic Cyclotomic::root(int n, std::int64_t k) {
  RPoly p(static_cast<std::size_t>(mod_pos(k, n)) + 1, Rational(0));
  p.back() = 1;
  return from_poly(n, std::move(p));
}

void Cyclotomic::reduce() {
  const auto& phi = cyclotomic_polynomial(n_);
  auto r = divmod(c_, phi).second;
  r.resize(phi.size() - 1, Rational(0));
  c_ = std::move(r);
}

bool Cyclotomic::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw std::domain_error("cyclotomic value " + to_string() + " is not rational");
  return c_[0];
}

Cyclotomic Cyclotomic::in_field(int n) const {
  if (n == n_) return *this;
  if (n_ == 1) return Cyclotomic(n, c_[0]);
  throw std::invalid_argument("cannot move an element of Q(e_" + std::to_string(n_) + ") into Q(e_" +
                              std::to_string(n) + ")");
}

namespace {

int common_order(int a, int b) {
  if (a == b || b == 1) return a;
  if (a == 1) return b;
  throw std::invalid_argument("mixed cyclotomic fields " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  const int n = common_order(n_, o.n_);
  auto a = in_field(n);
  const auto b = o.in_field(n);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
  auto a = *this;
  for (auto& v : a.c_) v = -v;
  return a;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  const int n = common_order(n_, o.n_);
  const auto a = in_field(n);
  const auto b = o.in_field(n);
  return from_poly(n, mul(a.c_, b.c_));
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  RPoly r0 = cyclotomic_polynomial(n_);
  RPoly r1 = c_;
  trim(r1);
  RPoly s0, s1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    auto s2 = sub(s0, mul(q, s1));
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a non-zero constant because the modulus is irreducible.
  const Rational g = r0.front();
  for (auto& v : s0) v /= g;
  return from_poly(n_, s0);
}

Cyclotomic Cyclotomic::operator/(const Cyclotomic& o) const {
  const int n = common_order(n_, o.n_);
  return in_field(n) * o.in_field(n).inverse();
}

Cyclotomic Cyclotomic::pow(std::int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  Cyclotomic result(n_, Rational(1));
  Cyclotomic base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (n_ == o.n_) return c_ == o.c_;
  if (n_ == 1 || o.n_ == 1) return is_rational() && o.is_rational() && c_[0] == o.c_[0];
  return false;
}

std::optional<std::pair<Rational, std::int64_t>> Cyclotomic::as_root_multiple() const {
  if (is_zero()) return std::nullopt;
  const std::int64_t n = n_;
  for (std::int64_t k = 0; k < n; ++k) {
    const auto t = *this * root(n_, -k);
    if (!t.is_rational()) continue;
    Rational r = t.c_[0];
    std::int64_t kk = k;
    if (r < 0 && n % 2 == 0) {
      r = -r;
      kk = mod_pos(kk + n / 2, n);
    }
    if (2 * kk > n) kk -= n;
    return std::make_pair(r, kk);
  }
  return std::nullopt;
}

std::optional<Cyclotomic> Cyclotomic::sqrt() const {
  if (is_zero()) return *this;
  const auto rm = as_root_multiple();
  if (!rm) return std::nullopt;
  const auto& [r, k] = *rm;
  BigInt num_root, den_root;
  if (!is_perfect_square(numerator_of(r), num_root) || !is_perfect_square(denominator_of(r), den_root))
    return std::nullopt;
  std::int64_t half;
  if (k % 2 == 0)
    half = k / 2;
  else if (n_ % 2 == 1)
    half = (k + n_) / 2;
  else
    return std::nullopt;
  return Cyclotomic(n_, Rational(num_root, den_root)) * root(n_, half);
}

std::complex<double> Cyclotomic::evaluate() const {
  std::complex<double> sum = 0;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    if (c_[j] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / n_;
    sum += c_[j].convert_to<double>() * std::polar(1.0, angle);
  }
  return sum;
}

namespace {

std::string power_of_e(std::int64_t k) {
  if (k == 1) return "e";
  return "e^" + std::to_string(k);
}

}  // namespace

std::string Cyclotomic::to_string() const {
  if (is_zero()) return "0";
  if (auto rm = as_root_multiple()) {
    const auto& [r, k] = *rm;
    if (k == 0) return tgerm::to_string(r);
    if (r == 1) return power_of_e(k);
    if (r == -1) return "-" + power_of_e(k);
    return tgerm::to_string(r) + "*" + power_of_e(k);
  }
  std::string out;
  for (std::size_t j = 0; j < c_.size(); ++j) {
    const auto& v = c_[j];
    if (v == 0) continue;
    const Rational mag = v < 0 ? Rational(-v) : v;
    if (out.empty())
      out += v < 0 ? "-" : "";
    else
      out += v < 0 ? " - " : " + ";
    if (j == 0) {
      out += tgerm::to_string(mag);
    } else {
      if (mag != 1) out += tgerm::to_string(mag) + "*";
      out += power_of_e(static_cast<std::int64_t>(j));
    }
  }
  return out;
}

}  // namespace tgerm
