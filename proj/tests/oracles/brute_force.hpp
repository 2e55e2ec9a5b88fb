#pragma once

// Deliberately naive reference computations. Nothing here calls the library's
// search routines; only the data types and ord/weight of single monomials.

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "tgerm/example_verifier.hpp"
#include "tgerm/germ.hpp"
#include "tgerm/rational.hpp"

namespace oracle {

using tgerm::Monomial;
using tgerm::WeightedChart;

inline std::int64_t ord(const std::array<int, 4>& e, const WeightedChart& c) {
  std::int64_t s = 0;
  for (int i = 0; i < 4; ++i) s += e[i] * c.orders[i];
  return s;
}

inline std::int64_t wt(const std::array<int, 4>& e, const WeightedChart& c) {
  std::int64_t s = 0;
  for (int i = 0; i < 4; ++i) s += e[i] * c.weights[i];
  return ((s % c.modulus) + c.modulus) % c.modulus;
}

/// Every exponent vector in the allowed variables with order <= cap.
inline std::vector<std::array<int, 4>> box(const WeightedChart& c, std::int64_t cap, std::uint8_t vars) {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> lim{};
  for (int i = 0; i < 4; ++i) lim[i] = (vars >> i) & 1 ? static_cast<int>(cap / c.orders[i]) : 0;
  for (int a = 0; a <= lim[0]; ++a)
    for (int b = 0; b <= lim[1]; ++b)
      for (int d = 0; d <= lim[2]; ++d)
        for (int e = 0; e <= lim[3]; ++e) {
          std::array<int, 4> x{a, b, d, e};
          if (ord(x, c) <= cap) out.push_back(x);
        }
  return out;
}

/// Minimum order in a weight class, ties to the exponent vector that is
/// largest lexicographically (x1-heaviest).
inline std::optional<std::pair<std::int64_t, std::array<int, 4>>> min_ord(const WeightedChart& c, std::int64_t target,
                                                                          std::int64_t cap, std::uint8_t vars,
                                                                          bool include_unit) {
  std::optional<std::pair<std::int64_t, std::array<int, 4>>> best;
  for (const auto& x : box(c, cap, vars)) {
    if (!include_unit && x == std::array<int, 4>{0, 0, 0, 0}) continue;
    if (wt(x, c) != ((target % c.modulus) + c.modulus) % c.modulus) continue;
    const auto o = ord(x, c);
    if (!best || o < best->first || (o == best->first && x > best->second)) best = std::make_pair(o, x);
  }
  return best;
}

inline std::int64_t det3(const std::array<int, 4>& a, const std::array<int, 4>& b, const std::array<int, 4>& c) {
  return static_cast<std::int64_t>(a[0]) * (b[1] * c[2] - b[2] * c[1]) -
         static_cast<std::int64_t>(a[1]) * (b[0] * c[2] - b[2] * c[0]) +
         static_cast<std::int64_t>(a[2]) * (b[0] * c[1] - b[1] * c[0]);
}

/// mbar * w_P by scanning the exponent box.
inline std::int64_t wp_t_order(const tgerm::NormalizedGerm& g, std::int64_t cap) {
  if (g.m() == 1) return 0;
  const auto r = min_ord(g.chart(), -g.weights()[2], cap, 0b1111, false);
  return r ? r->first : -1;
}

/// i_P * mbar from every pair of binomial generators, no pruning.
inline std::optional<std::int64_t> exact_ip_times_mbar(const tgerm::NormalizedGerm& g, std::int64_t cap,
                                                       std::int64_t wp_cap) {
  const auto* eq = std::get_if<tgerm::CyclicBinomial>(&g.equation());
  if (!eq) return std::nullopt;
  const auto& c = g.chart();
  const auto mbar = g.mbar();
  std::vector<std::array<int, 4>> gens;
  for (const auto& x : box(c, cap, 0b0111))
    if (x != std::array<int, 4>{0, 0, 0, 0} && wt(x, c) == 0 && ord(x, c) % mbar == 0) gens.push_back(x);
  const auto phi = eq->psi0.exponents();
  std::optional<std::int64_t> best;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (det3(phi, gens[i], gens[j]) == 0) continue;
      const auto s = ord(gens[i], c) + ord(gens[j], c);
      if (!best || s < *best) best = s;
    }
  if (!best) return std::nullopt;
  const auto sum_a = g.order(0) + g.order(1) + g.order(2);
  return mbar - g.order(3) - wp_t_order(g, wp_cap) + ord(phi, c) + *best - sum_a;
}

/// Sum of ord(psi_i) - a_i over the cheapest triple of distinct simple
/// invariants psi_i divisible by x_i, every triple enumerated.
inline std::optional<std::int64_t> min_simple_triple(const tgerm::NormalizedGerm& g, std::int64_t cap) {
  const auto& c = g.chart();
  std::vector<std::array<int, 4>> inv;
  for (const auto& x : box(c, cap, 0b0111))
    if (x != std::array<int, 4>{0, 0, 0, 0} && wt(x, c) == 0) inv.push_back(x);
  const auto simple = [&](const std::array<int, 4>& x) {
    for (int a = 0; a <= x[0]; ++a)
      for (int b = 0; b <= x[1]; ++b)
        for (int d = 0; d <= x[2]; ++d) {
          std::array<int, 4> y{a, b, d, 0};
          if (y == std::array<int, 4>{0, 0, 0, 0} || y == x) continue;
          if (wt(y, c) == 0) return false;
        }
    return true;
  };
  std::array<std::vector<std::array<int, 4>>, 3> slot;
  for (const auto& x : inv)
    if (simple(x))
      for (int i = 0; i < 3; ++i)
        if (x[i] > 0) slot[i].push_back(x);
  std::optional<std::int64_t> best;
  for (const auto& p : slot[0])
    for (const auto& q : slot[1])
      for (const auto& r : slot[2]) {
        if (p == q || q == r || p == r) continue;
        const auto v = ord(p, c) - g.order(0) + ord(q, c) - g.order(1) + ord(r, c) - g.order(2);
        if (!best || v < *best) best = v;
      }
  return best;
}

// Hirzebruch-Jung continued fractions with exact rationals.

inline std::vector<std::int64_t> hj_expand(std::int64_t n, std::int64_t q) {
  std::vector<std::int64_t> out;
  tgerm::Rational x(n, q);
  for (;;) {
    const tgerm::BigInt b = tgerm::ceil_of(x);
    out.push_back(static_cast<std::int64_t>(b));
    if (tgerm::Rational(b) == x) break;
    x = 1 / (tgerm::Rational(b) - x);
  }
  return out;
}

inline tgerm::Rational hj_value(const std::vector<std::int64_t>& chain) {
  tgerm::Rational v(chain.back());
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) v = tgerm::Rational(*it) - 1 / v;
  return v;
}

// Numerical evaluation of polynomials and actions.

using CPoint = std::array<std::complex<double>, 6>;

inline std::complex<double> eval(const tgerm::Poly& p, const CPoint& x) {
  std::complex<double> s = 0;
  for (const auto& [e, c] : p.terms()) {
    std::complex<double> t = c.evaluate();
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    s += t;
  }
  return s;
}

inline CPoint act(const tgerm::Action& a, const CPoint& x) {
  CPoint y{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) y[i] += a.matrix[i][j].evaluate() * x[j];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) y[4 + i] += a.uv[i][j].evaluate() * x[4 + j];
  return y;
}

}  // namespace oracle
