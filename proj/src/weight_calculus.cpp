#include "tgerm/weight_calculus.hpp"

#include <algorithm>
#include <sstream>

namespace tgerm {

std::int64_t mod_floor(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

Residue::Residue(std::int64_t value, std::int64_t modulus) : modulus_(modulus) {
  if (modulus <= 0) throw std::invalid_argument("Residue: modulus must be positive");
  value_ = mod_floor(value, modulus);
}

void Residue::require_same_modulus(const Residue& o) const {
  if (o.modulus_ != modulus_)
    throw std::invalid_argument("Residue: moduli differ (" + std::to_string(modulus_) +
                                " vs " + std::to_string(o.modulus_) + ")");
}

Residue Residue::operator+(const Residue& o) const {
  require_same_modulus(o);
  return Residue(value_ + o.value_, modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same_modulus(o);
  return Residue(value_ - o.value_, modulus_);
}

Residue Residue::operator-() const { return Residue(-value_, modulus_); }

Residue Residue::operator*(std::int64_t k) const {
  return Residue(mod_floor(k, modulus_) * value_, modulus_);
}

Monomial::Monomial(Exponents e) : exps_(e) {
  for (int v : exps_)
    if (v < 0) throw std::invalid_argument("Monomial: negative exponent");
}

Monomial Monomial::variable(int index) {
  if (index < 0 || index > 3) throw std::out_of_range("Monomial::variable");
  Exponents e{0, 0, 0, 0};
  e[static_cast<std::size_t>(index)] = 1;
  return Monomial(e);
}

int Monomial::total_degree() const {
  return exps_[0] + exps_[1] + exps_[2] + exps_[3];
}

Monomial Monomial::operator*(const Monomial& o) const {
  Exponents e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = exps_[i] + o.exps_[i];
  return Monomial(e);
}

Monomial Monomial::pow(int n) const {
  Exponents e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = exps_[i] * n;
  return Monomial(e);
}

bool Monomial::divides(const Monomial& o) const {
  for (std::size_t i = 0; i < 4; ++i)
    if (exps_[i] > o.exps_[i]) return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& o) const {
  if (!divides(o)) throw std::invalid_argument("Monomial::quotient_of: not a divisor");
  Exponents e;
  for (std::size_t i = 0; i < 4; ++i) e[i] = o.exps_[i] - exps_[i];
  return Monomial(e);
}

std::string Monomial::to_string() const {
  if (is_unit()) return "1";
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < 4; ++i) {
    if (exps_[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << 'x' << (i + 1);
    if (exps_[i] > 1) out << '^' << exps_[i];
  }
  return out.str();
}

bool lex_leading_first(const Monomial& a, const Monomial& b) {
  return a.exponents() > b.exponents();
}

Residue weight_of(const Monomial& mono, const WeightedChart& chart) {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < 4; ++i)
    w = mod_floor(w + mono.exponents()[i] * chart.weights[i], chart.modulus);
  return Residue(w, chart.modulus);
}

std::int64_t ord_of(const Monomial& mono, const WeightedChart& chart) {
  std::int64_t o = 0;
  for (std::size_t i = 0; i < 4; ++i) o += mono.exponents()[i] * chart.orders[i];
  return o;
}

bool OrderThenLex::operator()(const Monomial& a, const Monomial& b) const {
  auto oa = ord_of(a, *chart);
  auto ob = ord_of(b, *chart);
  if (oa != ob) return oa < ob;
  return lex_leading_first(a, b);
}

namespace {

bool allowed(VarSet vars, std::size_t i) { return (vars >> i) & 1u; }

void require_chart(const WeightedChart& chart) {
  if (chart.modulus <= 0) throw std::invalid_argument("chart: modulus must be positive");
  for (auto o : chart.orders)
    if (o < 1) throw std::invalid_argument("chart: orders must be >= 1");
}

}  // namespace

std::vector<Monomial> enumerate_by_weight(const WeightedChart& chart, const Residue& target,
                                          std::int64_t ord_cap, VarSet vars) {
  require_chart(chart);
  if (target.modulus() != chart.modulus)
    throw std::invalid_argument("enumerate_by_weight: target modulus differs from index");
  std::vector<Monomial> out;
  if (ord_cap <= 0) return out;

  Monomial::Exponents e{0, 0, 0, 0};
  // Depth-first walk of the exponent box bounded by the order cap.
  auto walk = [&](auto&& self, std::size_t i, std::int64_t ord, std::int64_t wt) -> void {
    if (i == 4) {
      if (ord > 0 && wt == target.value()) out.emplace_back(e);
      return;
    }
    std::int64_t max_e = allowed(vars, i) ? (ord_cap - ord) / chart.orders[i] : 0;
    for (std::int64_t k = 0; k <= max_e; ++k) {
      e[i] = static_cast<int>(k);
      self(self, i + 1, ord + k * chart.orders[i],
           mod_floor(wt + k * chart.weights[i], chart.modulus));
    }
    e[i] = 0;
  };
  walk(walk, 0, 0, 0);
  std::sort(out.begin(), out.end(), OrderThenLex{&chart});
  return out;
}

std::optional<WeightMinimum> min_ord_of_weight(const WeightedChart& chart, const Residue& target,
                                               std::int64_t ord_cap, MinOrdOptions opts) {
  require_chart(chart);
  if (target.modulus() != chart.modulus)
    throw std::invalid_argument("min_ord_of_weight: target modulus differs from index");
  if (opts.include_unit && target.value() == 0) return WeightMinimum{0, Monomial::unit()};
  if (ord_cap < 1) return std::nullopt;

  const auto m = chart.modulus;
  const auto cap = ord_cap;
  // reach[k][o*m + w]: some monomial in variables k..3 has order exactly o and weight w.
  std::array<std::vector<char>, 5> reach;
  for (auto& r : reach) r.assign(static_cast<std::size_t>((cap + 1) * m), 0);
  auto at = [m](std::int64_t o, std::int64_t w) { return static_cast<std::size_t>(o * m + w); };
  reach[4][at(0, 0)] = 1;
  for (int k = 3; k >= 0; --k) {
    const auto ki = static_cast<std::size_t>(k);
    auto& cur = reach[ki];
    const auto& next = reach[ki + 1];
    const auto a = chart.orders[ki];
    const auto w = chart.weights[ki];
    for (std::int64_t o = 0; o <= cap; ++o) {
      for (std::int64_t wt = 0; wt < m; ++wt) {
        if (!next[at(o, wt)]) continue;
        cur[at(o, wt)] = 1;
        if (!allowed(opts.vars, ki)) continue;
        std::int64_t oo = o + a;
        std::int64_t ww = mod_floor(wt + w, m);
        while (oo <= cap) {
          cur[at(oo, ww)] = 1;
          oo += a;
          ww = mod_floor(ww + w, m);
        }
      }
    }
  }

  std::int64_t best = -1;
  for (std::int64_t o = 1; o <= cap; ++o) {
    if (reach[0][at(o, target.value())]) {
      best = o;
      break;
    }
  }
  if (best < 0) return std::nullopt;

  // Greedy reconstruction: the largest x1 exponent that still completes, then x2, ...
  Monomial::Exponents e{0, 0, 0, 0};
  std::int64_t o = best;
  std::int64_t wt = target.value();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto a = chart.orders[k];
    std::int64_t max_e = allowed(opts.vars, k) ? o / a : 0;
    for (std::int64_t ek = max_e; ek >= 0; --ek) {
      auto ro = o - ek * a;
      auto rw = mod_floor(wt - ek * chart.weights[k], m);
      if (reach[k + 1][at(ro, rw)]) {
        e[k] = static_cast<int>(ek);
        o = ro;
        wt = rw;
        break;
      }
    }
  }
  return WeightMinimum{best, Monomial(e)};
}

bool is_simple_invariant(const Monomial& mono, const WeightedChart& chart) {
  if (weight_of(mono, chart).value() != 0)
    throw std::invalid_argument("is_simple_invariant: " + mono.to_string() + " is not invariant");
  if (mono.is_unit()) return false;
  const auto& ex = mono.exponents();
  Monomial::Exponents d{0, 0, 0, 0};
  for (d[0] = 0; d[0] <= ex[0]; ++d[0])
    for (d[1] = 0; d[1] <= ex[1]; ++d[1])
      for (d[2] = 0; d[2] <= ex[2]; ++d[2])
        for (d[3] = 0; d[3] <= ex[3]; ++d[3]) {
          Monomial div(d);
          if (div.is_unit() || div == mono) continue;
          if (weight_of(div, chart).value() == 0) return false;
        }
  return true;
}

bool vanishes_on_curve(const Monomial& psi, int power, const WeightedChart& chart) {
  if (psi[3] != 0)
    throw std::invalid_argument("vanishes_on_curve: psi must not involve x4");
  if (power < 0) throw std::invalid_argument("vanishes_on_curve: negative power");
  const Monomial x4n = Monomial::variable(3).pow(power);
  return ord_of(psi, chart) == ord_of(x4n, chart) &&
         weight_of(psi, chart) == weight_of(x4n, chart);
}

}  // namespace tgerm
