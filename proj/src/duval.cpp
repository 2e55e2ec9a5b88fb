#include "tgerm/duval.hpp"

#include <cctype>
#include <numeric>

namespace tgerm {

DuValType::DuValType(DuValFamily f, int k) : family(f), n(k) {
  bool ok = false;
  switch (f) {
    case DuValFamily::A:
      ok = k >= 1;
      break;
    case DuValFamily::D:
      ok = k >= 4;
      break;
    case DuValFamily::E:
      ok = k >= 6 && k <= 8;
      break;
  }
  if (!ok) throw std::invalid_argument("DuVal type out of range: " + to_string());
}

std::string DuValType::to_string() const {
  const char letter = family == DuValFamily::A ? 'A' : family == DuValFamily::D ? 'D' : 'E';
  return std::string(1, letter) + std::to_string(n);
}

CyclicQuot::CyclicQuot(std::int64_t n_, std::int64_t q_) : n(n_), q(q_) {
  if (n < 2 || q < 1 || q >= n || std::gcd(n, q) != 1)
    throw std::invalid_argument("cyclic quotient 1/" + std::to_string(n) + "(1," + std::to_string(q) +
                                ") needs n >= 2, 1 <= q < n, gcd(n,q) = 1");
}

std::string CyclicQuot::to_string() const {
  return "1/" + std::to_string(n) + "(1," + std::to_string(q) + ")";
}

std::string to_string(const SurfacePoint& s) {
  if (std::holds_alternative<SmoothPoint>(s)) return "smooth";
  if (const auto* d = std::get_if<DuValType>(&s)) return d->to_string();
  return std::get<CyclicQuot>(s).to_string();
}

std::optional<DuValType> parse_duval(const std::string& text) {
  if (text.size() < 2) return std::nullopt;
  const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  const auto digits = text.substr(1);
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
  if (digits.size() > 6) return std::nullopt;
  const int n = std::stoi(digits);
  try {
    if (f == 'A') return DuValType::A(n);
    if (f == 'D') return DuValType::D(n);
    if (f == 'E') return DuValType::E(n);
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

std::vector<std::int64_t> hj_expand(std::int64_t n, std::int64_t q) {
  if (q <= 0 || q >= n || std::gcd(n, q) != 1)
    throw std::invalid_argument("hj_expand: need 0 < q < n with gcd(n,q) = 1");
  std::vector<std::int64_t> out;
  while (q > 0) {
    const auto b = (n + q - 1) / q;
    out.push_back(b);
    const auto next = b * q - n;
    n = q;
    q = next;
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> hj_fold(const std::vector<std::int64_t>& chain) {
  if (chain.empty()) throw std::invalid_argument("hj_fold: empty chain");
  std::int64_t num = chain.back();
  std::int64_t den = 1;
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    const auto next_num = *it * num - den;
    den = num;
    num = next_num;
  }
  const auto g = std::gcd(num, den);
  return {num / g, den / g};
}

DualGraph dual_graph(const CyclicQuot& cq) {
  DualGraph g;
  for (auto b : hj_expand(cq.n, cq.q)) g.self_intersections.push_back(-b);
  return g;
}

std::int64_t topological_index(const DuValType& t) {
  switch (t.family) {
    case DuValFamily::A:
      return t.n + 1;
    case DuValFamily::D:
      return 4 * (t.n - 2);
    case DuValFamily::E:
      return t.n == 6 ? 24 : t.n == 7 ? 48 : 120;
  }
  return 0;
}

std::int64_t topological_index(const CyclicQuot& c) { return c.n; }

std::int64_t topological_index(const SurfacePoint& s) {
  if (std::holds_alternative<SmoothPoint>(s)) return 1;
  if (const auto* d = std::get_if<DuValType>(&s)) return topological_index(*d);
  return topological_index(std::get<CyclicQuot>(s));
}

const std::vector<CataneseRow>& catanese_table() {
  static const std::vector<CataneseRow> rows = {
      {1, "any", "smooth", -1},
      {2, "A_{2k+1}", "D_{k+3}", 1},
      {3, "E_6", "E_7", -1},
      {4, "D_k", "D_{2k-2}", 4},
      {5, "A_k", "A_{2k+1}", 1},
      {6, "A_{2k+1}", "1/(4k+4)(1,2k+1)", 0},
      {7, "E_6", "A_2", -1},
      {8, "A_{2k}", "1/(2k+1)(1,2k-1)", 1},
      {9, "D_k", "A_1", 4},
      {10, "A_{2k+1}", "A_k", 1},
  };
  return rows;
}

namespace {

[[noreturn]] void row_mismatch(const DuValType& t, int row) {
  throw std::invalid_argument(t.to_string() + " does not fit row " + std::to_string(row) +
                              " of the involution table");
}

bool is_A(const DuValType& t) { return t.family == DuValFamily::A; }
bool is_D(const DuValType& t) { return t.family == DuValFamily::D; }
bool is_E6(const DuValType& t) { return t.family == DuValFamily::E && t.n == 6; }

}  // namespace

SurfacePoint catanese_quotient(const DuValType& t, int row) {
  switch (row) {
    case 1:
      return SmoothPoint{};
    case 2:
      if (!is_A(t) || t.n % 2 == 0 || t.n < 3) row_mismatch(t, row);
      return DuValType::D((t.n - 1) / 2 + 3);
    case 3:
      if (!is_E6(t)) row_mismatch(t, row);
      return DuValType::E(7);
    case 4:
      if (!is_D(t)) row_mismatch(t, row);
      return DuValType::D(2 * t.n - 2);
    case 5:
      if (!is_A(t)) row_mismatch(t, row);
      return DuValType::A(2 * t.n + 1);
    case 6: {
      if (!is_A(t) || t.n % 2 == 0) row_mismatch(t, row);
      const int k = (t.n - 1) / 2;
      return CyclicQuot(4 * k + 4, 2 * k + 1);
    }
    case 7:
      if (!is_E6(t)) row_mismatch(t, row);
      return DuValType::A(2);
    case 8: {
      if (!is_A(t) || t.n % 2 != 0) row_mismatch(t, row);
      const int k = t.n / 2;
      return CyclicQuot(2 * k + 1, 2 * k - 1);
    }
    case 9:
      if (!is_D(t)) row_mismatch(t, row);
      return DuValType::A(1);
    case 10:
      if (!is_A(t) || t.n % 2 == 0 || t.n < 3) row_mismatch(t, row);
      return DuValType::A((t.n - 1) / 2);
    default:
      throw std::invalid_argument("involution table has rows 1..10, got " + std::to_string(row));
  }
}

DuValType catanese_cover(int row, int k) {
  if (row < 1 || row > 10)
    throw std::invalid_argument("involution table has rows 1..10, got " + std::to_string(row));
  const auto& r = catanese_table()[static_cast<std::size_t>(row - 1)];
  if (r.min_k >= 0 && k < r.min_k)
    throw std::invalid_argument("row " + std::to_string(row) + " needs k >= " + std::to_string(r.min_k));
  switch (row) {
    case 1:
    case 5:
      return DuValType::A(k);
    case 2:
    case 6:
    case 10:
      return DuValType::A(2 * k + 1);
    case 3:
    case 7:
      return DuValType::E(6);
    case 4:
    case 9:
      return DuValType::D(k);
    default:
      return DuValType::A(2 * k);
  }
}

std::string to_string(IndexVerdict v) {
  switch (v) {
    case IndexVerdict::Fail:
      return "fail";
    case IndexVerdict::Pass:
      return "pass";
    case IndexVerdict::PassForcingA:
      return "pass-forcing-A";
  }
  return "";
}

IndexVerdict index_divisibility_check(std::int64_t m, const DuValType& surface) {
  if (m < 2) throw std::invalid_argument("index_divisibility_check: m must be >= 2");
  const auto n = topological_index(surface);
  if (n % m != 0) return IndexVerdict::Fail;
  if (n == m) return surface == DuValType::A(static_cast<int>(m - 1)) ? IndexVerdict::PassForcingA
                                                                       : IndexVerdict::Fail;
  return IndexVerdict::Pass;
}

std::string to_string(TerminalClass c) {
  switch (c) {
    case TerminalClass::cA:
      return "cA/m";
    case TerminalClass::cAx2:
      return "cAx/2";
    case TerminalClass::cD2:
      return "cD/2";
    case TerminalClass::cD3:
      return "cD/3";
    case TerminalClass::cE2:
      return "cE/2";
    case TerminalClass::cAx4:
      return "cAx/4";
  }
  return "";
}

std::optional<TerminalClass> parse_terminal_class(const std::string& text) {
  for (auto c : {TerminalClass::cA, TerminalClass::cAx2, TerminalClass::cD2, TerminalClass::cD3,
                 TerminalClass::cE2, TerminalClass::cAx4})
    if (text == to_string(c)) return c;
  if (text == "cA") return TerminalClass::cA;
  return std::nullopt;
}

CoverRow canonical_cover_row(TerminalClass cls, std::int64_t k, std::int64_t m) {
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(to_string(cls) + ": " + what);
  };
  const int ki = static_cast<int>(k);
  switch (cls) {
    case TerminalClass::cA: {
      need(k >= 1, "k must be >= 1");
      need(m >= 2, "index m must be >= 2");
      SurfacePoint cover = k == 1 ? SurfacePoint{SmoothPoint{}} : SurfacePoint{DuValType::A(ki - 1)};
      return {cls, m, false, cover, DuValType::A(static_cast<int>(k * m - 1)), m};
    }
    case TerminalClass::cAx2:
      need(k >= 2, "k must be >= 2");
      return {cls, 2, false, DuValType::A(2 * ki - 1), DuValType::D(ki + 2), 2};
    case TerminalClass::cD2:
      need(k >= 3, "k must be >= 3");
      return {cls, 2, false, DuValType::D(ki + 1), DuValType::D(2 * ki), 2};
    case TerminalClass::cD3:
      return {cls, 3, false, DuValType::D(4), DuValType::E(6), 3};
    case TerminalClass::cE2:
      return {cls, 2, false, DuValType::E(6), DuValType::E(7), 2};
    case TerminalClass::cAx4:
      need(k >= 2, "k must be >= 2");
      return {cls, 4, true, DuValType::A(2 * ki - 2), DuValType::D(2 * ki + 1), 4};
  }
  throw std::invalid_argument("unknown terminal class");
}

std::vector<TerminalClass> classes_with_elephant(const DuValType& base, std::int64_t m) {
  std::vector<TerminalClass> out;
  if (m < 2) return out;
  switch (base.family) {
    case DuValFamily::A:
      if ((base.n + 1) % m == 0) out.push_back(TerminalClass::cA);
      break;
    case DuValFamily::D:
      if (m == 2) out.push_back(TerminalClass::cAx2);
      if (m == 2 && base.n % 2 == 0 && base.n >= 6) out.push_back(TerminalClass::cD2);
      if (m == 4 && base.n % 2 == 1 && base.n >= 5) out.push_back(TerminalClass::cAx4);
      break;
    case DuValFamily::E:
      if (m == 3 && base.n == 6) out.push_back(TerminalClass::cD3);
      if (m == 2 && base.n == 7) out.push_back(TerminalClass::cE2);
      break;
  }
  return out;
}

}  // namespace tgerm
