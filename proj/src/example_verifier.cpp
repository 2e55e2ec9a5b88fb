#include "tgerm/example_verifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tgerm {

namespace {

using Vec = std::vector<Cyclotomic>;
using Mat = std::vector<Vec>;

Cyclotomic one() { return Cyclotomic(1, Rational(1)); }

/// Full row reduction in place; returns pivot columns, drops zero rows.
std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const auto inv = m[r][c].inverse();
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const auto f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::size_t rank_of(Mat m) { return rref(m).size(); }

/// Basis of {v : m v = 0}.
std::vector<Vec> kernel(Mat m, std::size_t cols) {
  const auto pivots = rref(m);
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    Vec v(cols);
    v[f] = one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

Cyclotomic determinant(Mat m) {
  const std::size_t n = m.size();
  Cyclotomic det = one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return Cyclotomic();
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const auto inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const auto f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  Mat out(a.size(), Vec(b.front().size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b.front().size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Mat identity(std::size_t n) {
  Mat m(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = one();
  return m;
}

Mat mat_pow(const Mat& m, int k) {
  Mat result = identity(m.size());
  for (int i = 0; i < k; ++i) result = mat_mul(result, m);
  return result;
}

template <std::size_t N>
Mat to_mat(const std::array<std::array<Cyclotomic, N>, N>& a) {
  Mat m(N, Vec(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m[i][j] = a[i][j];
  return m;
}

template <std::size_t N>
std::array<std::array<Cyclotomic, N>, N> from_mat(const Mat& m) {
  std::array<std::array<Cyclotomic, N>, N> a;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a[i][j] = m[i][j];
  return a;
}

bool mat_equal(const Mat& a, const Mat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}

/// Scalar lambda with m == lambda * I, if any.
std::optional<Cyclotomic> scalar_of(const Mat& m) {
  const auto lambda = m[0][0];
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (!(m[i][j] == (i == j ? lambda : Cyclotomic()))) return std::nullopt;
  return lambda;
}

/// "e^-2*g2 - g1" style text for sum_j c_j * name_j.
std::string combination_text(const Vec& c, const std::string& symbol) {
  std::string out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j].is_zero()) continue;
    bool negative = false;
    std::string coeff;
    if (auto rm = c[j].as_root_multiple()) {
      auto [r, k] = *rm;
      negative = r < 0;
      if (negative) r = -r;
      if (k != 0) coeff = (r == 1 ? std::string() : to_string(r) + "*") + (k == 1 ? "e" : "e^" + std::to_string(k));
      else if (r != 1) coeff = to_string(r);
    } else {
      coeff = "(" + c[j].to_string() + ")";
    }
    const std::string term = (coeff.empty() ? "" : coeff + "*") + symbol + std::to_string(j + 1);
    if (out.empty())
      out = (negative ? "-" : "") + term;
    else
      out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::array<Poly, kPolyVars> action_images(const Action& a) {
  std::array<Poly, kPolyVars> images;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      images[i] += Poly::variable(static_cast<int>(j)).scaled(a.matrix[i][j]);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      images[4 + i] += Poly::variable(static_cast<int>(4 + j)).scaled(a.uv[i][j]);
  return images;
}

}  // namespace

std::string ProjectivePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < 4; ++i) out += (i ? ", " : "") + coords[i].to_string();
  out += "; " + uv[0].to_string() + ", " + uv[1].to_string() + ")";
  return out;
}

Action action_power(const Action& action, int k) {
  if (k < 0) throw std::invalid_argument("action_power: negative exponent");
  return {from_mat<4>(mat_pow(to_mat(action.matrix), k)), from_mat<2>(mat_pow(to_mat(action.uv), k))};
}

Poly apply_action(const Poly& p, const Action& action) { return p.substitute(action_images(action)); }

Poly apply_action_power(const Poly& p, const Action& action, int k) {
  Poly out = p;
  const auto images = action_images(action);
  for (int i = 0; i < k; ++i) out = out.substitute(images);
  return out;
}

void validate_family(const EquivariantFamily& family) {
  const auto fail = [&](const std::string& what) { throw FamilyError(family.name + ": " + what); };
  if (family.order < 1) fail("order must be >= 1");
  if (family.generators.empty()) fail("no generators");
  try {
    for (std::size_t i = 0; i < family.generators.size(); ++i) {
      const auto& g = family.generators[i];
      if (g.is_zero()) fail("generator g" + std::to_string(i + 1) + " is zero");
      if (!g.is_projectively_homogeneous())
        fail("generator g" + std::to_string(i + 1) + " is not homogeneous in x, y, z, t");
      for (const auto& [e, c] : g.terms()) c.in_field(family.order);
    }
    const auto m = to_mat(family.action.matrix);
    const auto n = to_mat(family.action.uv);
    for (const auto& row : m)
      for (const auto& c : row) c.in_field(family.order);
    for (const auto& row : n)
      for (const auto& c : row) c.in_field(family.order);
    if (determinant(m).is_zero()) fail("action matrix is singular");
    if (determinant(n).is_zero()) fail("(u,v) action is singular");
    if (!scalar_of(mat_pow(m, family.order))) fail("M^" + std::to_string(family.order) + " is not scalar");
    if (!mat_equal(mat_pow(n, family.order), identity(2)))
      fail("(u,v) action does not have order dividing " + std::to_string(family.order));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

EquivarianceReport check_ideal_equivariance(const EquivariantFamily& family) {
  EquivarianceReport rep;
  const auto& gens = family.generators;
  const std::size_t k = gens.size();

  std::vector<Poly> images;
  for (const auto& g : gens) images.push_back(apply_action(g, family.action));

  std::map<Exponents, std::size_t> index;
  for (const auto& p : gens)
    for (const auto& [e, c] : p.terms()) index.try_emplace(e, 0);
  for (const auto& p : images)
    for (const auto& [e, c] : p.terms()) index.try_emplace(e, 0);
  std::vector<Exponents> monomials;
  for (auto& [e, i] : index) {
    i = monomials.size();
    monomials.push_back(e);
  }
  const auto to_vec = [&](const Poly& p) {
    Vec v(monomials.size());
    for (const auto& [e, c] : p.terms()) v[index.at(e)] = c;
    return v;
  };

  struct Row {
    Vec coeffs;
    Vec combo;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  const auto reduce = [&](Vec& v, Vec& combo) {
    for (const auto& r : rows) {
      if (v[r.pivot].is_zero()) continue;
      const auto f = v[r.pivot];
      for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * r.coeffs[j];
      for (std::size_t j = 0; j < k; ++j) combo[j] += f * r.combo[j];
    }
  };
  for (std::size_t i = 0; i < k; ++i) {
    Vec v = to_vec(gens[i]);
    Vec combo(k);
    reduce(v, combo);
    // v = g_i - sum combo_j g_j
    Vec own(k);
    own[i] = one();
    for (std::size_t j = 0; j < k; ++j) own[j] -= combo[j];
    auto it = std::find_if(v.begin(), v.end(), [](const Cyclotomic& c) { return !c.is_zero(); });
    if (it == v.end()) continue;
    const auto pivot = static_cast<std::size_t>(it - v.begin());
    const auto inv = v[pivot].inverse();
    for (auto& c : v) c *= inv;
    for (auto& c : own) c *= inv;
    rows.push_back({std::move(v), std::move(own), pivot});
  }

  rep.ok = true;
  for (std::size_t i = 0; i < k; ++i) {
    Vec v = to_vec(images[i]);
    Vec combo(k);
    reduce(v, combo);
    Poly residual;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) residual += Poly::monomial(monomials[j], v[j]);
    rep.scalars.push_back(combo);
    const std::string name = "sigma(g" + std::to_string(i + 1) + ")";
    if (residual.is_zero()) {
      rep.residuals.emplace_back();
      rep.lines.push_back(name + " = " + combination_text(combo, "g"));
    } else {
      rep.ok = false;
      rep.residuals.push_back(residual.to_string());
      rep.lines.push_back(name + " is not in the span of the generators; residual " + residual.to_string());
    }
  }
  if (rep.ok) {
    rep.invertible = !determinant(rep.scalars).is_zero();
    rep.order_identity = mat_equal(mat_pow(rep.scalars, family.order), identity(k));
    rep.lines.push_back(std::string("scalar matrix ") + (rep.invertible ? "invertible" : "singular") + ", power " +
                        std::to_string(family.order) + (rep.order_identity ? " is" : " is not") + " the identity");
    rep.ok = rep.invertible && rep.order_identity;
  } else {
    rep.lines.push_back("the ideal is not generator-stable under the action (the variety may still be invariant)");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Central fiber

std::string to_string(const LinearForm& f) {
  Poly p;
  for (std::size_t i = 0; i < 4; ++i) p += Poly::variable(static_cast<int>(i)).scaled(f[i]);
  return p.to_string();
}

std::string FiberComponent::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < equations.size(); ++i) out += (i ? ", " : "") + tgerm::to_string(equations[i]) + " = 0";
  return out + "}";
}

namespace {

using Subspace = std::vector<LinearForm>;

Subspace reduce_subspace(const Subspace& forms) {
  Mat m;
  for (const auto& f : forms) m.emplace_back(f.begin(), f.end());
  rref(m);
  Subspace out;
  for (const auto& row : m) {
    LinearForm f;
    std::copy(row.begin(), row.end(), f.begin());
    out.push_back(f);
  }
  return out;
}

bool same_forms(const Subspace& a, const Subspace& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!(a[i][j] == b[i][j])) return false;
  return true;
}

/// Zero set of a inside zero set of b, i.e. span(b) inside span(a).
bool zero_set_inside(const Subspace& a, const Subspace& b) {
  Subspace both = a;
  both.insert(both.end(), b.begin(), b.end());
  return reduce_subspace(both).size() == a.size();
}

Poly restrict_to(const Poly& g, const Subspace& sub) {
  std::array<Poly, kPolyVars> images;
  for (int i = 0; i < 4; ++i) images[static_cast<std::size_t>(i)] = Poly::variable(i);
  for (const auto& row : sub) {
    std::size_t pivot = 0;
    while (row[pivot].is_zero()) ++pivot;
    Poly image;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != pivot) image -= Poly::variable(static_cast<int>(j)).scaled(row[j]);
    images[pivot] = image;
  }
  return g.substitute(images);
}

LinearForm linear_form_of(const Poly& p) {
  LinearForm f;
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < 4; ++i)
      if (e[i] == 1) f[i] = c;
  return f;
}

Poly poly_of(const LinearForm& f) {
  Poly p;
  for (std::size_t i = 0; i < 4; ++i) p += Poly::variable(static_cast<int>(i)).scaled(f[i]);
  return p;
}

LinearForm normalized(LinearForm f) {
  for (const auto& c : f)
    if (!c.is_zero()) {
      const auto inv = c.inverse();
      for (auto& v : f) v *= inv;
      break;
    }
  return f;
}

Mat quadric_matrix(const Poly& q) {
  Mat a(4, Vec(4));
  const Cyclotomic half(1, make_rational(1, 2));
  for (const auto& [e, c] : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < 4; ++i)
      for (int r = 0; r < e[i]; ++r) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a[idx[0]][idx[0]] += c;
    } else {
      a[idx[0]][idx[1]] += c * half;
      a[idx[1]][idx[0]] += c * half;
    }
  }
  return a;
}

struct Factor {
  LinearForm form;
  int multiplicity;
};

std::optional<std::vector<Factor>> factor_quadric(const Poly& q);

std::optional<std::vector<Factor>> factor_quadric_with_diagonal(const Poly& q, const Mat& a, std::size_t i) {
  const auto& lead = a[i][i];
  Poly lin, rest;
  for (std::size_t j = 0; j < 4; ++j) {
    if (j == i) continue;
    lin += Poly::variable(static_cast<int>(j)).scaled(a[i][j] * Cyclotomic(1, Rational(2)));
    for (std::size_t l = 0; l < 4; ++l) {
      if (l == i) continue;
      rest += (Poly::variable(static_cast<int>(j)) * Poly::variable(static_cast<int>(l))).scaled(a[j][l]);
    }
  }
  const Poly disc = lin * lin - rest.scaled(lead * Cyclotomic(1, Rational(4)));
  const Poly base = Poly::variable(static_cast<int>(i)).scaled(lead * Cyclotomic(1, Rational(2))) + lin;
  if (disc.is_zero()) return std::vector<Factor>{{normalized(linear_form_of(base)), 2}};
  const Mat d = quadric_matrix(disc);
  if (rank_of(d) != 1) return std::nullopt;
  std::size_t j = 0;
  while (d[j][j].is_zero()) ++j;
  LinearForm ell;
  for (std::size_t l = 0; l < 4; ++l) ell[l] = d[j][l];
  // disc = ell^2 / d_jj
  const auto s = d[j][j].inverse().sqrt();
  if (!s) return std::nullopt;
  const Poly m = poly_of(ell).scaled(*s);
  (void)q;
  const auto f1 = normalized(linear_form_of(base + m));
  const auto f2 = normalized(linear_form_of(base - m));
  if (same_forms({f1}, {f2})) return std::vector<Factor>{{f1, 2}};
  return std::vector<Factor>{{f1, 1}, {f2, 1}};
}

std::optional<std::vector<Factor>> factor_quadric(const Poly& q) {
  const Mat a = quadric_matrix(q);
  const auto r = rank_of(a);
  if (r == 0 || r > 2) return std::nullopt;
  if (r == 1) {
    std::size_t i = 0;
    while (a[i][i].is_zero()) ++i;
    LinearForm ell;
    for (std::size_t l = 0; l < 4; ++l) ell[l] = a[i][l];
    return std::vector<Factor>{{normalized(ell), 2}};
  }
  for (std::size_t i = 0; i < 4; ++i)
    if (!a[i][i].is_zero()) return factor_quadric_with_diagonal(q, a, i);
  // No square terms: x_j -> x_j + x_i creates one, then map the factors back.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j || a[i][j].is_zero()) continue;
      std::array<Poly, kPolyVars> images;
      for (int v = 0; v < kPolyVars; ++v) images[static_cast<std::size_t>(v)] = Poly::variable(v);
      images[j] = Poly::variable(static_cast<int>(j)) + Poly::variable(static_cast<int>(i));
      const Poly shifted = q.substitute(images);
      auto factors = factor_quadric_with_diagonal(shifted, quadric_matrix(shifted), i);
      if (!factors) return std::nullopt;
      for (auto& f : *factors) {
        f.form[i] = f.form[i] - f.form[j];
        f.form = normalized(f.form);
      }
      return factors;
    }
  return std::nullopt;
}

std::optional<std::vector<Factor>> factor_form(const Poly& p) {
  const int deg = p.projective_degree();
  if (deg == 1) return std::vector<Factor>{{normalized(linear_form_of(p)), 1}};
  if (deg == 2) return factor_quadric(p);
  return std::nullopt;
}

std::vector<std::size_t> free_columns(const Subspace& sub) {
  std::vector<std::size_t> pivots;
  for (const auto& row : sub) {
    std::size_t p = 0;
    while (row[p].is_zero()) ++p;
    pivots.push_back(p);
  }
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < 4; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) out.push_back(c);
  return out;
}

/// Rational roots of a polynomial with rational coefficients (constant first).
std::vector<Rational> rational_roots(std::vector<Rational> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  std::vector<Rational> roots;
  if (c.size() < 2) return roots;
  std::size_t low = 0;
  while (c[low] == 0) ++low;
  if (low > 0) roots.push_back(Rational(0));
  c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(low));
  if (c.size() < 2) return roots;
  BigInt lcm = 1;
  for (const auto& v : c) lcm = boost::multiprecision::lcm(lcm, denominator_of(v));
  std::vector<BigInt> ints;
  for (const auto& v : c) ints.push_back(numerator_of(v * lcm));
  const auto divisors = [](BigInt v) {
    std::vector<BigInt> out;
    if (v < 0) v = -v;
    if (v > 100000) return out;
    for (BigInt d = 1; d <= v; ++d)
      if (v % d == 0) out.push_back(d);
    return out;
  };
  for (const auto& p : divisors(ints.front()))
    for (const auto& q : divisors(ints.back()))
      for (int sign : {1, -1}) {
        const Rational x = Rational(p * sign, q);
        Rational val = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) val = val * x + *it;
        if (val == 0 && std::find(roots.begin(), roots.end(), x) == roots.end()) roots.push_back(x);
      }
  std::sort(roots.begin(), roots.end());
  return roots;
}

/// Coefficients (constant first) of the degree <= deg polynomial f, by
/// interpolation at 0..deg; nullopt when some value is irrational.
std::optional<std::vector<Rational>> interpolate(const std::function<Cyclotomic(const Rational&)>& f, std::size_t deg) {
  std::vector<Rational> xs, coef;
  for (std::size_t i = 0; i <= deg; ++i) {
    const auto v = f(Rational(static_cast<long>(i)));
    if (!v.is_rational()) return std::nullopt;
    xs.push_back(Rational(static_cast<long>(i)));
    coef.push_back(v.rational_value());
  }
  for (std::size_t j = 1; j <= deg; ++j)
    for (std::size_t i = deg; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  std::vector<Rational> poly(deg + 1, Rational(0));
  for (std::size_t k = deg + 1; k-- > 0;) {
    std::vector<Rational> next(deg + 1, Rational(0));
    for (std::size_t i = 0; i < deg; ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xs[k];
    }
    next[0] += coef[k];
    poly = next;
  }
  return poly;
}

/// Rational roots of the first k x k minor of the pencil b + lambda*a (on
/// the given columns) that is not identically zero; nullopt when all vanish
/// identically or a value is irrational.
std::optional<std::vector<Rational>> minor_roots(const Mat& ma, const Mat& mb, const std::vector<std::size_t>& cols,
                                                 std::size_t k) {
  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> pick;
  const std::function<void(std::size_t)> choose = [&](std::size_t from) {
    if (pick.size() == k) {
      subsets.push_back(pick);
      return;
    }
    for (std::size_t i = from; i < cols.size(); ++i) {
      pick.push_back(cols[i]);
      choose(i + 1);
      pick.pop_back();
    }
  };
  choose(0);
  for (const auto& rows : subsets)
    for (const auto& cs : subsets) {
      const auto minor = interpolate(
          [&](const Rational& lambda) {
            Mat m(k, Vec(k));
            for (std::size_t i = 0; i < k; ++i)
              for (std::size_t j = 0; j < k; ++j) m[i][j] = mb[rows[i]][cs[j]] + ma[rows[i]][cs[j]] * Cyclotomic(1, lambda);
            return determinant(m);
          },
          k);
      if (!minor) return std::nullopt;
      if (std::all_of(minor->begin(), minor->end(), [](const Rational& v) { return v == 0; })) continue;
      return rational_roots(*minor);
    }
  return std::nullopt;
}

/// A member b + lambda*a of the pencil that factors. A factoring member has
/// rank <= 2, so lambda is a root of every 3x3 minor; when those vanish
/// identically, rank-one members are roots of the 2x2 minors.
std::optional<std::pair<Poly, std::vector<Factor>>> split_member(const Poly& a, const Poly& b,
                                                                 const Subspace& sub) {
  const auto cols = free_columns(sub);
  const Mat ma = quadric_matrix(a), mb = quadric_matrix(b);
  std::vector<Rational> candidates;
  for (std::size_t k : {3, 2})
    if (auto roots = minor_roots(ma, mb, cols, k)) candidates.insert(candidates.end(), roots->begin(), roots->end());
  for (int l = -3; l <= 3; ++l) candidates.push_back(Rational(l));
  for (const auto& lambda : candidates) {
    const Poly member = b + a.scaled(Cyclotomic(1, lambda));
    if (member.is_zero()) continue;
    if (auto f = factor_form(member)) return std::make_pair(member, *f);
  }
  return std::nullopt;
}

struct FiberSearch {
  std::vector<Subspace> found;
  std::vector<std::string> notes;

  void explore(const Subspace& sub, std::vector<Poly> gens) {
    if (sub.size() >= 4) return;
    std::vector<Poly> restricted;
    for (const auto& g : gens) {
      auto r = restrict_to(g, sub);
      if (r.is_constant() && !r.is_zero()) return;
      if (!r.is_zero()) restricted.push_back(std::move(r));
    }
    if (restricted.empty()) {
      found.push_back(sub);
      return;
    }
    std::optional<std::vector<Factor>> factors;
    std::size_t chosen = 0;
    for (; chosen < restricted.size(); ++chosen)
      if ((factors = factor_form(restricted[chosen]))) break;
    if (!factors) {
      for (std::size_t i = 0; i < restricted.size() && !factors; ++i)
        for (std::size_t j = 0; j < restricted.size() && !factors; ++j) {
          if (i == j || restricted[i].projective_degree() != 2 || restricted[j].projective_degree() != 2) continue;
          if (auto m = split_member(restricted[i], restricted[j], sub)) {
            restricted[j] = m->first;
            factors = m->second;
            chosen = j;
          }
        }
    }
    if (!factors) {
      std::string what;
      for (const auto& r : restricted) what += (what.empty() ? "" : ", ") + r.to_string();
      throw UnsupportedShape("fiber equations {" + what + "} on " + FiberComponent{sub, 0}.to_string() +
                             " do not split into linear forms over the coefficient field");
    }
    std::vector<Poly> rest;
    for (std::size_t i = 0; i < restricted.size(); ++i)
      if (i != chosen) rest.push_back(restricted[i]);
    for (const auto& f : *factors) {
      if (f.multiplicity > 1)
        notes.push_back(restricted[chosen].to_string() +
                        (sub.empty() ? std::string() : " on " + FiberComponent{sub, 0}.to_string()) + " vanishes to order " + std::to_string(f.multiplicity) + " along " + to_string(f.form) +
                        " = 0");
      Subspace next = sub;
      next.push_back(f.form);
      explore(reduce_subspace(next), rest);
    }
  }
};

}  // namespace

FiberDecomposition central_fiber_components(const std::vector<Poly>& generators) {
  std::vector<Poly> gens;
  for (const auto& g : generators) gens.push_back(g.with_zero({4, 5}));
  for (const auto& g : gens)
    if (!g.is_projectively_homogeneous()) throw UnsupportedShape("fiber equation " + g.to_string() + " is not homogeneous");
  FiberSearch search;
  search.explore({}, gens);

  std::vector<Subspace> unique;
  for (const auto& s : search.found)
    if (std::none_of(unique.begin(), unique.end(), [&](const Subspace& u) { return same_forms(u, s); }))
      unique.push_back(s);
  FiberDecomposition out;
  for (const auto& s : unique) {
    const bool inside_other = std::any_of(unique.begin(), unique.end(), [&](const Subspace& o) {
      return !same_forms(o, s) && zero_set_inside(s, o);
    });
    if (!inside_other) out.components.push_back({s, 3 - static_cast<int>(s.size())});
  }
  std::sort(out.components.begin(), out.components.end(),
            [](const FiberComponent& a, const FiberComponent& b) { return a.to_string() < b.to_string(); });
  std::set<std::string> seen;
  for (const auto& n : search.notes)
    if (seen.insert(n).second) out.multiplicity_notes.push_back(n);
  return out;
}

FiberDecomposition central_fiber_components(const EquivariantFamily& family) {
  return central_fiber_components(family.generators);
}

// ---------------------------------------------------------------------------
// Fixed loci

bool FixedPointReport::all_pass() const {
  return std::all_of(candidates.begin(), candidates.end(),
                     [](const CandidateResult& c) { return c.fixed && c.on_family; });
}

namespace {

std::array<Cyclotomic, kPolyVars> full_point(const ProjectivePoint& p) {
  return {p.coords[0], p.coords[1], p.coords[2], p.coords[3], p.uv[0], p.uv[1]};
}

bool on_family(const EquivariantFamily& family, const ProjectivePoint& p) {
  const auto pt = full_point(p);
  return std::all_of(family.generators.begin(), family.generators.end(),
                     [&](const Poly& g) { return g.evaluate(pt).is_zero(); });
}

std::string root_text(std::int64_t k) {
  return k == 0 ? "1" : k == 1 ? "e" : "e^" + std::to_string(k);
}

}  // namespace

FixedPointReport fixed_points_check(const EquivariantFamily& family, const std::vector<FixedCandidate>& candidates) {
  FixedPointReport rep;
  const int n = family.order;

  std::set<int> powers{1};
  for (const auto& c : candidates) powers.insert(c.power);

  for (int k : powers) {
    const auto act = action_power(family.action, k);
    const Mat m = to_mat(act.matrix);
    for (std::int64_t j = 0; j < n; ++j) {
      Mat shifted = m;
      for (std::size_t i = 0; i < 4; ++i) shifted[i][i] -= Cyclotomic::root(n, j);
      const auto basis = kernel(shifted, 4);
      if (basis.empty()) continue;
      Eigenspace es{k, j, {}};
      for (const auto& v : basis) es.basis.push_back({v[0], v[1], v[2], v[3]});
      const auto exponent = 2 * j > n ? j - n : j;
      rep.lines.push_back("sigma^" + std::to_string(k) + ": eigenvalue " + root_text(exponent) +
                          " on P^3 with projective dimension " + std::to_string(basis.size() - 1));
      rep.eigenspaces.push_back(std::move(es));
    }
    Mat nk = to_mat(act.uv);
    for (std::size_t i = 0; i < 2; ++i) nk[i][i] -= one();
    const auto uv_dim = kernel(nk, 2).size();
    rep.uv_fixed.push_back("sigma^" + std::to_string(k) + ": fixed (u,v) subspace of dimension " +
                           std::to_string(uv_dim));
  }

  for (const auto& cand : candidates) {
    CandidateResult res;
    res.label = cand.label;
    const auto act = action_power(family.action, cand.power);
    const std::string sigma = "sigma^" + std::to_string(cand.power);
    if (const auto* p = std::get_if<ProjectivePoint>(&cand.where)) {
      std::array<Cyclotomic, 4> image;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) image[i] += act.matrix[i][j] * p->coords[j];
      std::size_t lead = 0;
      while (lead < 4 && p->coords[lead].is_zero()) ++lead;
      bool proportional = lead < 4;
      if (proportional) {
        const auto lambda = image[lead] / p->coords[lead];
        for (std::size_t i = 0; i < 4; ++i)
          if (!(image[i] == lambda * p->coords[i])) proportional = false;
      }
      bool uv_fixed = true;
      for (std::size_t i = 0; i < 2; ++i) {
        Cyclotomic v;
        for (std::size_t j = 0; j < 2; ++j) v += act.uv[i][j] * p->uv[j];
        if (!(v == p->uv[i])) uv_fixed = false;
      }
      res.fixed = proportional && uv_fixed;
      res.on_family = on_family(family, *p);
      Mat jac;
      const auto pt = full_point(*p);
      for (const auto& g : family.generators) {
        Vec row;
        for (int v = 0; v < kPolyVars; ++v) row.push_back(g.derivative(v).evaluate(pt));
        jac.push_back(std::move(row));
      }
      res.jacobian_rank = static_cast<int>(rank_of(jac));
      res.lines.push_back(p->to_string() + (res.fixed ? " is fixed by " : " is not fixed by ") + sigma);
      res.lines.push_back(std::string(res.on_family ? "lies" : "does not lie") + " on the family");
      res.lines.push_back("jacobian rank " + std::to_string(*res.jacobian_rank) + " of " +
                          std::to_string(family.generators.size()));
    } else {
      const int var = std::get<HyperplaneTag>(cand.where).var;
      const auto vi = static_cast<std::size_t>(var);
      const Mat m = to_mat(act.matrix);
      std::optional<Cyclotomic> lambda;
      bool pointwise = true;
      for (std::size_t j = 0; j < 4 && pointwise; ++j) {
        if (j == vi) continue;
        if (!lambda) lambda = m[j][j];
        for (std::size_t r = 0; r < 4; ++r)
          if (!(m[r][j] == (r == j ? *lambda : Cyclotomic()))) pointwise = false;
      }
      const bool uv_identity = mat_equal(to_mat(act.uv), identity(2));
      res.fixed = pointwise && uv_identity;
      const std::string name = poly_var_names()[vi] + " = 0";
      res.lines.push_back("{" + name + "} x C^2 is " + (res.fixed ? "" : "not ") + "pointwise fixed by " + sigma);
      try {
        const auto fiber = central_fiber_components(family);
        LinearForm hyper;
        hyper[vi] = one();
        res.on_family = std::any_of(fiber.components.begin(), fiber.components.end(), [&](const FiberComponent& c) {
          return !zero_set_inside(c.equations, {hyper});
        });
        res.lines.push_back(res.on_family ? "the family is not contained in {" + name + "}, so it cuts a divisor"
                                          : "every fiber component lies in {" + name + "}");
      } catch (const UnsupportedShape& e) {
        res.on_family = false;
        res.lines.push_back(std::string("divisor check unsupported: ") + e.what());
      }
    }
    rep.candidates.push_back(std::move(res));
  }

  // Isolated fixed points of sigma on the family when sigma fixes only u = v = 0.
  Mat n1 = to_mat(family.action.uv);
  for (std::size_t i = 0; i < 2; ++i) n1[i][i] -= one();
  if (kernel(n1, 2).empty()) {
    bool complete = true;
    for (const auto& es : rep.eigenspaces) {
      if (es.power != 1) continue;
      if (es.basis.size() != 1) {
        complete = false;
        continue;
      }
      ProjectivePoint p{es.basis[0], {Cyclotomic(), Cyclotomic()}};
      if (on_family(family, p)) rep.isolated_on_family.push_back(p);
    }
    std::string pts;
    for (const auto& p : rep.isolated_on_family) pts += (pts.empty() ? "" : ", ") + p.to_string();
    rep.lines.push_back("fixed points of sigma on the family: " + (pts.empty() ? std::string("none") : pts) +
                        (complete ? "" : " (eigenspaces of positive dimension not examined)"));
  }
  return rep;
}

FixedPointReport fixed_points_check(const EquivariantFamily& family) {
  return fixed_points_check(family, family.candidates);
}

// ---------------------------------------------------------------------------
// Family text format and registry

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

Cyclotomic parse_constant(const std::string& text, int n, const std::map<char, std::int64_t>& params) {
  const Poly p = parse_poly(text, n, params);
  if (!p.is_constant()) throw ParseError("expected a constant, got \"" + text + "\"");
  return p.constant_term().in_field(n);
}

/// Splits "... power K" off the end.
int take_power(std::string& rest) {
  const auto pos = rest.rfind("power");
  if (pos == std::string::npos) return 1;
  const auto value = trim(rest.substr(pos + 5));
  rest = trim(rest.substr(0, pos));
  try {
    std::size_t used = 0;
    const int k = std::stoi(value, &used);
    if (used != value.size() || k < 1) throw ParseError("");
    return k;
  } catch (const std::exception&) {
    throw ParseError("bad power \"" + value + "\"");
  }
}

}  // namespace

EquivariantFamily parse_family(const std::string& text, std::optional<std::int64_t> k) {
  EquivariantFamily fam;
  fam.name = "custom";
  std::vector<std::pair<std::string, std::string>> items;
  std::map<char, std::int64_t> params;
  std::optional<int> order;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    const auto key = line.substr(0, sp);
    const auto rest = sp == std::string::npos ? std::string() : trim(line.substr(sp));
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (key == "order") {
      try {
        std::size_t used = 0;
        order = std::stoi(rest, &used);
        if (used != rest.size() || *order < 1) throw ParseError("");
      } catch (const std::exception&) {
        throw ParseError(where + "bad order \"" + rest + "\"");
      }
    } else if (key == "name") {
      fam.name = rest;
    } else if (key == "param") {
      const auto parts = split_top(rest, '=');
      if (parts[0].size() != 1) throw ParseError(where + "parameter names are single letters");
      std::int64_t value = 1;
      if (parts.size() == 2) {
        try {
          value = std::stoll(parts[1]);
        } catch (const std::exception&) {
          throw ParseError(where + "bad parameter value \"" + parts[1] + "\"");
        }
      }
      if (k) value = *k;
      if (value < 1) throw FamilyError(fam.name + ": parameter " + parts[0] + " must be >= 1");
      params[parts[0][0]] = value;
      fam.param = value;
    } else if (key == "gen" || key == "row" || key == "uv-row" || key == "fixed") {
      items.emplace_back(key, rest);
    } else {
      throw ParseError(where + "unknown keyword \"" + key + "\"");
    }
  }
  if (!order) throw ParseError("missing \"order N\" line");
  fam.order = *order;
  const int n = *order;

  int rows = 0, uv_rows = 0;
  fam.action.uv = {{{one(), Cyclotomic()}, {Cyclotomic(), one()}}};
  for (const auto& [key, rest] : items) {
    if (key == "gen") {
      fam.generators.push_back(parse_poly(rest, n, params));
    } else if (key == "row") {
      const auto parts = split_top(rest, ',');
      if (parts.size() != 4) throw ParseError("row needs four entries: \"" + rest + "\"");
      if (rows >= 4) throw ParseError("more than four rows");
      for (std::size_t j = 0; j < 4; ++j)
        fam.action.matrix[static_cast<std::size_t>(rows)][j] = parse_constant(parts[j], n, params);
      ++rows;
    } else if (key == "uv-row") {
      const auto parts = split_top(rest, ',');
      if (parts.size() != 2) throw ParseError("uv-row needs two entries: \"" + rest + "\"");
      if (uv_rows >= 2) throw ParseError("more than two uv-rows");
      for (std::size_t j = 0; j < 2; ++j)
        fam.action.uv[static_cast<std::size_t>(uv_rows)][j] = parse_constant(parts[j], n, params);
      ++uv_rows;
    } else {
      std::string body = rest;
      FixedCandidate cand;
      if (body.rfind("point", 0) == 0) {
        body = trim(body.substr(5));
        cand.power = take_power(body);
        const auto halves = split_top(body, ';');
        if (halves.size() != 2) throw ParseError("fixed point needs \"a, b, c, d; p, q\"");
        const auto xs = split_top(halves[0], ',');
        const auto us = split_top(halves[1], ',');
        if (xs.size() != 4 || us.size() != 2) throw ParseError("fixed point needs \"a, b, c, d; p, q\"");
        ProjectivePoint p;
        for (std::size_t i = 0; i < 4; ++i) p.coords[i] = parse_constant(xs[i], n, params);
        for (std::size_t i = 0; i < 2; ++i) p.uv[i] = parse_constant(us[i], n, params);
        cand.label = p.to_string();
        cand.where = p;
      } else if (body.rfind("hyperplane", 0) == 0) {
        body = trim(body.substr(10));
        cand.power = take_power(body);
        if (body.size() != 1 || poly_var_index(body[0]) < 0 || poly_var_index(body[0]) > 3)
          throw ParseError("fixed hyperplane needs one of x, y, z, t");
        cand.where = HyperplaneTag{poly_var_index(body[0])};
        cand.label = body + " = 0";
      } else {
        throw ParseError("fixed needs \"point\" or \"hyperplane\"");
      }
      if (cand.power > 1) cand.label += " under sigma^" + std::to_string(cand.power);
      fam.candidates.push_back(std::move(cand));
    }
  }
  if (rows != 4) throw ParseError("action needs exactly four rows");
  if (uv_rows != 0 && uv_rows != 2) throw ParseError("give both uv-rows or neither");
  validate_family(fam);
  return fam;
}

namespace {

const std::map<std::string, std::string>& registry() {
  static const std::map<std::string, std::string> r = {
      {"elliptic-A3",
       "name elliptic-A3\n"
       "order 8\n"
       "gen x*y - u*t^2\n"
       "gen (x + y + z)*z - v*t^2\n"
       "row 0, 0, e^-3, 0\n"
       "row e, e, e, 0\n"
       "row 0, -e, 0, 0\n"
       "row 0, 0, 0, 1\n"
       "uv-row 0, e^-2\n"
       "uv-row -e^2, 0\n"
       "fixed point 0, 0, 0, 1; 0, 0\n"
       "fixed hyperplane t power 4\n"},
      {"cyclic-quotient-A1",
       "name cyclic-quotient-A1\n"
       "order 4\n"
       "gen x*y - u*t^2\n"
       "gen z^2 - u*(x^2 + y^2) - v*t^2\n"
       "row 0, 1, 0, 0\n"
       "row -1, 0, 0, 0\n"
       "row 0, 0, e, 0\n"
       "row 0, 0, 0, 1\n"
       "uv-row -1, 0\n"
       "uv-row 0, -1\n"
       "fixed point 0, 0, 0, 1; 0, 0\n"},
      {"cAx4-family",
       "name cAx4-family\n"
       "order 4\n"
       "param k = 1\n"
       "gen x*y - (u^(2k+1) + v)*t^2\n"
       "gen z^2 - u*(x^2 - y^2) - v*t^2\n"
       "row 0, e, 0, 0\n"
       "row e, 0, 0, 0\n"
       "row 0, 0, e, 0\n"
       "row 0, 0, 0, 1\n"
       "uv-row -1, 0\n"
       "uv-row 0, -1\n"
       "fixed point 0, 0, 0, 1; 0, 0\n"},
      {"multiple-fiber",
       "name multiple-fiber\n"
       "order 2\n"
       "gen x*y - z^2 - u*t^2\n"
       "gen x^2 - u*y^2 - v*(z^2 + t^2)\n"
       "row -1, 0, 0, 0\n"
       "row 0, -1, 0, 0\n"
       "row 0, 0, -1, 0\n"
       "row 0, 0, 0, 1\n"
       "fixed point 0, 0, 0, 1; 0, 0\n"
       "fixed hyperplane t\n"},
      {"two-nodes",
       "name two-nodes\n"
       "order 2\n"
       "gen x^2 - u*z^2 - v*t^2\n"
       "gen y^2 - u*t^2 - v*z^2\n"
       "row -1, 0, 0, 0\n"
       "row 0, -1, 0, 0\n"
       "row 0, 0, -1, 0\n"
       "row 0, 0, 0, 1\n"
       "fixed point 0, 0, 0, 1; 0, 0\n"
       "fixed hyperplane t\n"},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& builtin_example_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

EquivariantFamily builtin_example(const std::string& name, std::optional<std::int64_t> k) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const auto& n : builtin_example_names()) known += (known.empty() ? "" : ", ") + n;
    throw FamilyError("unknown family \"" + name + "\" (known: " + known + ")");
  }
  if (k && *k < 1) throw FamilyError(name + ": k must be >= 1");
  return parse_family(it->second, k);
}

}  // namespace tgerm
