#pragma once

// Families Y in P^3(x,y,z,t) x C^2(u,v) cut out by polynomials, with a
// finite cyclic linear action: ideal equivariance, the fiber over u = v = 0
// and fixed loci.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tgerm/cyclotomic.hpp"
#include "tgerm/polynomial.hpp"

namespace tgerm {

using Matrix4 = std::array<std::array<Cyclotomic, 4>, 4>;
using Matrix2 = std::array<std::array<Cyclotomic, 2>, 2>;

/// Row i is the image of coordinate i: x_i -> sum_j m[i][j] x_j, and
/// likewise (u, v) -> uv * (u, v). Polynomials transform by p -> p(M X).
struct Action {
  Matrix4 matrix;
  Matrix2 uv;
};

struct ProjectivePoint {
  std::array<Cyclotomic, 4> coords;
  std::array<Cyclotomic, 2> uv;
  std::string to_string() const;
};

/// The hyperplane {x_var = 0}, var in 0..3.
struct HyperplaneTag {
  int var = 3;
};

struct FixedCandidate {
  std::string label;
  std::variant<ProjectivePoint, HyperplaneTag> where;
  int power = 1;  // test against sigma^power
};

struct EquivariantFamily {
  std::string name;
  int order = 1;
  std::vector<Poly> generators;
  Action action;
  std::optional<std::int64_t> param;
  std::vector<FixedCandidate> candidates;
};

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generators homogeneous in x..t, matrices invertible, sigma^order = id on
/// both factors up to a projective scalar. Throws FamilyError.
void validate_family(const EquivariantFamily& family);

Poly apply_action(const Poly& p, const Action& action);
Poly apply_action_power(const Poly& p, const Action& action, int k);
Action action_power(const Action& action, int k);

struct EquivarianceReport {
  bool ok = false;
  std::vector<std::vector<Cyclotomic>> scalars;  // sigma(g_i) = sum_j scalars[i][j] g_j
  std::vector<std::string> residuals;           // per generator, empty when in the span
  bool invertible = false;
  bool order_identity = false;  // scalars^order == identity
  std::vector<std::string> lines;
};

EquivarianceReport check_ideal_equivariance(const EquivariantFamily& family);

class UnsupportedShape : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using LinearForm = std::array<Cyclotomic, 4>;
std::string to_string(const LinearForm& f);

struct FiberComponent {
  std::vector<LinearForm> equations;  // reduced echelon basis
  int dimension = 0;                  // projective
  std::string to_string() const;
};

struct FiberDecomposition {
  std::vector<FiberComponent> components;
  std::vector<std::string> multiplicity_notes;
  std::size_t count() const { return components.size(); }
};

/// Components of {g_i(x,y,z,t;0,0) = 0} when every step factors into linear
/// forms over the coefficient field. Throws UnsupportedShape otherwise.
FiberDecomposition central_fiber_components(const std::vector<Poly>& generators);
FiberDecomposition central_fiber_components(const EquivariantFamily& family);

struct CandidateResult {
  std::string label;
  bool fixed = false;
  bool on_family = false;
  std::optional<int> jacobian_rank;  // points only
  std::vector<std::string> lines;
};

struct Eigenspace {
  int power = 1;
  std::int64_t exponent = 0;  // eigenvalue e^exponent
  std::vector<std::array<Cyclotomic, 4>> basis;
};

struct FixedPointReport {
  std::vector<CandidateResult> candidates;
  std::vector<Eigenspace> eigenspaces;  // of M^power for every candidate power
  std::vector<std::string> uv_fixed;    // fixed subspace of the (u,v) action per power
  /// Isolated projective fixed points of sigma lying on the family over the
  /// fixed (u,v) locus, when that locus is the origin.
  std::vector<ProjectivePoint> isolated_on_family;
  bool all_pass() const;
  std::vector<std::string> lines;
};

FixedPointReport fixed_points_check(const EquivariantFamily& family, const std::vector<FixedCandidate>& candidates);
FixedPointReport fixed_points_check(const EquivariantFamily& family);

/// "elliptic-A3", "cyclic-quotient-A1", "cAx4-family", "multiple-fiber",
/// "two-nodes". Throws FamilyError on unknown names or k < 1.
EquivariantFamily builtin_example(const std::string& name, std::optional<std::int64_t> k = std::nullopt);
const std::vector<std::string>& builtin_example_names();

/// Line format: "order N", "name S", "param k [= V]", "gen EXPR",
/// "row a, b, c, d" (four times), "uv-row a, b" (twice),
/// "fixed point a, b, c, d; p, q [power K]", "fixed hyperplane VAR [power K]".
/// "#" starts a comment. Throws ParseError or FamilyError.
EquivariantFamily parse_family(const std::string& text, std::optional<std::int64_t> k = std::nullopt);

}  // namespace tgerm
