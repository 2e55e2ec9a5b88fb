#pragma once

// Two-dimensional quotient singularities: DuVal types, cyclic quotients and
// their Hirzebruch-Jung chains, the table of involution quotients of DuVal
// points, topological indices, and the canonical-cover table of terminal
// threefold points.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tgerm {

enum class DuValFamily { A, D, E };

struct DuValType {
  DuValFamily family;
  int n;

  /// Throws std::invalid_argument outside A_{>=1}, D_{>=4}, E_{6,7,8}.
  DuValType(DuValFamily family, int n);
  static DuValType A(int n) { return {DuValFamily::A, n}; }
  static DuValType D(int n) { return {DuValFamily::D, n}; }
  static DuValType E(int n) { return {DuValFamily::E, n}; }

  bool operator==(const DuValType&) const = default;
  std::string to_string() const;  // "A3", "D5", "E6"
};

/// 1/n(1,q) with 1 <= q < n, gcd(n,q) = 1, n >= 2.
struct CyclicQuot {
  std::int64_t n;
  std::int64_t q;

  CyclicQuot(std::int64_t n, std::int64_t q);
  bool operator==(const CyclicQuot&) const = default;
  std::string to_string() const;  // "1/8(1,3)"
};

struct SmoothPoint {
  bool operator==(const SmoothPoint&) const = default;
};

using SurfacePoint = std::variant<SmoothPoint, DuValType, CyclicQuot>;
std::string to_string(const SurfacePoint& s);

/// Parses "A3", "D5", "E6" (case-insensitive family letter).
std::optional<DuValType> parse_duval(const std::string& text);

/// n/q = b1 - 1/(b2 - 1/(...)), all b_i >= 2.
std::vector<std::int64_t> hj_expand(std::int64_t n, std::int64_t q);

/// Folds a chain back into the reduced fraction (n, q).
std::pair<std::int64_t, std::int64_t> hj_fold(const std::vector<std::int64_t>& chain);

struct DualGraph {
  std::vector<std::int64_t> self_intersections;  // all <= -2
  bool operator==(const DualGraph&) const = default;
};

DualGraph dual_graph(const CyclicQuot& cq);

/// Topological index: order of the local fundamental group.
std::int64_t topological_index(const DuValType& t);
std::int64_t topological_index(const CyclicQuot& c);
std::int64_t topological_index(const SurfacePoint& s);

/// Row shapes of the involution-quotient table, with the row parameter k.
struct CataneseRow {
  int number;
  std::string cover;     // e.g. "A_{2k+1}"
  std::string quotient;  // e.g. "D_{k+3}"
  int min_k;             // smallest admissible k, or -1 when the row has no parameter
};

/// All ten rows.
const std::vector<CataneseRow>& catanese_table();

/// Quotient of `type` by an involution of table row `row`. The row
/// parameter is read off `type`. Throws std::invalid_argument when the type
/// does not fit the row.
SurfacePoint catanese_quotient(const DuValType& type, int row);

/// The DuVal point of row `row` at parameter k (row 1 needs a type, so it is
/// instantiated with A_k).
DuValType catanese_cover(int row, int k);

enum class IndexVerdict { Fail, Pass, PassForcingA };
std::string to_string(IndexVerdict v);

/// A DuVal divisor through a terminal point of index m: the surface's
/// topological index must be divisible by m; at equality it must be
/// A_{m-1} and the threefold point is a cyclic quotient.
IndexVerdict index_divisibility_check(std::int64_t m, const DuValType& surface);

enum class TerminalClass { cA, cAx2, cD2, cD3, cE2, cAx4 };
std::string to_string(TerminalClass c);
std::optional<TerminalClass> parse_terminal_class(const std::string& text);

struct CoverRow {
  TerminalClass cls;
  std::int64_t index;
  bool exceptional_series;
  SurfacePoint cover;  // general elephant on the canonical cover
  DuValType base;      // general elephant of the point
  std::int64_t degree;
};

/// Row of the canonical-cover table at parameter k (and index m for cA/m).
/// Throws std::invalid_argument for combinations outside the table.
CoverRow canonical_cover_row(TerminalClass cls, std::int64_t k, std::int64_t m = 0);

/// Terminal classes of index m whose general elephant can be `base`.
std::vector<TerminalClass> classes_with_elephant(const DuValType& base, std::int64_t m);

}  // namespace tgerm
