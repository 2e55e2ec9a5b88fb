#pragma once

// Bounded exhaustive search over normalized germ data for a fixed
// (mbar, d) cell, filtering by structural predicates, the general-elephant
// split, the involution-quotient table and the global invariant budget.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgerm/germ.hpp"
#include "tgerm/invariants.hpp"

namespace tgerm {

enum class FilterMode { Strict, Binomial };
std::string to_string(FilterMode m);
std::optional<FilterMode> parse_filter_mode(const std::string& text);

struct Caps {
  std::optional<std::int64_t> order_cap;      // each of a1, a2, a3; default 3*mbar
  std::optional<std::int64_t> pair_sum_cap;   // a1 + a2; default 3*mbar
  std::optional<std::int64_t> generator_cap;  // i_P searches; default per germ
  unsigned threads = 0;                       // 0: hardware concurrency

  std::int64_t order_cap_for(std::int64_t mbar) const { return order_cap.value_or(3 * mbar); }
  std::int64_t pair_sum_cap_for(std::int64_t mbar) const { return pair_sum_cap.value_or(3 * mbar); }
};

/// Canonical candidates of the cell, sorted, each passing validate().
std::vector<NormalizedGerm> enumerate_candidates(std::int64_t mbar, std::int64_t d, const Caps& caps = {});

/// Least (weights, orders) over the x1<->x2 swap and the character changes
/// x -> u*x with gcd(u, m) = 1, u == 1 mod mbar.
NormalizedGerm canonicalize(const NormalizedGerm& germ);

struct InvolutionAnalysis {
  bool admissible = false;
  bool forces_cyclic_quotient = false;
  std::vector<std::string> lines;  // one verdict per table row
};

/// For a good-elephant germ with mbar > 1: the base is the quotient of a
/// DuVal elephant by an involution and is a cyclic point of index d.
InvolutionAnalysis involution_analysis(const NormalizedGerm& germ);

struct Certificate {
  std::string kind;  // "predicate", "involution", "budget", "search"
  std::vector<std::string> lines;
};

struct Survivor {
  NormalizedGerm germ;
  std::string branch;  // "main-ord1" or "contains-curve"
  InvariantReport invariants;
  GlobalReport global;
  std::string tag;     // theorem case or "unmatched"
};

struct Exclusion {
  NormalizedGerm germ;
  std::string branch;
  std::string failed;
  Certificate certificate;
  std::optional<InvariantReport> invariants;
};

struct SurvivorReport {
  std::int64_t mbar = 0;
  std::int64_t d = 0;
  FilterMode mode = FilterMode::Binomial;
  std::int64_t order_cap = 0;
  std::int64_t pair_sum_cap = 0;
  std::optional<std::int64_t> generator_cap;
  std::vector<Survivor> survivors;
  std::vector<Exclusion> excluded;
  std::vector<Exclusion> inconclusive;  // a search ran out of room below its cap

  std::size_t candidate_count() const { return survivors.size() + excluded.size() + inconclusive.size(); }
  std::vector<std::string> unmatched() const;
};

SurvivorReport classify(std::int64_t mbar, std::int64_t d, FilterMode mode, const Caps& caps = {});

/// Classifies an explicit candidate list (canonicalized and deduplicated
/// first, so the result does not depend on its order).
SurvivorReport classify_candidates(std::int64_t mbar, std::int64_t d, std::span<const NormalizedGerm> candidates,
                                   FilterMode mode, const Caps& caps = {});

/// Classification case instantiated by a germ: "main-1.(i)".."main-1.(v)",
/// "main-2.(i)", "main-2.(ii)" or "unmatched".
std::string match_theorem_pattern(const NormalizedGerm& germ);

void match_theorem_patterns(std::vector<Survivor>& survivors);

}  // namespace tgerm
