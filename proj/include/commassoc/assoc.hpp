#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "commassoc/expr.hpp"
#include "commassoc/group.hpp"
#include "commassoc/thompson.hpp"

namespace commassoc {

/// One failing B_p set in a "never satisfied" certificate.
struct FailingSet {
  int p = 0;
  Subset set;
  Assignment counterexample;
};

/// Outcome of deciding whether G eventually satisfies an instance.
struct EventualVerdict {
  enum class Kind { Yes, No, BudgetExceeded };
  Kind kind = Kind::Yes;
  /// Least p with B_p(G) |= s ~ t (Yes only).
  int witness_p = 0;
  /// One entry per distinct B_p set (No only).
  std::vector<FailingSet> certificate;
  /// The reduced pair the verdict refers to.
  TreePair reduced;

  bool yes() const noexcept { return kind == Kind::Yes; }
  bool no() const noexcept { return kind == Kind::No; }
};
std::string_view verdict_name(EventualVerdict::Kind k);

/// The two sides of a pair as expressions over x1..xn.
std::pair<TreeExpr, TreeExpr> pair_exprs(const TreePair& p);

/// Reduces p and scans the B_p sequence of G for the least set satisfying
/// it. `bp` may pass a precomputed bp_sequence(g).
EventualVerdict eventually_satisfies(const FiniteGroup& g, const TreePair& p,
                                     const SearchOptions& opts = {},
                                     const BpSequence* bp = nullptr);

/// Evaluates the certificate assignments of a No verdict directly;
/// true when every one of them separates the two sides.
bool recheck_certificate(const FiniteGroup& g, const EventualVerdict& v);

/// G |= s' ~ t' for the pair exactly as given.
Verdict check_instance_direct(const FiniteGroup& g, const TreePair& p,
                              const SearchOptions& opts = {});

/// The pair with full_tree(q) hung at every leaf.
TreePair expand_by_full_trees(const TreePair& p, int q);

struct LeviResult {
  Verdict direct;
  std::optional<int> nilpotency_class;
  bool associative() const noexcept { return direct.holds(); }
  bool class_at_most_2() const noexcept {
    return nilpotency_class && *nilpotency_class <= 2;
  }
  bool consistent() const noexcept {
    return direct.outcome != Outcome::BudgetExceeded &&
           associative() == class_at_most_2();
  }
};
LeviResult levi_check(const FiniteGroup& g, const SearchOptions& opts = {});

inline constexpr std::size_t kDefaultMaxLeaves = 7;

/// Non-identity reduced pairs with at most max_leaves leaves, ordered by
/// leaf count, then source text, then target text. Throws CapExceeded.
std::vector<TreePair> enumerate_reduced_pairs(
    std::size_t max_leaves, std::size_t leaves_cap = kDefaultMaxLeaves);

struct SurveyEntry {
  TreePair pair;
  EventualVerdict verdict;
};

struct SurveyReport {
  std::string group;
  std::size_t max_leaves = 0;
  std::vector<SurveyEntry> entries;
  std::size_t yes = 0, no = 0, budget = 0;
};

SurveyReport assoc_survey(const FiniteGroup& g, std::size_t max_leaves,
                          const SearchOptions& opts = {},
                          std::size_t leaves_cap = kDefaultMaxLeaves);

struct TheoremEntry {
  std::string group;
  bool solvable = false;
  bool any_yes = false;
  SurveyReport survey;
  /// A Yes on a non-solvable group would contradict the theorem.
  bool consistent() const noexcept { return !any_yes || solvable; }
};

struct TheoremReport {
  std::vector<TheoremEntry> groups;
  bool pass() const;
};

TheoremReport verify_main_theorem(const std::vector<FiniteGroup>& groups,
                                  std::size_t max_leaves,
                                  const SearchOptions& opts = {},
                                  std::size_t leaves_cap = kDefaultMaxLeaves);

}  // namespace commassoc
