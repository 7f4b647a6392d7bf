#include "commassoc/assoc.hpp"

#include <algorithm>

#include "commassoc/errors.hpp"

namespace commassoc {

std::string_view verdict_name(EventualVerdict::Kind k) {
  switch (k) {
    case EventualVerdict::Kind::Yes:
      return "yes";
    case EventualVerdict::Kind::No:
      return "no";
    case EventualVerdict::Kind::BudgetExceeded:
      return "budget_exceeded";
  }
  return "?";
}

std::pair<TreeExpr, TreeExpr> pair_exprs(const TreePair& p) {
  return {expr_from_tree(p.source()), expr_from_tree(p.target())};
}

EventualVerdict eventually_satisfies(const FiniteGroup& g, const TreePair& p,
                                     const SearchOptions& opts,
                                     const BpSequence* bp) {
  EventualVerdict v;
  v.reduced = reduce_pair(p);
  const auto [s, t] = pair_exprs(v.reduced);
  BpSequence local;
  if (!bp) {
    local = bp_sequence(g);
    bp = &local;
  }
  // B_0 ⊇ B_1 ⊇ ... so the first satisfying set gives the least witness.
  for (std::size_t q = 0; q < bp->distinct(); ++q) {
    const Verdict sat = satisfies(g, bp->sets[q], s, t, opts);
    if (sat.holds()) {
      v.kind = EventualVerdict::Kind::Yes;
      v.witness_p = static_cast<int>(q);
      v.certificate.clear();
      return v;
    }
    if (sat.outcome == Outcome::BudgetExceeded) {
      v.kind = EventualVerdict::Kind::BudgetExceeded;
      v.certificate.clear();
      return v;
    }
    v.certificate.push_back(
        {static_cast<int>(q), bp->sets[q], *sat.counterexample});
  }
  v.kind = EventualVerdict::Kind::No;
  return v;
}

bool recheck_certificate(const FiniteGroup& g, const EventualVerdict& v) {
  if (!v.no() || v.certificate.empty()) return false;
  const auto [s, t] = pair_exprs(v.reduced);
  for (const FailingSet& f : v.certificate) {
    for (const auto& [var, val] : f.counterexample)
      if (!f.set.contains(val)) return false;
    if (evaluate(s, g, f.counterexample) == evaluate(t, g, f.counterexample))
      return false;
  }
  return true;
}

Verdict check_instance_direct(const FiniteGroup& g, const TreePair& p,
                              const SearchOptions& opts) {
  const auto [s, t] = pair_exprs(p);
  return satisfies(g, Subset::all(g.order()), s, t, opts);
}

TreePair expand_by_full_trees(const TreePair& p, int q) {
  const std::vector<BinaryTree> subs(p.leaf_count(), full_tree(q));
  return TreePair(graft_all(p.source(), subs), graft_all(p.target(), subs));
}

LeviResult levi_check(const FiniteGroup& g, const SearchOptions& opts) {
  return {check_instance_direct(g, generator_pair(), opts),
          nilpotency_class(g)};
}

std::vector<TreePair> enumerate_reduced_pairs(std::size_t max_leaves,
                                              std::size_t leaves_cap) {
  if (max_leaves > leaves_cap)
    throw CapExceeded("max leaves " + std::to_string(max_leaves) +
                      " exceeds cap " + std::to_string(leaves_cap));
  std::vector<TreePair> out;
  for (std::size_t n = 1; n <= max_leaves; ++n) {
    const auto trees = all_trees(n);
    std::vector<std::vector<std::size_t>> carets;
    carets.reserve(trees.size());
    for (const auto& t : trees) carets.push_back(free_carets(t));
    for (std::size_t i = 0; i < trees.size(); ++i)
      for (std::size_t j = 0; j < trees.size(); ++j) {
        if (i == j) continue;
        const auto& a = carets[i];
        const auto& b = carets[j];
        std::vector<std::size_t> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                              std::back_inserter(common));
        if (common.empty()) out.emplace_back(trees[i], trees[j]);
      }
  }
  return out;
}

SurveyReport assoc_survey(const FiniteGroup& g, std::size_t max_leaves,
                          const SearchOptions& opts, std::size_t leaves_cap) {
  SurveyReport r;
  r.group = g.name();
  r.max_leaves = max_leaves;
  const BpSequence bp = bp_sequence(g);
  for (auto& pair : enumerate_reduced_pairs(max_leaves, leaves_cap)) {
    EventualVerdict v = eventually_satisfies(g, pair, opts, &bp);
    switch (v.kind) {
      case EventualVerdict::Kind::Yes:
        ++r.yes;
        break;
      case EventualVerdict::Kind::No:
        ++r.no;
        break;
      case EventualVerdict::Kind::BudgetExceeded:
        ++r.budget;
        break;
    }
    r.entries.push_back({std::move(pair), std::move(v)});
  }
  return r;
}

bool TheoremReport::pass() const {
  return std::all_of(groups.begin(), groups.end(),
                     [](const TheoremEntry& e) { return e.consistent(); });
}

TheoremReport verify_main_theorem(const std::vector<FiniteGroup>& groups,
                                  std::size_t max_leaves,
                                  const SearchOptions& opts,
                                  std::size_t leaves_cap) {
  TheoremReport report;
  for (const FiniteGroup& g : groups) {
    TheoremEntry e;
    e.group = g.name();
    e.solvable = is_solvable(g);
    e.survey = assoc_survey(g, max_leaves, opts, leaves_cap);
    e.any_yes = e.survey.yes > 0;
    report.groups.push_back(std::move(e));
  }
  return report;
}

}  // namespace commassoc
