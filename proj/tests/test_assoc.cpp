#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "commassoc/assoc.hpp"
#include "commassoc/errors.hpp"
#include "oracle.hpp"

using namespace commassoc;

namespace {

const TreePair kA = generator_pair();

// Reduced means no index is a free caret of both trees.
bool oracle_reduced(const TreePair& p) {
  const auto a = oracle::free_carets(oracle::parse(render_tree(p.source())));
  const auto b = oracle::free_carets(oracle::parse(render_tree(p.target())));
  for (int i : a)
    if (std::find(b.begin(), b.end(), i) != b.end()) return false;
  return true;
}

std::vector<std::string> solvable_list() {
  std::vector<std::string> names;
  for (int n = 1; n <= 12; ++n) names.push_back("cyclic(" + std::to_string(n) + ")");
  for (int n = 3; n <= 6; ++n) names.push_back("dihedral(" + std::to_string(n) + ")");
  for (const char* s : {"quaternion8", "heisenberg(3)", "symmetric(3)", "symmetric(4)",
                        "alternating(4)"})
    names.emplace_back(s);
  return names;
}

// G |= s' ~ t' on the literal expanded pair: exhaustive when small, seeded
// uniform samples otherwise.
struct LiteralCheck {
  bool holds = true;
  bool exhaustive = false;
};

LiteralCheck literal_check(const FiniteGroup& g, const TreePair& expanded) {
  const auto [s, t] = pair_exprs(expanded);
  const std::size_t vars = expanded.leaf_count();
  LiteralCheck out;
  if (std::pow(static_cast<double>(g.order()), static_cast<double>(vars)) <= 2e6) {
    out.exhaustive = true;
    SearchOptions o;
    o.samples = 0;
    out.holds = check_instance_direct(g, expanded, o).holds();
    return out;
  }
  std::mt19937_64 rng(vars * 1000 + g.order());
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
  Assignment a;
  for (int i = 0; i < 20000 && out.holds; ++i) {
    for (std::size_t v = 1; v <= vars; ++v) a[static_cast<int>(v)] = pick(rng);
    out.holds = evaluate(s, g, a) == evaluate(t, g, a);
  }
  return out;
}

}  // namespace

TEST_CASE("pair expressions") {
  const auto [s, t] = pair_exprs(kA);
  CHECK(render_expr(s) == "[[x1, x2], x3]");
  CHECK(render_expr(t) == "[x1, [x2, x3]]");
  const auto [a, b] = pair_exprs(TreePair());
  CHECK(a == TreeExpr::var(1));
  CHECK(b == TreeExpr::var(1));
}

TEST_CASE("eventual satisfaction examples") {
  const FiniteGroup s3 = builtin_group("symmetric(3)");
  const auto id = eventually_satisfies(s3, TreePair());
  CHECK(id.yes());
  CHECK(id.witness_p == 0);
  CHECK(eventually_satisfies(builtin_group("alternating(5)"), TreePair()).witness_p == 0);

  const auto v = eventually_satisfies(s3, kA);
  CHECK(v.yes());
  CHECK(v.witness_p == 1);
  CHECK(satisfies(s3, bp_set(s3, 1), pair_exprs(kA).first, pair_exprs(kA).second).holds());
  // Unreduced input is reduced first.
  const TreePair big = expand_pair(kA, {{0, full_tree(1)}, {2, left_vine(2)}});
  const auto vb = eventually_satisfies(s3, big);
  CHECK(vb.reduced == kA);
  CHECK(vb.witness_p == 1);

  const FiniteGroup a5 = builtin_group("alternating(5)");
  const auto n = eventually_satisfies(a5, kA);
  REQUIRE(n.no());
  REQUIRE(n.certificate.size() == 1);
  CHECK(n.certificate[0].set == Subset::all(60));
  CHECK(recheck_certificate(a5, n));
  // A tampered certificate no longer separates the sides.
  auto bad = n;
  for (auto& [var, e] : bad.certificate[0].counterexample) e = 0;
  CHECK_FALSE(recheck_certificate(a5, bad));
  CHECK_FALSE(recheck_certificate(s3, v));
}

TEST_CASE("budget exhaustion is reported") {
  SearchOptions o;
  o.budget = 10;
  o.samples = 0;
  const auto v = eventually_satisfies(builtin_group("symmetric(4)"), kA, o);
  CHECK(v.kind == EventualVerdict::Kind::BudgetExceeded);
  CHECK(verdict_name(v.kind) == "budget_exceeded");
  CHECK(verdict_name(EventualVerdict::Kind::Yes) == "yes");
}

TEST_CASE("direct instance checks") {
  for (const char* name : {"cyclic(6)", "dihedral(2)", "cyclic(7)"}) {
    CAPTURE(std::string(name));
    const FiniteGroup g = builtin_group(name);
    for (const auto& p : enumerate_reduced_pairs(4)) CHECK(check_instance_direct(g, p).holds());
  }
  CHECK(check_instance_direct(builtin_group("quaternion8"), kA).holds());
  const Verdict s3 = check_instance_direct(builtin_group("symmetric(3)"), kA);
  CHECK(s3.fails());
  CHECK(s3.evaluations <= 216);
}

TEST_CASE("Levi examples") {
  const auto h = levi_check(builtin_group("heisenberg(3)"));
  CHECK(h.associative());
  CHECK(h.class_at_most_2());
  const auto s = levi_check(builtin_group("symmetric(3)"));
  CHECK_FALSE(s.associative());
  CHECK_FALSE(s.class_at_most_2());
  CHECK(s.consistent());
  for (int n = 1; n <= 12; ++n) {
    const auto c = levi_check(builtin_group("cyclic(" + std::to_string(n) + ")"));
    CHECK(c.associative());
    CHECK(c.class_at_most_2());
  }
  CHECK(levi_check(builtin_group("dihedral(4)")).associative());
  CHECK_FALSE(levi_check(builtin_group("dihedral(8)")).associative());
  CHECK(levi_check(builtin_group("dihedral(8)")).consistent());
}

TEST_CASE("reduced pair enumeration") {
  CHECK(enumerate_reduced_pairs(1).empty());
  CHECK(enumerate_reduced_pairs(2).empty());
  const auto three = enumerate_reduced_pairs(3);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == kA);
  CHECK(three[1] == invert(kA));
  CHECK_THROWS_AS(enumerate_reduced_pairs(8), CapExceeded);
  CHECK(enumerate_reduced_pairs(8, 8).size() > enumerate_reduced_pairs(7).size());
}

TEST_CASE("enumeration matches a brute-force filter") {
  for (std::size_t max = 1; max <= 6; ++max) {
    std::vector<TreePair> want;
    for (std::size_t n = 1; n <= max; ++n)
      for (const auto& s : all_trees(n))
        for (const auto& t : all_trees(n)) {
          const TreePair p(s, t);
          if (s != t && oracle_reduced(p)) want.push_back(p);
        }
    const auto got = enumerate_reduced_pairs(max);
    CHECK(got == want);
    for (const auto& p : got) CHECK(reduce_pair(p) == p);
  }
}

TEST_CASE("survey examples") {
  const auto s3 = assoc_survey(builtin_group("symmetric(3)"), 4);
  CHECK(s3.entries.size() == enumerate_reduced_pairs(4).size());
  CHECK(s3.yes == s3.entries.size());
  const auto a5 = assoc_survey(builtin_group("alternating(5)"), 4);
  CHECK(a5.no == a5.entries.size());
  const auto triv = assoc_survey(builtin_group("cyclic(1)"), 5);
  CHECK(triv.yes == triv.entries.size());
  for (const auto& e : triv.entries) CHECK(e.verdict.witness_p == 0);
  CHECK(triv.group == "cyclic(1)");
}

TEST_CASE("solvable groups eventually satisfy every instance up to four leaves") {
  const auto pairs = enumerate_reduced_pairs(4);
  for (const auto& name : catalog_names(24)) {
    const FiniteGroup g = builtin_group(name);
    if (!is_solvable(g)) continue;
    CAPTURE(name);
    const auto seq = bp_sequence(g);
    for (const auto& p : pairs) {
      const auto v = eventually_satisfies(g, p, {}, &seq);
      CHECK(v.yes());
      // Observed, not a theorem.
      CHECK(v.witness_p <= *derived_length(g) + 2);
    }
  }
}

TEST_CASE("a Yes verdict means the literal full-tree expansion holds") {
  int exhaustive = 0;
  for (const auto& name : solvable_list()) {
    const FiniteGroup g = builtin_group(name);
    CAPTURE(name);
    for (const auto& p : enumerate_reduced_pairs(4)) {
      const auto v = eventually_satisfies(g, p);
      REQUIRE(v.yes());
      if (v.witness_p > 2) continue;
      const TreePair expanded = expand_by_full_trees(p, v.witness_p);
      CHECK(expanded.leaf_count() == p.leaf_count() << v.witness_p);
      CHECK(reduce_pair(expanded) == p);
      const auto lit = literal_check(g, expanded);
      exhaustive += lit.exhaustive;
      CHECK_MESSAGE(lit.holds, render_pair(p) << " p=" << v.witness_p);
    }
  }
  CHECK(exhaustive > 50);
}

TEST_CASE("direct satisfaction survives expansion") {
  std::mt19937_64 rng(31);
  const auto pairs = enumerate_reduced_pairs(4);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::bernoulli_distribution hang(0.3);
  int kept = 0;
  for (const char* name : {"quaternion8", "dihedral(4)", "cyclic(5)", "symmetric(3)"}) {
    const FiniteGroup g = builtin_group(name);
    for (int i = 0; i < 30; ++i) {
      const TreePair p = pairs[pick(rng)];
      if (!check_instance_direct(g, p).holds()) continue;
      ExpansionPlan plan;
      for (std::size_t l = 0; l < p.leaf_count(); ++l)
        if (hang(rng)) plan.emplace_back(l, full_tree(1));
      const TreePair e = expand_pair(p, plan);
      if (std::pow(static_cast<double>(g.order()), static_cast<double>(e.leaf_count())) > 2e6)
        continue;
      ++kept;
      CHECK(check_instance_direct(g, e).holds());
    }
  }
  CHECK(kept > 20);
}

TEST_CASE("main theorem harness") {
  std::vector<FiniteGroup> solvable;
  for (const char* n : {"symmetric(3)", "symmetric(4)", "dihedral(4)", "quaternion8"})
    solvable.push_back(builtin_group(n));
  const auto r = verify_main_theorem(solvable, 3);
  CHECK(r.pass());
  for (const auto& e : r.groups) {
    CHECK(e.any_yes);
    CHECK(e.solvable);
  }
  const auto a5 = verify_main_theorem({builtin_group("alternating(5)")}, 3);
  CHECK(a5.pass());
  CHECK_FALSE(a5.groups[0].any_yes);
  CHECK_FALSE(a5.groups[0].solvable);
  CHECK(verify_main_theorem({}, 3).pass());
}
