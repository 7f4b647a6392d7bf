#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "commassoc/errors.hpp"
#include "commassoc/expr.hpp"
#include "lemmas.hpp"
#include "oracle.hpp"

using namespace commassoc;

namespace {

Element el(const FiniteGroup& g, const std::string& label) {
  const auto e = g.find_label(label);
  REQUIRE(e.has_value());
  return *e;
}

const TreeExpr kLeftAssoc = parse_expr("[[x1,x2],x3]");
const TreeExpr kRightAssoc = parse_expr("[x1,[x2,x3]]");

// Least failing assignment in mixed-radix order, by plain recursion.
std::optional<Assignment> first_failure(const FiniteGroup& g, const Subset& x,
                                        const TreeExpr& s, const TreeExpr& t) {
  const auto vars = shared_variables(s, t);
  Assignment a;
  std::optional<Assignment> found;
  const auto rec = [&](auto&& self, std::size_t i) -> void {
    if (found) return;
    if (i == vars.size()) {
      if (evaluate(s, g, a) != evaluate(t, g, a)) found = a;
      return;
    }
    for (Element e : x) {
      a[vars[i]] = e;
      self(self, i + 1);
      if (found) return;
    }
  };
  rec(rec, 0);
  return found;
}

}  // namespace

TEST_CASE("parsing") {
  const TreeExpr e = parse_expr("[x1,x2]");
  CHECK(e.kind() == TreeExpr::Kind::Caret);
  CHECK(e.left().var_index() == 1);
  CHECK(e.right().var_index() == 2);
  CHECK(shape(kLeftAssoc) == left_vine(2));
  const TreeExpr c = parse_expr("[x1, #3]");
  CHECK(c.right().kind() == TreeExpr::Kind::Const);
  CHECK(c.right().constant_value() == 3);
  CHECK(render_expr(parse_expr(" [ [x1 ,x2],[#0,x10]]")) == "[[x1, x2], [#0, x10]]");
  for (const char* bad : {"", "x", "[x1]", "[x1,x2", "y1", "#", "[x1,x2]]", "[x1;x2]"}) {
    CAPTURE(std::string(bad));
    CHECK_THROWS_AS(parse_expr(bad), ParseError);
  }
  const FiniteGroup s3 = builtin_group("symmetric(3)");
  CHECK_NOTHROW(parse_expr("[x1,#5]", &s3));
  CHECK_THROWS_AS(parse_expr("[x1,#6]", &s3), ParseError);
}

TEST_CASE("expressions from trees") {
  CHECK(expr_from_tree(BinaryTree::leaf()) == TreeExpr::var(1));
  CHECK(expr_from_tree(left_vine(2)) == kLeftAssoc);
  CHECK(expr_from_tree(parse_tree("(*,(*,*))")) == kRightAssoc);
  CHECK(render_expr(expr_from_tree(full_tree(2), 4)) == "[[x4, x5], [x6, x7]]");
  const TreeExpr e = parse_expr("[[x3,x1],[x3,#2]]");
  CHECK(variables(e) == std::vector<int>{3, 1});
  CHECK(shared_variables(e, parse_expr("[x2,x5]")) == std::vector<int>{1, 2, 3, 5});
  CHECK(max_variable(e) == 3);
}

TEST_CASE("evaluation") {
  const FiniteGroup s3 = builtin_group("symmetric(3)");
  const Assignment a{{1, el(s3, "(1 2)")}, {2, el(s3, "(1 3)")}, {3, el(s3, "(2 3)")}};
  const auto p = [](const char* c) { return oracle::cycles(c, 3); };
  const oracle::Perm want = oracle::comm(oracle::comm(p("(1 2)"), p("(1 3)")), p("(2 3)"));
  CHECK(oracle::cycles(s3.label(evaluate(kLeftAssoc, s3, a)), 3) == want);
  CHECK(evaluate(TreeExpr::constant(4), s3, {}) == 4);
  CHECK_THROWS_AS(evaluate(kLeftAssoc, s3, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(TreeExpr::constant(9), s3, {}), std::invalid_argument);
  const FiniteGroup z5 = builtin_group("cyclic(5)");
  for (Element x = 0; x < 5; ++x)
    for (Element y = 0; y < 5; ++y)
      CHECK(evaluate(parse_expr("[x1,x2]"), z5, {{1, x}, {2, y}}) == 0);
}

TEST_CASE("compiled programs agree with evaluate") {
  std::mt19937_64 rng(5);
  const FiniteGroup g = builtin_group("symmetric(4)");
  std::uniform_int_distribution<Element> pick(0, 23);
  for (int i = 0; i < 300; ++i) {
    const TreeExpr e = lemmas::random_expr(rng, g, 6, 0.2);
    const std::vector<int> vars{1, 2, 3};
    const CompiledExpr prog(e, vars);
    std::vector<Element> stack(prog.stack_depth() + 1);
    const Element slots[3] = {pick(rng), pick(rng), pick(rng)};
    CHECK(prog.run(g, slots, stack.data()) ==
          evaluate(e, g, {{1, slots[0]}, {2, slots[1]}, {3, slots[2]}}));
  }
}

TEST_CASE("satisfaction of the three-variable law") {
  const FiniteGroup z6 = builtin_group("cyclic(6)");
  CHECK(satisfies(z6, Subset::all(6), kLeftAssoc, kRightAssoc).holds());
  const FiniteGroup q8 = builtin_group("quaternion8");
  const Verdict vq = satisfies(q8, Subset::all(8), kLeftAssoc, kRightAssoc);
  CHECK(vq.holds());
  CHECK(vq.evaluations == 512);

  const FiniteGroup s3 = builtin_group("symmetric(3)");
  const Verdict v = satisfies(s3, Subset::all(6), kLeftAssoc, kRightAssoc);
  REQUIRE(v.fails());
  CHECK_FALSE(v.from_sampling);
  CHECK(evaluate(kLeftAssoc, s3, *v.counterexample) !=
        evaluate(kRightAssoc, s3, *v.counterexample));
  CHECK(*v.counterexample == *first_failure(s3, Subset::all(6), kLeftAssoc, kRightAssoc));
}

TEST_CASE("counterexamples are the least assignment regardless of workers") {
  const FiniteGroup s4 = builtin_group("symmetric(4)");
  // 24^4 assignments: large enough for the parallel path, below the
  // sampling threshold.
  const TreeExpr s = parse_expr("[[x1,x2],[x3,x4]]");
  const TreeExpr t = parse_expr("[[x1,x3],[x2,x4]]");
  SearchOptions one;
  one.workers = 1;
  const Verdict serial = satisfies(s4, Subset::all(24), s, t, one);
  REQUIRE(serial.fails());
  CHECK(*serial.counterexample == *first_failure(s4, Subset::all(24), s, t));
  for (unsigned w : {2u, 3u, 8u}) {
    SearchOptions o;
    o.workers = w;
    const Verdict par = satisfies(s4, Subset::all(24), s, t, o);
    CHECK(par.outcome == serial.outcome);
    CHECK(*par.counterexample == *serial.counterexample);
  }
  // An identity that holds needs the full scan.
  SearchOptions o4;
  o4.workers = 4;
  const Verdict h = satisfies(s4, Subset::all(24), s, s, o4);
  CHECK(h.holds());
  CHECK(h.evaluations == 331776);
}

TEST_CASE("sampling and budget") {
  const FiniteGroup a5 = builtin_group("alternating(5)");
  const TreeExpr s = parse_expr("[[x1,x2],[x3,x4]]");
  const TreeExpr t = parse_expr("[[x1,x3],[x2,x4]]");
  // 60^4 > 10^6 triggers the sampling pass, which finds a failure fast.
  const Verdict v = satisfies(a5, Subset::all(60), s, t);
  REQUIRE(v.fails());
  CHECK(v.from_sampling);
  CHECK(evaluate(s, a5, *v.counterexample) != evaluate(t, a5, *v.counterexample));
  SearchOptions same;
  CHECK(*satisfies(a5, Subset::all(60), s, t, same).counterexample == *v.counterexample);

  SearchOptions tight;
  tight.budget = 1000;
  tight.samples = 0;
  CHECK(satisfies(a5, Subset::all(60), s, t, tight).outcome == Outcome::BudgetExceeded);
  // Sampling may still refute within a tiny budget, but never accepts.
  tight.samples = 10000;
  CHECK(satisfies(a5, Subset::all(60), s, t, tight).fails());
  CHECK(satisfies(a5, Subset::all(60), s, s, tight).outcome == Outcome::BudgetExceeded);
}

TEST_CASE("per-variable domains") {
  const FiniteGroup s3 = builtin_group("symmetric(3)");
  const Subset a3 = bp_set(s3, 1);
  // [x1,x2] = 1 holds once x1 ranges over A3 and x2 over A3.
  CHECK_FALSE(satisfies(s3, Subset::all(6), parse_expr("[x1,x2]"), TreeExpr::one()).holds());
  CHECK(satisfies_domains(s3, {{1, a3}, {2, a3}}, Subset::all(6), parse_expr("[x1,x2]"),
                          TreeExpr::one())
            .holds());
  CHECK(satisfies_domains(s3, {{1, Subset{}}}, Subset::all(6), parse_expr("[x1,x2]"),
                          TreeExpr::one())
            .holds());
  CHECK_THROWS(satisfies(s3, Subset(std::vector<Element>{7}), parse_expr("x1"), TreeExpr::one()));
}

TEST_CASE("value sets") {
  const FiniteGroup s3 = builtin_group("symmetric(3)");
  const Subset all = Subset::all(6);
  CHECK(value_set(TreeExpr::var(1), s3, all) == all);
  const Subset comm = value_set(parse_expr("[x1,x2]"), s3, all);
  std::vector<oracle::Perm> want{oracle::cycles("()", 3), oracle::cycles("(1 2 3)", 3),
                                 oracle::cycles("(1 3 2)", 3)};
  REQUIRE(comm.size() == 3);
  for (Element e : comm)
    CHECK(std::find(want.begin(), want.end(), oracle::cycles(s3.label(e), 3)) != want.end());
  CHECK(value_set(parse_expr("[x1,x2]"), builtin_group("cyclic(7)"), Subset::all(7)) ==
        Subset::identity_only());
  CHECK_THROWS_AS(value_set(parse_expr("[[x1,x2],[x3,x4]]"), s3, all, 100), CapExceeded);
}

TEST_CASE("B_p sets and sequences") {
  const FiniteGroup s3 = builtin_group("symmetric(3)");
  CHECK(bp_set(s3, 0) == Subset::all(6));
  CHECK(bp_set(s3, 1) == value_set(parse_expr("[x1,x2]"), s3, Subset::all(6)));
  CHECK(bp_set(builtin_group("alternating(5)"), 1) == Subset::all(60));
  CHECK_THROWS_AS(bp_set(s3, 17), CapExceeded);

  const auto z4 = bp_sequence(builtin_group("cyclic(4)"));
  REQUIRE(z4.sets.size() == 3);
  CHECK(z4.sets[1] == Subset::identity_only());
  CHECK(z4.cycle_start == 1);
  CHECK(z4.distinct() == 2);

  const auto a5 = bp_sequence(builtin_group("alternating(5)"));
  CHECK(a5.sets.size() == 2);
  CHECK(a5.cycle_start == 0);

  const auto seq = bp_sequence(s3);
  REQUIRE(seq.sets.size() == 4);
  CHECK(seq.sets[1].size() == 3);
  CHECK(seq.sets[2] == Subset::identity_only());
  CHECK(seq.cycle_start == 2);
}

TEST_CASE("B_p is a normal inverse-closed generating set of the derived group") {
  for (const auto& name : catalog_names(60)) {
    CAPTURE(name);
    const FiniteGroup g = builtin_group(name);
    const auto series = derived_series(g);
    Subset prev = Subset::all(g.order());
    for (int p = 0; p <= 3; ++p) {
      const Subset b = bp_set(g, p);
      CHECK(is_normal_subset(g, b));
      CHECK(is_inverse_closed(g, b));
      const auto& gp = series[std::min<std::size_t>(static_cast<std::size_t>(p), series.size() - 1)];
      CHECK(subgroup_generated(g, b).members == gp.members);
      if (p > 0) CHECK(b == value_set(parse_expr("[x1,x2]"), g, prev));
      prev = b;
    }
  }
}

TEST_CASE("hanging trees: direct and per-domain premises agree") {
  std::mt19937_64 rng(21);
  const auto names = catalog_names(12);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 150; ++i) {
    const FiniteGroup g = builtin_group(names[pick(rng)]);
    const auto c = lemmas::random_hang(rng, lemmas::random_expr(rng, g, 3, 0.25), 2);
    if (!lemmas::direct_feasible(g, c)) continue;
    ++checked;
    CHECK(lemmas::premise_direct(g, c) == lemmas::premise_by_domains(g, c));
  }
  CHECK(checked >= 100);
}

TEST_CASE("hanging trees pass to B_p and the derived group") {
  std::mt19937_64 rng(22);
  const auto names = catalog_names(24);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  int premises = 0;
  for (int i = 0; i < 150; ++i) {
    const FiniteGroup g = builtin_group(names[pick(rng)]);
    const auto c = lemmas::random_hang(rng, lemmas::random_expr(rng, g, 4, 0.2), 2);
    const auto out = lemmas::check_hang(g, c);
    premises += out.premise;
    CHECK_MESSAGE(out.consistent(), g.name() << " " << render_expr(c.t));
  }
  CHECK(premises > 0);
}

TEST_CASE("mod the center: three conditions agree") {
  std::mt19937_64 rng(23);
  const auto names = catalog_names(16);
  std::uniform_int_distribution<std::size_t> pick(0, names.size() - 1);
  int holds = 0;
  for (int i = 0; i < 150; ++i) {
    const FiniteGroup g = builtin_group(names[pick(rng)]);
    const TreeExpr s = lemmas::random_expr(rng, g, 3, 0.2);
    const TreeExpr t = lemmas::random_expr(rng, g, 3, 0.2);
    const auto out = lemmas::check_mod_center(g, s, t);
    holds += out.quotient;
    CHECK_MESSAGE(out.agree(), g.name() << " " << render_expr(s) << " ~ " << render_expr(t));
  }
  CHECK(holds > 0);
}
