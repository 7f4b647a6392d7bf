#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "commassoc/errors.hpp"
#include "commassoc/thompson.hpp"
#include "oracle.hpp"

using namespace commassoc;

namespace {

const TreePair kA = generator_pair();

BinaryTree random_tree(std::mt19937_64& rng, std::size_t leaves) {
  if (leaves == 1) return BinaryTree::leaf();
  std::uniform_int_distribution<std::size_t> split(1, leaves - 1);
  const std::size_t l = split(rng);
  return BinaryTree::caret(random_tree(rng, l), random_tree(rng, leaves - l));
}

TreePair random_pair(std::mt19937_64& rng, std::size_t max_leaves) {
  std::uniform_int_distribution<std::size_t> n(1, max_leaves);
  const std::size_t k = n(rng);
  return {random_tree(rng, k), random_tree(rng, k)};
}

ExpansionPlan random_plan(std::mt19937_64& rng, std::size_t leaves) {
  ExpansionPlan plan;
  std::bernoulli_distribution use(0.4);
  std::uniform_int_distribution<std::size_t> size(1, 3);
  for (std::size_t i = 0; i < leaves; ++i)
    if (use(rng)) plan.emplace_back(i, random_tree(rng, size(rng)));
  return plan;
}

oracle::PLMap pl(const TreePair& p) { return oracle::PLMap::of(render_pair(p)); }

}  // namespace

TEST_CASE("construction") {
  CHECK(render_pair(kA) == "((*,*),*) ; (*,(*,*))");
  CHECK(TreePair() == TreePair(BinaryTree::leaf(), BinaryTree::leaf()));
  CHECK_THROWS_AS(TreePair(left_vine(2), left_vine(3)), std::invalid_argument);
  CHECK(reduce_pair({full_tree(2), full_tree(2)}) == TreePair());
}

TEST_CASE("pair text format") {
  CHECK(parse_pair(" ((*,*),*) ;(*,(*,*)) ") == kA);
  CHECK_THROWS_AS(parse_pair("((*,*),*)"), ParseError);
  CHECK_THROWS_AS(parse_pair("* ; * ; *"), ParseError);
  CHECK_THROWS_AS(parse_pair("(*,*) ; *"), ParseError);
  CHECK_THROWS_AS(parse_pair("(*,*) ; (*,"), ParseError);
}

TEST_CASE("hanging t1, t2, t3 below the generator pair") {
  const BinaryTree t1 = full_tree(1), t2 = right_vine(2), t3 = left_vine(3);
  const TreePair big = expand_pair(kA, {{0, t1}, {1, t2}, {2, t3}});
  CHECK(render_pair(big) ==
        "(((*,*),(*,(*,*))),(((*,*),*),*)) ; ((*,*),((*,(*,*)),(((*,*),*),*)))");
  CHECK(reduce_pair(big) == kA);
  CHECK(pairs_equivalent(kA, big));
  CHECK(is_reduced(kA));
  CHECK_FALSE(is_reduced(big));
  CHECK_FALSE(pairs_equivalent(kA, TreePair()));
}

TEST_CASE("expansion plans") {
  CHECK(expand_pair(kA, {}) == kA);
  CHECK(expand_pair(TreePair(), {{0, full_tree(2)}}) ==
        TreePair(full_tree(2), full_tree(2)));
  CHECK_THROWS(expand_pair(kA, {{3, full_tree(1)}}));
  CHECK_THROWS(expand_pair(kA, {{1, full_tree(1)}, {1, full_tree(1)}}));
}

TEST_CASE("reduced pairs") {
  const TreePair p(left_vine(3), right_vine(3));
  CHECK(matching_carets(p).empty());
  CHECK(reduce_pair(p) == p);
}

TEST_CASE("multiplication") {
  CHECK(multiply(kA, invert(kA)) == TreePair());
  CHECK(multiply(kA, TreePair()) == kA);
  const TreePair aa = multiply(kA, kA);
  CHECK(render_pair(aa) == "(((*,*),*),*) ; (*,(*,(*,*)))");
  CHECK(aa.leaf_count() == 4);
  CHECK(invert(invert(kA)) == kA);
  CHECK(invert(TreePair()) == TreePair());
}

TEST_CASE("reduction agrees with piecewise linear maps") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const TreePair p = random_pair(rng, 8);
    const TreePair r = reduce_pair(p);
    CHECK(oracle::agree_on(pl(p), pl(r), pl(p).breakpoints()));
    // A reduced pair is the pair with fewest leaves giving the same map.
    CHECK(is_reduced(r));
  }
}

TEST_CASE("multiplication is composition of maps") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const TreePair p = random_pair(rng, 7), q = random_pair(rng, 7);
    const TreePair r = multiply(p, q);
    const auto fp = pl(p), fq = pl(q), fr = pl(r);
    std::vector<oracle::Dyadic> pts = fp.breakpoints();
    for (auto b : fr.breakpoints()) pts.push_back(b);
    const auto fp_inv = fp.inverse();
    for (auto b : fq.breakpoints()) pts.push_back(fp_inv(b));
    CHECK(oracle::agree_on(fr, [&](oracle::Dyadic x) { return fq(fp(x)); }, pts));
  }
}

TEST_CASE("reduction order does not matter") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    TreePair p = expand_pair(random_pair(rng, 5), {});
    p = expand_pair(p, random_plan(rng, p.leaf_count()));
    const TreePair canonical = reduce_pair(p);
    // Collapse matching carets in random order.
    for (;;) {
      const auto m = matching_carets(p);
      if (m.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, m.size() - 1);
      const std::size_t at = m[pick(rng)];
      p = TreePair(collapse_caret(p.source(), at), collapse_caret(p.target(), at));
    }
    CHECK(p == canonical);
  }
}

TEST_CASE("reduce is idempotent and invariant under expansion") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 500; ++i) {
    const TreePair p = random_pair(rng, 8);
    const TreePair r = reduce_pair(p);
    CHECK(reduce_pair(r) == r);
    CHECK(reduce_pair(expand_pair(p, random_plan(rng, p.leaf_count()))) == r);
    CHECK(matching_carets(r).empty());
  }
}

TEST_CASE("group axioms") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 300; ++i) {
    const TreePair p = reduce_pair(random_pair(rng, 8));
    const TreePair q = reduce_pair(random_pair(rng, 8));
    const TreePair r = reduce_pair(random_pair(rng, 8));
    CHECK(multiply(multiply(p, q), r) == multiply(p, multiply(q, r)));
    CHECK(multiply(p, TreePair()) == p);
    CHECK(multiply(TreePair(), p) == p);
    CHECK(multiply(p, invert(p)) == TreePair());
    CHECK(multiply(invert(p), p) == TreePair());
  }
}

TEST_CASE("common refinement") {
  const BinaryTree a = left_vine(2), b = right_vine(2);
  const BinaryTree u = common_refinement(a, b);
  CHECK(render_tree(u) == "((*,*),(*,*))");
  const auto ha = hanging_subtrees(a, u);
  CHECK(ha.size() == 3);
  CHECK(graft_all(a, ha) == u);
  CHECK(graft_all(b, hanging_subtrees(b, u)) == u);
}
