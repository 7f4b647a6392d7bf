#include "commassoc/thompson.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "commassoc/errors.hpp"

namespace commassoc {

TreePair::TreePair(BinaryTree source, BinaryTree target)
    : source_(std::move(source)), target_(std::move(target)) {
  if (source_.leaf_count() != target_.leaf_count())
    throw std::invalid_argument(
        "tree pair leaf counts differ: " +
        std::to_string(source_.leaf_count()) + " vs " +
        std::to_string(target_.leaf_count()));
}

TreePair generator_pair() {
  return TreePair(left_vine(2), right_vine(2));
}

TreePair expand_pair(const TreePair& p, const ExpansionPlan& plan) {
  std::vector<BinaryTree> subs(p.leaf_count());
  std::vector<bool> used(p.leaf_count(), false);
  for (const auto& [leaf, sub] : plan) {
    if (leaf >= p.leaf_count())
      throw std::out_of_range("expansion index " + std::to_string(leaf) +
                              " out of range");
    if (used[leaf])
      throw std::invalid_argument("expansion index " + std::to_string(leaf) +
                                  " repeated");
    used[leaf] = true;
    subs[leaf] = sub;
  }
  return TreePair(graft_all(p.source(), subs), graft_all(p.target(), subs));
}

std::vector<std::size_t> matching_carets(const TreePair& p) {
  const auto a = free_carets(p.source());
  const auto b = free_carets(p.target());
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

bool is_reduced(const TreePair& p) { return matching_carets(p).empty(); }

TreePair reduce_pair(const TreePair& p) {
  BinaryTree s = p.source();
  BinaryTree t = p.target();
  for (;;) {
    const auto m = matching_carets(TreePair(s, t));
    if (m.empty()) break;
    s = collapse_caret(s, m.front());
    t = collapse_caret(t, m.front());
  }
  return TreePair(std::move(s), std::move(t));
}

BinaryTree common_refinement(const BinaryTree& a, const BinaryTree& b) {
  if (a.is_leaf()) return b;
  if (b.is_leaf()) return a;
  return BinaryTree::caret(common_refinement(a.left(), b.left()),
                           common_refinement(a.right(), b.right()));
}

namespace {

void collect_hanging(const BinaryTree& coarse, const BinaryTree& fine,
                     std::vector<BinaryTree>& out) {
  if (coarse.is_leaf()) {
    out.push_back(fine);
    return;
  }
  if (fine.is_leaf())
    throw std::invalid_argument("tree is not an expansion of the other");
  collect_hanging(coarse.left(), fine.left(), out);
  collect_hanging(coarse.right(), fine.right(), out);
}

}  // namespace

std::vector<BinaryTree> hanging_subtrees(const BinaryTree& coarse,
                                         const BinaryTree& fine) {
  std::vector<BinaryTree> out;
  out.reserve(coarse.leaf_count());
  collect_hanging(coarse, fine, out);
  return out;
}

TreePair multiply(const TreePair& p, const TreePair& q) {
  const BinaryTree u = common_refinement(p.target(), q.source());
  const auto p_subs = hanging_subtrees(p.target(), u);
  const auto q_subs = hanging_subtrees(q.source(), u);
  return reduce_pair(TreePair(graft_all(p.source(), p_subs),
                              graft_all(q.target(), q_subs)));
}

TreePair invert(const TreePair& p) { return TreePair(p.target(), p.source()); }

bool pairs_equivalent(const TreePair& p, const TreePair& q) {
  return reduce_pair(p) == reduce_pair(q);
}

TreePair parse_pair(std::string_view text) {
  const auto semi = text.find(';');
  if (semi == std::string_view::npos)
    throw ParseError("tree pair needs ';' separator", text.size());
  if (text.find(';', semi + 1) != std::string_view::npos)
    throw ParseError("tree pair has more than one ';'",
                     text.find(';', semi + 1));
  BinaryTree s, t;
  try {
    s = parse_tree(text.substr(0, semi));
  } catch (const ParseError& e) {
    throw ParseError("source tree: bad syntax", e.offset());
  }
  try {
    t = parse_tree(text.substr(semi + 1));
  } catch (const ParseError& e) {
    throw ParseError("target tree: bad syntax", semi + 1 + e.offset());
  }
  if (s.leaf_count() != t.leaf_count())
    throw ParseError("tree pair leaf counts differ", semi);
  return TreePair(std::move(s), std::move(t));
}

std::string render_pair(const TreePair& p) {
  return render_tree(p.source()) + " ; " + render_tree(p.target());
}

}  // namespace commassoc
