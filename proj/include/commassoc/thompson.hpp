#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commassoc/tree.hpp"

namespace commassoc {

/// A pair of trees with equal leaf counts: one instance of the generalized
/// associative law, and a representative of an element of Thompson's F.
class TreePair {
 public:
  /// The identity (Leaf, Leaf).
  TreePair() = default;
  /// Throws std::invalid_argument on leaf-count mismatch.
  TreePair(BinaryTree source, BinaryTree target);

  const BinaryTree& source() const noexcept { return source_; }
  const BinaryTree& target() const noexcept { return target_; }
  std::size_t leaf_count() const noexcept { return source_.leaf_count(); }

  friend bool operator==(const TreePair&, const TreePair&) = default;

 private:
  BinaryTree source_;
  BinaryTree target_;
};

inline TreePair make_pair(BinaryTree s, BinaryTree t) {
  return TreePair(std::move(s), std::move(t));
}

/// The 3-variable associative law ((*,*),*) ; (*,(*,*)).
TreePair generator_pair();

/// Grafts applied identically to both trees of a pair. Leaf indices refer to
/// the unexpanded pair and must be distinct.
using ExpansionPlan = std::vector<std::pair<std::size_t, BinaryTree>>;

/// Throws std::out_of_range / std::invalid_argument on a bad plan.
TreePair expand_pair(const TreePair& p, const ExpansionPlan& plan);

/// Leaf indices that are free carets in both trees.
std::vector<std::size_t> matching_carets(const TreePair& p);
bool is_reduced(const TreePair& p);
/// Repeatedly collapses the lowest matching free caret.
TreePair reduce_pair(const TreePair& p);

/// Least common refinement: the smallest tree that expands both a and b.
BinaryTree common_refinement(const BinaryTree& a, const BinaryTree& b);
/// For a tree `coarse` and an expansion `fine` of it, the subtree of `fine`
/// hanging at each leaf of `coarse`. Throws std::invalid_argument when `fine`
/// does not expand `coarse`.
std::vector<BinaryTree> hanging_subtrees(const BinaryTree& coarse,
                                         const BinaryTree& fine);

/// Composition (s1,t1)(s2,t2): refine t1 and s2 to a common tree U and
/// return the reduced (s1', t2').
TreePair multiply(const TreePair& p, const TreePair& q);
TreePair invert(const TreePair& p);
bool pairs_equivalent(const TreePair& p, const TreePair& q);

/// Text format `<tree> ; <tree>`.
TreePair parse_pair(std::string_view text);
std::string render_pair(const TreePair& p);

}  // namespace commassoc
