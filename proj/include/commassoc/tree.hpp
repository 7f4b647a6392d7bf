#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace commassoc {

enum class Side : std::uint8_t { Left, Right };

/// Rooted ordered binary tree. Immutable; copies share structure.
///
/// Leaves are indexed 0..leaf_count()-1 left to right. A default-constructed
/// tree is a single leaf.
class BinaryTree {
 public:
  BinaryTree() = default;

  static BinaryTree leaf() { return {}; }
  static BinaryTree caret(BinaryTree left, BinaryTree right);

  bool is_leaf() const noexcept { return node_ == nullptr; }
  /// Precondition: !is_leaf().
  const BinaryTree& left() const;
  const BinaryTree& right() const;

  std::size_t leaf_count() const noexcept;
  int height() const noexcept;
  /// Number of carets (internal vertices); always leaf_count() - 1.
  std::size_t caret_count() const noexcept { return leaf_count() - 1; }

  friend bool operator==(const BinaryTree& a, const BinaryTree& b);
  /// Lexicographic order on render_tree() text.
  friend std::strong_ordering operator<=>(const BinaryTree& a,
                                          const BinaryTree& b);

 private:
  struct Node;
  explicit BinaryTree(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct BinaryTree::Node {
  BinaryTree left;
  BinaryTree right;
  std::size_t leaves;
  int height;
};

/// Root-to-vertex address.
using LeafPath = std::vector<Side>;

/// A vine: one free caret at the bottom, and above it n-1 carets each with
/// one leaf child. `turns` lists, from the root down, which child of each
/// non-free caret continues the vine.
struct VineSpec {
  int height = 1;
  std::vector<Side> turns;
};

/// Fully parenthesized `*` grammar: tree := "*" | "(" tree "," tree ")".
/// Whitespace is ignored. Throws ParseError.
BinaryTree parse_tree(std::string_view text);
std::string render_tree(const BinaryTree& t);

inline constexpr int kDefaultHeightCap = 16;

/// Full binary tree of height h (2^h leaves). Throws CapExceeded above cap.
BinaryTree full_tree(int height, int height_cap = kDefaultHeightCap);

/// Throws std::invalid_argument when spec.turns.size() != spec.height - 1.
BinaryTree make_vine(const VineSpec& spec);
BinaryTree left_vine(int height);
BinaryTree right_vine(int height);
/// Parses a turn string such as "RLRR" (top-down).
std::vector<Side> parse_turns(std::string_view text);
std::string render_turns(std::span<const Side> turns);

/// Replaces leaf `leaf` by `sub`. Throws std::out_of_range.
BinaryTree graft(const BinaryTree& t, std::size_t leaf, const BinaryTree& sub);
/// Replaces every leaf i by subs[i]. subs.size() must equal leaf_count.
BinaryTree graft_all(const BinaryTree& t, std::span<const BinaryTree> subs);
/// Inverse of grafting a caret: the free caret holding leaves i, i+1 becomes
/// a leaf. Throws std::invalid_argument when no such free caret exists.
BinaryTree collapse_caret(const BinaryTree& t, std::size_t leaf);

/// Leaf indices i such that leaves i and i+1 are the children of one caret.
std::vector<std::size_t> free_carets(const BinaryTree& t);

/// Depth of each leaf, left to right.
std::vector<int> leaf_depths(const BinaryTree& t);

/// Subtree at a path. Throws std::out_of_range for paths leaving the tree.
const BinaryTree& subtree_at(const BinaryTree& t, std::span<const Side> path);
/// Path from the root to leaf `leaf`.
LeafPath path_to_leaf(const BinaryTree& t, std::size_t leaf);

/// Distance from leaves i and k of the full tree of height h to their
/// closest common ancestor. Throws std::invalid_argument when i == k or an
/// index is out of range.
int leaf_distance(int height, std::uint64_t i, std::uint64_t k);

/// All trees with exactly n leaves (Catalan(n-1) of them), sorted by
/// rendered text.
std::vector<BinaryTree> all_trees(std::size_t leaves);

}  // namespace commassoc
