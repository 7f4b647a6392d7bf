#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "commassoc/group.hpp"

namespace commassoc {

/// Leaves of the full binary tree of height n*j + 1, where two leaves at
/// distance d must get different colors when d = 1 (mod j). With j = 1
/// every pair is constrained.
struct ColoringInstance {
  int n = 1;
  int j = 1;

  /// Throws std::invalid_argument unless n, j >= 1.
  static ColoringInstance make(int n, int j);
  int height() const noexcept { return n * j + 1; }
  std::uint64_t leaf_count() const noexcept {
    return std::uint64_t{1} << height();
  }
  /// 2^n.
  std::uint64_t lower_bound() const noexcept { return std::uint64_t{1} << n; }
};

/// Whether leaves i != k must differ. Uses the XOR distance formula.
bool constrained(const ColoringInstance& inst, std::uint64_t i, std::uint64_t k);

inline constexpr std::uint64_t kDefaultLeafCap = std::uint64_t{1} << 20;
inline constexpr std::uint64_t kExactSearchCap = 64;

class ConstraintGraph {
 public:
  const ColoringInstance& instance() const noexcept { return inst_; }
  std::uint64_t vertex_count() const noexcept { return inst_.leaf_count(); }
  bool adjacent(std::uint64_t i, std::uint64_t k) const {
    return i != k && constrained(inst_, i, k);
  }
  /// Materialized edge list (i < k). Throws CapExceeded above 2^12 vertices.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges() const;

 private:
  friend ConstraintGraph constraint_graph(const ColoringInstance&, std::uint64_t);
  explicit ConstraintGraph(ColoringInstance inst) : inst_(inst) {}
  ColoringInstance inst_;
};

/// Throws CapExceeded when the tree has more than `leaf_cap` leaves.
ConstraintGraph constraint_graph(const ColoringInstance& inst,
                                 std::uint64_t leaf_cap = kDefaultLeafCap);

struct ColoringCheck {
  bool valid = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> violation;
};

/// First violated pair in (i, k) order. Throws std::invalid_argument on a
/// length mismatch.
ColoringCheck valid_coloring(const ColoringInstance& inst,
                             std::span<const int> colors);

struct MinColoring {
  int colors = 0;
  std::vector<int> witness;
  int clique_bound = 0;
  std::uint64_t search_nodes = 0;
};

/// Exact chromatic number by DSATUR branch and bound. Throws CapExceeded
/// above `leaf_cap` leaves (at most 64).
MinColoring min_colors(const ColoringInstance& inst,
                       std::uint64_t leaf_cap = kExactSearchCap);

/// 2^n pairwise constrained leaves: the leftmost and rightmost height
/// (n-1)j+1 subtrees each contribute a clique of the previous size.
std::vector<std::uint64_t> proof_clique(const ColoringInstance& inst);
bool is_clique(const ColoringInstance& inst, std::span<const std::uint64_t> leaves);

struct LowerBoundCheck {
  bool ok = false;
  std::uint64_t bound = 0;
  std::optional<int> exact;
  std::size_t clique_size = 0;
};

/// Exact when the instance fits the exact search cap, otherwise checks the
/// proof clique.
LowerBoundCheck verify_lower_bound(const ColoringInstance& inst,
                                   std::uint64_t exact_cap = kExactSearchCap);

struct ExactMinimum {
  ColoringInstance inst;
  std::uint64_t bound = 0;
  int exact = 0;
};

/// All (n, j) with n*j + 1 <= max_height, by height then n.
std::vector<ExactMinimum> exact_minima_table(int max_height);

/// Leaf i of the mirrored tree is leaf 2^h - 1 - i.
std::vector<int> mirror_coloring(std::span<const int> colors);

struct EqualLabelPair {
  std::uint64_t first = 0, second = 0;
  int distance = 0;
};

struct PigeonholeCheck {
  bool ok = true;
  std::uint64_t labelings = 0;
  /// The least equal-label pair found in each labeling.
  std::vector<EqualLabelPair> pairs;
};

/// For `samples` seeded uniform labelings of the leaves of the height
/// n*j + 1 tree by elements of G, finds two equal labels at distance
/// q*j + 1. Requires 2^n > |G|; throws std::invalid_argument otherwise and
/// CapExceeded above 2^16 leaves.
PigeonholeCheck repeated_label_tree_check(const FiniteGroup& g, int j, int n,
                                          std::uint64_t samples,
                                          std::uint64_t seed = 0);

}  // namespace commassoc
