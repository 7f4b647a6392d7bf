#include "commassoc/coloring.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>
#include <string>

#include "commassoc/errors.hpp"
#include "commassoc/tree.hpp"

namespace commassoc {

ColoringInstance ColoringInstance::make(int n, int j) {
  if (n < 1 || j < 1)
    throw std::invalid_argument("coloring instance needs n >= 1 and j >= 1");
  if (n * j + 1 > 62) throw CapExceeded("tree height n*j+1 exceeds 62");
  return {n, j};
}

bool constrained(const ColoringInstance& inst, std::uint64_t i,
                 std::uint64_t k) {
  const int d = leaf_distance(inst.height(), i, k);
  return inst.j == 1 || d % inst.j == 1;
}

ConstraintGraph constraint_graph(const ColoringInstance& inst,
                                 std::uint64_t leaf_cap) {
  if (inst.leaf_count() > leaf_cap)
    throw CapExceeded(std::to_string(inst.leaf_count()) +
                      " leaves exceeds cap " + std::to_string(leaf_cap));
  return ConstraintGraph(inst);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> ConstraintGraph::edges()
    const {
  if (vertex_count() > (1u << 12))
    throw CapExceeded("edge list needs at most 4096 vertices");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t i = 0; i < vertex_count(); ++i)
    for (std::uint64_t k = i + 1; k < vertex_count(); ++k)
      if (adjacent(i, k)) out.emplace_back(i, k);
  return out;
}

ColoringCheck valid_coloring(const ColoringInstance& inst,
                             std::span<const int> colors) {
  if (colors.size() != inst.leaf_count())
    throw std::invalid_argument("coloring has " + std::to_string(colors.size()) +
                                " entries, tree has " +
                                std::to_string(inst.leaf_count()) + " leaves");
  for (std::uint64_t i = 0; i < colors.size(); ++i)
    for (std::uint64_t k = i + 1; k < colors.size(); ++k)
      if (colors[i] == colors[k] && constrained(inst, i, k))
        return {false, std::pair{i, k}};
  return {};
}

std::vector<std::uint64_t> proof_clique(const ColoringInstance& inst) {
  std::vector<std::uint64_t> clique{0};
  for (int m = 1; m <= inst.n; ++m) {
    // Tree of height m*j+1; the rightmost of its 2^j subtrees of height
    // (m-1)j+1 starts at this leaf.
    const std::uint64_t offset = ((std::uint64_t{1} << inst.j) - 1)
                                 << ((m - 1) * inst.j + 1);
    const std::size_t half = clique.size();
    for (std::size_t i = 0; i < half; ++i) clique.push_back(clique[i] + offset);
  }
  return clique;
}

bool is_clique(const ColoringInstance& inst,
               std::span<const std::uint64_t> leaves) {
  for (std::size_t a = 0; a < leaves.size(); ++a)
    for (std::size_t b = a + 1; b < leaves.size(); ++b)
      if (leaves[a] == leaves[b] || !constrained(inst, leaves[a], leaves[b]))
        return false;
  return true;
}

namespace {

class Dsatur {
 public:
  explicit Dsatur(const ColoringInstance& inst)
      : n_(static_cast<int>(inst.leaf_count())),
        adj_(static_cast<std::size_t>(n_), 0),
        color_(static_cast<std::size_t>(n_), -1),
        seen_(static_cast<std::size_t>(n_), 0) {
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k)
        if (i != k && constrained(inst, static_cast<std::uint64_t>(i),
                                  static_cast<std::uint64_t>(k)))
          adj_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << k;
    best_ = n_ + 1;
  }

  int greedy_clique() const {
    int best = 0;
    for (int s = 0; s < n_; ++s) {
      std::uint64_t cand = adj_[static_cast<std::size_t>(s)];
      int size = 1;
      while (cand) {
        const int v = std::countr_zero(cand);
        ++size;
        cand &= adj_[static_cast<std::size_t>(v)];
      }
      best = std::max(best, size);
    }
    return best;
  }

  void run(int lower) {
    lower_ = lower;
    search(0, 0);
  }

  int best() const noexcept { return best_; }
  const std::vector<int>& witness() const noexcept { return witness_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  void search(int colored, int used) {
    ++nodes_;
    if (used >= best_ || best_ <= lower_) return;
    if (colored == n_) {
      best_ = used;
      witness_ = color_;
      return;
    }
    // Most saturated uncolored vertex; ties go to the lowest leaf index.
    int v = -1, sat = -1;
    for (int u = 0; u < n_; ++u) {
      if (color_[static_cast<std::size_t>(u)] >= 0) continue;
      const int s = std::popcount(seen_[static_cast<std::size_t>(u)]);
      if (s > sat) {
        sat = s;
        v = u;
      }
    }
    const auto vi = static_cast<std::size_t>(v);
    for (int c = 0; c <= used; ++c) {
      if (c == used && used + 1 >= best_) break;
      if (seen_[vi] >> c & 1) continue;
      color_[vi] = c;
      std::vector<int> touched;
      std::uint64_t nb = adj_[vi];
      while (nb) {
        const int u = std::countr_zero(nb);
        nb &= nb - 1;
        auto& s = seen_[static_cast<std::size_t>(u)];
        if (color_[static_cast<std::size_t>(u)] < 0 && !(s >> c & 1)) {
          s |= std::uint64_t{1} << c;
          touched.push_back(u);
        }
      }
      search(colored + 1, c == used ? used + 1 : used);
      for (int u : touched)
        seen_[static_cast<std::size_t>(u)] &= ~(std::uint64_t{1} << c);
      color_[vi] = -1;
      if (best_ <= lower_) return;
    }
  }

  int n_;
  std::vector<std::uint64_t> adj_;
  std::vector<int> color_;
  std::vector<std::uint64_t> seen_;
  std::vector<int> witness_;
  int best_;
  int lower_ = 0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

MinColoring min_colors(const ColoringInstance& inst, std::uint64_t leaf_cap) {
  leaf_cap = std::min(leaf_cap, kExactSearchCap);
  if (inst.leaf_count() > leaf_cap)
    throw CapExceeded("exact search supports at most " +
                      std::to_string(leaf_cap) + " leaves, instance has " +
                      std::to_string(inst.leaf_count()));
  Dsatur d(inst);
  const int lower = std::max(d.greedy_clique(),
                             static_cast<int>(proof_clique(inst).size()));
  d.run(lower);
  return {d.best(), d.witness(), lower, d.nodes()};
}

LowerBoundCheck verify_lower_bound(const ColoringInstance& inst,
                                   std::uint64_t exact_cap) {
  LowerBoundCheck out;
  out.bound = inst.lower_bound();
  const auto clique = proof_clique(inst);
  out.clique_size = clique.size();
  if (inst.leaf_count() <= std::min(exact_cap, kExactSearchCap)) {
    out.exact = min_colors(inst).colors;
    out.ok = static_cast<std::uint64_t>(*out.exact) >= out.bound;
  } else {
    out.ok = clique.size() >= out.bound && is_clique(inst, clique);
  }
  return out;
}

std::vector<ExactMinimum> exact_minima_table(int max_height) {
  std::vector<ExactMinimum> out;
  for (int h = 2; h <= max_height; ++h)
    for (int n = 1; n < h; ++n) {
      if ((h - 1) % n != 0) continue;
      const auto inst = ColoringInstance::make(n, (h - 1) / n);
      out.push_back({inst, inst.lower_bound(), min_colors(inst).colors});
    }
  return out;
}

std::vector<int> mirror_coloring(std::span<const int> colors) {
  return {colors.rbegin(), colors.rend()};
}

PigeonholeCheck repeated_label_tree_check(const FiniteGroup& g, int j, int n,
                                          std::uint64_t samples,
                                          std::uint64_t seed) {
  const auto inst = ColoringInstance::make(n, j);
  if (n >= 63 || inst.lower_bound() <= g.order())
    throw std::invalid_argument("need 2^n > |G|");
  if (inst.leaf_count() > (1u << 16))
    throw CapExceeded("labeling check supports at most 65536 leaves");
  PigeonholeCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> pick(
      0, static_cast<Element>(g.order() - 1));
  const std::uint64_t leaves = inst.leaf_count();
  std::vector<Element> label(leaves);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& l : label) l = pick(rng);
    ++out.labelings;
    std::optional<EqualLabelPair> found;
    for (std::uint64_t i = 0; i < leaves && !found; ++i)
      for (std::uint64_t k = i + 1; k < leaves; ++k)
        if (label[i] == label[k] && constrained(inst, i, k)) {
          found = EqualLabelPair{i, k, leaf_distance(inst.height(), i, k)};
          break;
        }
    if (!found) {
      out.ok = false;
      return out;
    }
    out.pairs.push_back(*found);
  }
  return out;
}

}  // namespace commassoc
