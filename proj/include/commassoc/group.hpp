#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace commassoc {

/// Index of a group element; the identity is always 0.
using Element = std::uint32_t;

/// Image array of a permutation of {0..degree-1}. Products compose left to
/// right: (p*q)(x) = q(p(x)), so conjugation relabels cycles.
using Permutation = std::vector<std::uint32_t>;

/// Parses cycle notation over points 1..degree, e.g. "(1 2 3)(4 5)" or "()".
Permutation parse_cycles(std::string_view text, std::size_t degree);
std::string render_cycles(const Permutation& p);

/// Sorted set of element indices.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::vector<Element> members);
  static Subset all(std::size_t order);
  static Subset identity_only() { return Subset({0}); }

  const std::vector<Element>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Element e) const;
  bool is_subset_of(const Subset& other) const;
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  std::vector<Element> members_;
};

/// A subgroup stored as a member set of its parent.
struct Subgroup {
  Subset members;
  bool normal = false;

  std::size_t order() const noexcept { return members.size(); }
  bool is_trivial() const noexcept { return members.size() == 1; }
  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.members == b.members;
  }
};

/// Finite group as a validated Cayley table with a precomputed commutator
/// table. Immutable after construction.
class FiniteGroup {
 public:
  /// Validates the group axioms and throws GroupError naming the failed
  /// axiom and a witness. Associativity is checked exhaustively up to
  /// `exhaustive_assoc_limit`, and on 10^5 seeded random triples above it.
  static FiniteGroup from_cayley_table(
      const std::vector<std::vector<Element>>& table, std::string name = "",
      std::vector<std::string> labels = {},
      std::size_t exhaustive_assoc_limit = 128);
  /// Same, for a row-major order*order table.
  static FiniteGroup from_flat_table(std::size_t order,
                                     std::vector<Element> table,
                                     std::string name = "",
                                     std::vector<std::string> labels = {},
                                     std::size_t exhaustive_assoc_limit = 128);

  std::size_t order() const noexcept { return order_; }
  const std::string& name() const noexcept { return name_; }
  static constexpr Element identity() noexcept { return 0; }

  Element mul(Element a, Element b) const { return table_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  /// a^-1 b^-1 a b.
  Element comm(Element a, Element b) const { return comm_[a * order_ + b]; }
  /// g^-1 a g.
  Element conj(Element a, Element g) const { return mul(mul(inv(g), a), g); }

  bool is_abelian() const;
  bool valid(Element e) const noexcept { return e < order_; }

  /// Cycle notation for permutation-built groups, the index otherwise.
  const std::string& label(Element e) const { return labels_[e]; }
  std::optional<Element> find_label(std::string_view label) const;

  std::span<const Element> table() const noexcept { return table_; }

 private:
  FiniteGroup() = default;
  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<Element> comm_;
  std::vector<std::string> labels_;
  std::string name_;
};

inline Element commutator(const FiniteGroup& g, Element a, Element b) {
  return g.comm(a, b);
}
inline Element conjugate(const FiniteGroup& g, Element a, Element by) {
  return g.conj(a, by);
}

inline constexpr std::size_t kDefaultOrderCap = 5040;

/// Closure of the generators under right multiplication. Throws
/// CapExceeded when the order passes `order_cap`, GroupError for generators
/// that are not permutations of the given degree.
FiniteGroup from_permutations(std::span<const Permutation> generators,
                              std::size_t degree, std::string name = "",
                              std::size_t order_cap = kDefaultOrderCap);

/// Catalog: trivial, cyclic(n), dihedral(n) (order 2n), symmetric(n<=6),
/// alternating(n<=6), quaternion8, heisenberg(p) for p in {2,3,5}.
/// Throws std::invalid_argument for unknown names or parameters.
FiniteGroup builtin_group(std::string_view name,
                          std::size_t order_cap = kDefaultOrderCap);
/// Catalog instances with order <= max_order, in a fixed order.
std::vector<std::string> catalog_names(std::size_t max_order);

/// Group definition file: `name <s>`, then `table <n>` and n rows, or
/// `perm <degree>` and one generator per line. Throws ParseError.
FiniteGroup parse_group_file(std::string_view text,
                             std::size_t order_cap = kDefaultOrderCap);
FiniteGroup load_group_file(const std::string& path,
                            std::size_t order_cap = kDefaultOrderCap);
/// A catalog name, or `@path` / an existing file path.
FiniteGroup resolve_group(const std::string& source,
                          std::size_t order_cap = kDefaultOrderCap);

// Subsets and subgroups.
bool is_normal_subset(const FiniteGroup& g, const Subset& x);
bool is_inverse_closed(const FiniteGroup& g, const Subset& x);
bool is_subgroup(const FiniteGroup& g, const Subset& x);
Subgroup subgroup_generated(const FiniteGroup& g, const Subset& x);
Subgroup whole_group(const FiniteGroup& g);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subset centralizer(const FiniteGroup& g, const Subset& x);
Subgroup center(const FiniteGroup& g);
/// Conjugacy class index of each element; classes numbered by first member.
std::vector<std::size_t> conjugacy_classes(const FiniteGroup& g);

/// [H, K]: subgroup generated by all [h, k].
Subgroup commutator_subgroup(const FiniteGroup& g, const Subset& h,
                             const Subset& k);
Subgroup derived_subgroup(const FiniteGroup& g);
/// G = G^(0), G^(1), ... ending at the first term equal to its successor.
std::vector<Subgroup> derived_series(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);
/// Number of steps for the derived series to reach 1; none if it stalls.
std::optional<int> derived_length(const FiniteGroup& g);
/// G = gamma_1, gamma_2 = [G,G], gamma_{i+1} = [gamma_i, G], until stable.
std::vector<Subgroup> lower_central_series(const FiniteGroup& g);
/// 0 for the trivial group; none for non-nilpotent groups.
std::optional<int> nilpotency_class(const FiniteGroup& g);

struct Quotient {
  FiniteGroup group;
  /// projection[g] = coset index of g; coset 0 is N itself.
  std::vector<Element> projection;
  /// One representative (the least element) per coset.
  std::vector<Element> representatives;
};
/// Throws GroupError when n is not a normal subgroup.
Quotient quotient(const FiniteGroup& g, const Subset& n);
/// Z_0 = 1, Z_{i+1}/Z_i = Z(G/Z_i), ending at the first repeated term.
std::vector<Subgroup> upper_central_series(const FiniteGroup& g);

/// The subgroup h as a standalone group (elements renumbered by rank in h),
/// together with the map from new index to parent index.
struct Restriction {
  FiniteGroup group;
  std::vector<Element> embedding;
};
Restriction restrict_to(const FiniteGroup& g, const Subset& h);

}  // namespace commassoc
