#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "commassoc/expr.hpp"
#include "commassoc/group.hpp"
#include "commassoc/tree.hpp"

namespace commassoc {

/// Symbol 0 is the distinguished `a`; symbol i >= 1 is x_i.
using SymbolNames = std::function<std::string(int)>;
std::string default_symbol_name(int symbol);

struct Letter {
  int symbol;
  int exponent;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Free-group term over symbols, kept symbolic so one rewrite is valid in
/// every group. Immutable; subterms are shared.
class GroupTerm {
 public:
  enum class Kind : std::uint8_t { Identity, Symbol, Inverse, Commutator,
                                   Conjugate };

  static GroupTerm identity();
  static GroupTerm symbol(int s);
  static GroupTerm inverse(GroupTerm t);
  static GroupTerm commutator(GroupTerm l, GroupTerm r);
  /// base^by = by^-1 base by.
  static GroupTerm conjugate(GroupTerm base, GroupTerm by);

  Kind kind() const noexcept { return node_->kind; }
  int symbol_id() const noexcept { return node_->symbol; }
  const GroupTerm& first() const { return node_->args.at(0); }
  const GroupTerm& second() const { return node_->args.at(1); }
  bool same_node(const GroupTerm& o) const noexcept { return node_ == o.node_; }

  /// values[s] is the value of symbol s.
  Element evaluate(const FiniteGroup& g, std::span<const Element> values) const;
  /// Freely reduced letters of the expanded word.
  std::vector<Letter> letters() const;
  /// `aliases` renders listed subterms (by identity) under a short name.
  std::string render(
      const SymbolNames& names = default_symbol_name,
      const std::vector<std::pair<GroupTerm, std::string>>& aliases = {}) const;

  friend bool operator==(const GroupTerm& a, const GroupTerm& b);

 private:
  struct Node {
    Kind kind;
    int symbol = 0;
    std::vector<GroupTerm> args;
  };
  explicit GroupTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::vector<Letter> free_reduce(const std::vector<Letter>& word);

/// Commutator tree whose leaves are GroupTerms and whose nodes each carry a
/// formal exponent +1 or -1.
class SignedTree {
 public:
  static SignedTree leaf(GroupTerm t, int exponent = 1);
  static SignedTree caret(SignedTree l, SignedTree r, int exponent = 1);

  bool is_leaf() const noexcept { return node_->term.has_value(); }
  int exponent() const noexcept { return node_->exponent; }
  const GroupTerm& term() const { return *node_->term; }
  const SignedTree& left() const { return node_->children.at(0); }
  const SignedTree& right() const { return node_->children.at(1); }
  /// The leaf term with its exponent folded in.
  GroupTerm leaf_term() const;

  GroupTerm as_term() const;
  Element evaluate(const FiniteGroup& g, std::span<const Element> values) const;
  std::string render(const SymbolNames& names = default_symbol_name) const;

 private:
  struct Node {
    std::optional<GroupTerm> term;
    std::vector<SignedTree> children;
    int exponent = 1;
  };
  explicit SignedTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// v_{n,l}(a,u) (side Left) or v_{n,r}(a,u) (side Right): `a` at that leaf
/// of the free caret, x_1..x_n on the other leaves from bottom to top.
struct VinePlacement {
  VineSpec vine;
  Side side = Side::Left;
  int height() const noexcept { return vine.height; }
};

/// Uses variable 0 for a and variable i for x_i.
TreeExpr vine_expr(const VinePlacement& pl);
SignedTree vine_signed_tree(const VinePlacement& pl);
/// Renders variables as a, x1, x2, ...
std::string render_vine_expr(const TreeExpr& e);

/// A vine rewritten as a left vine l_n(a, x̂)^sign with x̂_i conjugates of
/// the original leaves, and equivalently as l_n(ā, x̄) with ā = a^sign.
struct RewriteResult {
  int sign = 1;
  GroupTerm a = GroupTerm::symbol(0);
  /// x̂_1..x̂_n, bottom to top.
  std::vector<GroupTerm> hat_leaves;
  /// x̂_i = leaf_i^(conjugators[i]); identity when unchanged.
  std::vector<GroupTerm> conjugators;
  /// Running sign after the free caret and after each level above it.
  std::vector<int> sign_trace;
  /// l_k(a, x̂_1..x̂_k) for k = 1..n.
  std::vector<GroupTerm> prefix_vines;
  int a_exponent = 1;
  std::vector<GroupTerm> bar_leaves;

  SignedTree hat_tree() const;
  SignedTree bar_tree() const;
  /// Human-readable account with `x3^(w)` conjugates and prefix names L1..Ln.
  std::string describe(const SymbolNames& names = default_symbol_name) const;
};

/// Throws std::invalid_argument when the tree is not a vine.
RewriteResult rewrite_signed_vine(const SignedTree& t, Side a_side);
RewriteResult rewrite_to_left_vine(const VinePlacement& pl);

struct RewriteCheck {
  bool ok = true;
  bool exhaustive = false;
  std::uint64_t assignments = 0;
  /// Values of a, x1..xn at the first mismatch.
  std::optional<std::vector<Element>> mismatch;
  std::string failure;
};

/// Compares the vine with both rewritten forms and checks each x̂_i, x̄_i is
/// conjugate to x_i and ā is a or a^-1. Exhaustive when |G|^(n+1) <= 10^6,
/// otherwise `samples` seeded random assignments.
RewriteCheck verify_rewrite(const FiniteGroup& g, const VinePlacement& pl,
                            std::uint64_t samples, std::uint64_t seed = 0);

/// All 2^(n-1) vine shapes of height n, turn strings in lexicographic order.
std::vector<VineSpec> all_vines(int height);

struct CentralizeCheck {
  bool ok = true;
  std::size_t hypothesis_pairs = 0;
  std::size_t shapes = 0;
  std::string failure;
};

/// For every (a, b) where b centralizes every value of l_j(a, u), checks that
/// b centralizes every value of v_{qj,l}(a, u) and v_{qj,r}(a, u) for each
/// listed q and each vine shape (at most shape_cap shapes per height).
CentralizeCheck check_centralize_propagation(const FiniteGroup& g, int j,
                                             const std::vector<int>& multiples,
                                             std::size_t shape_cap = 1u << 12);

/// Values of the vine with `a` fixed and x_i ranging over G.
Subset vine_value_set(const FiniteGroup& g, const VinePlacement& pl, Element a);

}  // namespace commassoc
