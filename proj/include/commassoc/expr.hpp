#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "commassoc/group.hpp"
#include "commassoc/tree.hpp"

namespace commassoc {

/// Commutator expression whose leaves are variables x<k> or group constants
/// (element indices of the group in scope). Immutable.
class TreeExpr {
 public:
  enum class Kind : std::uint8_t { Var, Const, Caret };

  static TreeExpr var(int index);
  static TreeExpr constant(Element e);
  static TreeExpr caret(TreeExpr left, TreeExpr right);
  static TreeExpr one() { return constant(FiniteGroup::identity()); }

  Kind kind() const noexcept;
  bool is_leaf() const noexcept;
  int var_index() const;
  Element constant_value() const;
  const TreeExpr& left() const;
  const TreeExpr& right() const;
  std::size_t leaf_count() const noexcept;

  friend bool operator==(const TreeExpr& a, const TreeExpr& b);

 private:
  struct Node;
  explicit TreeExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct TreeExpr::Node {
  Kind kind;
  int var = 0;
  Element value = 0;
  std::size_t leaves = 1;
  std::optional<TreeExpr> left, right;
};

inline TreeExpr::Kind TreeExpr::kind() const noexcept { return node_->kind; }
inline bool TreeExpr::is_leaf() const noexcept {
  return node_->kind != Kind::Caret;
}
inline std::size_t TreeExpr::leaf_count() const noexcept {
  return node_->leaves;
}

using Assignment = std::map<int, Element>;

/// expr := "x" digits | "#" digits | "[" expr "," expr "]".
/// Throws ParseError. When `g` is given, constants must be elements of it.
TreeExpr parse_expr(std::string_view text, const FiniteGroup* g = nullptr);
/// Renders `[x1, [x2, #3]]`. `var_name` overrides variable names.
std::string render_expr(const TreeExpr& e,
                        const std::function<std::string(int)>& var_name = {});

/// Leaves become x<first>, x<first+1>, ... left to right.
TreeExpr expr_from_tree(const BinaryTree& t, int first_var = 1);
BinaryTree shape(const TreeExpr& e);
/// Distinct variables in left-to-right first-occurrence order.
std::vector<int> variables(const TreeExpr& e);
/// Sorted union of the variables of both sides.
std::vector<int> shared_variables(const TreeExpr& s, const TreeExpr& t);
int max_variable(const TreeExpr& e);

/// Replaces each variable v in `subs` by subs[v].
TreeExpr substitute(const TreeExpr& e, const std::map<int, TreeExpr>& subs);
/// Replaces constant c by map[c].
TreeExpr map_constants(const TreeExpr& e, const std::vector<Element>& map);

/// Throws std::invalid_argument for a missing variable or foreign constant.
Element evaluate(const TreeExpr& e, const FiniteGroup& g, const Assignment& a);

/// Postfix program with variables bound to slots, for tight loops.
class CompiledExpr {
 public:
  /// slot_of[i] is the slot of variable vars[i].
  CompiledExpr(const TreeExpr& e, const std::vector<int>& vars);
  Element run(const FiniteGroup& g, const Element* slots,
              Element* stack) const;
  std::size_t stack_depth() const noexcept { return depth_; }

 private:
  enum class Op : std::uint8_t { Slot, Const, Comm };
  struct Step {
    Op op;
    Element arg;
  };
  std::vector<Step> steps_;
  std::size_t depth_ = 0;
};

struct SearchOptions {
  /// Exhaustive assignments allowed before reporting BudgetExceeded.
  std::uint64_t budget = 10'000'000'000ull;
  /// Random assignments tried first when the space exceeds sample_threshold.
  std::uint64_t samples = 10'000;
  std::uint64_t sample_threshold = 1'000'000;
  std::uint64_t seed = 0;
  /// 0 = all hardware threads.
  unsigned workers = 0;
};

enum class Outcome : std::uint8_t { Holds, Fails, BudgetExceeded };
std::string_view outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Holds;
  std::optional<Assignment> counterexample;
  std::uint64_t evaluations = 0;
  bool from_sampling = false;

  bool holds() const noexcept { return outcome == Outcome::Holds; }
  bool fails() const noexcept { return outcome == Outcome::Fails; }
};

/// X |= s ~ t: every assignment of X-values to the variables of s and t
/// gives equal values. Exhaustive counterexamples are the lexicographically
/// least assignment (variables ascending by index, values in X order).
Verdict satisfies(const FiniteGroup& g, const Subset& x, const TreeExpr& s,
                  const TreeExpr& t, const SearchOptions& opts = {});
/// As satisfies, with a separate value domain per variable; variables not
/// in `domains` range over `fallback`.
Verdict satisfies_domains(const FiniteGroup& g,
                          const std::map<int, Subset>& domains,
                          const Subset& fallback, const TreeExpr& s,
                          const TreeExpr& t, const SearchOptions& opts = {});

std::string render_assignment(const FiniteGroup& g, const Assignment& a);

/// t(X). Throws CapExceeded when |X|^vars exceeds the budget.
Subset value_set(const TreeExpr& e, const FiniteGroup& g, const Subset& x,
                 std::uint64_t budget = 100'000'000ull);
/// {[a,b] : a in x, b in y}.
Subset commutator_set(const FiniteGroup& g, const Subset& x, const Subset& y);

/// B_p(G), the values of the full commutator tree of height p.
Subset bp_set(const FiniteGroup& g, int p, int height_cap = kDefaultHeightCap);

struct BpSequence {
  /// B_0, B_1, ... with the final entry equal to sets[cycle_start].
  std::vector<Subset> sets;
  std::size_t cycle_start = 0;
  /// Number of distinct sets (all but the repeated last one).
  std::size_t distinct() const noexcept { return sets.size() - 1; }
};
BpSequence bp_sequence(const FiniteGroup& g);

}  // namespace commassoc
