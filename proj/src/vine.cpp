#include "commassoc/vine.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace commassoc {

std::string default_symbol_name(int symbol) {
  return symbol == 0 ? "a" : "x" + std::to_string(symbol);
}

// -------------------------------------------------------------- GroupTerm

GroupTerm GroupTerm::identity() {
  static const GroupTerm id(std::make_shared<const Node>(Node{Kind::Identity, 0, {}}));
  return id;
}

GroupTerm GroupTerm::symbol(int s) {
  return GroupTerm(std::make_shared<const Node>(Node{Kind::Symbol, s, {}}));
}

GroupTerm GroupTerm::inverse(GroupTerm t) {
  if (t.kind() == Kind::Identity) return t;
  return GroupTerm(
      std::make_shared<const Node>(Node{Kind::Inverse, 0, {std::move(t)}}));
}

GroupTerm GroupTerm::commutator(GroupTerm l, GroupTerm r) {
  return GroupTerm(std::make_shared<const Node>(
      Node{Kind::Commutator, 0, {std::move(l), std::move(r)}}));
}

GroupTerm GroupTerm::conjugate(GroupTerm base, GroupTerm by) {
  if (by.kind() == Kind::Identity) return base;
  // (y^(w^-1))^w = y and (y^w)^(w^-1) = y.
  if (base.kind() == Kind::Conjugate) {
    const GroupTerm& inner = base.second();
    if ((inner.kind() == Kind::Inverse && inner.first() == by) ||
        (by.kind() == Kind::Inverse && by.first() == inner))
      return base.first();
  }
  return GroupTerm(std::make_shared<const Node>(
      Node{Kind::Conjugate, 0, {std::move(base), std::move(by)}}));
}

Element GroupTerm::evaluate(const FiniteGroup& g,
                            std::span<const Element> values) const {
  switch (kind()) {
    case Kind::Identity:
      return FiniteGroup::identity();
    case Kind::Symbol:
      return values[static_cast<std::size_t>(symbol_id())];
    case Kind::Inverse:
      return g.inv(first().evaluate(g, values));
    case Kind::Commutator:
      return g.comm(first().evaluate(g, values), second().evaluate(g, values));
    case Kind::Conjugate:
      return g.conj(first().evaluate(g, values), second().evaluate(g, values));
  }
  return FiniteGroup::identity();
}

namespace {

void append_inverse(std::vector<Letter>& out, const std::vector<Letter>& w) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    out.push_back({it->symbol, -it->exponent});
}

void append(std::vector<Letter>& out, const std::vector<Letter>& w) {
  out.insert(out.end(), w.begin(), w.end());
}

}  // namespace

std::vector<Letter> free_reduce(const std::vector<Letter>& word) {
  std::vector<Letter> out;
  out.reserve(word.size());
  for (const Letter& l : word) {
    if (!out.empty() && out.back().symbol == l.symbol &&
        out.back().exponent == -l.exponent)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

std::vector<Letter> GroupTerm::letters() const {
  std::vector<Letter> out;
  switch (kind()) {
    case Kind::Identity:
      break;
    case Kind::Symbol:
      out.push_back({symbol_id(), 1});
      break;
    case Kind::Inverse:
      append_inverse(out, first().letters());
      break;
    case Kind::Commutator: {
      const auto u = first().letters();
      const auto v = second().letters();
      append_inverse(out, u);
      append_inverse(out, v);
      append(out, u);
      append(out, v);
      break;
    }
    case Kind::Conjugate: {
      const auto b = first().letters();
      const auto w = second().letters();
      append_inverse(out, w);
      append(out, b);
      append(out, w);
      break;
    }
  }
  return free_reduce(out);
}

std::string GroupTerm::render(
    const SymbolNames& names,
    const std::vector<std::pair<GroupTerm, std::string>>& aliases) const {
  for (const auto& [t, name] : aliases)
    if (same_node(t)) return name;
  const auto atomic = [&](const GroupTerm& t) {
    const std::string s = t.render(names, aliases);
    const bool bare = t.kind() == Kind::Symbol || t.kind() == Kind::Commutator ||
                      std::any_of(aliases.begin(), aliases.end(),
                                  [&](const auto& al) { return t.same_node(al.first); });
    return bare ? s : "(" + s + ")";
  };
  switch (kind()) {
    case Kind::Identity:
      return "1";
    case Kind::Symbol:
      return names(symbol_id());
    case Kind::Inverse:
      return atomic(first()) + "^-1";
    case Kind::Commutator:
      return "[" + first().render(names, aliases) + ", " +
             second().render(names, aliases) + "]";
    case Kind::Conjugate:
      return atomic(first()) + "^(" + second().render(names, aliases) + ")";
  }
  return "?";
}

bool operator==(const GroupTerm& a, const GroupTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == GroupTerm::Kind::Symbol) return a.symbol_id() == b.symbol_id();
  if (a.node_->args.size() != b.node_->args.size()) return false;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (!(a.node_->args[i] == b.node_->args[i])) return false;
  return true;
}

// ------------------------------------------------------------- SignedTree

SignedTree SignedTree::leaf(GroupTerm t, int exponent) {
  return SignedTree(
      std::make_shared<const Node>(Node{std::move(t), {}, exponent}));
}

SignedTree SignedTree::caret(SignedTree l, SignedTree r, int exponent) {
  return SignedTree(std::make_shared<const Node>(
      Node{std::nullopt, {std::move(l), std::move(r)}, exponent}));
}

GroupTerm SignedTree::leaf_term() const {
  return exponent() == 1 ? term() : GroupTerm::inverse(term());
}

GroupTerm SignedTree::as_term() const {
  if (is_leaf()) return leaf_term();
  GroupTerm c = GroupTerm::commutator(left().as_term(), right().as_term());
  return exponent() == 1 ? c : GroupTerm::inverse(std::move(c));
}

Element SignedTree::evaluate(const FiniteGroup& g,
                             std::span<const Element> values) const {
  Element v = is_leaf() ? term().evaluate(g, values)
                        : g.comm(left().evaluate(g, values),
                                 right().evaluate(g, values));
  return exponent() == 1 ? v : g.inv(v);
}

std::string SignedTree::render(const SymbolNames& names) const {
  std::string s;
  if (is_leaf()) return leaf_term().render(names);
  s = "[" + left().render(names) + ", " + right().render(names) + "]";
  return exponent() == 1 ? s : s + "^-1";
}

// ----------------------------------------------------------------- vines

namespace {

// Builds the vine bottom-up, handing out leaf labels in order.
template <class Leaf, class Caret>
auto build_vine(const VinePlacement& pl, Leaf leaf, Caret caret) {
  const VineSpec& v = pl.vine;
  if (v.height < 1 || v.turns.size() != static_cast<std::size_t>(v.height - 1))
    throw std::invalid_argument("malformed vine placement");
  auto cur = pl.side == Side::Left ? caret(leaf(0), leaf(1))
                                   : caret(leaf(1), leaf(0));
  int next = 2;
  for (auto it = v.turns.rbegin(); it != v.turns.rend(); ++it) {
    // The turn says which child continues the vine.
    cur = *it == Side::Left ? caret(cur, leaf(next)) : caret(leaf(next), cur);
    ++next;
  }
  return cur;
}

}  // namespace

TreeExpr vine_expr(const VinePlacement& pl) {
  return build_vine(
      pl, [](int s) { return TreeExpr::var(s); },
      [](TreeExpr l, TreeExpr r) {
        return TreeExpr::caret(std::move(l), std::move(r));
      });
}

SignedTree vine_signed_tree(const VinePlacement& pl) {
  return build_vine(
      pl, [](int s) { return SignedTree::leaf(GroupTerm::symbol(s)); },
      [](SignedTree l, SignedTree r) {
        return SignedTree::caret(std::move(l), std::move(r));
      });
}

std::string render_vine_expr(const TreeExpr& e) {
  return render_expr(e, default_symbol_name);
}

std::vector<VineSpec> all_vines(int height) {
  if (height < 1) throw std::invalid_argument("vine height must be >= 1");
  std::vector<VineSpec> out;
  const int k = height - 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    VineSpec v{height, {}};
    // Most significant bit first so that L... < R... lexicographically.
    for (int i = k - 1; i >= 0; --i)
      v.turns.push_back((mask >> i) & 1 ? Side::Right : Side::Left);
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------- rewrite

RewriteResult rewrite_signed_vine(const SignedTree& t, Side a_side) {
  // Path from the root to the free caret.
  std::vector<const SignedTree*> path;
  const SignedTree* cur = &t;
  for (;;) {
    if (cur->is_leaf()) throw std::invalid_argument("not a vine: bare leaf");
    path.push_back(cur);
    const bool l = cur->left().is_leaf(), r = cur->right().is_leaf();
    if (l && r) break;
    if (!l && !r) throw std::invalid_argument("not a vine: two caret children");
    cur = l ? &cur->right() : &cur->left();
  }

  RewriteResult res;
  const SignedTree& free = *path.back();
  const SignedTree& a_leaf = a_side == Side::Left ? free.left() : free.right();
  const SignedTree& y_leaf = a_side == Side::Left ? free.right() : free.left();
  res.a = a_leaf.leaf_term();
  // [a, y] is l_1 already; [y, a] = [a, y]^-1.
  int sign = (a_side == Side::Left ? 1 : -1) * free.exponent();
  res.hat_leaves.push_back(y_leaf.leaf_term());
  res.conjugators.push_back(GroupTerm::identity());
  res.prefix_vines.push_back(GroupTerm::commutator(res.a, res.hat_leaves[0]));
  res.sign_trace.push_back(sign);

  for (std::size_t level = path.size() - 1; level-- > 0;) {
    const SignedTree& node = *path[level];
    const bool vine_left = !node.left().is_leaf();
    const GroupTerm y = (vine_left ? node.right() : node.left()).leaf_term();
    const GroupTerm& prev = res.prefix_vines.back();
    GroupTerm conj = GroupTerm::identity();
    int next;
    if (sign == 1) {
      // [L, y] = l_{k+1};  [y, L] = [L, y]^-1.
      next = vine_left ? 1 : -1;
    } else {
      // [L^-1, y] = [L, y^(L^-1)]^-1;  [y, L^-1] = [L, y^(L^-1)].
      conj = GroupTerm::inverse(prev);
      next = vine_left ? -1 : 1;
    }
    sign = next * node.exponent();
    GroupTerm hat = GroupTerm::conjugate(y, conj);
    res.prefix_vines.push_back(GroupTerm::commutator(prev, hat));
    res.hat_leaves.push_back(std::move(hat));
    res.conjugators.push_back(std::move(conj));
    res.sign_trace.push_back(sign);
  }
  res.sign = sign;

  // l_n(a, x̂)^-1 = l_n(a^-1, x̄) with x̄_i = x̂_i^(l_{i-1}(a, x̂)), l_0 = a.
  res.a_exponent = sign;
  for (std::size_t i = 0; i < res.hat_leaves.size(); ++i) {
    if (sign == 1) {
      res.bar_leaves.push_back(res.hat_leaves[i]);
    } else {
      const GroupTerm& by = i == 0 ? res.a : res.prefix_vines[i - 1];
      res.bar_leaves.push_back(GroupTerm::conjugate(res.hat_leaves[i], by));
    }
  }
  return res;
}

RewriteResult rewrite_to_left_vine(const VinePlacement& pl) {
  return rewrite_signed_vine(vine_signed_tree(pl), pl.side);
}

SignedTree RewriteResult::hat_tree() const {
  SignedTree cur = SignedTree::leaf(a);
  for (std::size_t i = 0; i < hat_leaves.size(); ++i) {
    const bool root = i + 1 == hat_leaves.size();
    cur = SignedTree::caret(cur, SignedTree::leaf(hat_leaves[i]),
                            root ? sign : 1);
  }
  return cur;
}

SignedTree RewriteResult::bar_tree() const {
  SignedTree cur = SignedTree::leaf(a, a_exponent);
  for (const auto& leaf : bar_leaves)
    cur = SignedTree::caret(cur, SignedTree::leaf(leaf));
  return cur;
}

std::string RewriteResult::describe(const SymbolNames& names) const {
  std::vector<std::pair<GroupTerm, std::string>> aliases;
  std::ostringstream os;
  for (std::size_t k = 0; k < prefix_vines.size(); ++k) {
    os << "  L" << (k + 1) << " = "
       << prefix_vines[k].render(names, aliases) << "   (sign "
       << (sign_trace[k] > 0 ? "+1" : "-1") << ")\n";
    aliases.emplace_back(prefix_vines[k], "L" + std::to_string(k + 1));
  }
  os << "  result: L" << prefix_vines.size()
     << (sign > 0 ? "" : "^-1") << "\n";
  os << "  conjugated leaves:";
  bool any = false;
  for (std::size_t i = 0; i < conjugators.size(); ++i) {
    if (conjugators[i].kind() == GroupTerm::Kind::Identity) continue;
    os << "\n    " << hat_leaves[i].render(names, aliases);
    any = true;
  }
  if (!any) os << " none";
  os << "\n  barred form: l" << bar_leaves.size() << "("
     << (a_exponent > 0 ? names(0) : names(0) + "^-1");
  for (const auto& b : bar_leaves) os << ", " << b.render(names, aliases);
  os << ")\n";
  return os.str();
}

// -------------------------------------------------------------- checking

RewriteCheck verify_rewrite(const FiniteGroup& g, const VinePlacement& pl,
                            std::uint64_t samples, std::uint64_t seed) {
  const int n = pl.height();
  const RewriteResult rw = rewrite_to_left_vine(pl);
  const TreeExpr original = vine_expr(pl);
  std::vector<int> vars(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) vars[static_cast<std::size_t>(i)] = i;
  const CompiledExpr prog(original, vars);
  std::vector<Element> stack(prog.stack_depth() + 1);
  const SignedTree hat = rw.hat_tree();
  const SignedTree bar = rw.bar_tree();
  const auto cls = conjugacy_classes(g);

  RewriteCheck out;
  std::vector<Element> values(static_cast<std::size_t>(n) + 1, 0);
  auto check_one = [&]() -> bool {
    ++out.assignments;
    const Element want = prog.run(g, values.data(), stack.data());
    std::string why;
    if (hat.evaluate(g, values) != want)
      why = "hat form differs from the vine";
    else if (bar.evaluate(g, values) != want)
      why = "barred form differs from the vine";
    for (int i = 1; why.empty() && i <= n; ++i) {
      const Element x = values[static_cast<std::size_t>(i)];
      const auto idx = static_cast<std::size_t>(i - 1);
      if (cls[rw.hat_leaves[idx].evaluate(g, values)] != cls[x] ||
          cls[rw.bar_leaves[idx].evaluate(g, values)] != cls[x])
        why = "leaf x" + std::to_string(i) + " not replaced by a conjugate";
    }
    if (why.empty()) {
      const Element a = values[0];
      const Element abar = rw.a_exponent > 0 ? a : g.inv(a);
      if (rw.a.evaluate(g, values) != a || (abar != a && abar != g.inv(a)))
        why = "distinguished leaf changed";
    }
    if (why.empty()) return true;
    out.ok = false;
    out.failure = why;
    out.mismatch = values;
    return false;
  };

  std::uint64_t space = 1;
  bool small = true;
  for (int i = 0; i <= n; ++i) {
    space *= g.order();
    if (space > 1'000'000) {
      small = false;
      break;
    }
  }
  if (small) {
    out.exhaustive = true;
    for (std::uint64_t idx = 0; idx < space; ++idx) {
      std::uint64_t r = idx;
      for (int i = n; i >= 0; --i) {
        values[static_cast<std::size_t>(i)] = static_cast<Element>(r % g.order());
        r /= g.order();
      }
      if (!check_one()) return out;
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Element> pick(0, static_cast<Element>(g.order() - 1));
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (auto& v : values) v = pick(rng);
    if (!check_one()) return out;
  }
  return out;
}

Subset vine_value_set(const FiniteGroup& g, const VinePlacement& pl,
                      Element a) {
  const Subset all = Subset::all(g.order());
  const Subset fixed({a});
  Subset cur = pl.side == Side::Left ? commutator_set(g, fixed, all)
                                     : commutator_set(g, all, fixed);
  for (auto it = pl.vine.turns.rbegin(); it != pl.vine.turns.rend(); ++it)
    cur = *it == Side::Left ? commutator_set(g, cur, all)
                            : commutator_set(g, all, cur);
  return cur;
}

CentralizeCheck check_centralize_propagation(const FiniteGroup& g, int j,
                                             const std::vector<int>& multiples,
                                             std::size_t shape_cap) {
  if (j < 1) throw std::invalid_argument("j must be >= 1");
  CentralizeCheck out;
  const Subset all = Subset::all(g.order());
  auto centralizes = [&](Element b, const Subset& s) {
    return std::all_of(s.begin(), s.end(), [&](Element v) {
      return g.mul(b, v) == g.mul(v, b);
    });
  };
  // For each height requested, the shapes to test.
  std::vector<std::pair<int, std::vector<VineSpec>>> heights;
  for (int q : multiples) {
    if (q < 1) throw std::invalid_argument("multiples must be >= 1");
    auto shapes = all_vines(q * j);
    if (shapes.size() > shape_cap) shapes.resize(shape_cap);
    out.shapes += 2 * shapes.size();
    heights.emplace_back(q * j, std::move(shapes));
  }
  for (Element a = 0; a < g.order(); ++a) {
    // Hypothesis set: values of l_j(a, u).
    Subset hyp({a});
    for (int i = 0; i < j; ++i) hyp = commutator_set(g, hyp, all);
    std::vector<Element> bs;
    for (Element b = 0; b < g.order(); ++b)
      if (centralizes(b, hyp)) bs.push_back(b);
    if (bs.empty()) continue;
    out.hypothesis_pairs += bs.size();
    for (const auto& [h, shapes] : heights) {
      for (const VineSpec& spec : shapes) {
        for (Side side : {Side::Left, Side::Right}) {
          const VinePlacement pl{spec, side};
          const Subset vals = vine_value_set(g, pl, a);
          for (Element b : bs) {
            if (!centralizes(b, vals)) {
              out.ok = false;
              std::ostringstream os;
              os << "b=" << g.label(b) << " centralizes l_" << j << "(a,u) for a="
                 << g.label(a) << " but not v_" << h << ","
                 << (side == Side::Left ? 'l' : 'r') << " with turns "
                 << render_turns(spec.turns);
              out.failure = os.str();
              return out;
            }
          }
        }
      }
    }
  }
  return out;
}

}  // namespace commassoc
