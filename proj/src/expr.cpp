#include "commassoc/expr.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

#include "commassoc/errors.hpp"

namespace commassoc {

TreeExpr TreeExpr::var(int index) {
  if (index < 0) throw std::invalid_argument("negative variable index");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = index;
  return TreeExpr(std::move(n));
}

TreeExpr TreeExpr::constant(Element e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = e;
  return TreeExpr(std::move(n));
}

TreeExpr TreeExpr::caret(TreeExpr left, TreeExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Caret;
  n->leaves = left.leaf_count() + right.leaf_count();
  n->left = std::move(left);
  n->right = std::move(right);
  return TreeExpr(std::move(n));
}

int TreeExpr::var_index() const {
  if (kind() != Kind::Var) throw std::logic_error("not a variable leaf");
  return node_->var;
}

Element TreeExpr::constant_value() const {
  if (kind() != Kind::Const) throw std::logic_error("not a constant leaf");
  return node_->value;
}

const TreeExpr& TreeExpr::left() const {
  if (kind() != Kind::Caret) throw std::logic_error("left() of a leaf");
  return *node_->left;
}

const TreeExpr& TreeExpr::right() const {
  if (kind() != Kind::Caret) throw std::logic_error("right() of a leaf");
  return *node_->right;
}

bool operator==(const TreeExpr& a, const TreeExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TreeExpr::Kind::Var:
      return a.var_index() == b.var_index();
    case TreeExpr::Kind::Const:
      return a.constant_value() == b.constant_value();
    case TreeExpr::Kind::Caret:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const FiniteGroup* g) : text_(text), g_(g) {}

  TreeExpr parse_all() {
    TreeExpr e = parse();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  std::uint64_t number() {
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc() || ptr == text_.data() + pos_)
      throw ParseError("expected digits", start);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  TreeExpr parse() {
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == 'x') {
      ++pos_;
      const std::uint64_t v = number();
      if (v > 1'000'000) throw ParseError("variable index too large", pos_);
      return TreeExpr::var(static_cast<int>(v));
    }
    if (c == '#') {
      const std::size_t at = pos_;
      ++pos_;
      const std::uint64_t v = number();
      if (g_ && v >= g_->order())
        throw ParseError("unknown constant #" + std::to_string(v), at);
      return TreeExpr::constant(static_cast<Element>(v));
    }
    if (c != '[') throw ParseError("expected 'x', '#' or '['", pos_);
    ++pos_;
    TreeExpr l = parse();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ',')
      throw ParseError("expected ','", pos_);
    ++pos_;
    TreeExpr r = parse();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ']')
      throw ParseError("expected ']'", pos_);
    ++pos_;
    return TreeExpr::caret(std::move(l), std::move(r));
  }

  std::string_view text_;
  const FiniteGroup* g_;
  std::size_t pos_ = 0;
};

void render_into(const TreeExpr& e,
                 const std::function<std::string(int)>& var_name,
                 std::string& out) {
  switch (e.kind()) {
    case TreeExpr::Kind::Var:
      out += var_name ? var_name(e.var_index())
                      : "x" + std::to_string(e.var_index());
      return;
    case TreeExpr::Kind::Const:
      out += "#" + std::to_string(e.constant_value());
      return;
    case TreeExpr::Kind::Caret:
      out += '[';
      render_into(e.left(), var_name, out);
      out += ", ";
      render_into(e.right(), var_name, out);
      out += ']';
      return;
  }
}

TreeExpr from_tree(const BinaryTree& t, int& next) {
  if (t.is_leaf()) return TreeExpr::var(next++);
  TreeExpr l = from_tree(t.left(), next);
  TreeExpr r = from_tree(t.right(), next);
  return TreeExpr::caret(std::move(l), std::move(r));
}

void collect_vars(const TreeExpr& e, std::vector<int>& out) {
  if (e.kind() == TreeExpr::Kind::Var) {
    if (std::find(out.begin(), out.end(), e.var_index()) == out.end())
      out.push_back(e.var_index());
  } else if (e.kind() == TreeExpr::Kind::Caret) {
    collect_vars(e.left(), out);
    collect_vars(e.right(), out);
  }
}

}  // namespace

TreeExpr parse_expr(std::string_view text, const FiniteGroup* g) {
  return ExprParser(text, g).parse_all();
}

std::string render_expr(const TreeExpr& e,
                        const std::function<std::string(int)>& var_name) {
  std::string out;
  render_into(e, var_name, out);
  return out;
}

TreeExpr expr_from_tree(const BinaryTree& t, int first_var) {
  int next = first_var;
  return from_tree(t, next);
}

BinaryTree shape(const TreeExpr& e) {
  if (e.is_leaf()) return BinaryTree::leaf();
  return BinaryTree::caret(shape(e.left()), shape(e.right()));
}

std::vector<int> variables(const TreeExpr& e) {
  std::vector<int> out;
  collect_vars(e, out);
  return out;
}

std::vector<int> shared_variables(const TreeExpr& s, const TreeExpr& t) {
  std::vector<int> out;
  collect_vars(s, out);
  collect_vars(t, out);
  std::sort(out.begin(), out.end());
  return out;
}

int max_variable(const TreeExpr& e) {
  const auto v = variables(e);
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}

TreeExpr substitute(const TreeExpr& e, const std::map<int, TreeExpr>& subs) {
  switch (e.kind()) {
    case TreeExpr::Kind::Var: {
      auto it = subs.find(e.var_index());
      return it == subs.end() ? e : it->second;
    }
    case TreeExpr::Kind::Const:
      return e;
    case TreeExpr::Kind::Caret:
      return TreeExpr::caret(substitute(e.left(), subs),
                             substitute(e.right(), subs));
  }
  return e;
}

TreeExpr map_constants(const TreeExpr& e, const std::vector<Element>& map) {
  switch (e.kind()) {
    case TreeExpr::Kind::Var:
      return e;
    case TreeExpr::Kind::Const:
      if (e.constant_value() >= map.size())
        throw std::invalid_argument("constant outside the mapped group");
      return TreeExpr::constant(map[e.constant_value()]);
    case TreeExpr::Kind::Caret:
      return TreeExpr::caret(map_constants(e.left(), map),
                             map_constants(e.right(), map));
  }
  return e;
}

Element evaluate(const TreeExpr& e, const FiniteGroup& g, const Assignment& a) {
  switch (e.kind()) {
    case TreeExpr::Kind::Var: {
      auto it = a.find(e.var_index());
      if (it == a.end())
        throw std::invalid_argument("no value for variable x" +
                                    std::to_string(e.var_index()));
      if (!g.valid(it->second))
        throw std::invalid_argument("assigned value is not a group element");
      return it->second;
    }
    case TreeExpr::Kind::Const:
      if (!g.valid(e.constant_value()))
        throw std::invalid_argument("constant #" +
                                    std::to_string(e.constant_value()) +
                                    " is not an element of " + g.name());
      return e.constant_value();
    case TreeExpr::Kind::Caret:
      return g.comm(evaluate(e.left(), g, a), evaluate(e.right(), g, a));
  }
  return FiniteGroup::identity();
}

// ----------------------------------------------------------- CompiledExpr

namespace {

void compile_into(const TreeExpr& e, const std::vector<int>& vars,
                  std::vector<std::pair<int, Element>>& steps) {
  switch (e.kind()) {
    case TreeExpr::Kind::Var: {
      auto it = std::find(vars.begin(), vars.end(), e.var_index());
      if (it == vars.end())
        throw std::invalid_argument("variable x" +
                                    std::to_string(e.var_index()) +
                                    " has no slot");
      steps.emplace_back(0, static_cast<Element>(it - vars.begin()));
      return;
    }
    case TreeExpr::Kind::Const:
      steps.emplace_back(1, e.constant_value());
      return;
    case TreeExpr::Kind::Caret:
      compile_into(e.left(), vars, steps);
      compile_into(e.right(), vars, steps);
      steps.emplace_back(2, 0);
      return;
  }
}

}  // namespace

CompiledExpr::CompiledExpr(const TreeExpr& e, const std::vector<int>& vars) {
  std::vector<std::pair<int, Element>> raw;
  compile_into(e, vars, raw);
  std::size_t depth = 0;
  for (auto [op, arg] : raw) {
    steps_.push_back({static_cast<Op>(op), arg});
    if (op == 2)
      --depth;
    else
      depth_ = std::max(depth_, ++depth);
  }
}

Element CompiledExpr::run(const FiniteGroup& g, const Element* slots,
                          Element* stack) const {
  std::size_t top = 0;
  for (const Step& s : steps_) {
    switch (s.op) {
      case Op::Slot:
        stack[top++] = slots[s.arg];
        break;
      case Op::Const:
        stack[top++] = s.arg;
        break;
      case Op::Comm:
        --top;
        stack[top - 1] = g.comm(stack[top - 1], stack[top]);
        break;
    }
  }
  return stack[0];
}

// ------------------------------------------------------------- value sets

Subset value_set(const TreeExpr& e, const FiniteGroup& g, const Subset& x,
                 std::uint64_t budget) {
  const auto vars = variables(e);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (x.size() != 0 && total > budget / x.size())
      throw CapExceeded("value set enumeration exceeds budget");
    total *= x.size();
  }
  if (x.empty() && !vars.empty()) return Subset{};
  const CompiledExpr prog(e, vars);
  std::vector<Element> stack(prog.stack_depth() + 1);
  std::vector<std::size_t> digit(vars.size(), 0);
  std::vector<Element> slots(vars.size(), x.empty() ? 0 : x.members()[0]);
  std::vector<char> hit(g.order(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    hit[prog.run(g, slots.data(), stack.data())] = 1;
    for (std::size_t d = vars.size(); d-- > 0;) {
      if (++digit[d] < x.size()) {
        slots[d] = x.members()[digit[d]];
        break;
      }
      digit[d] = 0;
      slots[d] = x.members()[0];
    }
  }
  std::vector<Element> out;
  for (Element i = 0; i < g.order(); ++i)
    if (hit[i]) out.push_back(i);
  return Subset(std::move(out));
}

Subset commutator_set(const FiniteGroup& g, const Subset& x, const Subset& y) {
  std::vector<char> hit(g.order(), 0);
  for (Element a : x)
    for (Element b : y) hit[g.comm(a, b)] = 1;
  std::vector<Element> out;
  for (Element i = 0; i < g.order(); ++i)
    if (hit[i]) out.push_back(i);
  return Subset(std::move(out));
}

Subset bp_set(const FiniteGroup& g, int p, int height_cap) {
  if (p < 0) throw std::invalid_argument("negative height");
  if (p > height_cap)
    throw CapExceeded("height " + std::to_string(p) + " exceeds cap " +
                      std::to_string(height_cap));
  Subset b = Subset::all(g.order());
  for (int i = 0; i < p; ++i) b = commutator_set(g, b, b);
  return b;
}

BpSequence bp_sequence(const FiniteGroup& g) {
  BpSequence seq;
  seq.sets.push_back(Subset::all(g.order()));
  for (;;) {
    Subset next = commutator_set(g, seq.sets.back(), seq.sets.back());
    const auto it = std::find(seq.sets.begin(), seq.sets.end(), next);
    const auto idx = static_cast<std::size_t>(it - seq.sets.begin());
    const bool repeat = it != seq.sets.end();
    seq.sets.push_back(std::move(next));
    if (repeat) {
      seq.cycle_start = idx;
      break;
    }
  }
  return seq;
}

}  // namespace commassoc
