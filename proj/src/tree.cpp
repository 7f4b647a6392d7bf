#include "commassoc/tree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "commassoc/errors.hpp"

namespace commassoc {

BinaryTree BinaryTree::caret(BinaryTree left, BinaryTree right) {
  const std::size_t leaves = left.leaf_count() + right.leaf_count();
  const int height = 1 + std::max(left.height(), right.height());
  return BinaryTree(std::make_shared<const Node>(
      Node{std::move(left), std::move(right), leaves, height}));
}

const BinaryTree& BinaryTree::left() const {
  if (!node_) throw std::logic_error("left() of a leaf");
  return node_->left;
}

const BinaryTree& BinaryTree::right() const {
  if (!node_) throw std::logic_error("right() of a leaf");
  return node_->right;
}

std::size_t BinaryTree::leaf_count() const noexcept {
  return node_ ? node_->leaves : 1;
}

int BinaryTree::height() const noexcept { return node_ ? node_->height : 0; }

bool operator==(const BinaryTree& a, const BinaryTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() || b.is_leaf()) return false;
  if (a.leaf_count() != b.leaf_count() || a.height() != b.height())
    return false;
  return a.left() == b.left() && a.right() == b.right();
}

// Rendered text is prefix-free and '(' < '*', so carets sort before leaves
// and two carets compare by left subtree first.
std::strong_ordering operator<=>(const BinaryTree& a, const BinaryTree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.is_leaf()) return b.is_leaf() ? std::strong_ordering::equal
                                      : std::strong_ordering::greater;
  if (b.is_leaf()) return std::strong_ordering::less;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  BinaryTree parse_all() {
    BinaryTree t = parse();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
            text_[pos_] == '\r'))
      ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  BinaryTree parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of tree", pos_);
    if (text_[pos_] == '*') {
      ++pos_;
      return BinaryTree::leaf();
    }
    if (text_[pos_] != '(')
      throw ParseError("expected '*' or '('", pos_);
    ++pos_;
    BinaryTree l = parse();
    expect(',');
    BinaryTree r = parse();
    expect(')');
    return BinaryTree::caret(std::move(l), std::move(r));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_into(const BinaryTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += '*';
    return;
  }
  out += '(';
  render_into(t.left(), out);
  out += ',';
  render_into(t.right(), out);
  out += ')';
}

BinaryTree graft_all_from(const BinaryTree& t, std::span<const BinaryTree> subs,
                          std::size_t& next) {
  if (t.is_leaf()) return subs[next++];
  BinaryTree l = graft_all_from(t.left(), subs, next);
  BinaryTree r = graft_all_from(t.right(), subs, next);
  return BinaryTree::caret(std::move(l), std::move(r));
}

void free_carets_from(const BinaryTree& t, std::size_t offset,
                      std::vector<std::size_t>& out) {
  if (t.is_leaf()) return;
  if (t.left().is_leaf() && t.right().is_leaf()) {
    out.push_back(offset);
    return;
  }
  free_carets_from(t.left(), offset, out);
  free_carets_from(t.right(), offset + t.left().leaf_count(), out);
}

void depths_from(const BinaryTree& t, int depth, std::vector<int>& out) {
  if (t.is_leaf()) {
    out.push_back(depth);
    return;
  }
  depths_from(t.left(), depth + 1, out);
  depths_from(t.right(), depth + 1, out);
}

}  // namespace

BinaryTree parse_tree(std::string_view text) {
  return TreeParser(text).parse_all();
}

std::string render_tree(const BinaryTree& t) {
  std::string out;
  out.reserve(4 * t.leaf_count());
  render_into(t, out);
  return out;
}

BinaryTree full_tree(int height, int height_cap) {
  if (height < 0) throw std::invalid_argument("negative tree height");
  if (height > height_cap)
    throw CapExceeded("full tree height " + std::to_string(height) +
                      " exceeds cap " + std::to_string(height_cap));
  BinaryTree t;
  for (int i = 0; i < height; ++i) t = BinaryTree::caret(t, t);
  return t;
}

BinaryTree make_vine(const VineSpec& spec) {
  if (spec.height < 1) throw std::invalid_argument("vine height must be >= 1");
  if (spec.turns.size() != static_cast<std::size_t>(spec.height - 1))
    throw std::invalid_argument("vine of height " +
                                std::to_string(spec.height) + " needs " +
                                std::to_string(spec.height - 1) + " turns");
  BinaryTree t = BinaryTree::caret(BinaryTree::leaf(), BinaryTree::leaf());
  for (auto it = spec.turns.rbegin(); it != spec.turns.rend(); ++it) {
    t = *it == Side::Left ? BinaryTree::caret(t, BinaryTree::leaf())
                          : BinaryTree::caret(BinaryTree::leaf(), t);
  }
  return t;
}

BinaryTree left_vine(int height) {
  return make_vine({height, std::vector<Side>(std::max(height - 1, 0),
                                              Side::Left)});
}

BinaryTree right_vine(int height) {
  return make_vine({height, std::vector<Side>(std::max(height - 1, 0),
                                              Side::Right)});
}

std::vector<Side> parse_turns(std::string_view text) {
  std::vector<Side> turns;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == 'L' || c == 'l')
      turns.push_back(Side::Left);
    else if (c == 'R' || c == 'r')
      turns.push_back(Side::Right);
    else
      throw ParseError("turn must be L or R", i);
  }
  return turns;
}

std::string render_turns(std::span<const Side> turns) {
  std::string s;
  for (Side t : turns) s += t == Side::Left ? 'L' : 'R';
  return s;
}

BinaryTree graft(const BinaryTree& t, std::size_t leaf, const BinaryTree& sub) {
  if (leaf >= t.leaf_count())
    throw std::out_of_range("graft index " + std::to_string(leaf) +
                            " out of range for " +
                            std::to_string(t.leaf_count()) + " leaves");
  if (t.is_leaf()) return sub;
  const std::size_t nl = t.left().leaf_count();
  if (leaf < nl) return BinaryTree::caret(graft(t.left(), leaf, sub), t.right());
  return BinaryTree::caret(t.left(), graft(t.right(), leaf - nl, sub));
}

BinaryTree graft_all(const BinaryTree& t, std::span<const BinaryTree> subs) {
  if (subs.size() != t.leaf_count())
    throw std::invalid_argument("graft_all needs one subtree per leaf");
  std::size_t next = 0;
  return graft_all_from(t, subs, next);
}

BinaryTree collapse_caret(const BinaryTree& t, std::size_t leaf) {
  if (t.is_leaf()) throw std::invalid_argument("no free caret at index");
  if (leaf == 0 && t.left().is_leaf() && t.right().is_leaf())
    return BinaryTree::leaf();
  const std::size_t nl = t.left().leaf_count();
  if (leaf + 1 < nl)
    return BinaryTree::caret(collapse_caret(t.left(), leaf), t.right());
  if (leaf >= nl)
    return BinaryTree::caret(t.left(), collapse_caret(t.right(), leaf - nl));
  throw std::invalid_argument("no free caret at index " + std::to_string(leaf));
}

std::vector<std::size_t> free_carets(const BinaryTree& t) {
  std::vector<std::size_t> out;
  free_carets_from(t, 0, out);
  return out;
}

std::vector<int> leaf_depths(const BinaryTree& t) {
  std::vector<int> out;
  out.reserve(t.leaf_count());
  depths_from(t, 0, out);
  return out;
}

const BinaryTree& subtree_at(const BinaryTree& t, std::span<const Side> path) {
  const BinaryTree* cur = &t;
  for (Side s : path) {
    if (cur->is_leaf()) throw std::out_of_range("path leaves the tree");
    cur = s == Side::Left ? &cur->left() : &cur->right();
  }
  return *cur;
}

LeafPath path_to_leaf(const BinaryTree& t, std::size_t leaf) {
  if (leaf >= t.leaf_count()) throw std::out_of_range("leaf index");
  LeafPath path;
  const BinaryTree* cur = &t;
  while (!cur->is_leaf()) {
    const std::size_t nl = cur->left().leaf_count();
    if (leaf < nl) {
      path.push_back(Side::Left);
      cur = &cur->left();
    } else {
      path.push_back(Side::Right);
      leaf -= nl;
      cur = &cur->right();
    }
  }
  return path;
}

int leaf_distance(int height, std::uint64_t i, std::uint64_t k) {
  if (height < 0 || height > 63) throw std::invalid_argument("height");
  const std::uint64_t n = std::uint64_t{1} << height;
  if (i >= n || k >= n) throw std::invalid_argument("leaf index out of range");
  if (i == k) throw std::invalid_argument("leaf distance needs distinct leaves");
  return std::bit_width(i ^ k);
}

std::vector<BinaryTree> all_trees(std::size_t leaves) {
  if (leaves == 0) return {};
  std::vector<std::vector<BinaryTree>> by_size(leaves + 1);
  by_size[1] = {BinaryTree::leaf()};
  for (std::size_t n = 2; n <= leaves; ++n) {
    for (std::size_t k = 1; k < n; ++k)
      for (const auto& l : by_size[k])
        for (const auto& r : by_size[n - k])
          by_size[n].push_back(BinaryTree::caret(l, r));
  }
  auto out = std::move(by_size[leaves]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace commassoc
