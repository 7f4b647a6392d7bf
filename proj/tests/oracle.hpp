// Reference implementations used only by the tests. They share no code with
// the library: permutations are composed directly, subgroups are closed
// with std::set, and Thompson elements are compared as piecewise linear maps.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// ------------------------------------------------------------ permutations

using Perm = std::vector<int>;  // 0-based images

inline Perm identity_perm(int degree) {
  Perm p(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

// Left to right: (p*q)(x) = q(p(x)).
inline Perm compose(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = q[static_cast<std::size_t>(p[i])];
  return r;
}

inline Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

inline Perm comm(const Perm& x, const Perm& y) {
  return compose(compose(inverse(x), inverse(y)), compose(x, y));
}

// "(1 2)(3 4 5)" or "()" in 1-based points.
inline Perm cycles(const std::string& text, int degree) {
  Perm p = identity_perm(degree);
  std::vector<int> cyc;
  int num = -1;
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      num = (num < 0 ? 0 : num * 10) + (c - '0');
      continue;
    }
    if (num >= 0) cyc.push_back(num - 1);
    num = -1;
    if (c == ')') {
      for (std::size_t i = 0; i < cyc.size(); ++i)
        p[static_cast<std::size_t>(cyc[i])] = cyc[(i + 1) % cyc.size()];
      cyc.clear();
    }
  }
  return p;
}

inline std::set<Perm> closure(const std::vector<Perm>& gens, int degree) {
  std::set<Perm> seen{identity_perm(degree)};
  std::vector<Perm> todo{identity_perm(degree)};
  while (!todo.empty()) {
    Perm cur = todo.back();
    todo.pop_back();
    for (const Perm& g : gens) {
      Perm next = compose(cur, g);
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

inline std::set<Perm> derived(const std::set<Perm>& h, int degree) {
  std::set<Perm> gens;
  for (const Perm& a : h)
    for (const Perm& b : h) gens.insert(comm(a, b));
  return closure({gens.begin(), gens.end()}, degree);
}

// Orders of G, G', G'', ... until the series stabilizes.
inline std::vector<std::size_t> derived_orders(const std::vector<Perm>& gens,
                                               int degree) {
  std::vector<std::size_t> out;
  auto h = closure(gens, degree);
  for (;;) {
    out.push_back(h.size());
    auto next = derived(h, degree);
    if (next.size() == h.size()) return out;
    h = std::move(next);
  }
}

// ------------------------------------------------------------------- trees

// Minimal tree used to cross-check the library's tree code.
struct Tree {
  std::vector<Tree> kids;  // empty or exactly two
  bool leaf() const { return kids.empty(); }
};

inline Tree parse(const std::string& s, std::size_t& i) {
  if (s[i] == '*') {
    ++i;
    return {};
  }
  ++i;  // (
  Tree t;
  t.kids.push_back(parse(s, i));
  ++i;  // ,
  t.kids.push_back(parse(s, i));
  ++i;  // )
  return t;
}

inline Tree parse(const std::string& s) {
  std::string compact;
  for (char c : s)
    if (c != ' ') compact += c;
  std::size_t i = 0;
  return parse(compact, i);
}

inline int leaves(const Tree& t) {
  return t.leaf() ? 1 : leaves(t.kids[0]) + leaves(t.kids[1]);
}

// Leaf indices i such that leaves i, i+1 form a free caret.
inline void free_carets(const Tree& t, int first, std::vector<int>& out) {
  if (t.leaf()) return;
  if (t.kids[0].leaf() && t.kids[1].leaf()) out.push_back(first);
  free_carets(t.kids[0], first, out);
  free_carets(t.kids[1], first + leaves(t.kids[0]), out);
}

inline std::vector<int> free_carets(const Tree& t) {
  std::vector<int> out;
  free_carets(t, 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t catalan(int n) {
  std::uint64_t c = 1;
  for (int k = 0; k < n; ++k) c = c * 2 * (2 * static_cast<std::uint64_t>(k) + 1) / (static_cast<std::uint64_t>(k) + 2);
  return c;
}

// --------------------------------------------------- piecewise linear maps

// Dyadic rationals in [0,1] as fixed point over 2^kBits.
inline constexpr int kBits = 48;
using Dyadic = std::uint64_t;
inline constexpr Dyadic kOne = Dyadic{1} << kBits;

// Leaf intervals of a tree, left to right: leaf at depth d has width 2^-d.
inline void intervals(const Tree& t, Dyadic lo, int depth,
                      std::vector<std::pair<Dyadic, Dyadic>>& out) {
  if (depth > kBits) throw std::runtime_error("tree too deep for oracle");
  if (t.leaf()) {
    out.emplace_back(lo, lo + (kOne >> depth));
    return;
  }
  intervals(t.kids[0], lo, depth + 1, out);
  intervals(t.kids[1], lo + (kOne >> (depth + 1)), depth + 1, out);
}

// The homeomorphism of [0,1] sending the i-th interval of the source tree
// linearly onto the i-th interval of the target tree.
struct PLMap {
  std::vector<std::pair<Dyadic, Dyadic>> from, to;

  static PLMap of(const std::string& pair_text) {
    const auto semi = pair_text.find(';');
    PLMap m;
    intervals(parse(pair_text.substr(0, semi)), 0, 0, m.from);
    intervals(parse(pair_text.substr(semi + 1)), 0, 0, m.to);
    if (m.from.size() != m.to.size()) throw std::runtime_error("leaf mismatch");
    return m;
  }

  std::vector<Dyadic> breakpoints() const {
    std::vector<Dyadic> b;
    for (const auto& [lo, hi] : from) {
      b.push_back(lo);
      b.push_back(hi);
    }
    return b;
  }

  Dyadic operator()(Dyadic x) const {
    for (std::size_t i = 0; i < from.size(); ++i) {
      const auto [a, b] = from[i];
      if (x < a || x > b) continue;
      const auto [c, d] = to[i];
      const Dyadic w = b - a, v = d - c;
      // Widths are powers of two, so the slope is an exact shift.
      const Dyadic off = x - a;
      return c + (v >= w ? off * (v / w) : off / (w / v));
    }
    throw std::runtime_error("point outside [0,1]");
  }

  PLMap inverse() const { return {to, from}; }
};

// f == g on [0,1], given that both are linear between consecutive points of
// `points`.
template <class F, class G>
bool agree_on(const F& f, const G& g, std::vector<Dyadic> points) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return std::all_of(points.begin(), points.end(),
                     [&](Dyadic x) { return f(x) == g(x); });
}

}  // namespace oracle
