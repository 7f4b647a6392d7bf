#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "commassoc/errors.hpp"
#include "commassoc/group.hpp"

namespace commassoc {

// ---------------------------------------------------------- permutations

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
  std::vector<char> moved(degree, 0);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' ||
                                 text[pos] == '\r' || text[pos] == '\n'))
      ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw ParseError("empty permutation", pos);
  while (pos < text.size()) {
    if (text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    std::vector<std::uint32_t> cycle;
    for (;;) {
      while (pos < text.size() && (text[pos] == ' ' || text[pos] == ','))
        ++pos;
      if (pos >= text.size()) throw ParseError("unterminated cycle", pos);
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::uint32_t point = 0;
      const auto* first = text.data() + pos;
      const auto [ptr, ec] =
          std::from_chars(first, text.data() + text.size(), point);
      if (ec != std::errc() || ptr == first)
        throw ParseError("expected a point number", pos);
      if (point < 1 || point > degree)
        throw ParseError("point " + std::to_string(point) +
                             " outside 1.." + std::to_string(degree),
                         pos);
      if (moved[point - 1])
        throw ParseError("point " + std::to_string(point) + " repeated", pos);
      moved[point - 1] = 1;
      cycle.push_back(point - 1);
      pos = static_cast<std::size_t>(ptr - text.data());
    }
    for (std::size_t i = 0; i < cycle.size(); ++i)
      p[cycle[i]] = cycle[(i + 1) % cycle.size()];
    skip_ws();
  }
  return p;
}

std::string render_cycles(const Permutation& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

struct PermHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[x] = b[a[x]];
  return r;
}

}  // namespace

FiniteGroup from_permutations(std::span<const Permutation> generators,
                              std::size_t degree, std::string name,
                              std::size_t order_cap) {
  for (const auto& g : generators) {
    if (g.size() != degree)
      throw GroupError("generator degree " + std::to_string(g.size()) +
                       " differs from " + std::to_string(degree));
    std::vector<char> hit(degree, 0);
    for (auto x : g) {
      if (x >= degree || hit[x])
        throw GroupError("generator is not a permutation");
      hit[x] = 1;
    }
  }
  Permutation id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<std::uint32_t>(i);

  // Breadth-first closure; parent[b] * gens[gen_of[b]] = b.
  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, Element, PermHash> index{{id, 0}};
  std::vector<Element> parent{0};
  std::vector<std::size_t> gen_of{0};
  const std::size_t k = generators.size();
  std::vector<Element> right;  // right[x*k + i] = x * gens[i]
  for (std::size_t x = 0; x < elems.size(); ++x) {
    for (std::size_t i = 0; i < k; ++i) {
      Permutation y = compose(elems[x], generators[i]);
      auto it = index.find(y);
      Element yi;
      if (it == index.end()) {
        if (elems.size() >= order_cap)
          throw CapExceeded("permutation group order exceeds cap " +
                            std::to_string(order_cap));
        yi = static_cast<Element>(elems.size());
        index.emplace(y, yi);
        elems.push_back(std::move(y));
        parent.push_back(static_cast<Element>(x));
        gen_of.push_back(i);
      } else {
        yi = it->second;
      }
      right.push_back(yi);
    }
  }

  const std::size_t n = elems.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    table[a * n] = static_cast<Element>(a);
    for (std::size_t b = 1; b < n; ++b)
      table[a * n + b] = right[table[a * n + parent[b]] * k + gen_of[b]];
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elems) labels.push_back(render_cycles(e));
  return FiniteGroup::from_flat_table(n, std::move(table), std::move(name),
                                      std::move(labels));
}

// --------------------------------------------------------------- catalog

namespace {

Permutation cycle_perm(std::size_t degree, std::vector<std::uint32_t> points) {
  Permutation p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = 0; i < points.size(); ++i)
    p[points[i] - 1] = points[(i + 1) % points.size()] - 1;
  return p;
}

FiniteGroup cyclic(std::size_t n) {
  std::vector<Element> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return FiniteGroup::from_flat_table(n, std::move(t),
                                      "cyclic(" + std::to_string(n) + ")");
}

// Index i + n*e stands for r^i s^e with s r s = r^-1.
FiniteGroup dihedral(std::size_t n) {
  const std::size_t order = 2 * n;
  std::vector<Element> t(order * order);
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t i = x % n, a = x / n, j = y % n, b = y / n;
      const std::size_t rot = a == 0 ? (i + j) % n : (i + n - j) % n;
      t[x * order + y] = static_cast<Element>(rot + n * ((a + b) % 2));
    }
  return FiniteGroup::from_flat_table(order, std::move(t),
                                      "dihedral(" + std::to_string(n) + ")");
}

// Unit quaternions 1, i, j, k, -1, -i, -j, -k as indices 0..7.
FiniteGroup quaternion8() {
  // Sign and basis of products of basis units {1,i,j,k}.
  static constexpr int basis[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int sign[4][4] = {
      {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<Element> t(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int bx = x % 4, by = y % 4;
      int s = sign[bx][by] * (x >= 4 ? -1 : 1) * (y >= 4 ? -1 : 1);
      t[x * 8 + y] = static_cast<Element>(basis[bx][by] + (s < 0 ? 4 : 0));
    }
  std::vector<std::string> labels{"1", "i", "j", "k", "-1", "-i", "-j", "-k"};
  return FiniteGroup::from_flat_table(8, std::move(t), "quaternion8",
                                      std::move(labels));
}

// Upper unitriangular 3x3 matrices over Z/p; (a,b,c) has a at (1,2), b at
// (2,3), c at (1,3), indexed a + p*b + p^2*c.
FiniteGroup heisenberg(std::size_t p) {
  const std::size_t n = p * p * p;
  std::vector<Element> t(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t a = x % p, b = (x / p) % p, c = x / (p * p);
      const std::size_t a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
      const std::size_t ra = (a + a2) % p, rb = (b + b2) % p,
                        rc = (c + c2 + a * b2) % p;
      t[x * n + y] = static_cast<Element>(ra + p * rb + p * p * rc);
    }
  return FiniteGroup::from_flat_table(n, std::move(t),
                                      "heisenberg(" + std::to_string(p) + ")");
}

FiniteGroup symmetric(std::size_t n, std::size_t cap) {
  std::vector<Permutation> gens;
  if (n >= 2) gens.push_back(cycle_perm(n, {1, 2}));
  if (n >= 3) {
    std::vector<std::uint32_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<std::uint32_t>(i + 1);
    gens.push_back(cycle_perm(n, all));
  }
  return from_permutations(gens, n, "symmetric(" + std::to_string(n) + ")",
                           cap);
}

FiniteGroup alternating(std::size_t n, std::size_t cap) {
  std::vector<Permutation> gens;
  for (std::uint32_t k = 3; k <= n; ++k) gens.push_back(cycle_perm(n, {1, 2, k}));
  return from_permutations(gens, n, "alternating(" + std::to_string(n) + ")",
                           cap);
}

std::size_t parse_param(std::string_view name, std::string_view head) {
  const std::string_view rest = name.substr(head.size());
  if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')')
    throw std::invalid_argument("expected " + std::string(head) + "(<n>)");
  std::size_t v = 0;
  const auto body = rest.substr(1, rest.size() - 2);
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
  if (ec != std::errc() || ptr != body.data() + body.size())
    throw std::invalid_argument("bad parameter in '" + std::string(name) + "'");
  return v;
}

void check_cap(std::size_t order, std::size_t cap) {
  if (order > cap)
    throw CapExceeded("group order " + std::to_string(order) +
                      " exceeds cap " + std::to_string(cap));
}

}  // namespace

FiniteGroup builtin_group(std::string_view name, std::size_t order_cap) {
  auto starts = [&](std::string_view h) {
    return name.substr(0, h.size()) == h && name.size() > h.size() &&
           name[h.size()] == '(';
  };
  if (name == "trivial") {
    auto g = cyclic(1);
    return g;
  }
  if (name == "quaternion8" || name == "Q8") return quaternion8();
  if (starts("cyclic")) {
    const auto n = parse_param(name, "cyclic");
    if (n < 1) throw std::invalid_argument("cyclic(n) needs n >= 1");
    check_cap(n, order_cap);
    return cyclic(n);
  }
  if (starts("dihedral")) {
    const auto n = parse_param(name, "dihedral");
    if (n < 1) throw std::invalid_argument("dihedral(n) needs n >= 1");
    check_cap(2 * n, order_cap);
    return dihedral(n);
  }
  if (starts("symmetric")) {
    const auto n = parse_param(name, "symmetric");
    if (n < 1 || n > 6)
      throw std::invalid_argument("symmetric(n) needs 1 <= n <= 6");
    return symmetric(n, order_cap);
  }
  if (starts("alternating")) {
    const auto n = parse_param(name, "alternating");
    if (n < 1 || n > 6)
      throw std::invalid_argument("alternating(n) needs 1 <= n <= 6");
    return alternating(n, order_cap);
  }
  if (starts("heisenberg")) {
    const auto p = parse_param(name, "heisenberg");
    if (p != 2 && p != 3 && p != 5)
      throw std::invalid_argument("heisenberg(p) needs prime p <= 5");
    check_cap(p * p * p, order_cap);
    return heisenberg(p);
  }
  throw std::invalid_argument("unknown group '" + std::string(name) + "'");
}

std::vector<std::string> catalog_names(std::size_t max_order) {
  std::vector<std::pair<std::size_t, std::string>> all;
  for (std::size_t n = 1; n <= 24; ++n)
    all.emplace_back(n, "cyclic(" + std::to_string(n) + ")");
  for (std::size_t n = 1; n <= 12; ++n)
    all.emplace_back(2 * n, "dihedral(" + std::to_string(n) + ")");
  all.emplace_back(8, "quaternion8");
  for (std::size_t p : {2, 3, 5})
    all.emplace_back(p * p * p, "heisenberg(" + std::to_string(p) + ")");
  static constexpr std::size_t fact[] = {1, 1, 2, 6, 24, 120, 720};
  for (std::size_t n = 2; n <= 6; ++n)
    all.emplace_back(fact[n], "symmetric(" + std::to_string(n) + ")");
  for (std::size_t n = 3; n <= 6; ++n)
    all.emplace_back(fact[n] / 2, "alternating(" + std::to_string(n) + ")");
  std::vector<std::string> out;
  for (auto& [order, name] : all)
    if (order <= max_order) out.push_back(name);
  return out;
}

// ------------------------------------------------------------ group files

FiniteGroup parse_group_file(std::string_view text, std::size_t order_cap) {
  std::vector<std::pair<std::size_t, std::string>> lines;  // (offset, text)
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string line(text.substr(start, end - start));
      while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
        line.pop_back();
      std::size_t lead = line.find_first_not_of(" \t");
      if (lead != std::string::npos && line[lead] != '#')
        lines.emplace_back(start + lead, line.substr(lead));
      if (end == text.size()) break;
      start = end + 1;
    }
  }
  if (lines.empty()) throw ParseError("empty group file", 0);
  std::size_t li = 0;
  std::string name;
  if (lines[0].second.rfind("name ", 0) == 0) {
    name = lines[0].second.substr(5);
    li = 1;
  } else {
    throw ParseError("group file must start with 'name <string>'",
                     lines[0].first);
  }
  if (li >= lines.size())
    throw ParseError("missing 'table' or 'perm' section", text.size());
  const auto& [hoff, header] = lines[li++];
  std::istringstream hs(header);
  std::string kind;
  std::size_t count = 0;
  hs >> kind >> count;
  if (!hs || (kind != "table" && kind != "perm"))
    throw ParseError("expected 'table <order>' or 'perm <degree>'", hoff);
  if (kind == "table") {
    if (count == 0) throw ParseError("table order must be positive", hoff);
    check_cap(count, order_cap);
    std::vector<std::vector<Element>> table;
    for (std::size_t r = 0; r < count; ++r) {
      if (li >= lines.size())
        throw ParseError("table has fewer than " + std::to_string(count) +
                             " rows",
                         text.size());
      const auto& [off, row] = lines[li++];
      std::istringstream rs(row);
      std::vector<Element> vals;
      std::string tok;
      while (rs >> tok) {
        Element v = 0;
        const auto [ptr, ec] =
            std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
          throw ParseError("bad table entry '" + tok + "'", off);
        vals.push_back(v);
      }
      if (vals.size() != count)
        throw ParseError("row " + std::to_string(r) + " has " +
                             std::to_string(vals.size()) + " entries",
                         off);
      table.push_back(std::move(vals));
    }
    if (li != lines.size())
      throw ParseError("unexpected content after table", lines[li].first);
    return FiniteGroup::from_cayley_table(table, name);
  }
  if (count == 0) throw ParseError("degree must be positive", hoff);
  std::vector<Permutation> gens;
  for (; li < lines.size(); ++li) {
    const auto& [off, line] = lines[li];
    try {
      gens.push_back(parse_cycles(line, count));
    } catch (const ParseError& e) {
      throw ParseError("bad generator", off + e.offset());
    }
  }
  return from_permutations(gens, count, name, order_cap);
}

FiniteGroup load_group_file(const std::string& path, std::size_t order_cap) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_group_file(ss.str(), order_cap);
}

FiniteGroup resolve_group(const std::string& source, std::size_t order_cap) {
  if (!source.empty() && source.front() == '@')
    return load_group_file(source.substr(1), order_cap);
  if (std::ifstream(source).good()) return load_group_file(source, order_cap);
  return builtin_group(source, order_cap);
}

}  // namespace commassoc
