#include "commassoc/group.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "commassoc/errors.hpp"

namespace commassoc {

// ---------------------------------------------------------------- Subset

Subset::Subset(std::vector<Element> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

Subset Subset::all(std::size_t order) {
  std::vector<Element> m(order);
  for (std::size_t i = 0; i < order; ++i) m[i] = static_cast<Element>(i);
  return Subset(std::move(m));
}

bool Subset::contains(Element e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

bool Subset::is_subset_of(const Subset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

// ----------------------------------------------------------- FiniteGroup

FiniteGroup FiniteGroup::from_cayley_table(
    const std::vector<std::vector<Element>>& table, std::string name,
    std::vector<std::string> labels, std::size_t exhaustive_assoc_limit) {
  const std::size_t n = table.size();
  std::vector<Element> flat;
  flat.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (table[r].size() != n)
      throw GroupError("Cayley table is not square: row " + std::to_string(r) +
                       " has " + std::to_string(table[r].size()) +
                       " entries, expected " + std::to_string(n));
    flat.insert(flat.end(), table[r].begin(), table[r].end());
  }
  return from_flat_table(n, std::move(flat), std::move(name),
                         std::move(labels), exhaustive_assoc_limit);
}

FiniteGroup FiniteGroup::from_flat_table(std::size_t n,
                                         std::vector<Element> table,
                                         std::string name,
                                         std::vector<std::string> labels,
                                         std::size_t exhaustive_assoc_limit) {
  if (n == 0) throw GroupError("a group needs at least one element");
  if (table.size() != n * n) throw GroupError("Cayley table is not square");
  auto at = [&](std::size_t a, std::size_t b) { return table[a * n + b]; };

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (at(a, b) >= n)
        throw GroupError("closure fails: entry (" + std::to_string(a) + "," +
                         std::to_string(b) + ") = " +
                         std::to_string(at(a, b)) + " is not an element");

  for (std::size_t a = 0; a < n; ++a)
    if (at(0, a) != a || at(a, 0) != a)
      throw GroupError("identity law fails: element 0 is not an identity (" +
                       std::to_string(a) + ")");

  std::vector<Element> inverse(n, static_cast<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (at(a, b) == 0) {
        if (at(b, a) != 0)
          throw GroupError("inverse law fails: " + std::to_string(a) + "*" +
                           std::to_string(b) + " = 0 but " +
                           std::to_string(b) + "*" + std::to_string(a) +
                           " != 0");
        inverse[a] = static_cast<Element>(b);
        break;
      }
    }
    if (inverse[a] == n)
      throw GroupError("inverse law fails: element " + std::to_string(a) +
                       " has no inverse");
  }

  auto assoc_witness = [&](std::size_t a, std::size_t b, std::size_t c) {
    std::ostringstream os;
    os << "associativity fails: (" << a << "*" << b << ")*" << c
       << " = " << at(at(a, b), c) << " but " << a << "*(" << b << "*" << c
       << ") = " << at(a, at(b, c));
    return GroupError(os.str());
  };
  if (n <= exhaustive_assoc_limit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t ab = at(a, b);
        for (std::size_t c = 0; c < n; ++c)
          if (at(ab, c) != at(a, at(b, c))) throw assoc_witness(a, b, c);
      }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int i = 0; i < 100000; ++i) {
      const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
      if (at(at(a, b), c) != at(a, at(b, c))) throw assoc_witness(a, b, c);
    }
  }

  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw GroupError("label count does not match group order");
  }

  FiniteGroup g;
  g.order_ = n;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.labels_ = std::move(labels);
  g.name_ = name.empty() ? "group(" + std::to_string(n) + ")" : std::move(name);
  g.comm_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      g.comm_[a * n + b] =
          g.mul(g.mul(g.inverse_[a], g.inverse_[b]), g.mul(a, b));
  return g;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = a + 1; b < order_; ++b)
      if (table_[a * order_ + b] != table_[b * order_ + a]) return false;
  return true;
}

std::optional<Element> FiniteGroup::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < order_; ++i)
    if (labels_[i] == label) return static_cast<Element>(i);
  return std::nullopt;
}

// ----------------------------------------------------- subsets/subgroups

namespace {

std::vector<char> mask_of(std::size_t order, const Subset& x) {
  std::vector<char> m(order, 0);
  for (Element e : x) m[e] = 1;
  return m;
}

Subset from_mask(const std::vector<char>& m) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.push_back(static_cast<Element>(i));
  return Subset(std::move(out));
}

}  // namespace

bool is_normal_subset(const FiniteGroup& g, const Subset& x) {
  const auto m = mask_of(g.order(), x);
  for (Element a : x)
    for (Element h = 0; h < g.order(); ++h)
      if (!m[g.conj(a, h)]) return false;
  return true;
}

bool is_inverse_closed(const FiniteGroup& g, const Subset& x) {
  return std::all_of(x.begin(), x.end(),
                     [&](Element a) { return x.contains(g.inv(a)); });
}

bool is_subgroup(const FiniteGroup& g, const Subset& x) {
  if (!x.contains(0)) return false;
  const auto m = mask_of(g.order(), x);
  for (Element a : x)
    for (Element b : x)
      if (!m[g.mul(a, b)]) return false;
  return true;
}

Subgroup subgroup_generated(const FiniteGroup& g, const Subset& x) {
  std::vector<char> in(g.order(), 0);
  std::vector<Element> elems{0};
  in[0] = 1;
  std::vector<Element> gens;
  for (Element s : x) {
    if (in[s]) continue;
    // A new generator: re-close everything found so far under all gens.
    gens.push_back(s);
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (Element t : gens) {
        const Element p = g.mul(elems[i], t);
        if (!in[p]) {
          in[p] = 1;
          elems.push_back(p);
        }
      }
    }
  }
  Subgroup h{Subset(std::move(elems)), false};
  h.normal = is_normal_subset(g, h.members);
  return h;
}

Subgroup whole_group(const FiniteGroup& g) {
  return {Subset::all(g.order()), true};
}

Subgroup trivial_subgroup(const FiniteGroup&) {
  return {Subset::identity_only(), true};
}

Subset centralizer(const FiniteGroup& g, const Subset& x) {
  std::vector<Element> out;
  for (Element z = 0; z < g.order(); ++z)
    if (std::all_of(x.begin(), x.end(),
                    [&](Element a) { return g.mul(z, a) == g.mul(a, z); }))
      out.push_back(z);
  return Subset(std::move(out));
}

Subgroup center(const FiniteGroup& g) {
  return {centralizer(g, Subset::all(g.order())), true};
}

std::vector<std::size_t> conjugacy_classes(const FiniteGroup& g) {
  const std::size_t none = g.order();
  std::vector<std::size_t> cls(g.order(), none);
  for (Element a = 0; a < g.order(); ++a) {
    if (cls[a] != none) continue;
    for (Element h = 0; h < g.order(); ++h) cls[g.conj(a, h)] = a;
  }
  return cls;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subset& h,
                             const Subset& k) {
  std::vector<char> seen(g.order(), 0);
  for (Element a : h)
    for (Element b : k) seen[g.comm(a, b)] = 1;
  return subgroup_generated(g, from_mask(seen));
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  const Subset all = Subset::all(g.order());
  return commutator_subgroup(g, all, all);
}

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{whole_group(g)};
  for (;;) {
    const Subset& cur = series.back().members;
    Subgroup next = commutator_subgroup(g, cur, cur);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

bool is_solvable(const FiniteGroup& g) {
  return derived_series(g).back().is_trivial();
}

std::optional<int> derived_length(const FiniteGroup& g) {
  const auto s = derived_series(g);
  if (!s.back().is_trivial()) return std::nullopt;
  return static_cast<int>(s.size()) - 1;
}

std::vector<Subgroup> lower_central_series(const FiniteGroup& g) {
  const Subset all = Subset::all(g.order());
  std::vector<Subgroup> series{whole_group(g)};
  for (;;) {
    Subgroup next = commutator_subgroup(g, series.back().members, all);
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<int> nilpotency_class(const FiniteGroup& g) {
  const auto s = lower_central_series(g);
  if (!s.back().is_trivial()) return std::nullopt;
  return static_cast<int>(s.size()) - 1;
}

Quotient quotient(const FiniteGroup& g, const Subset& n) {
  if (!is_subgroup(g, n))
    throw GroupError("quotient: argument is not a subgroup");
  if (!is_normal_subset(g, n))
    throw GroupError("quotient: subgroup is not normal");
  const std::size_t none = g.order();
  std::vector<Element> proj(g.order(), static_cast<Element>(none));
  std::vector<Element> reps;
  for (Element a = 0; a < g.order(); ++a) {
    if (proj[a] != none) continue;
    const auto idx = static_cast<Element>(reps.size());
    reps.push_back(a);
    for (Element m : n) proj[g.mul(a, m)] = idx;
  }
  const std::size_t q = reps.size();
  std::vector<Element> table(q * q);
  std::vector<std::string> labels;
  labels.reserve(q);
  for (std::size_t i = 0; i < q; ++i) {
    labels.push_back(g.label(reps[i]) + "N");
    for (std::size_t j = 0; j < q; ++j)
      table[i * q + j] = proj[g.mul(reps[i], reps[j])];
  }
  FiniteGroup qg = FiniteGroup::from_flat_table(
      q, std::move(table), g.name() + "/N", std::move(labels), 0);
  return {std::move(qg), std::move(proj), std::move(reps)};
}

std::vector<Subgroup> upper_central_series(const FiniteGroup& g) {
  std::vector<Subgroup> series{trivial_subgroup(g)};
  for (;;) {
    const Quotient q = quotient(g, series.back().members);
    const Subgroup zq = center(q.group);
    std::vector<Element> pre;
    for (Element a = 0; a < g.order(); ++a)
      if (zq.members.contains(q.projection[a])) pre.push_back(a);
    Subgroup next{Subset(std::move(pre)), true};
    if (next == series.back()) break;
    series.push_back(std::move(next));
  }
  return series;
}

Restriction restrict_to(const FiniteGroup& g, const Subset& h) {
  if (!is_subgroup(g, h))
    throw GroupError("restrict_to: argument is not a subgroup");
  const std::vector<Element>& emb = h.members();
  const std::size_t n = emb.size();
  std::vector<Element> rank(g.order(), 0);
  for (std::size_t i = 0; i < n; ++i) rank[emb[i]] = static_cast<Element>(i);
  std::vector<Element> table(n * n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(g.label(emb[i]));
    for (std::size_t j = 0; j < n; ++j)
      table[i * n + j] = rank[g.mul(emb[i], emb[j])];
  }
  FiniteGroup sub = FiniteGroup::from_flat_table(
      n, std::move(table), g.name() + "|H", std::move(labels), 0);
  return {std::move(sub), emb};
}

}  // namespace commassoc
