#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

#include "commassoc/expr.hpp"

namespace commassoc {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Holds:
      return "holds";
    case Outcome::Fails:
      return "fails";
    case Outcome::BudgetExceeded:
      return "budget_exceeded";
  }
  return "?";
}

std::string render_assignment(const FiniteGroup& g, const Assignment& a) {
  std::string out;
  for (const auto& [v, e] : a) {
    if (!out.empty()) out += ", ";
    out += "x" + std::to_string(v) + "=" + g.label(e);
  }
  return out.empty() ? "(no variables)" : out;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

struct Problem {
  const FiniteGroup& g;
  std::vector<int> vars;
  std::vector<const std::vector<Element>*> domains;
  CompiledExpr s;
  CompiledExpr t;
  std::size_t depth;
};

// Evaluates assignments with linear indices [begin, end) in mixed radix
// (last variable fastest). Returns the first failing index, or `end`.
std::uint64_t scan(const Problem& p, std::uint64_t begin, std::uint64_t end,
                   const std::atomic<std::uint64_t>* stop_above) {
  const std::size_t k = p.vars.size();
  std::vector<std::size_t> digit(k);
  std::vector<Element> slots(k);
  std::uint64_t rem = begin;
  for (std::size_t d = k; d-- > 0;) {
    const std::size_t r = p.domains[d]->size();
    digit[d] = static_cast<std::size_t>(rem % r);
    rem /= r;
    slots[d] = (*p.domains[d])[digit[d]];
  }
  std::vector<Element> stack(p.depth + 1);
  for (std::uint64_t n = begin; n < end; ++n) {
    if (stop_above && (n & 0xfff) == 0 &&
        stop_above->load(std::memory_order_relaxed) < n)
      return end;
    if (p.s.run(p.g, slots.data(), stack.data()) !=
        p.t.run(p.g, slots.data(), stack.data()))
      return n;
    for (std::size_t d = k; d-- > 0;) {
      if (++digit[d] < p.domains[d]->size()) {
        slots[d] = (*p.domains[d])[digit[d]];
        break;
      }
      digit[d] = 0;
      slots[d] = (*p.domains[d])[0];
    }
  }
  return end;
}

Assignment decode(const Problem& p, std::uint64_t index) {
  Assignment a;
  for (std::size_t d = p.vars.size(); d-- > 0;) {
    const std::size_t r = p.domains[d]->size();
    a[p.vars[d]] = (*p.domains[d])[index % r];
    index /= r;
  }
  return a;
}

}  // namespace

Verdict satisfies_domains(const FiniteGroup& g,
                          const std::map<int, Subset>& domains,
                          const Subset& fallback, const TreeExpr& s,
                          const TreeExpr& t, const SearchOptions& opts) {
  const auto vars = shared_variables(s, t);
  Problem p{g, vars, {}, CompiledExpr(s, vars), CompiledExpr(t, vars),
            std::max(CompiledExpr(s, vars).stack_depth(),
                     CompiledExpr(t, vars).stack_depth())};
  std::uint64_t total = 1;
  for (int v : vars) {
    auto it = domains.find(v);
    const Subset& dom = it == domains.end() ? fallback : it->second;
    p.domains.push_back(&dom.members());
    for (Element e : dom)
      if (!g.valid(e))
        throw std::invalid_argument("domain element outside the group");
    const std::uint64_t r = dom.size();
    if (r == 0) return {Outcome::Holds, std::nullopt, 0, false};
    total = total > kSaturated / r ? kSaturated : total * r;
  }

  Verdict v;
  if (total > opts.sample_threshold && opts.samples > 0) {
    std::mt19937_64 rng(opts.seed);
    std::vector<Element> slots(vars.size());
    std::vector<Element> stack(p.depth + 1);
    for (std::uint64_t i = 0; i < opts.samples; ++i) {
      for (std::size_t d = 0; d < vars.size(); ++d) {
        std::uniform_int_distribution<std::size_t> pick(
            0, p.domains[d]->size() - 1);
        slots[d] = (*p.domains[d])[pick(rng)];
      }
      ++v.evaluations;
      if (p.s.run(g, slots.data(), stack.data()) !=
          p.t.run(g, slots.data(), stack.data())) {
        Assignment a;
        for (std::size_t d = 0; d < vars.size(); ++d) a[vars[d]] = slots[d];
        v.outcome = Outcome::Fails;
        v.counterexample = std::move(a);
        v.from_sampling = true;
        return v;
      }
    }
  }
  if (total > opts.budget) {
    v.outcome = Outcome::BudgetExceeded;
    return v;
  }

  unsigned workers = opts.workers ? opts.workers
                                  : std::max(1u, std::thread::hardware_concurrency());
  if (total < (std::uint64_t{1} << 16)) workers = 1;

  std::uint64_t fail = total;
  if (workers == 1) {
    fail = scan(p, 0, total, nullptr);
  } else {
    // Blocks are claimed in increasing order and a worker gives up only on
    // blocks past the best failure found, so the result is the least
    // failing index regardless of scheduling.
    const std::uint64_t block =
        std::max<std::uint64_t>(4096, total / (workers * 64ull));
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> best{total};
    auto work = [&] {
      for (;;) {
        const std::uint64_t b = next.fetch_add(block);
        if (b >= total || b > best.load()) return;
        const std::uint64_t e = std::min(total, b + block);
        const std::uint64_t f = scan(p, b, e, &best);
        if (f < e) {
          std::uint64_t cur = best.load();
          while (f < cur && !best.compare_exchange_weak(cur, f)) {
          }
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    fail = best.load();
  }
  v.evaluations += fail == total ? total : fail + 1;
  if (fail < total) {
    v.outcome = Outcome::Fails;
    v.counterexample = decode(p, fail);
  } else {
    v.outcome = Outcome::Holds;
  }
  return v;
}

Verdict satisfies(const FiniteGroup& g, const Subset& x, const TreeExpr& s,
                  const TreeExpr& t, const SearchOptions& opts) {
  return satisfies_domains(g, {}, x, s, t, opts);
}

}  // namespace commassoc
