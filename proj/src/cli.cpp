#include "commassoc/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commassoc/assoc.hpp"
#include "commassoc/coloring.hpp"
#include "commassoc/errors.hpp"
#include "commassoc/expr.hpp"
#include "commassoc/group.hpp"
#include "commassoc/thompson.hpp"
#include "commassoc/tree.hpp"
#include "commassoc/vine.hpp"

namespace commassoc {
namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000'000'000ull;
  std::size_t max_leaves = kDefaultMaxLeaves;
  std::size_t order_cap = kDefaultOrderCap;
  int height_cap = kDefaultHeightCap;
  unsigned workers = 0;
  std::string format = "text";
  std::string output;

  SearchOptions search() const {
    SearchOptions o;
    o.budget = budget;
    o.seed = seed;
    o.workers = workers;
    return o;
  }
};

struct Report {
  std::ostringstream text;
  Json json = Json::object();
  int code = kExitOk;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json assignment_json(const FiniteGroup& g, const Assignment& a) {
  Json j = Json::object();
  for (const auto& [v, e] : a) j["x" + std::to_string(v)] = g.label(e);
  return j;
}

Json optional_int(const std::optional<int>& v) {
  return v ? Json(*v) : Json(nullptr);
}

// ----------------------------------------------------------------- group

void group_info(const RunConfig& cfg, const std::string& source, Report& r) {
  const FiniteGroup g = resolve_group(source, cfg.order_cap);
  const auto z = center(g);
  const auto ds = derived_series(g);
  const auto dl = derived_length(g);
  const auto nc = nilpotency_class(g);
  const auto bp = bp_sequence(g);

  std::vector<std::size_t> ds_orders, bp_sizes;
  for (const auto& s : ds) ds_orders.push_back(s.order());
  for (const auto& s : bp.sets) bp_sizes.push_back(s.size());
  const auto join = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? " > " : "") + std::to_string(v[i]);
    return s;
  };

  r.json["name"] = g.name();
  r.json["order"] = g.order();
  r.json["abelian"] = g.is_abelian();
  r.json["center_order"] = z.order();
  r.json["derived_series_orders"] = ds_orders;
  r.json["solvable"] = is_solvable(g);
  r.json["derived_length"] = optional_int(dl);
  r.json["nilpotency_class"] = optional_int(nc);
  r.json["bp_set_sizes"] = bp_sizes;
  r.json["bp_cycle_start"] = bp.cycle_start;

  auto& o = r.text;
  o << "group " << g.name() << "\n";
  o << "  order: " << g.order() << "\n";
  o << "  abelian: " << yes_no(g.is_abelian()) << "\n";
  o << "  center order: " << z.order() << "\n";
  o << "  derived series orders: " << join(ds_orders) << "\n";
  o << "  solvable: " << yes_no(is_solvable(g)) << "\n";
  o << "  derived length: " << (dl ? std::to_string(*dl) : "none") << "\n";
  o << "  nilpotency class: " << (nc ? std::to_string(*nc) : "not nilpotent")
    << "\n";
  o << "  B_p set sizes: ";
  for (std::size_t i = 0; i < bp.sets.size(); ++i)
    o << (i ? ", " : "") << bp.sets[i].size();
  o << " (repeats from p=" << bp.cycle_start << ")\n";
}

// ------------------------------------------------------------------- f

void f_command(const std::string& op, const std::vector<std::string>& texts,
               Report& r) {
  std::vector<TreePair> pairs;
  for (const auto& t : texts) pairs.push_back(parse_pair(t));
  const auto need = [&](std::size_t n, bool exact) {
    if (exact ? pairs.size() != n : pairs.size() < n)
      throw CLI::ValidationError("f " + op, std::string("expects ") +
                                                (exact ? "" : "at least ") +
                                                std::to_string(n) + " pair(s)");
  };
  r.json["op"] = op;
  if (op == "eq") {
    need(2, true);
    const bool eq = pairs_equivalent(pairs[0], pairs[1]);
    r.json["equivalent"] = eq;
    r.json["reduced"] = {render_pair(reduce_pair(pairs[0])),
                         render_pair(reduce_pair(pairs[1]))};
    r.text << (eq ? "equivalent" : "not equivalent") << "\n";
    r.code = eq ? kExitOk : kExitVerdictFails;
    return;
  }
  TreePair result;
  if (op == "reduce") {
    need(1, true);
    result = reduce_pair(pairs[0]);
  } else if (op == "inv") {
    need(1, true);
    result = reduce_pair(invert(pairs[0]));
  } else {
    need(1, false);
    result = reduce_pair(pairs[0]);
    for (std::size_t i = 1; i < pairs.size(); ++i)
      result = multiply(result, pairs[i]);
  }
  r.json["result"] = render_pair(result);
  r.json["leaves"] = result.leaf_count();
  r.text << render_pair(result) << "\n";
}

// ----------------------------------------------------------------- assoc

Json certificate_json(const FiniteGroup& g, const EventualVerdict& v) {
  Json cert = Json::array();
  for (const auto& f : v.certificate)
    cert.push_back({{"p", f.p},
                    {"set_size", f.set.size()},
                    {"counterexample", assignment_json(g, f.counterexample)}});
  return cert;
}

void assoc_check(const RunConfig& cfg, const std::string& group,
                 const std::string& pair_text, Report& r) {
  const FiniteGroup g = resolve_group(group, cfg.order_cap);
  const TreePair p = parse_pair(pair_text);
  const auto v = eventually_satisfies(g, p, cfg.search());
  r.json["group"] = g.name();
  r.json["pair"] = render_pair(p);
  r.json["reduced"] = render_pair(v.reduced);
  r.json["outcome"] = verdict_name(v.kind);
  r.json["witness_p"] = v.yes() ? Json(v.witness_p) : Json(nullptr);
  r.json["certificate"] = certificate_json(g, v);
  r.text << "group " << g.name() << ", pair " << render_pair(p) << "\n";
  if (!(v.reduced == p)) r.text << "reduced: " << render_pair(v.reduced) << "\n";
  switch (v.kind) {
    case EventualVerdict::Kind::Yes:
      r.text << "eventually satisfied, witness p=" << v.witness_p << "\n";
      break;
    case EventualVerdict::Kind::No:
      r.text << "never satisfied\n";
      for (const auto& f : v.certificate)
        r.text << "  B_" << f.p << " (" << f.set.size()
               << " elements) fails at " << render_assignment(g, f.counterexample)
               << "\n";
      r.code = kExitVerdictFails;
      break;
    case EventualVerdict::Kind::BudgetExceeded:
      r.text << "budget exceeded\n";
      r.code = kExitBudget;
      break;
  }
}

void survey_text(const FiniteGroup& g, const SurveyReport& s, Report& r,
                 Json& out) {
  out["group"] = s.group;
  out["max_leaves"] = s.max_leaves;
  out["yes"] = s.yes;
  out["no"] = s.no;
  out["budget_exceeded"] = s.budget;
  Json entries = Json::array();
  r.text << "survey of " << s.group << ", reduced pairs with at most "
         << s.max_leaves << " leaves\n";
  for (const auto& e : s.entries) {
    const auto& v = e.verdict;
    Json je = {{"pair", render_pair(e.pair)},
               {"outcome", verdict_name(v.kind)},
               {"witness_p", v.yes() ? Json(v.witness_p) : Json(nullptr)},
               {"counterexample",
                v.no() ? assignment_json(g, v.certificate.front().counterexample)
                       : Json(nullptr)}};
    entries.push_back(std::move(je));
    r.text << "  " << render_pair(e.pair) << "  " << verdict_name(v.kind);
    if (v.yes()) r.text << " p=" << v.witness_p;
    if (v.no())
      r.text << " " << render_assignment(g, v.certificate.front().counterexample);
    r.text << "\n";
  }
  out["entries"] = std::move(entries);
  r.text << "  total: " << s.entries.size() << " pairs, " << s.yes << " yes, "
         << s.no << " no, " << s.budget << " budget exceeded\n";
}

void assoc_survey_cmd(const RunConfig& cfg, const std::string& group,
                      Report& r) {
  const FiniteGroup g = resolve_group(group, cfg.order_cap);
  const auto s = assoc_survey(g, cfg.max_leaves, cfg.search(), cfg.max_leaves);
  survey_text(g, s, r, r.json);
  if (s.budget) r.code = kExitBudget;
}

void assoc_levi(const RunConfig& cfg, const std::string& group, Report& r) {
  const FiniteGroup g = resolve_group(group, cfg.order_cap);
  const auto lv = levi_check(g, cfg.search());
  r.json["group"] = g.name();
  r.json["associative"] = outcome_name(lv.direct.outcome);
  r.json["nilpotency_class"] = optional_int(lv.nilpotency_class);
  r.json["class_at_most_2"] = lv.class_at_most_2();
  r.json["consistent"] = lv.consistent();
  r.json["counterexample"] = lv.direct.counterexample
                                 ? assignment_json(g, *lv.direct.counterexample)
                                 : Json(nullptr);
  if (lv.direct.outcome == Outcome::BudgetExceeded) {
    r.text << "associative: budget exceeded\n";
    r.code = kExitBudget;
    return;
  }
  r.text << "associative: " << yes_no(lv.associative())
         << "; class ≤ 2: " << yes_no(lv.class_at_most_2()) << "; Levi "
         << (lv.consistent() ? "consistent" : "INCONSISTENT") << "\n";
  if (lv.direct.counterexample)
    r.text << "  counterexample: "
           << render_assignment(g, *lv.direct.counterexample) << "\n";
  if (!lv.consistent()) r.code = kExitVerdictFails;
}

void assoc_main_theorem(const RunConfig& cfg,
                        const std::vector<std::string>& names, Report& r) {
  std::vector<FiniteGroup> groups;
  for (const auto& n : names) groups.push_back(resolve_group(n, cfg.order_cap));
  const auto rep =
      verify_main_theorem(groups, cfg.max_leaves, cfg.search(), cfg.max_leaves);
  Json gs = Json::array();
  for (const auto& e : rep.groups) {
    gs.push_back({{"group", e.group},
                  {"solvable", e.solvable},
                  {"any_yes", e.any_yes},
                  {"yes", e.survey.yes},
                  {"no", e.survey.no},
                  {"budget_exceeded", e.survey.budget},
                  {"consistent", e.consistent()}});
    r.text << e.group << ": solvable " << yes_no(e.solvable) << ", "
           << e.survey.yes << " yes / " << e.survey.no << " no / "
           << e.survey.budget << " budget exceeded of "
           << e.survey.entries.size() << " pairs -> "
           << (e.consistent() ? "consistent" : "CONTRADICTION") << "\n";
    if (e.survey.budget && r.code == kExitOk) r.code = kExitBudget;
  }
  r.json["max_leaves"] = cfg.max_leaves;
  r.json["groups"] = std::move(gs);
  r.json["pass"] = rep.pass();
  r.text << (rep.pass() ? "pass" : "FAIL") << "\n";
  if (!rep.pass()) r.code = kExitVerdictFails;
}

// ------------------------------------------------------------------ vine

VinePlacement placement(int n, const std::string& turns, const std::string& side) {
  if (n < 1) throw CLI::ValidationError("--n", "must be >= 1");
  VinePlacement pl;
  pl.vine.height = n;
  pl.vine.turns = turns.empty() ? std::vector<Side>(static_cast<std::size_t>(n - 1),
                                                    Side::Left)
                                : parse_turns(turns);
  if (pl.vine.turns.size() != static_cast<std::size_t>(n - 1))
    throw CLI::ValidationError("--turns", "needs exactly n-1 = " +
                                              std::to_string(n - 1) +
                                              " letters");
  if (side == "L" || side == "l")
    pl.side = Side::Left;
  else if (side == "R" || side == "r")
    pl.side = Side::Right;
  else
    throw CLI::ValidationError("--side", "must be L or R");
  return pl;
}

std::string placement_name(const VinePlacement& pl) {
  return "v_" + std::to_string(pl.height()) + "," +
         (pl.side == Side::Left ? "l" : "r") + " turns " +
         (pl.vine.turns.empty() ? "-" : render_turns(pl.vine.turns));
}

void check_height(const RunConfig& cfg, int n) {
  if (n > cfg.height_cap)
    throw CapExceeded("vine height " + std::to_string(n) + " exceeds cap " +
                      std::to_string(cfg.height_cap));
}

void vine_rewrite(const RunConfig& cfg, int n, const std::string& turns,
                  const std::string& side, Report& r) {
  check_height(cfg, n);
  const VinePlacement pl = placement(n, turns, side);
  const auto rw = rewrite_to_left_vine(pl);
  const std::string expr = render_vine_expr(vine_expr(pl));
  Json hats = Json::array(), conj = Json::array(), bars = Json::array();
  for (std::size_t i = 0; i < rw.hat_leaves.size(); ++i) {
    hats.push_back(rw.hat_leaves[i].render());
    conj.push_back(rw.conjugators[i].render());
    bars.push_back(rw.bar_leaves[i].render());
  }
  r.json["vine"] = placement_name(pl);
  r.json["expression"] = expr;
  r.json["sign"] = rw.sign;
  r.json["hat_leaves"] = std::move(hats);
  r.json["conjugators"] = std::move(conj);
  r.json["sign_trace"] = rw.sign_trace;
  r.json["a_exponent"] = rw.a_exponent;
  r.json["bar_leaves"] = std::move(bars);
  r.text << placement_name(pl) << "\n";
  r.text << "  vine: " << expr << "\n";
  r.text << rw.describe();
}

void vine_verify(const RunConfig& cfg, const std::string& group, int n,
                 const std::string& turns, const std::string& side,
                 std::uint64_t samples, Report& r) {
  check_height(cfg, n);
  const FiniteGroup g = resolve_group(group, cfg.order_cap);
  std::vector<VinePlacement> pls;
  if (!turns.empty() || !side.empty()) {
    pls.push_back(placement(n, turns, side.empty() ? "L" : side));
  } else {
    if (n < 1) throw CLI::ValidationError("--n", "must be >= 1");
    for (const auto& v : all_vines(n))
      for (Side s : {Side::Left, Side::Right}) pls.push_back({v, s});
  }
  Json items = Json::array();
  bool ok = true;
  std::uint64_t total = 0;
  for (const auto& pl : pls) {
    const auto c = verify_rewrite(g, pl, samples, cfg.seed);
    total += c.assignments;
    items.push_back({{"vine", placement_name(pl)},
                     {"ok", c.ok},
                     {"exhaustive", c.exhaustive},
                     {"assignments", c.assignments}});
    if (!c.ok) {
      ok = false;
      r.text << "  " << placement_name(pl) << ": " << c.failure << " at";
      for (std::size_t i = 0; i < c.mismatch->size(); ++i)
        r.text << " " << default_symbol_name(static_cast<int>(i)) << "="
               << g.label((*c.mismatch)[i]);
      r.text << "\n";
    }
  }
  r.json["group"] = g.name();
  r.json["n"] = n;
  r.json["placements"] = std::move(items);
  r.json["ok"] = ok;
  r.text << (ok ? "ok" : "FAIL") << " (" << pls.size() << " placements, "
         << total << " assignments)\n";
  if (!ok) r.code = kExitVerdictFails;
}

void vine_centralize(const RunConfig& cfg, const std::string& group, int j,
                     const std::vector<int>& multiples, Report& r) {
  for (int q : multiples) check_height(cfg, q * j);
  const FiniteGroup g = resolve_group(group, cfg.order_cap);
  const auto c = check_centralize_propagation(g, j, multiples);
  r.json["group"] = g.name();
  r.json["j"] = j;
  r.json["multiples"] = multiples;
  r.json["hypothesis_pairs"] = c.hypothesis_pairs;
  r.json["shapes"] = c.shapes;
  r.json["ok"] = c.ok;
  r.json["failure"] = c.failure;
  r.text << (c.ok ? "ok" : "FAIL: " + c.failure) << " (" << c.hypothesis_pairs
         << " hypothesis pairs, " << c.shapes << " placements)\n";
  if (!c.ok) r.code = kExitVerdictFails;
}

// ----------------------------------------------------------------- color

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void color_bound(int n, int j, bool exact, Report& r) {
  const auto inst = ColoringInstance::make(n, j);
  const auto lb = verify_lower_bound(inst, exact ? kExactSearchCap : 0);
  r.json["n"] = n;
  r.json["j"] = j;
  r.json["height"] = inst.height();
  r.json["leaves"] = inst.leaf_count();
  r.json["lower_bound"] = lb.bound;
  r.json["clique_size"] = lb.clique_size;
  r.text << "lower bound " << lb.bound;
  if (exact) {
    const auto m = min_colors(inst);
    r.json["exact_minimum"] = m.colors;
    r.json["witness"] = m.witness;
    r.text << "; exact minimum " << m.colors << "\n";
    r.text << "  witness: " << join_ints(m.witness) << "\n";
  } else {
    r.json["exact_minimum"] = nullptr;
    r.text << "; proof clique of size " << lb.clique_size << "\n";
  }
  r.json["ok"] = lb.ok;
  if (!lb.ok) {
    r.text << "bound check FAILED\n";
    r.code = kExitVerdictFails;
  }
}

void color_check(int n, int j, const std::vector<int>& colors, Report& r) {
  const auto inst = ColoringInstance::make(n, j);
  const auto c = valid_coloring(inst, colors);
  r.json["n"] = n;
  r.json["j"] = j;
  r.json["valid"] = c.valid;
  if (c.violation) {
    const auto [a, b] = *c.violation;
    r.json["violation"] = {a, b};
    r.text << "invalid: leaves " << a << " and " << b << " at distance "
           << leaf_distance(inst.height(), a, b) << " share color "
           << colors[a] << "\n";
    r.code = kExitVerdictFails;
  } else {
    r.json["violation"] = nullptr;
    r.text << "valid\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Commutator associativity toolkit", "commassoc"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Seed for all sampling")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Exhaustive evaluation cap per search")
      ->capture_default_str();
  app.add_option("--max-leaves", cfg.max_leaves, "Leaf cap for surveys")
      ->capture_default_str();
  app.add_option("--order-cap", cfg.order_cap, "Largest group order accepted")
      ->capture_default_str();
  app.add_option("--height-cap", cfg.height_cap, "Largest full tree height")
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "Search threads (0 = all cores)")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "Write the report to this file");

  std::function<void(Report&)> action;

  // group
  auto* group = app.add_subcommand("group", "Finite group reports");
  group->require_subcommand(1);
  std::string source;
  auto* g_info = group->add_subcommand("info", "Structure of a group");
  g_info->add_option("source", source, "Builtin name, group file or @file")
      ->required();
  g_info->callback([&] { action = [&](Report& r) { group_info(cfg, source, r); }; });

  // f
  auto* f = app.add_subcommand("f", "Thompson's group F arithmetic");
  f->require_subcommand(1);
  std::vector<std::string> pair_texts;
  for (const char* op : {"reduce", "mul", "inv", "eq"}) {
    auto* sub = f->add_subcommand(op, std::string("F ") + op);
    sub->add_option("pairs", pair_texts, "Pairs as \"<tree> ; <tree>\"")
        ->required();
    const std::string name = op;
    sub->callback([&, name] {
      action = [&, name](Report& r) { f_command(name, pair_texts, r); };
    });
  }

  // assoc
  auto* assoc = app.add_subcommand("assoc", "Generalized associativity");
  assoc->require_subcommand(1);
  std::string group_name;
  std::vector<std::string> group_names;
  std::string pair_text;
  auto* a_check = assoc->add_subcommand("check", "Eventual satisfaction of a pair");
  a_check->add_option("--group", group_name)->required();
  a_check->add_option("--pair", pair_text)->required();
  a_check->callback([&] {
    action = [&](Report& r) { assoc_check(cfg, group_name, pair_text, r); };
  });
  auto* a_survey = assoc->add_subcommand("survey", "All reduced pairs up to --max-leaves");
  a_survey->add_option("--group", group_name)->required();
  a_survey->callback([&] {
    action = [&](Report& r) { assoc_survey_cmd(cfg, group_name, r); };
  });
  auto* a_levi = assoc->add_subcommand("levi", "Direct associativity vs class <= 2");
  a_levi->add_option("--group", group_name)->required();
  a_levi->callback([&] { action = [&](Report& r) { assoc_levi(cfg, group_name, r); }; });
  auto* a_main = assoc->add_subcommand("main-theorem", "Yes verdicts only for solvable groups");
  a_main->add_option("--group", group_names)->required();
  a_main->callback([&] {
    action = [&](Report& r) { assoc_main_theorem(cfg, group_names, r); };
  });

  // vine
  auto* vine = app.add_subcommand("vine", "Vine rewriting");
  vine->require_subcommand(1);
  int n = 1, j = 1;
  std::string turns, side;
  std::uint64_t samples = 10'000;
  std::vector<int> multiples{1, 2};
  auto* v_rewrite = vine->add_subcommand("rewrite", "Rewrite a vine as a left vine");
  v_rewrite->add_option("--n", n, "Vine height")->required();
  v_rewrite->add_option("--turns", turns, "Top-down turns, n-1 letters of L/R");
  v_rewrite->add_option("--side", side, "Side of a at the free caret (L or R)")
      ->default_str("L");
  v_rewrite->callback([&] {
    action = [&](Report& r) { vine_rewrite(cfg, n, turns, side.empty() ? "L" : side, r); };
  });
  auto* v_verify = vine->add_subcommand("verify", "Check rewrites in a group");
  v_verify->add_option("--group", group_name)->required();
  v_verify->add_option("--n", n, "Vine height")->required();
  v_verify->add_option("--turns", turns, "One shape (default: all shapes)");
  v_verify->add_option("--side", side, "One side (default: both)");
  v_verify->add_option("--samples", samples)->capture_default_str();
  v_verify->callback([&] {
    action = [&](Report& r) {
      vine_verify(cfg, group_name, n, turns, side, samples, r);
    };
  });
  auto* v_cent = vine->add_subcommand("centralize", "Centralizers of vine values");
  v_cent->add_option("--group", group_name)->required();
  v_cent->add_option("--j", j)->required();
  v_cent->add_option("--multiples", multiples)->delimiter(',')->capture_default_str();
  v_cent->callback([&] {
    action = [&](Report& r) { vine_centralize(cfg, group_name, j, multiples, r); };
  });

  // color
  auto* color = app.add_subcommand("color", "Leaf colorings under distance constraints");
  color->require_subcommand(1);
  bool exact = false;
  std::vector<int> colors;
  auto* c_bound = color->add_subcommand("bound", "The 2^n lower bound");
  c_bound->add_option("--n", n)->required();
  c_bound->add_option("--j", j)->required();
  c_bound->add_flag("--exact", exact, "Also compute the exact minimum");
  c_bound->callback([&] { action = [&](Report& r) { color_bound(n, j, exact, r); }; });
  auto* c_check = color->add_subcommand("check", "Validate a coloring");
  c_check->add_option("--n", n)->required();
  c_check->add_option("--j", j)->required();
  c_check->add_option("--colors", colors, "Comma-separated color per leaf")
      ->delimiter(',')
      ->required();
  c_check->callback([&] { action = [&](Report& r) { color_check(n, j, colors, r); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!action) {
    err << "error: missing subcommand\n";
    return kExitUsage;
  }

  Report report;
  try {
    action(report);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const std::string body =
      cfg.format == "json" ? report.json.dump(2) + "\n" : report.text.str();
  if (cfg.output.empty()) {
    out << body;
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.output << "\n";
      return kExitUsage;
    }
    file << body;
  }
  return report.code;
}

}  // namespace commassoc
