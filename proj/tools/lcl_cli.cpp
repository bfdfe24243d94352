// lcl: command-line front end for the condition checkers, threshold solvers
// and samplers.
//
// Exit codes: 0 feasible/success, 1 infeasible/not found, 2 usage or input
// error, 3 indeterminate (a cap was hit).

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcl/io.hpp"
#include "lcl/lcl.hpp"

namespace {

using lcl::io::Json;
using lcl::io::Table;

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;
constexpr int kIndeterminate = 3;

struct RunConfig {
  std::uint64_t seed = 1;
  double tol = 1e-12;
  std::size_t cap = 100000;
  unsigned jobs = 1;
  std::string format = "json";
  std::string out;
};

struct Outcome {
  int code = kOk;
  Json report = Json::object();
  Table table;
};

std::string num(double v) { return lcl::io::format_double(v); }
std::string num(std::size_t v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

int status_code(lcl::SolveStatus s) {
  switch (s) {
    case lcl::SolveStatus::kConverged: return kOk;
    case lcl::SolveStatus::kDiverged: return kInfeasible;
    case lcl::SolveStatus::kIndeterminate: return kIndeterminate;
  }
  return kIndeterminate;
}

lcl::SolveOptions solve_options(const RunConfig& cfg) {
  lcl::SolveOptions opts;
  opts.tol = cfg.tol;
  opts.iter_cap = cfg.cap;
  return opts;
}

Json feasibility_json(const lcl::FeasibilityResult& r) {
  return Json{{"feasible", r.feasible},       {"tau_star", r.tau_star},       {"margin", r.margin},
              {"peak_tau", r.peak_tau},       {"peak_margin", r.peak_margin}, {"evaluations", r.iterations},
              {"extrapolated", r.extrapolated}, {"condition", r.description}};
}

const std::vector<std::string> kFeasibilityHeader = {"feasible", "tau_star", "margin", "peak_tau", "peak_margin"};

std::vector<std::string> feasibility_row(const lcl::FeasibilityResult& r) {
  return {flag(r.feasible), num(r.tau_star), num(r.margin), num(r.peak_tau), num(r.peak_margin)};
}

// ---------------------------------------------------------------- check-lcl

Outcome check_lcl(const std::string& path, const RunConfig& cfg) {
  const Json j = lcl::io::read_json_file(path);
  const lcl::LclInstance inst = lcl::io::parse_lcl_instance(j);
  Outcome out;
  lcl::WeightReport rep;
  if (j.contains("weights")) {
    rep = lcl::check_condition(inst, lcl::io::parse_arc_weights(j.at("weights"), inst), cfg.tol);
    out.report["mode"] = "check";
    out.code = rep.feasible ? kOk : kInfeasible;
  } else {
    const auto res = lcl::least_weight_solution(inst, solve_options(cfg));
    rep = res.report;
    out.report["mode"] = "solve";
    out.report["status"] = std::string(lcl::to_string(res.status));
    out.report["iterations"] = res.iterations;
    out.code = status_code(res.status);
  }
  out.report["feasible"] = rep.feasible;
  const auto& d = inst.digraph();
  Json arcs = Json::array();
  out.table.header = {"tail", "head", "weight", "margin"};
  for (std::size_t a = 0; a < inst.simple().arc_count(); ++a) {
    const auto& arc = inst.simple().arc(a);
    const double m = a < rep.margins.size() ? rep.margins[a] : std::nan("");
    arcs.push_back({{"tail", d.vertex_name(arc.tail)}, {"head", d.vertex_name(arc.head)}, {"weight", rep.weights[a]},
                    {"margin", m}});
    out.table.rows.push_back({d.vertex_name(arc.tail), d.vertex_name(arc.head), num(rep.weights[a]), num(m)});
  }
  out.report["arcs"] = arcs;
  Json edges = Json::array();
  for (std::size_t e = 0; e < rep.risks.size(); ++e) edges.push_back({{"id", d.edge(e).id}, {"risk", rep.risks[e]}});
  out.report["edges"] = edges;
  return out;
}

// ---------------------------------------------------------------- check-family

Outcome check_family(const std::string& path, const RunConfig& cfg) {
  const auto in = lcl::io::parse_family(lcl::io::read_json_file(path));
  Outcome out;
  lcl::TauAssignment tau;
  if (in.tau) {
    tau = *in.tau;
    out.report["mode"] = "check";
  } else {
    const auto res = lcl::least_tau_solution(in.instance, in.witnesses, solve_options(cfg));
    out.report["mode"] = "solve";
    out.report["status"] = std::string(lcl::to_string(res.status));
    out.report["iterations"] = res.iterations;
    if (res.status != lcl::SolveStatus::kConverged) {
      out.code = status_code(res.status);
      out.report["feasible"] = false;
      return out;
    }
    tau = res.tau;
  }
  const auto rep = lcl::check_family_condition(in.instance, tau, in.witnesses, std::max(cfg.tol, 1e-12));
  out.code = rep.feasible ? kOk : kInfeasible;
  out.report["feasible"] = rep.feasible;
  out.report["bound"] = rep.bound;
  Json rows = Json::array();
  out.table.header = {"element", "tau", "margin"};
  for (std::size_t i = 0; i < in.instance.size(); ++i) {
    rows.push_back({{"element", in.instance.ground[i]}, {"tau", tau[i]}, {"margin", rep.margins[i]}});
    out.table.rows.push_back({in.instance.ground[i], num(tau[i]), num(rep.margins[i])});
  }
  out.report["elements"] = rows;
  return out;
}

// ---------------------------------------------------------------- check-lll

Outcome check_lll(const std::string& path, const RunConfig& cfg) {
  const auto in = lcl::io::parse_lll(lcl::io::read_json_file(path));
  Outcome out;
  std::vector<double> mu;
  if (in.mu) {
    mu = *in.mu;
    out.report["mode"] = "check";
  } else {
    const auto res = lcl::auto_mu(in.probs, in.gamma, solve_options(cfg));
    out.report["mode"] = "auto";
    out.report["status"] = std::string(lcl::to_string(res.status));
    out.report["iterations"] = res.iterations;
    if (res.status != lcl::SolveStatus::kConverged) {
      out.code = status_code(res.status);
      out.report["feasible"] = false;
      return out;
    }
    mu = res.mu;
  }
  const lcl::LllInstance inst{in.n, in.gamma, in.probs, mu};
  const auto rep = lcl::check_lopsided(inst, cfg.tol);
  out.code = rep.feasible ? kOk : kInfeasible;
  out.report["feasible"] = rep.feasible;
  out.report["bound"] = rep.bound;
  std::optional<lcl::MuToTau> tau;
  if (rep.feasible) tau = lcl::mu_to_tau(inst, cfg.tol);
  Json rows = Json::array();
  out.table.header = {"event", "p", "mu", "margin", "tau"};
  for (std::size_t i = 0; i < in.n; ++i) {
    Json row{{"event", i + 1}, {"p", in.probs[i]}, {"mu", mu[i]}, {"margin", rep.margins[i]}};
    if (tau) {
      row["tau"] = tau->tau[i];
      row["tau_margin"] = tau->margins[i];
    }
    rows.push_back(row);
    out.table.rows.push_back({num(i + 1), num(in.probs[i]), num(mu[i]), num(rep.margins[i]),
                              tau ? num(tau->tau[i]) : std::string{}});
  }
  out.report["events"] = rows;
  if (tau) out.report["tau_condition_holds"] = tau->holds;
  return out;
}

// ---------------------------------------------------------------- threshold

struct ThresholdArgs {
  std::optional<unsigned> k;
  std::optional<unsigned> k_max;
  std::optional<unsigned> delta;
  std::optional<double> list_size;
  std::optional<double> c;
  std::optional<double> tau;
  std::optional<double> z;
  std::string variant = "improved";
};

Outcome threshold(const std::string& app, const ThresholdArgs& a, const RunConfig& cfg) {
  Outcome out;
  out.report["application"] = app;
  auto need = [&](const auto& opt, const char* name) {
    if (!opt) throw lcl::InvalidArgument(std::string("threshold ") + app + " needs --" + name);
    return *opt;
  };
  if (app == "hypcol") {
    const unsigned k0 = need(a.k, "k");
    const unsigned k1 = a.k_max.value_or(k0);
    if (k1 < k0) throw lcl::InvalidArgument("--k-max must be at least --k");
    const auto variant = lcl::parse_two_coloring_variant(a.variant);
    std::vector<lcl::TwoColoringBound> results(k1 - k0 + 1);
    lcl::parallel_for(results.size(), cfg.jobs, [&](std::size_t i) {
      results[i] = lcl::hypergraph_two_coloring_max_degree(k0 + static_cast<unsigned>(i), variant);
    });
    Json rows = Json::array();
    out.table.header = {"k", "variant", "bound", "d", "consistent"};
    bool all = true;
    for (const auto& r : results) {
      rows.push_back({{"k", r.k},
                      {"variant", lcl::to_string(r.variant)},
                      {"bound", r.bound},
                      {"d", r.max_degree},
                      {"consistent", r.consistent},
                      {"check", feasibility_json(r.check)}});
      out.table.rows.push_back({num(std::size_t{r.k}), lcl::to_string(r.variant), num(r.bound),
                                std::to_string(r.max_degree), flag(r.consistent)});
      all = all && r.consistent;
    }
    if (results.size() == 1) {
      out.report.update(rows[0]);
    } else {
      out.report["results"] = rows;
    }
    out.code = all ? kOk : kInfeasible;
  } else if (app == "nonrep-seq") {
    const auto r = lcl::nonrepetitive_sequence_feasible(need(a.list_size, "L"), cfg.tol);
    out.report.update(feasibility_json(r));
    out.report["L"] = *a.list_size;
    out.table.header = kFeasibilityHeader;
    out.table.rows.push_back(feasibility_row(r));
    out.code = r.feasible ? kOk : kInfeasible;
  } else if (app == "nonrep-chromatic") {
    const auto r = lcl::nonrepetitive_chromatic_bound(need(a.delta, "delta"));
    out.report["delta"] = r.delta;
    out.report["value"] = static_cast<double>(r.value);
    out.report["k"] = r.k;
    out.report["y"] = r.y;
    out.report["lhs"] = r.lhs;
    out.report["rhs"] = r.rhs;
    out.report["substitution_holds"] = r.substitution_holds;
    out.report["check"] = feasibility_json(r.check);
    out.table.header = {"delta", "value", "k", "substitution_holds", "solver_feasible"};
    out.table.rows.push_back({num(std::size_t{r.delta}), num(static_cast<double>(r.value)), std::to_string(r.k),
                              flag(r.substitution_holds), flag(r.check.feasible)});
    out.code = r.substitution_holds && r.check.feasible ? kOk : kInfeasible;
  } else if (app == "acyclic") {
    const unsigned delta = need(a.delta, "delta");
    const unsigned k = a.k.value_or(4 * (delta - 1));
    const auto r = lcl::acyclic_feasible(delta, k, cfg.tol);
    out.report.update(feasibility_json(r));
    out.report["delta"] = delta;
    out.report["k"] = k;
    out.table.header = kFeasibilityHeader;
    out.table.rows.push_back(feasibility_row(r));
    out.code = r.feasible ? kOk : kInfeasible;
  } else if (app == "critical") {
    const double k = need(a.k, "k");
    const auto slack = lcl::critical_min_slack(k);
    out.report["k"] = k;
    out.report["c_min"] = slack.c_min;
    out.report["standard_c"] = slack.standard_c;
    out.report["standard_c_feasible"] = slack.standard_c_feasible;
    if (a.tau) {
      const double c = a.c.value_or(slack.standard_c);
      const double z = a.z.value_or(k / (4 * *a.tau) + 1);
      const auto chk = lcl::critical_condition_check(k, c, *a.tau, z, cfg.tol);
      out.report["c"] = c;
      out.report["tau"] = *a.tau;
      out.report["z"] = z;
      out.report["first_holds"] = chk.first;
      out.report["second_holds"] = chk.second;
      out.report["second_rhs"] = chk.second_rhs;
      if (chk.quadratic) {
        out.report["quadratic"] = *chk.quadratic;
        out.report["quadratic_holds"] = *chk.quadratic_holds;
      }
      out.table.header = {"k", "c", "tau", "z", "first_holds", "second_holds"};
      out.table.rows.push_back({num(k), num(c), num(*a.tau), num(z), flag(chk.first), flag(chk.second)});
      out.code = chk.holds() ? kOk : kInfeasible;
    } else {
      out.table.header = {"k", "c_min", "standard_c", "standard_c_feasible"};
      out.table.rows.push_back({num(k), num(slack.c_min), num(slack.standard_c), flag(slack.standard_c_feasible)});
      out.code = slack.standard_c_feasible ? kOk : kInfeasible;
    }
  } else {
    throw lcl::InvalidArgument("unknown threshold application '" + app + "'");
  }
  return out;
}

// ---------------------------------------------------------------- choice

Outcome choice(const std::string& path, const RunConfig& cfg) {
  const auto in = lcl::io::parse_choice(lcl::io::read_json_file(path));
  const auto& inst = in.instance;
  Outcome out;
  const auto rep = lcl::check_expectation_condition(inst, in.weights, cfg.tol);
  out.report["feasible"] = rep.feasible;
  out.report["forms_agree"] = rep.forms_agree;
  Json rows = Json::array();
  out.table.header = {"universe", "tau", "margin", "normalized_margin"};
  for (std::size_t i = 0; i < inst.universe_count(); ++i) {
    rows.push_back({{"universe", i + 1},
                    {"tau", rep.tau[i]},
                    {"margin", rep.margins[i]},
                    {"normalized_margin", rep.normalized_margins[i]}});
    out.table.rows.push_back({num(i + 1), num(rep.tau[i]), num(rep.margins[i]), num(rep.normalized_margins[i])});
  }
  out.report["universes"] = rows;
  if (in.multichoice) {
    const bool cert = lcl::multichoice_certificate(inst, *in.multichoice);
    out.report["multichoice_certificate"] = cert;
    if (cert) out.report["choice"] = inst.names_of(lcl::extract_choice(inst, *in.multichoice));
    out.code = cert ? kOk : kInfeasible;
    return out;
  }
  if (!rep.feasible) {
    out.code = kInfeasible;
    return out;
  }
  const auto search = lcl::randomized_choice_search(inst, in.weights, cfg.seed, cfg.cap);
  out.report["search"] = {{"found", search.found},
                          {"verified", search.verified},
                          {"resamples", search.resamples},
                          {"seed", cfg.seed}};
  if (search.verified) out.report["choice"] = inst.names_of(search.choice);
  out.code = search.verified ? kOk : kIndeterminate;
  return out;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string in;
  std::size_t trials = 1;
  std::optional<std::size_t> n;
  std::optional<std::size_t> k;
  std::optional<std::size_t> d;
  std::optional<std::size_t> delta;
  std::optional<std::size_t> list_size;
};

struct TrialRow {
  std::uint64_t seed = 0;
  lcl::SamplerReport report;
  Json object;
};

Outcome sample(const std::string& kind, const SampleArgs& a, const RunConfig& cfg) {
  if (a.trials == 0) throw lcl::InvalidArgument("--trials must be positive");
  auto need = [&](const auto& opt, const char* name) {
    if (!opt) throw lcl::InvalidArgument("sample " + kind + " needs --" + name + " or --in");
    return *opt;
  };
  std::optional<Json> fixed;
  if (!a.in.empty()) fixed = lcl::io::read_json_file(a.in);
  std::vector<TrialRow> rows(a.trials);
  std::function<TrialRow(lcl::SplitMix64&)> trial;

  if (kind == "2col") {
    std::optional<lcl::Hypergraph> h;
    if (fixed) {
      h = lcl::io::parse_hypergraph(*fixed);
    } else {
      need(a.n, "n"), need(a.k, "k"), need(a.d, "d");
    }
    trial = [&, h](lcl::SplitMix64& rng) {
      const lcl::Hypergraph g = h ? *h : lcl::random_regular_uniform_hypergraph(*a.n, *a.k, *a.d, rng);
      const std::uint64_t seed = rng();
      auto run = lcl::mt_two_coloring(g, seed, cfg.cap);
      return TrialRow{seed, run.report, Json(run.coloring)};
    };
  } else if (kind == "nonrep-seq") {
    std::optional<lcl::ListAssignment> lists;
    if (fixed) {
      lists = lcl::io::parse_lists(*fixed);
    } else {
      lists = lcl::uniform_lists(need(a.n, "n"), need(a.list_size, "uniform"));
    }
    trial = [&, lists](lcl::SplitMix64& rng) {
      const std::uint64_t seed = rng();
      auto run = lcl::nonrep_sequence_build(*lists, seed, cfg.cap);
      return TrialRow{seed, run.report, Json(run.sequence)};
    };
  } else if (kind == "acyclic") {
    std::optional<lcl::Graph> g;
    if (fixed) {
      g = lcl::io::parse_graph(*fixed);
    } else {
      need(a.n, "n"), need(a.delta, "delta");
    }
    trial = [&, g](lcl::SplitMix64& rng) {
      const lcl::Graph graph = g ? *g : lcl::random_bounded_degree_graph(*a.n, *a.delta, 4 * *a.n * *a.delta, rng);
      const std::size_t delta = std::max<std::size_t>(graph.max_degree(), 1);
      const std::size_t k = a.k.value_or(std::max<std::size_t>(4 * (delta - 1), delta));
      const std::uint64_t seed = rng();
      auto run = lcl::ep_acyclic_edge_coloring(graph, k, seed, cfg.cap);
      return TrialRow{seed, run.report, Json(run.coloring)};
    };
  } else {
    throw lcl::InvalidArgument("unknown sampler '" + kind + "' (expected 2col, nonrep-seq or acyclic)");
  }

  lcl::parallel_for(a.trials, cfg.jobs, [&](std::size_t i) {
    lcl::SplitMix64 rng = lcl::derive_stream(cfg.seed, i);
    rows[i] = trial(rng);
  });

  Outcome out;
  out.table.header = {"trial", "seed", "success", "resamples", "steps"};
  Json trials = Json::array();
  std::size_t successes = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].report;
    successes += r.success ? 1 : 0;
    trials.push_back({{"trial", i}, {"seed", rows[i].seed}, {"success", r.success}, {"resamples", r.resamples},
                      {"steps", r.steps}});
    out.table.rows.push_back({num(i), std::to_string(rows[i].seed), flag(r.success), num(r.resamples), num(r.steps)});
  }
  out.report["sampler"] = kind;
  out.report["seed"] = cfg.seed;
  out.report["trials"] = trials;
  out.report["successes"] = successes;
  if (rows.size() == 1 && rows[0].report.success) out.report["object"] = rows[0].object;
  out.code = successes == rows.size() ? kOk : kIndeterminate;
  return out;
}

// ---------------------------------------------------------------- validate-model

struct ModelArgs {
  std::string in;
  std::size_t n = 4;
  std::size_t list_size = 4;
  std::size_t colors = 3;
};

Outcome validate_model(const std::string& builder, const ModelArgs& a, const RunConfig& cfg) {
  Outcome out;
  out.report["builder"] = builder;
  out.table.header = {"builder", "valid", "feasible", "bounds_pass"};
  if (builder == "nonrep") {
    const auto inst = lcl::build_nonrep_instance(lcl::uniform_lists(a.n, a.list_size));
    const auto& exact = *inst.exact();
    const auto val = lcl::validate_cut_model(exact.space, exact.model);
    out.report["valid"] = val.valid;
    if (!val.valid) out.report["reason"] = val.reason;
    const auto res = lcl::least_weight_solution(inst, solve_options(cfg));
    out.report["status"] = std::string(lcl::to_string(res.status));
    bool bounds_pass = true;
    if (res.status == lcl::SolveStatus::kConverged) {
      const auto b = lcl::probability_bounds(inst, res.report.weights, lcl::all_arc_queries(inst),
                                             lcl::all_reach_queries(inst));
      bounds_pass = b.all_pass;
      out.report["bounds_pass"] = b.all_pass;
    }
    out.table.rows.push_back({builder, flag(val.valid), flag(res.status == lcl::SolveStatus::kConverged),
                              flag(bounds_pass)});
    out.code = !val.valid || !bounds_pass ? kInfeasible : status_code(res.status);
  } else if (builder == "hypercube-hypcol") {
    if (a.in.empty()) throw lcl::InvalidArgument("validate-model hypercube-hypcol needs --in");
    const auto h = lcl::io::parse_hypergraph(lcl::io::read_json_file(a.in));
    const auto fam = lcl::build_hypergraph_coloring_family(h, a.colors);
    const auto solved = lcl::least_tau_solution(fam, lcl::drop_one_witnesses(h, a.colors, true), solve_options(cfg));
    out.report["status"] = std::string(lcl::to_string(solved.status));
    if (solved.status != lcl::SolveStatus::kConverged) {
      out.code = status_code(solved.status);
      return out;
    }
    const auto red = lcl::hypercube_digraph(fam, solved.tau);
    const auto& exact = *red.instance.exact();
    const auto val = lcl::validate_cut_model(exact.space, exact.model);
    const auto cond = lcl::check_condition(red.instance, red.omega, std::max(cfg.tol, 1e-12));
    const auto family = lcl::check_family_condition(fam, solved.tau, lcl::drop_one_witnesses(h, a.colors, false),
                                             std::max(cfg.tol, 1e-12));
    const std::size_t full = red.vertex_of_mask.back(), empty = red.vertex_of_mask.front();
    const double path = *lcl::min_product_weight(red.instance.simple(), red.omega, full, empty);
    const double lcl_bound = 1.0 / path;
    const bool agree = std::abs(lcl_bound - family.bound) <= 1e-12;
    out.report["valid"] = val.valid;
    out.report["lcl_condition"] = cond.feasible;
    out.report["family_condition"] = family.feasible;
    out.report["family_bound"] = family.bound;
    out.report["lcl_bound"] = lcl_bound;
    out.report["bounds_agree"] = agree;
    out.table.rows.push_back({builder, flag(val.valid), flag(cond.feasible && family.feasible), flag(agree)});
    out.code = val.valid && cond.feasible && family.feasible && agree ? kOk : kInfeasible;
  } else {
    throw lcl::InvalidArgument("unknown builder '" + builder + "' (expected nonrep or hypercube-hypcol)");
  }
  return out;
}

// ---------------------------------------------------------------- peel

struct PeelArgs {
  std::string in;
  std::optional<double> k;
  std::optional<double> c;
  std::optional<double> z;
};

Outcome peel(const PeelArgs& a) {
  if (a.in.empty()) throw lcl::InvalidArgument("peel needs --in");
  if (!a.k) throw lcl::InvalidArgument("peel needs --k");
  const auto h = lcl::io::parse_hypergraph(lcl::io::read_json_file(a.in));
  const double k = *a.k;
  const double c = a.c.value_or(4 * std::sqrt(k));
  double z;
  if (a.z) {
    z = *a.z;
  } else {
    // Smaller root of (4(k−c)/k²)τ² − (c/k)τ + 1 = 0, then z = k/(4τ) + 1.
    const double qa = 4 * (k - c) / (k * k), qb = -c / k;
    const double disc = qb * qb - 4 * qa;
    if (!(qa > 0) || disc < 0) throw lcl::InvalidArgument("no default z for these k and c; pass --z");
    const double tau = std::max(1.0, (-qb - std::sqrt(disc)) / (2 * qa));
    z = k / (4 * tau) + 1;
  }
  const auto r = lcl::greedy_peel(h, k, c, z);
  Outcome out;
  out.report["k"] = k;
  out.report["c"] = c;
  out.report["z"] = z;
  out.report["all_peeled"] = r.all_peeled;
  out.report["chain"] = r.chain;
  out.report["score_total"] = r.score_total;
  out.report["edge_count"] = r.edge_count;
  out.report["true_hypergraph"] = r.true_hypergraph;
  if (r.all_peeled) out.report["certificate"] = r.certificate;
  Json rest = Json::array();
  out.table.header = {"vertex", "gamma"};
  for (std::size_t i = 0; i < r.remainder.size(); ++i) {
    Json a_counts = Json::object(), b_counts = Json::object();
    for (const auto& [t, n] : r.profiles[i].a) a_counts[std::to_string(t)] = n;
    for (const auto& [t, n] : r.profiles[i].b) b_counts[std::to_string(t)] = n;
    const double gamma = r.profiles[i].gamma(z);
    rest.push_back({{"vertex", r.remainder[i]}, {"a", a_counts}, {"b", b_counts}, {"gamma", gamma}});
    out.table.rows.push_back({num(r.remainder[i]), num(gamma)});
  }
  out.report["remainder"] = rest;
  out.code = r.all_peeled && r.certificate ? kOk : kInfeasible;
  return out;
}

void emit(const Outcome& out, const RunConfig& cfg) {
  const std::string text = cfg.format == "csv" ? lcl::io::to_csv(out.table) : lcl::io::to_stable_json(out.report);
  lcl::io::write_text(text, cfg.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local cut lemma toolkit: condition checkers, threshold solvers and samplers"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "Random seed")->envname("LCL_SEED");
  app.add_option("--tol", cfg.tol, "Numerical tolerance")->envname("LCL_TOL")->check(CLI::PositiveNumber);
  app.add_option("--cap", cfg.cap, "Iteration or resample cap")->envname("LCL_CAP")->check(CLI::PositiveNumber);
  app.add_option("--jobs", cfg.jobs, "Worker threads for batch runs")->envname("LCL_JOBS")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Output format")->envname("LCL_FORMAT")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "Output path (default stdout)")->envname("LCL_OUT");

  std::string path;
  std::function<Outcome()> action;

  auto* lcl_cmd = app.add_subcommand("check-lcl", "Check or solve the weight condition for a digraph instance");
  lcl_cmd->add_option("instance", path, "Instance JSON")->required();
  lcl_cmd->callback([&] { action = [&] { return check_lcl(path, cfg); }; });

  auto* fam_cmd = app.add_subcommand("check-family", "Check or solve the tau condition for a family instance");
  fam_cmd->add_option("instance", path, "Instance JSON")->required();
  fam_cmd->callback([&] { action = [&] { return check_family(path, cfg); }; });

  auto* lll_cmd = app.add_subcommand("check-lll", "Check the lopsided local lemma condition");
  lll_cmd->add_option("instance", path, "Instance JSON")->required();
  lll_cmd->callback([&] { action = [&] { return check_lll(path, cfg); }; });

  std::string app_name;
  ThresholdArgs targs;
  auto* thr_cmd = app.add_subcommand("threshold", "Scalar thresholds for the standard applications");
  thr_cmd->add_option("app", app_name, "hypcol | nonrep-seq | nonrep-chromatic | acyclic | critical")->required();
  thr_cmd->add_option("--k", targs.k, "Uniformity, palette size or color count");
  thr_cmd->add_option("--k-max", targs.k_max, "Scan k up to this value (hypcol)");
  thr_cmd->add_option("--delta", targs.delta, "Maximum degree");
  thr_cmd->add_option("--L", targs.list_size, "List size");
  thr_cmd->add_option("--c", targs.c, "Slack c (critical)");
  thr_cmd->add_option("--tau", targs.tau, "tau to test (critical)");
  thr_cmd->add_option("--z", targs.z, "z to test (critical)");
  thr_cmd->add_option("--variant", targs.variant, "lll | exact | crude | improved (hypcol)");
  thr_cmd->callback([&] { action = [&] { return threshold(app_name, targs, cfg); }; });

  auto* choice_cmd = app.add_subcommand("choice", "Expectation condition and search for avoiding choice functions");
  choice_cmd->add_option("instance", path, "Instance JSON")->required();
  choice_cmd->callback([&] { action = [&] { return choice(path, cfg); }; });

  std::string kind;
  SampleArgs sargs;
  auto* sample_cmd = app.add_subcommand("sample", "Run a randomized construction with verification");
  sample_cmd->add_option("kind", kind, "2col | nonrep-seq | acyclic")->required();
  sample_cmd->add_option("--in", sargs.in, "Instance JSON (otherwise a random instance per trial)");
  sample_cmd->add_option("--trials", sargs.trials, "Number of independent trials");
  sample_cmd->add_option("--n", sargs.n, "Vertices or sequence length");
  sample_cmd->add_option("--k", sargs.k, "Edge size (2col) or palette size (acyclic)");
  sample_cmd->add_option("--d", sargs.d, "Vertex degree (2col)");
  sample_cmd->add_option("--delta", sargs.delta, "Maximum degree (acyclic)");
  sample_cmd->add_option("--uniform,--L", sargs.list_size, "Uniform list size (nonrep-seq)");
  sample_cmd->callback([&] { action = [&] { return sample(kind, sargs, cfg); }; });

  std::string builder;
  ModelArgs margs;
  auto* model_cmd = app.add_subcommand("validate-model", "Build a reference model and validate it exhaustively");
  model_cmd->add_option("builder", builder, "nonrep | hypercube-hypcol")->required();
  model_cmd->add_option("--in", margs.in, "Hypergraph JSON (hypercube-hypcol)");
  model_cmd->add_option("--n", margs.n, "Sequence length (nonrep)");
  model_cmd->add_option("--L", margs.list_size, "List size (nonrep)");
  model_cmd->add_option("--colors", margs.colors, "Number of colors (hypercube-hypcol)");
  model_cmd->callback([&] { action = [&] { return validate_model(builder, margs, cfg); }; });

  PeelArgs pargs;
  auto* peel_cmd = app.add_subcommand("peel", "Greedy vertex peeling of a hypergraph");
  peel_cmd->add_option("--in", pargs.in, "Hypergraph JSON")->required();
  peel_cmd->add_option("--k", pargs.k, "Number of colors")->required();
  peel_cmd->add_option("--c", pargs.c, "Slack c (default 4 sqrt(k))");
  peel_cmd->add_option("--z", pargs.z, "Weight parameter z > 1");
  peel_cmd->callback([&] { action = [&] { return peel(pargs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Outcome out = action();
    emit(out, cfg);
    return out.code;
  } catch (const lcl::CapExceeded& e) {
    std::cerr << "lcl: " << e.what() << "\n";
    return kIndeterminate;
  } catch (const lcl::Error& e) {
    std::cerr << "lcl: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "lcl: bad instance: " << e.what() << "\n";
    return kUsage;
  }
}
