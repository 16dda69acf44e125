// stitx: STIT tessellation simulator and extreme-value experiment driver.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stitx/chenstein.hpp"
#include "stitx/experiments.hpp"
#include "stitx/extremes.hpp"
#include "stitx/io.hpp"
#include "stitx/laws.hpp"
#include "stitx/version.hpp"

namespace {

using stitx::io::fmt;
using json = nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool timing = false;
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool needs_out) {
  sub->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (results do not depend on this)")->capture_default_str();
  sub->add_flag("--timing", c.timing, "Record wall-clock time in the metadata sidecar");
  auto* opt = sub->add_option("--out", c.out, "Output CSV path");
  if (needs_out) opt->required();
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stod(item));
  if (out.empty()) throw CLI::ValidationError("empty list: " + text);
  return out;
}

// "a:step:b" inclusive grid, or a comma list.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0])
    throw CLI::ValidationError("grid must be lo:step:hi with step > 0");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  return os;
}

void write_sidecar(const std::string& out, const std::string& command, const json& args, const Common& c,
                   double wall, const json& summary = json::object()) {
  if (out.empty()) return;
  json meta;
  meta["tool"] = "stitx";
  meta["version"] = stitx::kVersion;
  meta["command"] = command;
  meta["seed"] = c.seed;
  meta["arguments"] = args;
  if (!summary.empty()) meta["summary"] = summary;
  if (c.timing) meta["wall_seconds"] = wall;
  auto os = open_out(out + ".meta.json");
  os << meta.dump(2) << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Splices `key=value` lines from --config files in after the subcommand name.
// Keys mirror long flag names; flags given on the command line win.
std::vector<std::string> expand_config(int argc, char** argv, const std::set<std::string>& subcommands) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config_path;
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[++i];
      continue;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
      continue;
    }
    kept.push_back(args[i]);
  }
  if (config_path.empty()) return kept;
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot read config file " + config_path);
  std::set<std::string> given;
  for (const auto& a : kept)
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2));
  std::vector<std::string> injected;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty() || given.count(key)) continue;
    if (value == "true") {
      injected.push_back("--" + key);
    } else if (value != "false") {
      injected.push_back("--" + key);
      injected.push_back(value);
    }
  }
  std::size_t pos = 1;
  while (pos < kept.size() && !subcommands.count(kept[pos])) ++pos;
  if (pos == kept.size()) throw std::runtime_error("--config needs a subcommand");
  kept.insert(kept.begin() + static_cast<std::ptrdiff_t>(pos) + 1, injected.begin(), injected.end());
  return kept;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STIT tessellation inradius extremes: simulation and Monte Carlo checks"};
  app.set_version_flag("--version", std::string(stitx::kVersion));
  app.require_subcommand(1);
  app.add_option("--config", "key=value file mirroring the subcommand's flags (flags win)");

  Common common;

  // simulate ------------------------------------------------------------------
  double sim_rho = 100.0, sim_t = 1.0, sim_tau = 2.0, sim_margin = -1.0;
  std::string sim_svg, sim_json;
  auto* sim = app.add_subcommand("simulate", "Simulate one tessellation on W_rho plus margin");
  sim->add_option("--rho", sim_rho, "Window parameter rho")->capture_default_str();
  sim->add_option("--t", sim_t, "Process time t")->capture_default_str();
  sim->add_option("--tau", sim_tau, "tau used for v_rho (margin, SVG highlight)")->capture_default_str();
  sim->add_option("--margin", sim_margin, "Simulation margin (default 4 v_rho + 2)");
  sim->add_option("--svg", sim_svg, "Write SVG of skeleton and incircles");
  sim->add_option("--json", sim_json, "Write tessellation JSON");
  add_common(sim, common, false);

  // exceedances ---------------------------------------------------------------
  std::string ex_rho_list = "25,50,100,200";
  double ex_tau = 2.0, ex_t = 1.0, ex_margin = -1.0;
  std::size_t ex_reps = 1000, ex_boot = 1000;
  bool ex_filter = false;
  auto* ex = app.add_subcommand("exceedances", "Exceedance counts N(v_rho) and TV distance to Poisson(tau)");
  ex->add_option("--rho-list", ex_rho_list, "Comma-separated rho values")->capture_default_str();
  ex->add_option("--tau", ex_tau)->capture_default_str();
  ex->add_option("--t", ex_t)->capture_default_str();
  ex->add_option("--reps", ex_reps, "Replications per rho")->capture_default_str();
  ex->add_option("--margin", ex_margin, "Simulation margin (default 4 v_rho + 2)");
  ex->add_option("--bootstrap", ex_boot, "Bootstrap resamples for the TV interval")->capture_default_str();
  ex->add_flag("--filter-contaminated", ex_filter, "Use only records whose cell avoids the simulation boundary");
  add_common(ex, common, true);

  // order-stats ---------------------------------------------------------------
  double os_rho = 200.0, os_tau = 1.0, os_t = 1.0, os_margin = -1.0;
  std::size_t os_kmax = 5, os_reps = 1000;
  auto* ost = app.add_subcommand("order-stats", "P(M^(k) <= v_rho) against the Poisson limit");
  ost->add_option("--rho", os_rho)->capture_default_str();
  ost->add_option("--tau", os_tau)->capture_default_str();
  ost->add_option("--t", os_t)->capture_default_str();
  ost->add_option("--kmax", os_kmax)->capture_default_str();
  ost->add_option("--reps", os_reps)->capture_default_str();
  ost->add_option("--margin", os_margin);
  add_common(ost, common, true);

  // gumbel --------------------------------------------------------------------
  double gu_rho = 200.0, gu_t = 1.0, gu_margin = -1.0;
  std::string gu_grid = "-2:0.5:3";
  std::size_t gu_reps = 1000;
  auto* gu = app.add_subcommand("gumbel", "Maximum inradius against exp(-exp(-u))");
  gu->add_option("--rho", gu_rho)->capture_default_str();
  gu->add_option("--t", gu_t)->capture_default_str();
  gu->add_option("--u-grid", gu_grid, "lo:step:hi or comma list")->capture_default_str();
  gu->add_option("--reps", gu_reps)->capture_default_str();
  gu->add_option("--margin", gu_margin);
  add_common(gu, common, true);

  // typical -------------------------------------------------------------------
  double ty_rho = 100.0, ty_t = 1.0, ty_tau = 2.0, ty_margin = -1.0;
  std::string ty_v = "0.25,0.5,1.0";
  std::size_t ty_reps = 200;
  auto* ty = app.add_subcommand("typical", "Pooled inradius ECDF against Exp(2t)");
  ty->add_option("--rho", ty_rho)->capture_default_str();
  ty->add_option("--t", ty_t)->capture_default_str();
  ty->add_option("--tau", ty_tau, "tau used for the default margin")->capture_default_str();
  ty->add_option("--v-list", ty_v, "Survival evaluation points")->capture_default_str();
  ty->add_option("--reps", ty_reps)->capture_default_str();
  ty->add_option("--margin", ty_margin);
  add_common(ty, common, true);

  // two-disk ------------------------------------------------------------------
  double td_r = 0.5, td_t = 1.0;
  std::string td_d = "1.0,1.5,2.0,3.0";
  std::size_t td_reps = 10000;
  auto* td = app.add_subcommand("two-disk", "Skeleton avoidance of two disks against the closed form");
  td->add_option("--r", td_r)->capture_default_str();
  td->add_option("--d-list", td_d)->capture_default_str();
  td->add_option("--t", td_t)->capture_default_str();
  td->add_option("--reps", td_reps)->capture_default_str();
  add_common(td, common, true);

  // chen-stein ----------------------------------------------------------------
  double cs_rho = 100.0, cs_tau = 2.0, cs_beta = 0.5, cs_b2 = 0.0, cs_b3 = 0.0;
  std::size_t cs_pair_reps = 0;
  auto* cs = app.add_subcommand("chen-stein", "Subdivision, p_i, b1 and the AGG bound");
  cs->add_option("--rho", cs_rho)->capture_default_str();
  cs->add_option("--tau", cs_tau)->capture_default_str();
  cs->add_option("--beta", cs_beta)->capture_default_str();
  cs->add_option("--b2", cs_b2, "User-supplied b2 for the AGG bound")->capture_default_str();
  cs->add_option("--b3", cs_b3, "User-supplied b3 for the AGG bound")->capture_default_str();
  cs->add_option("--pair-reps", cs_pair_reps, "If > 0, Monte Carlo p_ij for an adjacent and a far pair");
  add_common(cs, common, true);

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv, {"simulate", "exceedances", "order-stats", "gumbel", "typical", "two-disk",
                                      "chen-stein"});
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  CLI11_PARSE(app, static_cast<int>(cargs.size()), cargs.data());

  const auto start = std::chrono::steady_clock::now();
  try {
    if (*sim) {
      const auto window = stitx::extremes::build_window(sim_rho, sim_t);
      const double v = stitx::extremes::threshold_v(sim_rho, sim_tau, sim_t);
      const double margin = sim_margin >= 0.0 ? sim_margin : stitx::extremes::default_margin(sim_rho, sim_tau, sim_t);
      stitx::RandomStream rng(common.seed, stitx::stream_id(0, stitx::experiments::rho_tag(sim_rho)));
      const auto tess = stitx::simulate(stitx::extremes::simulation_window(window, margin), sim_t, rng);
      const auto records = stitx::extremes::collect_records(tess, window);
      std::cout << "cells " << tess.cells.size() << "  segments " << tess.segments.size() << "  records "
                << records.records.size() << "  exceedances(v_rho=" << fmt(v) << ") "
                << stitx::extremes::exceedance_count(records, v) << "  max inradius "
                << fmt(stitx::extremes::order_statistic(records, 1)) << '\n';
      if (!sim_json.empty()) open_out(sim_json) << stitx::io::to_json(tess).dump() << '\n';
      if (!sim_svg.empty()) {
        auto os = open_out(sim_svg);
        stitx::io::write_svg(os, tess, v, &window.square);
      }
      if (!common.out.empty()) {
        auto os = open_out(common.out);
        stitx::io::write_records_csv_header(os);
        stitx::io::write_records_csv(os, 0, records);
      }
      const std::string meta_base = !common.out.empty() ? common.out : sim_json;
      write_sidecar(meta_base, "simulate",
                    {{"rho", sim_rho}, {"t", sim_t}, {"tau", sim_tau}, {"margin", margin}}, common,
                    seconds_since(start),
                    {{"cells", tess.cells.size()}, {"segments", tess.segments.size()},
                     {"records", records.records.size()}});
    } else if (*ex) {
      stitx::experiments::ExperimentConfig cfg;
      cfg.rho_list = parse_list(ex_rho_list);
      cfg.tau = ex_tau;
      cfg.t = ex_t;
      cfg.replications = ex_reps;
      cfg.master_seed = common.seed;
      if (ex_margin >= 0.0) cfg.margin = ex_margin;
      cfg.filter_contaminated = ex_filter;
      cfg.threads = common.threads;
      cfg.bootstrap_resamples = ex_boot;
      const auto result = stitx::experiments::run_exceedance_experiment(cfg);
      auto os = open_out(common.out);
      os << "rho,tau,v_rho,margin,reps,mean_N,stderr_N,mean_N_filtered,tv,tv_boot_mean,tv_ci_lo,tv_ci_hi,"
            "tv_bias_corrected,tv_filtered,contamination_rate\n";
      auto pmf_os = open_out(common.out + ".pmf.csv");
      pmf_os << "rho,r,empirical,poisson\n";
      for (const auto& row : result.rows) {
        os << fmt(row.rho) << ',' << fmt(ex_tau) << ',' << fmt(row.v_rho) << ',' << fmt(row.margin) << ','
           << row.replications << ',' << fmt(row.mean) << ',' << fmt(row.std_error) << ',' << fmt(row.mean_filtered)
           << ',' << fmt(row.tv.tv) << ',' << fmt(row.tv.bootstrap_mean) << ',' << fmt(row.tv.ci_lo) << ','
           << fmt(row.tv.ci_hi) << ',' << fmt(row.tv.bias_corrected) << ',' << fmt(row.tv_filtered) << ','
           << fmt(row.contamination_rate) << '\n';
        const std::size_t support = std::max<std::size_t>(row.pmf.size(), 2 * static_cast<std::size_t>(ex_tau) + 8);
        for (std::size_t r = 0; r < support; ++r)
          pmf_os << fmt(row.rho) << ',' << r << ',' << fmt(r < row.pmf.size() ? row.pmf[r] : 0.0) << ','
                 << fmt(stitx::laws::poisson_pmf(ex_tau, static_cast<long>(r))) << '\n';
        std::cout << "rho " << fmt(row.rho) << "  mean N " << fmt(row.mean) << " +- " << fmt(row.std_error)
                  << "  TV " << fmt(row.tv.tv) << " (bias-corrected " << fmt(row.tv.bias_corrected) << ")\n";
      }
      write_sidecar(common.out, "exceedances",
                    {{"rho_list", cfg.rho_list},
                     {"tau", ex_tau},
                     {"t", ex_t},
                     {"reps", ex_reps},
                     {"margin", ex_margin >= 0.0 ? json(ex_margin) : json("auto")},
                     {"bootstrap", ex_boot},
                     {"filter_contaminated", ex_filter}},
                    common, seconds_since(start));
    } else if (*ost) {
      stitx::experiments::ExperimentConfig cfg;
      cfg.rho_list = {os_rho};
      cfg.tau = os_tau;
      cfg.t = os_t;
      cfg.replications = os_reps;
      cfg.master_seed = common.seed;
      if (os_margin >= 0.0) cfg.margin = os_margin;
      cfg.threads = common.threads;
      const auto result = stitx::experiments::run_order_statistics(cfg, os_kmax);
      auto os = open_out(common.out);
      os << "rho,k,v_rho,empirical,stderr,limit,empirical_filtered,reps\n";
      for (const auto& row : result.rows) {
        os << fmt(row.rho) << ',' << row.k << ',' << fmt(row.v_rho) << ',' << fmt(row.empirical) << ','
           << fmt(row.std_error) << ',' << fmt(row.limit) << ',' << fmt(row.empirical_filtered) << ','
           << row.replications << '\n';
        std::cout << "k " << row.k << "  P(M<=v) " << fmt(row.empirical) << "  limit " << fmt(row.limit) << '\n';
      }
      write_sidecar(common.out, "order-stats",
                    {{"rho", os_rho}, {"tau", os_tau}, {"t", os_t}, {"kmax", os_kmax}, {"reps", os_reps}}, common,
                    seconds_since(start),
                    {{"duality_checks", result.duality_checks}, {"duality_violations", 0},
                     {"contamination_rate", result.contamination_rate}});
    } else if (*gu) {
      stitx::experiments::ExperimentConfig cfg;
      cfg.rho_list = {gu_rho};
      cfg.t = gu_t;
      cfg.replications = gu_reps;
      cfg.master_seed = common.seed;
      if (gu_margin >= 0.0) cfg.margin = gu_margin;
      cfg.threads = common.threads;
      const auto rows = stitx::experiments::run_gumbel_curve(cfg, parse_grid(gu_grid));
      auto os = open_out(common.out);
      os << "rho,u,threshold,empirical,stderr,limit,reps\n";
      for (const auto& row : rows) {
        os << fmt(row.rho) << ',' << fmt(row.u) << ',' << fmt(row.threshold) << ',' << fmt(row.empirical) << ','
           << fmt(row.std_error) << ',' << fmt(row.limit) << ',' << row.replications << '\n';
        std::cout << "u " << fmt(row.u) << "  empirical " << fmt(row.empirical) << "  limit " << fmt(row.limit)
                  << '\n';
      }
      write_sidecar(common.out, "gumbel", {{"rho", gu_rho}, {"t", gu_t}, {"u_grid", gu_grid}, {"reps", gu_reps}},
                    common, seconds_since(start));
    } else if (*ty) {
      stitx::experiments::ExperimentConfig cfg;
      cfg.rho_list = {ty_rho};
      cfg.tau = ty_tau;
      cfg.t = ty_t;
      cfg.replications = ty_reps;
      cfg.master_seed = common.seed;
      if (ty_margin >= 0.0) cfg.margin = ty_margin;
      cfg.threads = common.threads;
      const auto check = stitx::experiments::run_typical_inradius_check(cfg, parse_list(ty_v));
      auto os = open_out(common.out);
      os << "inradius,ecdf,exact_cdf\n";
      const double n = static_cast<double>(check.sorted_inradii.size());
      for (std::size_t i = 0; i < check.sorted_inradii.size(); ++i) {
        const double x = check.sorted_inradii[i];
        os << fmt(x) << ',' << fmt(static_cast<double>(i + 1) / n) << ',' << fmt(-std::expm1(-2.0 * ty_t * x))
           << '\n';
      }
      json surv = json::array();
      for (const auto& s : check.survival) {
        surv.push_back({{"v", s.v}, {"empirical", s.empirical}, {"stderr", s.std_error}, {"exact", s.exact}});
        std::cout << "v " << fmt(s.v) << "  survival " << fmt(s.empirical) << " +- " << fmt(s.std_error)
                  << "  exact " << fmt(s.exact) << '\n';
      }
      std::cout << "KS statistic " << fmt(check.ks_statistic) << " over " << check.sorted_inradii.size()
                << " inradii\n";
      write_sidecar(common.out, "typical", {{"rho", ty_rho}, {"t", ty_t}, {"tau", ty_tau}, {"reps", ty_reps}}, common,
                    seconds_since(start),
                    {{"pooled", check.sorted_inradii.size()},
                     {"ks_statistic", check.ks_statistic},
                     {"survival", surv},
                     {"contamination_rate", check.contamination_rate}});
    } else if (*td) {
      const auto rows =
          stitx::experiments::run_two_disk_validation(td_r, parse_list(td_d), td_t, td_reps, common.seed, common.threads);
      auto os = open_out(common.out);
      os << "r,d,t,reps,empirical,stderr,closed_form,bound\n";
      for (const auto& row : rows) {
        os << fmt(row.r) << ',' << fmt(row.d) << ',' << fmt(row.t) << ',' << row.replications << ','
           << fmt(row.empirical) << ',' << fmt(row.std_error) << ',' << fmt(row.closed_form) << ',' << fmt(row.bound)
           << '\n';
        std::cout << "d " << fmt(row.d) << "  empirical " << fmt(row.empirical) << " +- " << fmt(row.std_error)
                  << "  closed form " << fmt(row.closed_form) << "  bound " << fmt(row.bound) << '\n';
      }
      write_sidecar(common.out, "two-disk", {{"r", td_r}, {"d_list", td_d}, {"t", td_t}, {"reps", td_reps}}, common,
                    seconds_since(start));
    } else if (*cs) {
      namespace cs_ns = stitx::chenstein;
      const auto sub = cs_ns::build_subdivision(cs_rho, cs_tau, cs_beta);
      const bool ok = cs_ns::rho0_satisfied(sub);
      const double p_i = ok ? cs_ns::p_i_analytic(sub) : std::nan("");
      const double b1 = cs_ns::b1_bound(sub);
      const double agg = stitx::laws::agg_bound(b1, cs_b2, cs_b3, cs_tau);
      auto os = open_out(common.out);
      os << "rho,tau,beta,side_count,squares,v_rho,square_diagonal,rho0_satisfied,p_i,b1_bound,b1_exact,b2,b3,agg_"
            "bound\n";
      os << fmt(cs_rho) << ',' << fmt(cs_tau) << ',' << fmt(cs_beta) << ',' << sub.side_count << ','
         << sub.square_count() << ',' << fmt(sub.v_rho()) << ',' << fmt(sub.square_diagonal()) << ','
         << (ok ? 1 : 0) << ',' << (ok ? fmt(p_i) : "nan") << ',' << fmt(b1) << ','
         << (ok ? fmt(cs_ns::b1_exact(sub)) : "nan") << ',' << fmt(cs_b2) << ',' << fmt(cs_b3) << ',' << fmt(agg)
         << '\n';
      std::cout << "|V| " << sub.square_count() << "  v_rho " << fmt(sub.v_rho()) << "  diagonal "
                << fmt(sub.square_diagonal()) << "  rho0 " << (ok ? "satisfied" : "NOT satisfied") << "  p_i "
                << (ok ? fmt(p_i) : "n/a") << "  b1 <= " << fmt(b1) << "  AGG bound " << fmt(agg) << '\n';
      json summary = json::object();
      if (cs_pair_reps > 0) {
        const long mid = (sub.side_count + 1) / 2;
        const cs_ns::GridIndex centre{mid, mid};
        const cs_ns::GridIndex adjacent{std::min(mid + 1, sub.side_count), mid};
        const cs_ns::GridIndex far{1, 1};
        auto pair_os = open_out(common.out + ".pairs.csv");
        pair_os << "i1,i2,j1,j2,p_ij,stderr,p_i_hat,p_j_hat,product\n";
        for (const auto& j : {adjacent, far}) {
          if (j == centre) continue;
          const auto est = cs_ns::estimate_pair_exceedance(sub, centre, j, cs_pair_reps, common.seed, common.threads);
          pair_os << centre.i1 << ',' << centre.i2 << ',' << j.i1 << ',' << j.i2 << ',' << fmt(est.estimate) << ','
                  << fmt(est.std_error) << ',' << fmt(est.p_i) << ',' << fmt(est.p_j) << ','
                  << fmt(est.p_i * est.p_j) << '\n';
          std::cout << "p_ij (" << j.i1 << "," << j.i2 << ") " << fmt(est.estimate) << " +- " << fmt(est.std_error)
                    << "  p_i p_j " << fmt(est.p_i * est.p_j) << '\n';
        }
      }
      write_sidecar(common.out, "chen-stein",
                    {{"rho", cs_rho}, {"tau", cs_tau}, {"beta", cs_beta}, {"b2", cs_b2}, {"b3", cs_b3},
                     {"pair_reps", cs_pair_reps}},
                    common, seconds_since(start), summary);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
