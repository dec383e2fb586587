// covergen — command-line front end over the public C API (covergen.h).
//
// Subcommands: greedy, induced, ag, verify, bound, experiment-density,
// experiment-tree, fit-alpha, clique-stat. Design files and CSVs go to
// stdout unless --out is given; diagnostics (stats, effective seeds) go to
// stderr. Exit codes: 0 success, 1 verification failure, 2 parameter or
// runtime errors. Every randomized subcommand prints its effective seed so
// the run can be reproduced exactly.
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covergen.h"

namespace {

[[noreturn]] void die(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(code);
}

void check(covgen_status st) {
  if (st != COVGEN_OK) die(2, covgen_last_error());
}

// --seed accepts a decimal u64 or the word "random" (entropy-backed).
uint64_t resolve_seed(const std::string& text) {
  if (text == "random") {
    std::random_device rd;
    return (static_cast<uint64_t>(rd()) << 32) ^ rd();
  }
  uint64_t value = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  const auto res = std::from_chars(b, e, value);
  if (res.ec != std::errc() || res.ptr != e)
    die(2, "--seed must be a non-negative integer or 'random'");
  return value;
}

void print_seed(uint64_t seed) {
  std::cerr << "seed " << seed << "\n";
}

std::string fmt(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void emit_design(covgen_design* d, const std::string& out_path) {
  if (out_path.empty()) {
    char* text = nullptr;
    check(covgen_design_to_string(d, &text));
    std::fputs(text, stdout);
    covgen_string_free(text);
  } else {
    check(covgen_design_write_file(d, out_path.c_str()));
  }
}

void emit_text(const char* text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) die(2, "cannot open output file: " + out_path);
    f << text;
    if (!f) die(2, "cannot write output file: " + out_path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) die(2, "cannot open file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

covgen_greedy_mode parse_mode(const std::string& mode) {
  if (mode == "abort") return COVGEN_GREEDY_ABORT;
  if (mode == "scan") return COVGEN_GREEDY_SCAN;
  die(2, "--mode must be 'abort' or 'scan'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covergen — (v,k,t) covering design construction and analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", covgen_version());

  // greedy
  uint32_t g_v = 0, g_k = 0, g_t = 0;
  std::string g_seed = "0", g_mode = "abort", g_out;
  uint64_t g_budget = 0;
  auto* greedy = app.add_subcommand("greedy", "random greedy covering");
  greedy->add_option("--v", g_v, "points")->required();
  greedy->add_option("--k", g_k, "block size")->required();
  greedy->add_option("--t", g_t, "coverage order")->required();
  greedy->add_option("--seed", g_seed, "u64 or 'random' (default 0)");
  greedy->add_option("--budget", g_budget, "draw budget (0 = default rule)");
  greedy->add_option("--mode", g_mode, "abort | scan");
  greedy->add_option("--out", g_out, "output file (default stdout)");

  // induced
  uint32_t i_v = 0, i_k = 0, i_t = 0;
  std::string i_seed = "0", i_cache, i_out;
  auto* induced = app.add_subcommand("induced", "induced covering for large v");
  induced->add_option("--v", i_v, "points")->required();
  induced->add_option("--k", i_k, "block size")->required();
  induced->add_option("--t", i_t, "coverage order")->required();
  induced->add_option("--seed", i_seed, "u64 or 'random' (default 0)");
  induced->add_option("--cache", i_cache, "small-cover cache directory");
  induced->add_option("--out", i_out, "output file (default stdout)");

  // ag
  uint32_t a_p = 0, a_t = 0;
  std::string a_out;
  auto* ag = app.add_subcommand("ag", "hyperplane covering of AG(t,p)");
  ag->add_option("--p", a_p, "prime")->required();
  ag->add_option("--t", a_t, "dimension (>= 2)")->required();
  ag->add_option("--out", a_out, "output file (default stdout)");

  // verify
  std::string v_file, v_seed = "0";
  uint64_t v_sample = 0, v_budget = 0;
  auto* verify = app.add_subcommand("verify", "check a design file");
  verify->add_option("file", v_file, "design file")->required();
  verify->add_option("--sample", v_sample, "random t-sets (0 = exhaustive)");
  verify->add_option("--seed", v_seed, "u64 or 'random' (default 0)");
  verify->add_option("--budget", v_budget, "exhaustive bit budget (0 = default)");

  // bound
  uint32_t b_v = 0, b_k = 0, b_t = 0;
  auto* bound = app.add_subcommand("bound", "lower bounds on covering size");
  bound->add_option("--v", b_v, "points")->required();
  bound->add_option("--k", b_k, "block size")->required();
  bound->add_option("--t", b_t, "coverage order")->required();

  // experiment-density
  uint32_t d_k = 0, d_t = 0, d_vmin = 0, d_vmax = 0, d_step = 10;
  uint64_t d_trials = 0, d_fixed = 0;
  double d_beta = 2.0;
  unsigned d_threads = 1;
  std::string d_seed = "0", d_rule = "abort", d_out;
  auto* expd = app.add_subcommand("experiment-density",
                                  "mean greedy density over a v range");
  expd->add_option("--k", d_k, "block size")->required();
  expd->add_option("--t", d_t, "coverage order")->required();
  expd->add_option("--vmin", d_vmin, "smallest v")->required();
  expd->add_option("--vmax", d_vmax, "largest v")->required();
  expd->add_option("--step", d_step, "v increment (default 10)");
  expd->add_option("--trials", d_trials, "runs per v")->required();
  expd->add_option("--seed", d_seed, "u64 or 'random' (default 0)");
  expd->add_option("--threads", d_threads, "worker threads (default 1)");
  expd->add_option("--rule", d_rule, "abort | fixed | scan (default abort)");
  expd->add_option("--beta", d_beta, "abort-rule multiplier (default 2.0)");
  expd->add_option("--budget", d_fixed, "fixed-rule draw count");
  expd->add_option("--out", d_out, "CSV file (default stdout)");

  // experiment-tree
  double t_tau = 0.0;
  uint32_t t_D = 0;
  uint64_t t_trials = 0, t_max_nodes = 0;
  unsigned t_threads = 1;
  std::string t_seed = "0";
  auto* expt = app.add_subcommand("experiment-tree",
                                  "idealized branching-process estimate");
  expt->add_option("--tau", t_tau, "start time")->required();
  expt->add_option("--D", t_D, "children per k-vertex")->required();
  expt->add_option("--trials", t_trials, "Monte Carlo trials")->required();
  expt->add_option("--seed", t_seed, "u64 or 'random' (default 0)");
  expt->add_option("--max-nodes", t_max_nodes, "per-trial node cap");
  expt->add_option("--threads", t_threads, "worker threads (default 1)");

  // fit-alpha
  std::string f_file;
  uint32_t f_vlo = 0, f_vhi = 0;
  auto* fita = app.add_subcommand("fit-alpha",
                                  "decay exponent from an experiment CSV");
  fita->add_option("file", f_file, "experiment CSV")->required();
  fita->add_option("--vlo", f_vlo, "smallest v in the fit")->required();
  fita->add_option("--vhi", f_vhi, "largest v in the fit")->required();

  // clique-stat
  uint32_t c_v = 0, c_k = 0, c_t = 0;
  uint64_t c_trials = 1, c_budget = 0;
  std::string c_seed = "0", c_mode = "abort";
  auto* clique = app.add_subcommand("clique-stat",
                                    "uncovered-hypergraph clique statistic");
  clique->add_option("--v", c_v, "points")->required();
  clique->add_option("--k", c_k, "block size")->required();
  clique->add_option("--t", c_t, "coverage order")->required();
  clique->add_option("--trials", c_trials, "independent runs (default 1)");
  clique->add_option("--seed", c_seed, "u64 or 'random' (default 0)");
  clique->add_option("--budget", c_budget, "draw budget (0 = default rule)");
  clique->add_option("--mode", c_mode, "abort | scan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    std::cout << covgen_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    die(2, e.what());
  }

  if (*greedy) {
    const uint64_t seed = resolve_seed(g_seed);
    print_seed(seed);
    covgen_design* d = nullptr;
    covgen_greedy_stats stats{};
    check(covgen_greedy_cover(g_v, g_k, g_t, seed, g_budget,
                              parse_mode(g_mode), &d, &stats));
    std::cerr << "draws " << stats.draws_used << "\n"
              << "packed " << stats.blocks_from_packing << "\n"
              << "completed " << stats.blocks_from_completion << "\n";
    emit_design(d, g_out);
    covgen_design_free(d);
    return 0;
  }

  if (*induced) {
    const uint64_t seed = resolve_seed(i_seed);
    print_seed(seed);
    covgen_design* d = nullptr;
    covgen_induced_stats stats{};
    check(covgen_induced_cover(i_v, i_k, i_t, seed,
                               i_cache.empty() ? nullptr : i_cache.c_str(),
                               &d, &stats));
    std::cerr << "ell " << stats.ell << "\n"
              << "p " << stats.prime << "\n"
              << "hyperplanes " << stats.hyperplanes << "\n"
              << "trivial " << stats.trivial_hyperplanes << "\n";
    emit_design(d, i_out);
    covgen_design_free(d);
    return 0;
  }

  if (*ag) {
    covgen_design* d = nullptr;
    check(covgen_ag_covering(a_p, a_t, &d));
    emit_design(d, a_out);
    covgen_design_free(d);
    return 0;
  }

  if (*verify) {
    covgen_design* d = nullptr;
    check(covgen_design_read_file(v_file.c_str(), &d));
    covgen_verify_report report{};
    if (v_sample > 0) {
      const uint64_t seed = resolve_seed(v_seed);
      print_seed(seed);
      check(covgen_verify_sampled(d, v_sample, seed, &report));
    } else {
      check(covgen_verify_exhaustive(d, v_budget, &report));
    }
    covgen_design_free(d);
    std::cout << "exhaustive " << (report.exhaustive ? "yes" : "no") << "\n"
              << "checked " << report.checked << "\n"
              << "uncovered " << report.uncovered_total << "\n"
              << "covering " << (report.is_covering ? "yes" : "no") << "\n";
    return report.uncovered_total == 0 ? 0 : 1;
  }

  if (*bound) {
    uint64_t sch = 0, dlb = 0;
    check(covgen_schonheim_bound(b_v, b_k, b_t, &sch));
    check(covgen_density_lower_bound(b_v, b_k, b_t, &dlb));
    std::cout << "schonheim " << sch << "\n"
              << "density_lb " << dlb << "\n";
    return 0;
  }

  if (*expd) {
    if (d_step == 0) die(2, "--step must be >= 1");
    if (d_vmin > d_vmax) die(2, "--vmin must not exceed --vmax");
    const uint64_t seed = resolve_seed(d_seed);
    print_seed(seed);
    std::vector<uint32_t> vs;
    for (uint64_t v = d_vmin; v <= d_vmax; v += d_step)
      vs.push_back(static_cast<uint32_t>(v));
    covgen_budget_rule rule = COVGEN_RULE_EARLY_ABORT;
    if (d_rule == "abort")
      rule = COVGEN_RULE_EARLY_ABORT;
    else if (d_rule == "fixed")
      rule = COVGEN_RULE_FIXED;
    else if (d_rule == "scan")
      rule = COVGEN_RULE_SCAN;
    else
      die(2, "--rule must be 'abort', 'fixed' or 'scan'");
    char* csv = nullptr;
    check(covgen_density_experiment(d_k, d_t, vs.data(), vs.size(), d_trials,
                                    rule, d_beta, d_fixed, seed, d_threads,
                                    &csv));
    emit_text(csv, d_out);
    covgen_string_free(csv);
    return 0;
  }

  if (*expt) {
    const uint64_t seed = resolve_seed(t_seed);
    print_seed(seed);
    double estimate = 0.0, se = 0.0, closed = 0.0;
    check(covgen_tree_estimate(t_tau, t_D, t_trials, t_max_nodes, seed,
                               t_threads, &estimate, &se));
    check(covgen_p_tau(t_tau, t_D, &closed));
    std::cout << "estimate " << fmt(estimate) << "\n"
              << "stderr " << fmt(se) << "\n"
              << "p_tau " << fmt(closed) << "\n";
    return 0;
  }

  if (*fita) {
    const std::string csv = read_file(f_file);
    char* json = nullptr;
    check(covgen_fit_alpha_csv(csv.c_str(), f_vlo, f_vhi, &json));
    std::fputs(json, stdout);
    covgen_string_free(json);
    return 0;
  }

  if (*clique) {
    if (c_trials == 0) die(2, "--trials must be >= 1");
    const uint64_t seed = resolve_seed(c_seed);
    print_seed(seed);
    const covgen_greedy_mode mode = parse_mode(c_mode);
    uint64_t positive = 0, applicable_runs = 0;
    for (uint64_t i = 0; i < c_trials; ++i) {
      uint64_t uncovered = 0;
      int applicable = 0;
      double fraction = 0.0;
      check(covgen_clique_statistic(c_v, c_k, c_t, seed + i, c_budget, mode,
                                    &uncovered, &applicable, &fraction));
      std::cout << "trial " << i << " uncovered " << uncovered << " fraction "
                << (applicable ? fmt(fraction) : std::string("NA")) << "\n";
      if (applicable) {
        ++applicable_runs;
        if (fraction > 0.0) ++positive;
      }
    }
    std::cout << "positive " << positive << " of " << applicable_runs << "\n";
    return 0;
  }

  die(2, "no subcommand selected");
}
