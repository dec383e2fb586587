#include "analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "parallel.hpp"
#include "rng.hpp"

namespace covgen {

double p_tau(double tau, u32 D) {
  if (!(tau >= 0.0)) throw std::invalid_argument("p_tau: tau must be >= 0");
  if (D < 1) throw std::invalid_argument("p_tau: D must be >= 1");
  return std::pow(tau * D + 1.0, -1.0 / D);
}

namespace {

struct TreeWalker {
  u32 D;
  u64 max_nodes;
  u64 nodes = 0;
  Rng rng;

  explicit TreeWalker(u32 d, u64 cap, u64 seed) : D(d), max_nodes(cap), rng(seed) {}

  void count_node() {
    if (++nodes > max_nodes) throw BudgetError("tree node budget exceeded");
  }

  // A t-vertex alive at time s: children arrive backwards from s with
  // unit-rate exponential gaps; covered iff some child k-vertex is accepted.
  bool t_uncovered(double s) {
    for (double tc = s - rng.exponential(); tc > 0; tc -= rng.exponential()) {
      count_node();
      if (k_accepted(tc)) return false;
    }
    return true;
  }

  // A k-vertex born at time s: accepted iff none of its D t-children
  // (evaluated at the same birth time) is covered.
  bool k_accepted(double s) {
    for (u32 i = 0; i < D; ++i) {
      count_node();
      if (!t_uncovered(s)) return false;
    }
    return true;
  }
};

}  // namespace

TreeEstimate simulate_idealized_tree(const IdealizedTreeConfig& cfg) {
  if (!(cfg.tau >= 0.0))
    throw std::invalid_argument("simulate_idealized_tree: tau must be >= 0");
  if (cfg.D < 1)
    throw std::invalid_argument("simulate_idealized_tree: D must be >= 1");
  if (cfg.trials < 1)
    throw std::invalid_argument("simulate_idealized_tree: trials must be >= 1");

  std::vector<unsigned char> uncovered =
      map_trials<unsigned char>(cfg.trials, cfg.threads, [&](u64 trial) {
        TreeWalker w(cfg.D, cfg.max_nodes, derive_stream(cfg.seed, trial));
        try {
          return static_cast<unsigned char>(w.t_uncovered(cfg.tau) ? 1 : 0);
        } catch (const BudgetError&) {
          throw BudgetError("idealized tree exceeded max_nodes in trial " +
                            std::to_string(trial));
        }
      });

  u64 hits = 0;
  for (const unsigned char u : uncovered) hits += u;
  TreeEstimate est;
  est.trials = cfg.trials;
  est.estimate = static_cast<double>(hits) / static_cast<double>(cfg.trials);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) /
                            static_cast<double>(cfg.trials));
  return est;
}

std::vector<ExperimentRow> density_experiment(u32 k, u32 t,
                                              const std::vector<u32>& v_list,
                                              u64 trials,
                                              const BudgetRule& rule, u64 seed,
                                              unsigned threads) {
  if (v_list.empty())
    throw std::invalid_argument("density_experiment: empty v list");
  if (trials < 1)
    throw std::invalid_argument("density_experiment: trials must be >= 1");
  if (rule.kind == BudgetRuleKind::early_abort && !(rule.beta > 0.0))
    throw std::invalid_argument("density_experiment: beta must be > 0");
  if (rule.kind == BudgetRuleKind::fixed && rule.fixed == 0)
    throw std::invalid_argument("density_experiment: fixed budget must be > 0");

  struct TrialOut {
    double density = 0.0;
    u64 blocks = 0;
  };

  std::vector<ExperimentRow> rows;
  rows.reserve(v_list.size());
  for (const u32 v : v_list) {
    const DesignParams p = make_params(v, k, t);
    GreedyConfig base;
    base.mode = rule.kind == BudgetRuleKind::scan ? GreedyMode::shuffled_scan
                                                  : GreedyMode::iid_budgeted;
    if (rule.kind == BudgetRuleKind::early_abort)
      base.budget = default_budget(p, rule.beta);
    else if (rule.kind == BudgetRuleKind::fixed)
      base.budget = rule.fixed;

    std::vector<TrialOut> outs =
        map_trials<TrialOut>(trials, threads, [&](u64 trial) {
          GreedyConfig cfg = base;
          cfg.seed = derive_stream(seed, (static_cast<u64>(v) << 32) | trial);
          auto [d, stats] = greedy_cover(p, cfg);
          (void)stats;
          return TrialOut{density(d).value, d.block_count()};
        });

    double mean = 0.0, mean_blocks = 0.0;
    for (const TrialOut& o : outs) {
      mean += o.density;
      mean_blocks += static_cast<double>(o.blocks);
    }
    mean /= static_cast<double>(trials);
    mean_blocks /= static_cast<double>(trials);
    double ss = 0.0;
    for (const TrialOut& o : outs) {
      const double dd = o.density - mean;
      ss += dd * dd;
    }
    const double se =
        trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1)) /
                         std::sqrt(static_cast<double>(trials))
                   : 0.0;

    ExperimentRow row;
    row.v = v;
    row.k = k;
    row.t = t;
    row.trials = trials;
    row.mean_density = mean;
    row.std_error = se;
    row.mean_blocks = mean_blocks;
    row.seed = seed;
    rows.push_back(row);
  }
  return rows;
}

namespace {

constexpr const char* kCsvHeader = "v,k,t,trials,mean_density,stderr,mean_blocks,seed";

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_field(const std::string& field, u64 line_no, const char* what) {
  T value{};
  const char* b = field.data();
  const char* e = b + field.size();
  std::from_chars_result res{};
  if constexpr (std::is_floating_point_v<T>)
    res = std::from_chars(b, e, value, std::chars_format::general);
  else
    res = std::from_chars(b, e, value);
  if (res.ec != std::errc() || res.ptr != e)
    throw ParseError(std::string("bad ") + what + " field: '" + field + "'",
                     line_no);
  return value;
}

}  // namespace

std::string experiment_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const ExperimentRow& r : rows) {
    out += std::to_string(r.v);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.t);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += fmt_double(r.mean_density);
    out += ',';
    out += fmt_double(r.std_error);
    out += ',';
    out += fmt_double(r.mean_blocks);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

std::vector<ExperimentRow> parse_experiment_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ParseError("experiment CSV must start with the exact header '" +
                         std::string(kCsvHeader) + "'",
                     1);
  std::vector<ExperimentRow> rows;
  u64 line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) throw ParseError("empty CSV row", line_no);
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    if (fields.size() != 8)
      throw ParseError("expected 8 comma-separated fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    ExperimentRow r;
    r.v = parse_field<u32>(fields[0], line_no, "v");
    r.k = parse_field<u32>(fields[1], line_no, "k");
    r.t = parse_field<u32>(fields[2], line_no, "t");
    r.trials = parse_field<u64>(fields[3], line_no, "trials");
    r.mean_density = parse_field<double>(fields[4], line_no, "mean_density");
    r.std_error = parse_field<double>(fields[5], line_no, "stderr");
    r.mean_blocks = parse_field<double>(fields[6], line_no, "mean_blocks");
    r.seed = parse_field<u64>(fields[7], line_no, "seed");
    rows.push_back(r);
  }
  return rows;
}

AlphaFit fit_alpha(const std::vector<ExperimentRow>& rows, u32 v_lo, u32 v_hi) {
  if (v_lo > v_hi) throw std::invalid_argument("fit_alpha: v_lo > v_hi");
  std::vector<double> xs, ys;
  AlphaFit fit;
  fit.v_lo = v_lo;
  fit.v_hi = v_hi;
  bool have_kt = false;
  for (const ExperimentRow& r : rows) {
    if (r.v < v_lo || r.v > v_hi) continue;
    if (!(r.mean_density > 1.0)) {
      ++fit.excluded;  // log(delta - 1) undefined; dropping avoids slope bias
      continue;
    }
    if (!have_kt) {
      fit.k = r.k;
      fit.t = r.t;
      have_kt = true;
    }
    xs.push_back(std::log(static_cast<double>(r.v)));
    ys.push_back(std::log(r.mean_density - 1.0));
  }
  const std::size_t n = xs.size();
  if (n < 3)
    throw std::invalid_argument(
        "fit_alpha: fewer than 3 usable points in range");

  double xbar = 0.0, ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(n);
  ybar /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_alpha: all points share one v");
  const double slope = sxy / sxx;
  const double intercept = ybar - slope * xbar;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = ys[i] - (intercept + slope * xs[i]);
    rss += resid * resid;
  }
  fit.alpha = -slope;
  fit.residual = std::sqrt(rss / static_cast<double>(n));
  fit.points_used = n;
  return fit;
}

std::string alpha_json(const AlphaFit& fit) {
  std::string out = "{\"k\":";
  out += std::to_string(fit.k);
  out += ",\"t\":";
  out += std::to_string(fit.t);
  out += ",\"alpha\":";
  out += fmt_double(fit.alpha);
  out += ",\"residual\":";
  out += fmt_double(fit.residual);
  out += ",\"v_lo\":";
  out += std::to_string(fit.v_lo);
  out += ",\"v_hi\":";
  out += std::to_string(fit.v_hi);
  out += "}\n";
  return out;
}

CliqueStat clique_statistic(DesignParams p, const GreedyConfig& cfg) {
  p = make_params(p.v, p.k, p.t);
  const u64 n_tsets = binomial(p.v, p.t);
  if (n_tsets > 50'000'000)
    throw BudgetError("clique_statistic: binomial(v,t) too large for the scan");

  PackResult pack = greedy_pack(p, cfg);
  const CoverageBitmap& bm = pack.bitmap;

  // Collect the uncovered t-sets (the edges of the uncovered hypergraph).
  std::vector<u64> uncovered_ranks;
  for (u64 r = 0; r < n_tsets; ++r) {
    if (!bm.test(r)) uncovered_ranks.push_back(r);
  }
  CliqueStat stat;
  stat.uncovered_count = uncovered_ranks.size();
  if (uncovered_ranks.empty()) return stat;  // not applicable
  stat.applicable = true;

  const u64 n_ext = binomial(p.v - p.t, p.k - p.t);
  const unsigned __int128 probes =
      static_cast<unsigned __int128>(uncovered_ranks.size()) * n_ext *
      binomial(p.k, p.t);
  if (probes > kCliqueProbeBudget)
    throw BudgetError("clique_statistic: k-superset scan exceeds the budget");

  std::vector<u32> tset(p.t), non_members, ext(p.k - p.t), idx(p.k - p.t),
      block(p.k);
  non_members.reserve(p.v - p.t);
  u64 in_no_clique = 0;
  for (const u64 rank : uncovered_ranks) {
    tset = bm.unrank_tset(rank);
    bool found = false;
    if (p.k == p.t) {
      found = true;  // the t-set itself is an uncovered k-set
    } else {
      non_members.clear();
      u32 ti = 0;
      for (u32 x = 0; x < p.v; ++x) {
        if (ti < p.t && tset[ti] == x) {
          ++ti;
          continue;
        }
        non_members.push_back(x);
      }
      for (u32 i = 0; i < p.k - p.t; ++i) idx[i] = i;
      do {
        for (u32 i = 0; i < p.k - p.t; ++i) ext[i] = non_members[idx[i]];
        std::merge(tset.begin(), tset.end(), ext.begin(), ext.end(),
                   block.begin());
        if (bm.block_is_clean(block.data())) {
          found = true;
          break;
        }
      } while (next_combination(idx, p.v - p.t));
    }
    if (!found) ++in_no_clique;
  }
  stat.fraction = static_cast<double>(in_no_clique) /
                  static_cast<double>(uncovered_ranks.size());
  return stat;
}

}  // namespace covgen
