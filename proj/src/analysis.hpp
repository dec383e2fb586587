// Quantitative estimators layered on the greedy machinery: the closed-form
// survival law P(tau) = (tau*D + 1)^{-1/D} for the idealized branching
// process, a Monte Carlo simulation of that process (exact exponential
// inter-arrival gaps, depth-first, no time discretization), density
// experiments over a list of v values with their CSV round trip, the
// log-log least-squares fit extracting the decay exponent alpha, and the
// k-clique statistic of the uncovered hypergraph left behind by an aborted
// packing run.
//
// Determinism: every randomized estimator derives one rng stream per trial
// from the master seed (derive_stream in rng.hpp), so results are identical
// for any thread count.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "design.hpp"
#include "errors.hpp"
#include "greedy.hpp"

namespace covgen {

// (tau*D + 1)^{-1/D}; the unique solution of P' = -P^{D+1}, P(0) = 1.
double p_tau(double tau, u32 D);

struct IdealizedTreeConfig {
  double tau = 1.0;  // process start time; >= 0
  u32 D = 2;         // children per k-vertex; binomial(k,t) - 1 in a design
  u64 trials = 10000;
  u64 max_nodes = 10'000'000;  // explosion guard, per trial
  u64 seed = 0;
  unsigned threads = 1;
};

struct TreeEstimate {
  double estimate = 0.0;   // fraction of trials with uncovered root
  double std_error = 0.0;  // Bernoulli standard error
  u64 trials = 0;
};

// Grows the root t-vertex's tree backwards from tau: a t-vertex alive at
// time s spawns k-vertex children at the points of a unit-rate Poisson
// process on (0,s); each k-vertex spawns D t-children at its birth time.
// Leaves are uncovered; a k-vertex is accepted iff no child is covered; a
// t-vertex is covered iff some child is accepted. A trial whose node count
// exceeds max_nodes raises BudgetError (aborting, never truncating).
TreeEstimate simulate_idealized_tree(const IdealizedTreeConfig& cfg);

// How many draws each greedy run in a density experiment gets.
enum class BudgetRuleKind {
  early_abort,  // ceil(beta * v^t * ln v) i.i.d. draws, then Step 4
  fixed,        // exactly `fixed` i.i.d. draws, then Step 4
  scan,         // one pass over all binomial(v,k) blocks in random order
};

struct BudgetRule {
  BudgetRuleKind kind = BudgetRuleKind::early_abort;
  double beta = 2.0;  // early_abort multiplier
  u64 fixed = 0;      // fixed-rule draw count (required > 0 for that rule)
};

struct ExperimentRow {
  u32 v = 0;
  u32 k = 0;
  u32 t = 0;
  u64 trials = 0;
  double mean_density = 0.0;
  double std_error = 0.0;
  double mean_blocks = 0.0;
  u64 seed = 0;  // master seed of the experiment, repeated per row
};

// For each v in v_list runs `trials` independent greedy_cover runs and
// aggregates the density. Trial seeds are derive_stream(seed, v<<32 | i),
// so rows are reproducible individually and independent of thread count.
std::vector<ExperimentRow> density_experiment(u32 k, u32 t,
                                              const std::vector<u32>& v_list,
                                              u64 trials,
                                              const BudgetRule& rule, u64 seed,
                                              unsigned threads = 1);

// CSV with the exact header
//   v,k,t,trials,mean_density,stderr,mean_blocks,seed
// one row per v, shortest round-trip formatting for the real columns.
std::string experiment_csv(const std::vector<ExperimentRow>& rows);
std::vector<ExperimentRow> parse_experiment_csv(const std::string& text);

struct AlphaFit {
  u32 k = 0;
  u32 t = 0;
  double alpha = 0.0;     // negated slope of ln(delta-1) against ln v
  double residual = 0.0;  // RMS residual of the fit
  u32 v_lo = 0;
  u32 v_hi = 0;
  u64 points_used = 0;
  u64 excluded = 0;  // rows inside the range dropped because delta <= 1
};

// Ordinary least squares of ln(mean_density - 1) against ln v over the rows
// with v_lo <= v <= v_hi. Rows with mean_density <= 1 are excluded (the log
// is undefined; clamping would bias the slope). Fewer than 3 usable points
// raises std::invalid_argument.
AlphaFit fit_alpha(const std::vector<ExperimentRow>& rows, u32 v_lo, u32 v_hi);

// {"k":K,"t":T,"alpha":A,"residual":R,"v_lo":L,"v_hi":H} plus newline.
std::string alpha_json(const AlphaFit& fit);

struct CliqueStat {
  u64 uncovered_count = 0;  // t-sets left uncovered by the packing
  bool applicable = false;  // false when nothing is uncovered
  double fraction = 0.0;    // uncovered t-sets contained in no k-clique
};

// Work cap for the k-superset scan below.
inline constexpr u64 kCliqueProbeBudget = 1'000'000'000;

// Runs greedy_pack under cfg, forms the t-uniform hypergraph of uncovered
// t-sets, and reports the fraction of them contained in no k-clique — a
// k-set all binomial(k,t) of whose t-subsets are uncovered. Such t-sets can
// never be packed and must be handled by the completion step. The scan is
// exhaustive; parameters implying more than kCliqueProbeBudget bitmap
// probes raise BudgetError.
CliqueStat clique_statistic(DesignParams p, const GreedyConfig& cfg);

}  // namespace covgen
