// Random greedy covering: draw random k-sets, accept each one whose t-subsets
// are all still uncovered (a packing), then complete the remaining t-sets one
// block each.
//
// Two ways to realize the random ordering of k-sets:
//   iid_budgeted  — an i.i.d. uniform draw stream with an early-abort budget
//                   (default ceil(2 v^t ln v) draws). Duplicate draws are
//                   harmless: a repeat is never clean the second time. This is
//                   the O(v^t log v) regime and the default.
//   shuffled_scan — materialize all C(v,k) k-sets, Fisher-Yates shuffle them,
//                   and scan the permutation once. This runs the greedy to
//                   true saturation ("no clean k-set remains") and is what the
//                   density-scaling experiments need; it costs O(C(v,k)) time
//                   and memory and is gated accordingly.
#ifndef COVGEN_GREEDY_HPP
#define COVGEN_GREEDY_HPP

#include <utility>

#include "design.hpp"

namespace covgen {

enum class GreedyMode { iid_budgeted, shuffled_scan };

struct GreedyConfig {
  u64 seed = 0;
  u64 budget = 0;  // draw budget for iid_budgeted; 0 means default_budget()
  bool record_trajectory = false;  // log (draw index, covered_count) per draw
  GreedyMode mode = GreedyMode::iid_budgeted;
};

struct GreedyStats {
  u64 draws_used = 0;
  u64 blocks_from_packing = 0;
  u64 blocks_from_completion = 0;
  u64 uncovered_at_abort = 0;
  std::vector<std::pair<u64, u64>> trajectory;  // only when recorded
};

struct PackResult {
  std::vector<u32> blocks_flat;  // k entries per accepted block
  CoverageBitmap bitmap;
  GreedyStats stats;
};

// ceil(beta * v^t * ln v), clamped to >= 1. Overflow is reported.
u64 default_budget(DesignParams p, double beta = 2.0);

// Entry cap for the shuffled_scan table (C(v,k) must not exceed it).
inline constexpr u64 kMaxScanEntries = u64(1) << 27;

// Steps 1-3: the packing phase. Accepted blocks are pairwise t-set-disjoint.
PackResult greedy_pack(DesignParams p, const GreedyConfig& cfg);

// Step 4: for each still-uncovered t-set in colex order, add one block made
// of the t-set plus the k-t smallest points outside it. T-sets covered
// incidentally by an earlier completion block are skipped, so
// blocks_from_completion <= uncovered_at_abort.
CoveringDesign greedy_complete(const std::vector<u32>& packing_flat,
                               CoverageBitmap& bm, GreedyStats* stats);

// Pack, then complete. Deterministic given the seed.
std::pair<CoveringDesign, GreedyStats> greedy_cover(DesignParams p,
                                                    const GreedyConfig& cfg);

// Mean fraction of t-sets still uncovered after m = round(tau*C(v,t)/C(k,t))
// i.i.d. draws of the packing phase (the draw count that realizes Poisson
// time tau, since k-sets are chosen at total rate C(v,t)/C(k,t) per unit
// time). Compare against p_tau() from the analysis module.
struct TauFractionResult {
  double mean = 0.0;
  double std_error = 0.0;
  u64 draws_m = 0;
  u64 trials = 0;
};

TauFractionResult uncovered_fraction_at_tau(DesignParams p, double tau,
                                            u64 trials, u64 seed,
                                            unsigned threads = 1);

}  // namespace covgen

#endif  // COVGEN_GREEDY_HPP
