#include "greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace covgen {

u64 default_budget(DesignParams p, double beta) {
  make_params(p.v, p.k, p.t);
  if (!(beta > 0.0)) throw std::invalid_argument("default_budget: beta must be positive");
  unsigned __int128 pow_vt = 1;
  for (u32 i = 0; i < p.t; ++i) {
    pow_vt *= p.v;
    if (pow_vt > std::numeric_limits<u64>::max())
      throw std::overflow_error("default_budget: v^t exceeds 64 bits");
  }
  const long double raw = static_cast<long double>(beta) *
                          static_cast<long double>(pow_vt) *
                          std::log(static_cast<long double>(p.v));
  if (raw >= static_cast<long double>(std::numeric_limits<u64>::max()))
    throw std::overflow_error("default_budget: budget exceeds 64 bits");
  const u64 budget = static_cast<u64>(std::ceil(raw));
  return budget < 1 ? 1 : budget;
}

namespace {

// Cached colex enumeration of all C(v,k) k-sets for scan mode, built once per
// (v,k) per thread. Entries are byte-packed blocks when they fit in a word
// (v <= 256, k <= 8), plain colex ranks otherwise. Each run copies the master
// into a working array before shuffling, so results depend only on the seed,
// never on what ran earlier on this thread.
struct ScanTable {
  u32 v = 0;
  u32 k = 0;
  bool packed = false;
  std::vector<u64> master;
};

thread_local ScanTable tl_scan_table;
thread_local std::vector<u64> tl_scan_working;

u64 scan_entry_count(DesignParams p) {
  u64 count;
  try {
    count = binomial(p.v, p.k);
  } catch (const std::overflow_error&) {
    throw BudgetError("shuffled_scan: C(v,k) exceeds 64 bits");
  }
  if (count > kMaxScanEntries)
    throw BudgetError("shuffled_scan: C(v,k) = " + std::to_string(count) +
                      " exceeds the scan table limit of " +
                      std::to_string(kMaxScanEntries) +
                      " entries; use iid_budgeted mode");
  return count;
}

void build_scan_table(DesignParams p, u64 count) {
  ScanTable& tab = tl_scan_table;
  if (tab.v == p.v && tab.k == p.k) return;
  tab.v = p.v;
  tab.k = p.k;
  tab.packed = p.v <= 256 && p.k <= 8;
  tab.master.clear();
  tab.master.reserve(count);
  if (tab.packed) {
    std::vector<u32> idx(p.k);
    for (u32 i = 0; i < p.k; ++i) idx[i] = i;
    do {
      u64 entry = 0;
      for (u32 i = 0; i < p.k; ++i) entry |= static_cast<u64>(idx[i]) << (8 * i);
      tab.master.push_back(entry);
    } while (next_combination(idx, p.v));
  } else {
    for (u64 r = 0; r < count; ++r) tab.master.push_back(r);
  }
}

// Unrank helper for the non-packed scan path; `tab` must cover C(x,j) up to
// j = r.
void unrank_with_table(u64 rank, u32 r, u32 v, const BinomTable& tab,
                       u32* out) {
  for (u32 pos = r; pos > 0; --pos) {
    u32 lo = pos - 1, hi = v - 1;
    while (lo < hi) {
      const u32 mid = lo + (hi - lo + 1) / 2;
      if (tab.raw(mid, pos) <= rank)
        lo = mid;
      else
        hi = mid - 1;
    }
    out[pos - 1] = lo;
    rank -= tab.raw(lo, pos);
  }
}

}  // namespace

PackResult greedy_pack(DesignParams p, const GreedyConfig& cfg) {
  p = make_params(p.v, p.k, p.t);
  PackResult res{std::vector<u32>{}, CoverageBitmap(p), GreedyStats{}};
  CoverageBitmap& bm = res.bitmap;
  GreedyStats& st = res.stats;
  Rng rng(cfg.seed);
  std::vector<u32> buf(p.k);

  auto try_block = [&](const u32* block) {
    if (bm.block_is_clean(block)) {
      bm.mark_block(block);
      res.blocks_flat.insert(res.blocks_flat.end(), block, block + p.k);
      ++st.blocks_from_packing;
    }
  };

  if (cfg.mode == GreedyMode::iid_budgeted) {
    const u64 budget = cfg.budget ? cfg.budget : default_budget(p);
    for (u64 draw = 1; draw <= budget; ++draw) {
      if (bm.covered_count() == bm.total_bits()) break;
      random_k_subset_into(p.v, p.k, rng, buf.data());
      st.draws_used = draw;
      try_block(buf.data());
      if (cfg.record_trajectory)
        st.trajectory.emplace_back(draw, bm.covered_count());
    }
  } else {
    const u64 count = scan_entry_count(p);
    build_scan_table(p, count);
    const ScanTable& tab = tl_scan_table;
    std::vector<u64>& work = tl_scan_working;
    work.assign(tab.master.begin(), tab.master.end());
    for (u64 i = count - 1; i > 0; --i)
      std::swap(work[i], work[rng.below(i + 1)]);

    // Only needed on the unranked path; r_max = k.
    const BinomTable* unrank_tab = nullptr;
    BinomTable full_tab(1, 1);
    if (!tab.packed) {
      full_tab = BinomTable(p.v, p.k);
      unrank_tab = &full_tab;
    }

    for (u64 pos = 0; pos < count; ++pos) {
      if (bm.covered_count() == bm.total_bits()) break;
      const u64 entry = work[pos];
      if (tab.packed) {
        for (u32 i = 0; i < p.k; ++i)
          buf[i] = static_cast<u32>((entry >> (8 * i)) & 0xff);
      } else {
        unrank_with_table(entry, p.k, p.v, *unrank_tab, buf.data());
      }
      st.draws_used = pos + 1;
      try_block(buf.data());
      if (cfg.record_trajectory)
        st.trajectory.emplace_back(pos + 1, bm.covered_count());
    }
  }

  st.uncovered_at_abort = bm.total_bits() - bm.covered_count();
  return res;
}

CoveringDesign greedy_complete(const std::vector<u32>& packing_flat,
                               CoverageBitmap& bm, GreedyStats* stats) {
  const DesignParams p = bm.params();
  CoveringDesign d(p);
  const u64 packing_blocks = packing_flat.size() / p.k;
  d.reserve_blocks(packing_blocks + (bm.total_bits() - bm.covered_count()));
  for (u64 i = 0; i < packing_blocks; ++i)
    d.add_block(packing_flat.data() + i * p.k, p.k);

  std::vector<u32> fills(p.k - p.t);
  std::vector<u32> block(p.k);
  for (u64 rank = 0; rank < bm.total_bits(); ++rank) {
    if (bm.test(rank)) continue;  // covered, possibly by an earlier completion
    const std::vector<u32> tset = bm.unrank_tset(rank);
    // Extension rule: the k-t smallest points not in the t-set.
    u32 next = 0, ti = 0;
    for (u32 need = 0; need < p.k - p.t; ++next) {
      while (ti < p.t && tset[ti] < next) ++ti;
      if (ti < p.t && tset[ti] == next) continue;
      fills[need++] = next;
    }
    std::merge(tset.begin(), tset.end(), fills.begin(),
               fills.begin() + (p.k - p.t), block.begin());
    bm.mark_block(block.data());
    d.add_block(block);
    if (stats) ++stats->blocks_from_completion;
  }
  return d;
}

std::pair<CoveringDesign, GreedyStats> greedy_cover(DesignParams p,
                                                    const GreedyConfig& cfg) {
  PackResult pack = greedy_pack(p, cfg);
  CoveringDesign d = greedy_complete(pack.blocks_flat, pack.bitmap, &pack.stats);
  return {std::move(d), std::move(pack.stats)};
}

TauFractionResult uncovered_fraction_at_tau(DesignParams p, double tau,
                                            u64 trials, u64 seed,
                                            unsigned threads) {
  p = make_params(p.v, p.k, p.t);
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be >= 0");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  // m draws realize time tau: k-sets arrive at total rate C(v,t)/C(k,t).
  const long double rate = static_cast<long double>(binomial(p.v, p.t)) /
                           static_cast<long double>(binomial(p.k, p.t));
  const long double m_real = static_cast<long double>(tau) * rate;
  if (m_real >= static_cast<long double>(std::numeric_limits<u64>::max()))
    throw std::overflow_error("uncovered_fraction_at_tau: draw count overflows");
  const u64 m = static_cast<u64>(std::llround(m_real));

  TauFractionResult out;
  out.draws_m = m;
  out.trials = trials;
  if (m == 0) {
    out.mean = 1.0;
    out.std_error = 0.0;
    return out;
  }

  const std::vector<double> fractions =
      map_trials<double>(trials, threads, [&](u64 trial) {
        GreedyConfig cfg;
        cfg.seed = derive_stream(seed, trial);
        cfg.budget = m;
        cfg.mode = GreedyMode::iid_budgeted;
        const PackResult pack = greedy_pack(p, cfg);
        return static_cast<double>(
            static_cast<long double>(pack.stats.uncovered_at_abort) /
            static_cast<long double>(pack.bitmap.total_bits()));
      });

  long double sum = 0.0;
  for (const double f : fractions) sum += f;
  const long double mean = sum / trials;
  long double ss = 0.0;
  for (const double f : fractions) ss += (f - mean) * (f - mean);
  out.mean = static_cast<double>(mean);
  out.std_error =
      trials > 1
          ? static_cast<double>(std::sqrt(ss / (trials - 1) / trials))
          : 0.0;
  return out;
}

}  // namespace covgen
