#include "geometry.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "bounds.hpp"
#include "greedy.hpp"

namespace covgen {

namespace {

constexpr u64 kU64Max = std::numeric_limits<u64>::max();

// p^e with overflow reporting (128-bit intermediates).
unsigned __int128 pow_u128(u64 base, u32 exp) {
  unsigned __int128 acc = 1;
  for (u32 i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > (static_cast<unsigned __int128>(1) << 100))
      throw std::overflow_error("power exceeds the supported range");
  }
  return acc;
}

// Enumerates normalized directions of GF(p)^t (first nonzero coordinate = 1):
// lead position ascending, free suffix in lexicographic order. Calls
// fn(d) with d of length t for each of the (p^t-1)/(p-1) directions.
template <typename Fn>
void for_each_direction(u64 p, u32 t, Fn&& fn) {
  std::vector<u64> d(t);
  for (u32 lead = 0; lead < t; ++lead) {
    std::fill(d.begin(), d.end(), 0);
    d[lead] = 1;
    // Odometer over the free positions lead+1..t-1, last position fastest.
    while (true) {
      fn(d);
      u32 pos = t;
      bool exhausted = true;
      while (pos > lead + 1) {
        --pos;
        if (++d[pos] < p) {
          exhausted = false;
          break;
        }
        d[pos] = 0;
      }
      if (exhausted) break;
    }
  }
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (u64 f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n <= hi && n >= lo; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

CoveringDesign ag_hyperplane_covering(u32 p, u32 t) {
  if (!is_prime(p)) throw std::invalid_argument("ag_hyperplane_covering: p must be prime");
  if (t < 2) throw std::invalid_argument("ag_hyperplane_covering: t must be >= 2");
  const unsigned __int128 v_wide = pow_u128(p, t);
  if (v_wide > std::numeric_limits<u32>::max())
    throw BudgetError("ag_hyperplane_covering: p^t exceeds the point budget");
  const u32 v = static_cast<u32>(v_wide);
  const u32 k = v / p;  // p^{t-1}
  const u64 n_dirs = (static_cast<u64>(v) - 1) / (p - 1);
  const u64 n_blocks = n_dirs * p;
  if (n_blocks * static_cast<u64>(k) > 100'000'000)
    throw BudgetError("ag_hyperplane_covering: block storage exceeds the budget");

  // Base-p digits of every point index.
  std::vector<u32> digits(static_cast<std::size_t>(v) * t);
  for (u32 n = 0; n < v; ++n) {
    u32 rest = n;
    for (u32 i = 0; i < t; ++i) {
      digits[static_cast<std::size_t>(n) * t + i] = rest % p;
      rest /= p;
    }
  }

  CoveringDesign d(make_params(v, k, t));
  d.reserve_blocks(n_blocks);
  std::vector<std::vector<u32>> buckets(p);
  u64 dirs_seen = 0;
  for_each_direction(p, t, [&](const std::vector<u64>& dir) {
    ++dirs_seen;
    for (auto& b : buckets) b.clear();
    for (u32 n = 0; n < v; ++n) {
      u64 dot = 0;
      const u32* dig = &digits[static_cast<std::size_t>(n) * t];
      for (u32 i = 0; i < t; ++i) dot += dir[i] * dig[i];
      buckets[dot % p].push_back(n);
    }
    for (u32 b = 0; b < p; ++b) d.add_block(buckets[b]);
  });
  if (dirs_seen != n_dirs)
    throw std::logic_error("direction enumeration mismatch");
  return d;
}

InducedConfig select_induced_params(DesignParams dp) {
  dp = make_params(dp.v, dp.k, dp.t);
  if (dp.t < 2)
    throw std::invalid_argument(
        "induced construction requires t >= 2; use greedy instead");
  if (dp.v <= dp.t)
    throw std::invalid_argument("v too small; use greedy instead");

  // ell = ceil(v^{1-1/t}/9), exactly: smallest ell with (9 ell)^t >= v^{t-1}.
  const unsigned __int128 v_pow = pow_u128(dp.v, dp.t - 1);
  u32 ell = 1;
  while (pow_u128(9 * static_cast<u64>(ell), dp.t) < v_pow) ++ell;

  // The Bertrand interval 4*ell*p <= v-t <= 8*ell*p, as integer bounds on p.
  const u64 span = dp.v - dp.t;
  const u64 lo = ceil_div(span, 8 * static_cast<u64>(ell));
  const u64 hi = span / (4 * static_cast<u64>(ell));
  if (lo > hi || hi < 2)
    throw std::invalid_argument(
        "no prime interval for these parameters; use greedy instead");
  u64 prime = 0;
  for (const u64 q : primes_in(lo < 2 ? 2 : lo, hi)) {
    if (pow_u128(q, dp.t) > dp.v) {
      prime = q;
      break;
    }
  }
  if (prime == 0)
    throw std::invalid_argument(
        "no usable prime in the interval; use greedy instead");

  // The relabeling step needs at least one cacheable intersection size.
  if (9 * static_cast<u64>(ell) - 1 < std::max(dp.k, dp.t))
    throw std::invalid_argument(
        "no ell' >= k below 9*ell; use greedy instead");

  InducedConfig cfg;
  cfg.ell = ell;
  cfg.p = prime;
  return cfg;
}

const CoveringDesign& SmallCoverCache::at(u32 ellprime) const {
  const auto it = entries_.find(ellprime);
  if (it == entries_.end())
    throw CacheMissError("small-cover cache miss for ell' = " +
                         std::to_string(ellprime));
  return it->second;
}

void SmallCoverCache::put(u32 ellprime, CoveringDesign d) {
  if (d.params().v != ellprime)
    throw std::invalid_argument("cache entry ground-set size mismatch");
  entries_.insert_or_assign(ellprime, std::move(d));
}

SmallCoverCache precompute_small_covers(u32 k, u32 t, u32 ell, u64 seed,
                                        u64 trials_override) {
  if (ell < 1) throw std::invalid_argument("precompute_small_covers: ell >= 1");
  SmallCoverCache cache;
  const u32 first = std::max(ell + 1, std::max(k, t));
  const u64 last = 9 * static_cast<u64>(ell) - 1;  // open upper end 9*ell
  for (u64 ellp = first; ellp <= last; ++ellp) {
    const u64 trials =
        trials_override ? trials_override
                        : std::bit_width(static_cast<u64>(ellp - 1)) + 1;
    const u64 ellp_seed = derive_stream(seed, ellp);
    bool have_best = false;
    CoveringDesign best(make_params(1, 1, 1));
    for (u64 trial = 0; trial < trials; ++trial) {
      GreedyConfig cfg;
      cfg.seed = derive_stream(ellp_seed, trial);
      CoveringDesign d =
          greedy_cover(make_params(static_cast<u32>(ellp), k, t), cfg).first;
      if (!verify_exhaustive(d).is_covering) continue;  // contract guard
      if (!have_best || d.block_count() < best.block_count()) {
        best = std::move(d);
        have_best = true;
      }
    }
    if (!have_best)
      throw std::logic_error("greedy produced no verified covering for ell' = " +
                             std::to_string(ellp));
    cache.put(static_cast<u32>(ellp), std::move(best));
  }
  return cache;
}

namespace {

std::string cache_file_name(u32 ellprime, u32 k, u32 t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "ellprime-%u_k%u_t%u.cov", ellprime, k, t);
  return buf;
}

// Parses "ellprime-<n>_k<k>_t<t>.cov"; returns false on any mismatch.
bool parse_cache_file_name(const std::string& name, u32& ellprime, u32& k,
                           u32& t) {
  unsigned np = 0, nk = 0, nt = 0;
  int consumed = 0;
  if (std::sscanf(name.c_str(), "ellprime-%u_k%u_t%u.cov%n", &np, &nk, &nt,
                  &consumed) != 3)
    return false;
  if (static_cast<std::size_t>(consumed) != name.size()) return false;
  ellprime = np;
  k = nk;
  t = nt;
  return true;
}

}  // namespace

void save_cache_dir(const SmallCoverCache& cache, const std::string& dir,
                    u32 k, u32 t) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create cache directory: " + dir);
  for (const auto& [ellp, design] : cache.entries()) {
    write_design_file(design,
                      (std::filesystem::path(dir) / cache_file_name(ellp, k, t))
                          .string());
  }
}

u32 load_cache_dir(SmallCoverCache& cache, const std::string& dir, u32 k,
                   u32 t) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return 0;
  u32 loaded = 0;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    u32 ellp = 0, fk = 0, ft = 0;
    if (!parse_cache_file_name(path.filename().string(), ellp, fk, ft)) continue;
    if (fk != k || ft != t) continue;
    try {
      CoveringDesign d = read_design_file(path.string());
      if (d.params().v != ellp || d.params().k != k || d.params().t != t)
        continue;
      if (!verify_exhaustive(d).is_covering) continue;
      cache.put(ellp, std::move(d));
      ++loaded;
    } catch (const std::exception&) {
      continue;  // unreadable or malformed entries are rebuilt by the caller
    }
  }
  return loaded;
}

std::pair<CoveringDesign, InducedStats> induced_cover(
    DesignParams dp, const SmallCoverCache& cache, const InducedConfig& cfg) {
  dp = make_params(dp.v, dp.k, dp.t);
  if (cfg.ell < 1) throw std::invalid_argument("induced_cover: ell >= 1 required");
  if (!is_prime(cfg.p)) throw std::invalid_argument("induced_cover: p must be prime");
  const u64 span = dp.v - dp.t;
  if (!(4 * static_cast<u64>(cfg.ell) * cfg.p <= span &&
        span <= 8 * static_cast<u64>(cfg.ell) * cfg.p))
    throw std::invalid_argument(
        "induced_cover: p violates 4*ell*p <= v-t <= 8*ell*p");
  const unsigned __int128 pt_wide = pow_u128(cfg.p, dp.t);
  if (!(pt_wide > dp.v))
    throw std::invalid_argument("induced_cover: p^t > v required");
  if (pt_wide > kU64Max)
    throw BudgetError("induced_cover: p^t exceeds 64 bits");
  const u64 point_space = static_cast<u64>(pt_wide);

  const u64 n_dirs = static_cast<u64>((pt_wide - 1) / (cfg.p - 1));
  if (static_cast<unsigned __int128>(n_dirs) * dp.v > 2'000'000'000)
    throw BudgetError("induced_cover: point-direction product exceeds the budget");

  // Embed V: v distinct random points of GF(p)^t, kept in ascending code
  // order; design point i is the i-th smallest sampled code.
  Rng rng(derive_stream(cfg.seed, 0));
  std::unordered_set<u64> seen;
  seen.reserve(dp.v * 2);
  std::vector<u64> codes;
  codes.reserve(dp.v);
  while (codes.size() < dp.v) {
    const u64 code = rng.below(point_space);
    if (seen.insert(code).second) codes.push_back(code);
  }
  std::sort(codes.begin(), codes.end());

  // Base-p digits of every embedded point.
  std::vector<u64> digits(static_cast<std::size_t>(dp.v) * dp.t);
  for (u32 i = 0; i < dp.v; ++i) {
    u64 rest = codes[i];
    for (u32 j = 0; j < dp.t; ++j) {
      digits[static_cast<std::size_t>(i) * dp.t + j] = rest % cfg.p;
      rest /= cfg.p;
    }
  }

  CoveringDesign out(dp);
  InducedStats stats;
  stats.ell = cfg.ell;
  stats.prime = cfg.p;
  const u32 cache_floor = std::max(dp.k, dp.t);
  const u64 nine_ell = 9 * static_cast<u64>(cfg.ell);

  // Padding rule shared with greedy completion: t-subset plus the smallest
  // points of V outside it.
  std::vector<u32> fills(dp.k - dp.t);
  std::vector<u32> block(dp.k);
  std::vector<u32> tset(dp.t);
  auto emit_padded = [&](const u32* ts) {
    u32 next = 0, ti = 0;
    for (u32 need = 0; need < dp.k - dp.t; ++next) {
      while (ti < dp.t && ts[ti] < next) ++ti;
      if (ti < dp.t && ts[ti] == next) continue;
      fills[need++] = next;
    }
    std::merge(ts, ts + dp.t, fills.begin(), fills.begin() + (dp.k - dp.t),
               block.begin());
    out.add_block(block);
  };

  std::vector<std::vector<u32>> buckets(cfg.p);
  for_each_direction(cfg.p, dp.t, [&](const std::vector<u64>& dir) {
    for (auto& b : buckets) b.clear();
    for (u32 i = 0; i < dp.v; ++i) {
      u64 dot = 0;
      const u64* dig = &digits[static_cast<std::size_t>(i) * dp.t];
      for (u32 j = 0; j < dp.t; ++j) dot = (dot + dir[j] * dig[j]) % cfg.p;
      buckets[dot].push_back(i);
    }
    for (u64 b = 0; b < cfg.p; ++b) {
      const std::vector<u32>& S = buckets[b];
      const u32 ellp = static_cast<u32>(S.size());
      ++stats.hyperplanes;
      ++stats.ellprime_histogram[ellp];
      if (ellp > cfg.ell && ellp < nine_ell && ellp >= cache_floor) {
        const CoveringDesign& small = cache.at(ellp);
        const u64 nb = small.block_count();
        for (u64 bi = 0; bi < nb; ++bi) {
          const u32* sb = small.block(bi);
          for (u32 j = 0; j < dp.k; ++j) block[j] = S[sb[j]];
          out.add_block(block);
        }
      } else if (ellp >= dp.t) {
        ++stats.trivial_hyperplanes;
        std::vector<u32> idx(dp.t);
        for (u32 j = 0; j < dp.t; ++j) idx[j] = j;
        do {
          for (u32 j = 0; j < dp.t; ++j) tset[j] = S[idx[j]];
          emit_padded(tset.data());
        } while (next_combination(idx, ellp));
      }
      // ellp < t: the intersection contains no t-subset, nothing to emit.
    }
  });
  return {std::move(out), std::move(stats)};
}

}  // namespace covgen
