// Affine geometry over GF(p) and the induced-covering construction.
//
// AG(t,p) has p^t points, identified with vectors in GF(p)^t; point index
// n encodes coordinates x_i = (n / p^i) mod p. Hyperplanes are the solution
// sets {x : d.x = b} with the direction d normalized to first nonzero
// coordinate = 1, giving (p^t-1)/(p-1) directions times p offsets =
// (p^{t+1}-p)/(p-1) hyperplanes of p^{t-1} points each. Any t points lie on
// at least one hyperplane, so the hyperplanes form a (p^t, p^{t-1}, t)
// covering, and intersecting them with a random v-subset of the points and
// replacing each intersection by a small precomputed covering yields a
// (v,k,t) covering.
#ifndef COVGEN_GEOMETRY_HPP
#define COVGEN_GEOMETRY_HPP

#include <map>
#include <string>
#include <utility>

#include "design.hpp"

namespace covgen {

bool is_prime(u64 n);
// Primes in [lo, hi], both endpoints included.
std::vector<u64> primes_in(u64 lo, u64 hi);

// The hyperplane covering of AG(t,p); blocks enumerated direction-major
// (lead position, then lexicographic free coordinates), offset-minor.
CoveringDesign ag_hyperplane_covering(u32 p, u32 t);

// Parameters of the induced construction for a (v,k,t) target:
//   ell = ceil(v^{1-1/t}/9), evaluated exactly as the smallest ell with
//         (9*ell)^t >= v^{t-1};
//   p   = smallest prime with 4*ell*p <= v-t <= 8*ell*p and p^t > v.
struct InducedConfig {
  u32 ell = 0;
  u64 p = 0;
  u64 precompute_trials = 0;  // 0: use the ceil(log2 ell')+1 rule
  u64 seed = 0;
};

InducedConfig select_induced_params(DesignParams dp);

// Verified small coverings keyed by ground-set size ell'.
class SmallCoverCache {
 public:
  bool contains(u32 ellprime) const { return entries_.count(ellprime) != 0; }
  const CoveringDesign& at(u32 ellprime) const;
  void put(u32 ellprime, CoveringDesign d);
  const std::map<u32, CoveringDesign>& entries() const { return entries_; }

 private:
  std::map<u32, CoveringDesign> entries_;
};

// For each ell' in the open range (ell, 9*ell) with ell' >= max(k,t): run
// ceil(log2 ell')+1 greedy_cover trials (or trials_override when nonzero) and
// keep the smallest exhaustively verified design.
SmallCoverCache precompute_small_covers(u32 k, u32 t, u32 ell, u64 seed,
                                        u64 trials_override = 0);

// Directory persistence; files are named ellprime-<ell'>_k<k>_t<t>.cov in the
// design file format. load returns the number of entries accepted (files that
// are unreadable, mismatched, or fail verification are skipped).
void save_cache_dir(const SmallCoverCache& cache, const std::string& dir,
                    u32 k, u32 t);
u32 load_cache_dir(SmallCoverCache& cache, const std::string& dir, u32 k,
                   u32 t);

struct InducedStats {
  u32 ell = 0;
  u64 prime = 0;
  u64 hyperplanes = 0;          // total enumerated
  u64 trivial_hyperplanes = 0;  // took the one-block-per-t-subset path
  std::map<u32, u64> ellprime_histogram;
};

// Algorithm: embed v random distinct points into AG(t,p); for each hyperplane
// H with S = H cap V and ell' = |S|: if ell < ell' < 9*ell and
// ell' >= max(k,t), relabel the cached (ell',k,t) covering onto S (positional
// map, both sides ascending); otherwise emit one block per t-subset of S,
// padded with the smallest points of V outside the t-set.
std::pair<CoveringDesign, InducedStats> induced_cover(
    DesignParams dp, const SmallCoverCache& cache, const InducedConfig& cfg);

}  // namespace covgen

#endif  // COVGEN_GEOMETRY_HPP
