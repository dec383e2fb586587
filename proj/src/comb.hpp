// Exact integer combinatorics: binomials, colexicographic subset ranking,
// uniform random k-subsets, and t-subset enumeration within a block.
//
// Colex order compares the largest differing element, so the rank of a subset
// is sum_i C(s[i], i+1) (0-based positions) and does not depend on the ambient
// ground-set size. That is what lets one bitmap index t-subsets of {0..v-1}
// and of an individual block with the same formula.
#ifndef COVGEN_COMB_HPP
#define COVGEN_COMB_HPP

#include <cstdint>
#include <vector>

#include "rng.hpp"

namespace covgen {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

inline u64 ceil_div(u64 a, u64 b) { return a / b + (a % b != 0); }

// Exact C(n,r); 0 when r > n. Throws std::overflow_error when the value does
// not fit in 64 bits (never wraps silently).
u64 binomial(u64 n, u64 r);

// Rank of a strictly increasing subset under colex order.
u64 colex_rank(const u32* s, u32 len);
u64 colex_rank(const std::vector<u32>& s);

// Inverse of colex_rank for subsets of size r.
std::vector<u32> colex_unrank(u64 rank, u32 r);

// In-place colex successor of a strictly increasing r-subset of {0..n-1};
// returns false once the last subset {n-r..n-1} has been passed.
bool next_combination(std::vector<u32>& s, u32 n);
bool next_combination(u32* s, u32 len, u32 n);

// Uniform random k-subset of {0..v-1} via Floyd's distinct-draw sampling,
// O(k) draws; result ascending. `out` must hold k entries.
void random_k_subset_into(u32 v, u32 k, Rng& rng, u32* out);
std::vector<u32> random_k_subset(u32 v, u32 k, Rng& rng);

// All C(|block|,t) t-subsets of a block, in colex order of the chosen
// positions (hence colex order of the subsets themselves).
std::vector<std::vector<u32>> t_subsets_of(const std::vector<u32>& block,
                                           u32 t);

// Precomputed C(x,j) for x <= n_max, j <= r_max. Entries that overflow 64
// bits are stored as a sentinel and throw on access; everything the covering
// code actually ranks is bounded by C(v,t), which callers gate first.
class BinomTable {
 public:
  BinomTable(u32 n_max, u32 r_max);

  u64 at(u32 x, u32 j) const;

  // Unchecked fast-path accessor for hot loops; caller guarantees the entry
  // is in range and not overflowed.
  u64 raw(u32 x, u32 j) const { return table_[j * (n_max_ + 1) + x]; }

  u32 n_max() const { return n_max_; }
  u32 r_max() const { return r_max_; }

 private:
  u32 n_max_;
  u32 r_max_;
  std::vector<u64> table_;
};

}  // namespace covgen

#endif  // COVGEN_COMB_HPP
