// Covering-design data model: parameters, block storage, density, coverage
// bookkeeping, verification, and the line-oriented file format.
#ifndef COVGEN_DESIGN_HPP
#define COVGEN_DESIGN_HPP

#include <string>
#include <string_view>
#include <vector>

#include "comb.hpp"
#include "errors.hpp"
#include "rng.hpp"

namespace covgen {

struct DesignParams {
  u32 v = 0;
  u32 k = 0;
  u32 t = 0;
};

// Validates 1 <= t <= k <= v; throws std::invalid_argument otherwise.
DesignParams make_params(u32 v, u32 k, u32 t);

// A family of k-blocks over {0..v-1}. Blocks are stored flat (k entries per
// block, ascending within a block) in insertion order; write_design emits the
// canonical order. Whether the family actually covers is verify's business,
// not a construction invariant.
class CoveringDesign {
 public:
  explicit CoveringDesign(DesignParams params);

  // Accepts any order, sorts a copy, rejects duplicates / out-of-range
  // elements / wrong length.
  void add_block(const u32* elems, std::size_t len);
  void add_block(const std::vector<u32>& elems);

  const DesignParams& params() const { return params_; }
  u64 block_count() const { return flat_.size() / params_.k; }
  const u32* block(u64 i) const { return flat_.data() + i * params_.k; }
  std::vector<u32> block_vec(u64 i) const;

  void reserve_blocks(u64 n) { flat_.reserve(n * params_.k); }

 private:
  DesignParams params_;
  std::vector<u32> flat_;
};

// Exact |blocks|*C(k,t)/C(v,t) reduced to lowest terms, plus a float
// rendering of the same ratio.
struct Density {
  u64 num = 0;
  u64 den = 1;
  double value = 0.0;
};

Density density(const CoveringDesign& d);

// One bit per t-subset of {0..v-1}, indexed by colex rank.
class CoverageBitmap {
 public:
  // Allocates C(v,t) bits; refuses beyond max_bits (default 2^33 = 1 GiB).
  explicit CoverageBitmap(DesignParams params,
                          u64 max_bits = u64(1) << 33);

  const DesignParams& params() const { return params_; }
  u64 total_bits() const { return total_; }
  u64 covered_count() const { return covered_; }
  bool test(u64 rank) const {
    return (words_[rank >> 6] >> (rank & 63)) & 1;
  }

  // Sets all t-subsets of the block; returns the number of bits that flipped
  // 0 -> 1 (0 on repeat: idempotent).
  u64 mark_block(const u32* block);
  // True iff no t-subset of the block is set.
  bool block_is_clean(const u32* block) const;

  u64 rank_of_tset(const u32* tset) const;
  std::vector<u32> unrank_tset(u64 rank) const;

  const BinomTable& table() const { return tab_; }

 private:
  DesignParams params_;
  u64 total_;
  u64 covered_ = 0;
  std::vector<u64> words_;
  BinomTable tab_;
};

struct VerifyReport {
  bool exhaustive = false;
  u64 checked = 0;          // t-subsets examined
  u64 uncovered_total = 0;  // exhaustive: exact count; sampled: found count
  bool is_covering = false; // meaningful only in exhaustive mode
  std::vector<std::vector<u32>> uncovered_examples;  // truncated
};

inline constexpr u64 kDefaultVerifyBitBudget = 100'000'000;
inline constexpr std::size_t kMaxUncoveredExamples = 100;

// Definitive check; refuses (BudgetError, suggesting sampled mode) when
// C(v,t) exceeds bit_budget.
VerifyReport verify_exhaustive(const CoveringDesign& d,
                               u64 bit_budget = kDefaultVerifyBitBudget);

// Tests n uniform random t-subsets. Reports failures only; never claims the
// design is a covering (is_covering stays false).
VerifyReport verify_sampled(const CoveringDesign& d, u64 samples, Rng& rng);

// Line-oriented text format:
//   line 1:      {"v":V,"k":K,"t":T,"blocks":N}
//   lines 2..N+1: k space-separated decimal integers, ascending
// UTF-8, LF newlines, trailing newline required. write_design emits canonical
// form: elements ascending within blocks, blocks sorted lexicographically.
std::string write_design(const CoveringDesign& d);
CoveringDesign read_design(std::string_view text);

void write_design_file(const CoveringDesign& d, const std::string& path);
CoveringDesign read_design_file(const std::string& path);

}  // namespace covgen

#endif  // COVGEN_DESIGN_HPP
