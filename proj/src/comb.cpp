#include "comb.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace covgen {

namespace {
constexpr u64 kU64Max = std::numeric_limits<u64>::max();
}

u64 binomial(u64 n, u64 r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  // Multiplicative formula; each prefix is itself a binomial, so the division
  // is exact at every step. Intermediates go through 128 bits, and a prefix
  // value past 64 bits can only grow, so throwing there is final.
  unsigned __int128 acc = 1;
  for (u64 i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > kU64Max) throw std::overflow_error("binomial: result exceeds 64 bits");
  }
  return static_cast<u64>(acc);
}

u64 colex_rank(const u32* s, u32 len) {
  u64 rank = 0;
  for (u32 i = 0; i < len; ++i) rank += binomial(s[i], i + 1);
  return rank;
}

u64 colex_rank(const std::vector<u32>& s) {
  return colex_rank(s.data(), static_cast<u32>(s.size()));
}

std::vector<u32> colex_unrank(u64 rank, u32 r) {
  // Greedy from the top position: the largest element is the largest x with
  // C(x,r) <= rank; recurse on the remainder.
  std::vector<u32> out(r);
  for (u32 pos = r; pos > 0; --pos) {
    u32 x = pos - 1;  // minimum possible element at this position
    // Advance while C(x+1,pos) <= rank. Linear walk is fine for the sizes the
    // library ranks (x grows past the answer only once).
    while (binomial(x + 1, pos) <= rank) ++x;
    out[pos - 1] = x;
    rank -= binomial(x, pos);
  }
  return out;
}

bool next_combination(u32* s, u32 len, u32 n) {
  if (len == 0) return false;
  for (u32 i = 0; i + 1 < len; ++i) {
    if (s[i] + 1 < s[i + 1]) {
      ++s[i];
      for (u32 j = 0; j < i; ++j) s[j] = j;
      return true;
    }
  }
  ++s[len - 1];
  for (u32 j = 0; j + 1 < len; ++j) s[j] = j;
  return s[len - 1] < n;
}

bool next_combination(std::vector<u32>& s, u32 n) {
  return next_combination(s.data(), static_cast<u32>(s.size()), n);
}

void random_k_subset_into(u32 v, u32 k, Rng& rng, u32* out) {
  if (k > v) throw std::invalid_argument("random_k_subset: k > v");
  // Floyd's algorithm: for j = v-k..v-1 draw r in [0,j]; take r unless it was
  // already taken, in which case take j (fresh by construction).
  u32 n = 0;
  for (u32 j = v - k; j < v; ++j) {
    const u32 r = static_cast<u32>(rng.below(j + 1));
    bool taken = false;
    for (u32 q = 0; q < n; ++q) {
      if (out[q] == r) {
        taken = true;
        break;
      }
    }
    out[n++] = taken ? j : r;
  }
  std::sort(out, out + k);
}

std::vector<u32> random_k_subset(u32 v, u32 k, Rng& rng) {
  std::vector<u32> out(k);
  random_k_subset_into(v, k, rng, out.data());
  return out;
}

std::vector<std::vector<u32>> t_subsets_of(const std::vector<u32>& block,
                                           u32 t) {
  const u32 n = static_cast<u32>(block.size());
  if (t > n) throw std::invalid_argument("t_subsets_of: t > |block|");
  std::vector<std::vector<u32>> out;
  out.reserve(static_cast<std::size_t>(binomial(n, t)));
  if (t == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<u32> idx(t);
  for (u32 i = 0; i < t; ++i) idx[i] = i;
  do {
    std::vector<u32> sub(t);
    for (u32 i = 0; i < t; ++i) sub[i] = block[idx[i]];
    out.push_back(std::move(sub));
  } while (next_combination(idx, n));
  return out;
}

BinomTable::BinomTable(u32 n_max, u32 r_max)
    : n_max_(n_max),
      r_max_(r_max),
      table_(static_cast<std::size_t>(r_max + 1) * (n_max + 1)) {
  // Pascal's rule with a saturating sentinel for entries past 64 bits.
  for (u32 x = 0; x <= n_max; ++x) table_[x] = 1;  // j = 0
  for (u32 j = 1; j <= r_max; ++j) {
    u64* row = &table_[static_cast<std::size_t>(j) * (n_max + 1)];
    const u64* prev = &table_[static_cast<std::size_t>(j - 1) * (n_max + 1)];
    row[0] = 0;
    for (u32 x = 1; x <= n_max; ++x) {
      const u64 a = row[x - 1];    // C(x-1, j)
      const u64 b = prev[x - 1];   // C(x-1, j-1)
      row[x] = (a == kU64Max || b == kU64Max || a > kU64Max - b) ? kU64Max
                                                                 : a + b;
    }
  }
}

u64 BinomTable::at(u32 x, u32 j) const {
  if (x > n_max_ || j > r_max_)
    throw std::out_of_range("BinomTable: index out of range");
  const u64 value = raw(x, j);
  if (value == kU64Max)
    throw std::overflow_error("BinomTable: entry exceeds 64 bits");
  return value;
}

}  // namespace covgen
