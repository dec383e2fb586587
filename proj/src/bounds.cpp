#include "bounds.hpp"

#include <limits>
#include <stdexcept>

namespace covgen {

namespace {

// ceil(a*b/c) on 64-bit values without overflow (128-bit intermediate).
u64 ceil_mul_div(u64 a, u64 b, u64 c) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  const unsigned __int128 q = prod / c + (prod % c != 0);
  if (q > std::numeric_limits<u64>::max())
    throw std::overflow_error("schonheim bound exceeds 64 bits");
  return static_cast<u64>(q);
}

}  // namespace

u64 schonheim_step(u32 v, u32 k, u32 t, u64 inner) {
  make_params(v, k, t);
  return ceil_mul_div(v, inner, k);
}

BoundResult schonheim_bound(DesignParams p) {
  make_params(p.v, p.k, p.t);
  // Fold from the innermost level ceil((v-t+1)/(k-t+1)) outward; level i uses
  // numerator v-i and denominator k-i.
  u64 r = 1;
  for (u32 i = p.t; i-- > 0;) r = ceil_mul_div(p.v - i, r, p.k - i);
  return BoundResult{p, r, BoundResult::Method::schonheim};
}

u64 density_lower_bound(DesignParams p) {
  make_params(p.v, p.k, p.t);
  return ceil_div(binomial(p.v, p.t), binomial(p.k, p.t));
}

}  // namespace covgen
