// Exact lower bounds on the covering number C(v,k,t): the trivial density
// bound ceil(C(v,t)/C(k,t)) and the iterated Schonheim bound
//   C(v,k,t) >= ceil(v/k * ceil((v-1)/(k-1) * ... ceil((v-t+1)/(k-t+1)) ...)),
// evaluated innermost-first with integer ceilings only.
#ifndef COVGEN_BOUNDS_HPP
#define COVGEN_BOUNDS_HPP

#include "design.hpp"

namespace covgen {

struct BoundResult {
  enum class Method { schonheim, trivial_density };
  DesignParams params;
  u64 value = 0;
  Method method = Method::schonheim;
};

// One iteration level: ceil(v * inner / k), where inner is a lower bound for
// C(v-1, k-1, t-1). Exact integer arithmetic throughout.
u64 schonheim_step(u32 v, u32 k, u32 t, u64 inner);

BoundResult schonheim_bound(DesignParams p);

// ceil(C(v,t)/C(k,t)).
u64 density_lower_bound(DesignParams p);

}  // namespace covgen

#endif  // COVGEN_BOUNDS_HPP
