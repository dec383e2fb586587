// C shim over the C++ core: opaque handles, status codes, a thread-local
// error message. Exceptions never cross the boundary.
#include "covergen.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "analysis.hpp"
#include "bounds.hpp"
#include "design.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "greedy.hpp"

struct covgen_design {
  covgen::CoveringDesign impl;
};

namespace {

thread_local std::string g_last_error = "no error";

void set_error(const char* msg) { g_last_error = msg ? msg : "unknown error"; }

template <typename Fn>
covgen_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return COVGEN_OK;
  } catch (const covgen::BudgetError& e) {
    set_error(e.what());
    return COVGEN_ERR_BUDGET;
  } catch (const covgen::ParseError& e) {
    set_error(e.what());
    return COVGEN_ERR_PARSE;
  } catch (const covgen::IoError& e) {
    set_error(e.what());
    return COVGEN_ERR_IO;
  } catch (const covgen::CacheMissError& e) {
    set_error(e.what());
    return COVGEN_ERR_CACHE_MISS;
  } catch (const std::overflow_error& e) {
    set_error(e.what());
    return COVGEN_ERR_OVERFLOW;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return COVGEN_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set_error(e.what());
    return COVGEN_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return COVGEN_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return COVGEN_ERR_INTERNAL;
  }
}

covgen_status invalid(const char* msg) {
  set_error(msg);
  return COVGEN_ERR_INVALID_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

covgen::GreedyMode to_mode(covgen_greedy_mode mode) {
  switch (mode) {
    case COVGEN_GREEDY_ABORT:
      return covgen::GreedyMode::iid_budgeted;
    case COVGEN_GREEDY_SCAN:
      return covgen::GreedyMode::shuffled_scan;
  }
  throw std::invalid_argument("unknown greedy mode");
}

void fill_report(const covgen::VerifyReport& r, covgen_verify_report* out) {
  out->exhaustive = r.exhaustive ? 1 : 0;
  out->is_covering = r.is_covering ? 1 : 0;
  out->checked = r.checked;
  out->uncovered_total = r.uncovered_total;
}

}  // namespace

extern "C" {

const char* covgen_last_error(void) { return g_last_error.c_str(); }

const char* covgen_version(void) { return "1.0.0"; }

void covgen_string_free(char* s) { delete[] s; }

void covgen_design_free(covgen_design* d) { delete d; }

covgen_status covgen_design_params(const covgen_design* d, uint32_t* v,
                                   uint32_t* k, uint32_t* t) {
  if (!d || !v || !k || !t) return invalid("null argument");
  *v = d->impl.params().v;
  *k = d->impl.params().k;
  *t = d->impl.params().t;
  return COVGEN_OK;
}

covgen_status covgen_design_block_count(const covgen_design* d,
                                        uint64_t* count) {
  if (!d || !count) return invalid("null argument");
  *count = d->impl.block_count();
  return COVGEN_OK;
}

covgen_status covgen_design_block(const covgen_design* d, uint64_t index,
                                  uint32_t* out) {
  if (!d || !out) return invalid("null argument");
  if (index >= d->impl.block_count()) return invalid("block index out of range");
  const covgen::u32* b = d->impl.block(index);
  std::copy(b, b + d->impl.params().k, out);
  return COVGEN_OK;
}

covgen_status covgen_design_density(const covgen_design* d, uint64_t* num,
                                    uint64_t* den, double* value) {
  if (!d || !num || !den || !value) return invalid("null argument");
  return guarded([&] {
    const covgen::Density dens = covgen::density(d->impl);
    *num = dens.num;
    *den = dens.den;
    *value = dens.value;
  });
}

covgen_status covgen_design_to_string(const covgen_design* d, char** out) {
  if (!d || !out) return invalid("null argument");
  return guarded([&] { *out = copy_string(covgen::write_design(d->impl)); });
}

covgen_status covgen_design_from_string(const char* text, covgen_design** out) {
  if (!text || !out) return invalid("null argument");
  return guarded([&] {
    *out = new covgen_design{covgen::read_design(text)};
  });
}

covgen_status covgen_design_write_file(const covgen_design* d,
                                       const char* path) {
  if (!d || !path) return invalid("null argument");
  return guarded([&] { covgen::write_design_file(d->impl, path); });
}

covgen_status covgen_design_read_file(const char* path, covgen_design** out) {
  if (!path || !out) return invalid("null argument");
  return guarded([&] {
    *out = new covgen_design{covgen::read_design_file(path)};
  });
}

covgen_status covgen_verify_exhaustive(const covgen_design* d,
                                       uint64_t bit_budget,
                                       covgen_verify_report* report) {
  if (!d || !report) return invalid("null argument");
  return guarded([&] {
    const covgen::VerifyReport r = covgen::verify_exhaustive(
        d->impl, bit_budget ? bit_budget : covgen::kDefaultVerifyBitBudget);
    fill_report(r, report);
  });
}

covgen_status covgen_verify_sampled(const covgen_design* d, uint64_t samples,
                                    uint64_t seed,
                                    covgen_verify_report* report) {
  if (!d || !report) return invalid("null argument");
  return guarded([&] {
    covgen::Rng rng(seed);
    const covgen::VerifyReport r = covgen::verify_sampled(d->impl, samples, rng);
    fill_report(r, report);
  });
}

covgen_status covgen_schonheim_bound(uint32_t v, uint32_t k, uint32_t t,
                                     uint64_t* out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    *out = covgen::schonheim_bound(covgen::make_params(v, k, t)).value;
  });
}

covgen_status covgen_density_lower_bound(uint32_t v, uint32_t k, uint32_t t,
                                         uint64_t* out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    *out = covgen::density_lower_bound(covgen::make_params(v, k, t));
  });
}

covgen_status covgen_default_budget(uint32_t v, uint32_t k, uint32_t t,
                                    double beta, uint64_t* out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    *out = covgen::default_budget(covgen::make_params(v, k, t), beta);
  });
}

covgen_status covgen_greedy_cover(uint32_t v, uint32_t k, uint32_t t,
                                  uint64_t seed, uint64_t budget,
                                  covgen_greedy_mode mode, covgen_design** out,
                                  covgen_greedy_stats* stats) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    covgen::GreedyConfig cfg;
    cfg.seed = seed;
    cfg.budget = budget;
    cfg.mode = to_mode(mode);
    auto [d, st] = covgen::greedy_cover(covgen::make_params(v, k, t), cfg);
    if (stats) {
      stats->draws_used = st.draws_used;
      stats->blocks_from_packing = st.blocks_from_packing;
      stats->blocks_from_completion = st.blocks_from_completion;
      stats->uncovered_at_abort = st.uncovered_at_abort;
    }
    *out = new covgen_design{std::move(d)};
  });
}

covgen_status covgen_uncovered_fraction_at_tau(uint32_t v, uint32_t k,
                                               uint32_t t, double tau,
                                               uint64_t trials, uint64_t seed,
                                               unsigned threads, double* mean,
                                               double* std_error,
                                               uint64_t* draws_m) {
  if (!mean || !std_error) return invalid("null argument");
  return guarded([&] {
    const covgen::TauFractionResult r = covgen::uncovered_fraction_at_tau(
        covgen::make_params(v, k, t), tau, trials, seed, threads);
    *mean = r.mean;
    *std_error = r.std_error;
    if (draws_m) *draws_m = r.draws_m;
  });
}

covgen_status covgen_ag_covering(uint32_t p, uint32_t t, covgen_design** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    *out = new covgen_design{covgen::ag_hyperplane_covering(p, t)};
  });
}

covgen_status covgen_select_induced_params(uint32_t v, uint32_t k, uint32_t t,
                                           uint32_t* ell, uint64_t* p) {
  if (!ell || !p) return invalid("null argument");
  return guarded([&] {
    const covgen::InducedConfig cfg =
        covgen::select_induced_params(covgen::make_params(v, k, t));
    *ell = cfg.ell;
    *p = cfg.p;
  });
}

covgen_status covgen_induced_cover(uint32_t v, uint32_t k, uint32_t t,
                                   uint64_t seed, const char* cache_dir,
                                   covgen_design** out,
                                   covgen_induced_stats* stats) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    const covgen::DesignParams dp = covgen::make_params(v, k, t);
    covgen::InducedConfig cfg = covgen::select_induced_params(dp);
    cfg.seed = seed;

    covgen::SmallCoverCache cache;
    const bool use_dir = cache_dir && *cache_dir;
    if (use_dir) covgen::load_cache_dir(cache, cache_dir, k, t);

    const covgen::u32 first =
        std::max(cfg.ell + 1, std::max(dp.k, dp.t));
    const covgen::u64 last = 9 * static_cast<covgen::u64>(cfg.ell) - 1;
    bool missing = false;
    for (covgen::u64 e = first; e <= last; ++e) {
      if (!cache.contains(static_cast<covgen::u32>(e))) {
        missing = true;
        break;
      }
    }
    if (missing) {
      covgen::SmallCoverCache fresh =
          covgen::precompute_small_covers(k, t, cfg.ell, seed);
      for (const auto& [e, d] : fresh.entries()) {
        if (!cache.contains(e)) cache.put(e, d);
      }
      if (use_dir) covgen::save_cache_dir(cache, cache_dir, k, t);
    }

    auto [d, st] = covgen::induced_cover(dp, cache, cfg);
    if (stats) {
      stats->ell = st.ell;
      stats->prime = st.prime;
      stats->hyperplanes = st.hyperplanes;
      stats->trivial_hyperplanes = st.trivial_hyperplanes;
    }
    *out = new covgen_design{std::move(d)};
  });
}

covgen_status covgen_p_tau(double tau, uint32_t D, double* out) {
  if (!out) return invalid("null argument");
  return guarded([&] { *out = covgen::p_tau(tau, D); });
}

covgen_status covgen_tree_estimate(double tau, uint32_t D, uint64_t trials,
                                   uint64_t max_nodes, uint64_t seed,
                                   unsigned threads, double* estimate,
                                   double* std_error) {
  if (!estimate || !std_error) return invalid("null argument");
  return guarded([&] {
    covgen::IdealizedTreeConfig cfg;
    cfg.tau = tau;
    cfg.D = D;
    cfg.trials = trials;
    if (max_nodes) cfg.max_nodes = max_nodes;
    cfg.seed = seed;
    cfg.threads = threads;
    const covgen::TreeEstimate est = covgen::simulate_idealized_tree(cfg);
    *estimate = est.estimate;
    *std_error = est.std_error;
  });
}

covgen_status covgen_density_experiment(uint32_t k, uint32_t t,
                                        const uint32_t* v_list, size_t n_v,
                                        uint64_t trials,
                                        covgen_budget_rule rule, double beta,
                                        uint64_t fixed, uint64_t seed,
                                        unsigned threads, char** csv_out) {
  if (!v_list || !csv_out) return invalid("null argument");
  return guarded([&] {
    covgen::BudgetRule br;
    switch (rule) {
      case COVGEN_RULE_EARLY_ABORT:
        br.kind = covgen::BudgetRuleKind::early_abort;
        break;
      case COVGEN_RULE_FIXED:
        br.kind = covgen::BudgetRuleKind::fixed;
        break;
      case COVGEN_RULE_SCAN:
        br.kind = covgen::BudgetRuleKind::scan;
        break;
      default:
        throw std::invalid_argument("unknown budget rule");
    }
    if (beta > 0.0) br.beta = beta;
    br.fixed = fixed;
    const std::vector<covgen::u32> vs(v_list, v_list + n_v);
    const std::vector<covgen::ExperimentRow> rows =
        covgen::density_experiment(k, t, vs, trials, br, seed, threads);
    *csv_out = copy_string(covgen::experiment_csv(rows));
  });
}

covgen_status covgen_fit_alpha_csv(const char* csv_text, uint32_t v_lo,
                                   uint32_t v_hi, char** json_out) {
  if (!csv_text || !json_out) return invalid("null argument");
  return guarded([&] {
    const std::vector<covgen::ExperimentRow> rows =
        covgen::parse_experiment_csv(csv_text);
    const covgen::AlphaFit fit = covgen::fit_alpha(rows, v_lo, v_hi);
    *json_out = copy_string(covgen::alpha_json(fit));
  });
}

covgen_status covgen_clique_statistic(uint32_t v, uint32_t k, uint32_t t,
                                      uint64_t seed, uint64_t budget,
                                      covgen_greedy_mode mode,
                                      uint64_t* uncovered_count,
                                      int* applicable, double* fraction) {
  if (!uncovered_count || !applicable || !fraction)
    return invalid("null argument");
  return guarded([&] {
    covgen::GreedyConfig cfg;
    cfg.seed = seed;
    cfg.budget = budget;
    cfg.mode = to_mode(mode);
    const covgen::CliqueStat stat =
        covgen::clique_statistic(covgen::make_params(v, k, t), cfg);
    *uncovered_count = stat.uncovered_count;
    *applicable = stat.applicable ? 1 : 0;
    *fraction = stat.fraction;
  });
}

} /* extern "C" */
