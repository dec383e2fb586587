// Affine hyperplane coverings over GF(p) and the induced construction for
// large v. Block counts follow the closed form (p^{t+1}-p)/(p-1); parameter
// selection literals were derived independently from the defining
// inequalities.
#include <array>
#include <filesystem>
#include <fstream>
#include <set>
#include <vector>

#include "design.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "geometry.hpp"

using namespace covgen;

TEST_CASE("primality by trial division") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK_FALSE(is_prime(4));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));  // 7 * 13
  CHECK(is_prime(7919));
  CHECK(primes_in(1, 2) == std::vector<u64>{2});
  CHECK(primes_in(21, 41) == std::vector<u64>{23, 29, 31, 37, 41});
  CHECK(primes_in(24, 28).empty());
}

TEST_CASE("AG hyperplane covering sizes match the closed form") {
  for (const auto& [p, t, blocks] : std::vector<std::array<u32, 3>>{
           {2, 2, 6}, {3, 2, 12}, {5, 2, 30}, {7, 2, 56}, {2, 3, 14},
           {3, 3, 39}}) {
    const CoveringDesign d = ag_hyperplane_covering(p, t);
    u32 pt = 1;
    for (u32 i = 0; i < t; ++i) pt *= p;
    CHECK(d.params().v == pt);
    CHECK(d.params().k == pt / p);
    CHECK(d.block_count() == blocks);
    CHECK(verify_exhaustive(d).is_covering);
  }
}

TEST_CASE("AG(2,p) coverings are perfect: density exactly 1") {
  for (u32 p : {2, 3, 5, 7}) {
    const Density dens = density(ag_hyperplane_covering(p, 2));
    CHECK(dens.num == dens.den);
  }
}

TEST_CASE("each direction's p hyperplanes partition the point set") {
  for (const auto& [p, t] : std::vector<std::array<u32, 2>>{
           {2, 2}, {3, 2}, {5, 2}, {7, 2}, {2, 3}, {3, 3}, {5, 3}}) {
    const CoveringDesign d = ag_hyperplane_covering(p, t);
    const u32 v = d.params().v;
    REQUIRE(d.block_count() % p == 0);
    for (u64 g = 0; g < d.block_count() / p; ++g) {
      std::set<u32> seen;
      for (u64 b = g * p; b < (g + 1) * p; ++b)
        for (u32 i = 0; i < d.params().k; ++i) seen.insert(d.block(b)[i]);
      CHECK(seen.size() == v);  // p disjoint blocks of size v/p
    }
  }
}

TEST_CASE("ag_hyperplane_covering rejects bad parameters") {
  CHECK_THROWS_AS(ag_hyperplane_covering(4, 2), std::invalid_argument);
  CHECK_THROWS_AS(ag_hyperplane_covering(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(ag_hyperplane_covering(65521, 3), BudgetError);
}

TEST_CASE("select_induced_params reproduces the derived literals") {
  {
    const InducedConfig c = select_induced_params(make_params(500, 3, 2));
    CHECK(c.ell == 3);
    CHECK(c.p == 23);
  }
  {
    const InducedConfig c = select_induced_params(make_params(1000, 3, 2));
    CHECK(c.ell == 4);
    CHECK(c.p == 37);
  }
  {
    const InducedConfig c = select_induced_params(make_params(10000, 3, 2));
    CHECK(c.ell == 12);
    CHECK(c.p == 107);
  }
}

TEST_CASE("selected parameters always satisfy the defining inequalities") {
  for (const u32 v : {500, 1000, 2000, 5000, 10000, 20000}) {
    for (const u32 t : {2u, 3u}) {
      const DesignParams dp = make_params(v, 3 > t ? 3 : t + 1, t);
      const InducedConfig c = select_induced_params(dp);
      CHECK(is_prime(c.p));
      // 4*ell*p <= v-t <= 8*ell*p
      CHECK(4 * u64(c.ell) * c.p <= u64(v) - t);
      CHECK(u64(v) - t <= 8 * u64(c.ell) * c.p);
      // p^t > v
      unsigned __int128 pt = 1;
      for (u32 i = 0; i < t; ++i) pt *= c.p;
      CHECK(pt > v);
      // ell is minimal with (9*ell)^t >= v^{t-1}
      unsigned __int128 lhs = 1, rhs = 1;
      for (u32 i = 0; i < t; ++i) lhs *= 9 * u64(c.ell);
      for (u32 i = 0; i + 1 < t; ++i) rhs *= v;
      CHECK(lhs >= rhs);
      if (c.ell > 1) {
        unsigned __int128 prev = 1;
        for (u32 i = 0; i < t; ++i) prev *= 9 * (u64(c.ell) - 1);
        CHECK(prev < rhs);
      }
    }
  }
}

TEST_CASE("parameter selection points small or degenerate cases at greedy") {
  auto message_mentions_greedy = [](DesignParams dp) {
    try {
      select_induced_params(dp);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what()).find("greedy") != std::string::npos;
    }
    return false;
  };
  CHECK(message_mentions_greedy(make_params(20, 3, 2)));  // no usable prime
  CHECK(message_mentions_greedy(make_params(50, 3, 1)));  // t < 2
}

TEST_CASE("precompute_small_covers builds verified covers for (ell,9*ell)") {
  const SmallCoverCache cache = precompute_small_covers(3, 2, 4, 77);
  // Keys are max(ell+1, k) = 5 through 9*ell - 1 = 35.
  REQUIRE(cache.entries().size() == 31);
  CHECK(cache.contains(5));
  CHECK(cache.contains(35));
  CHECK_FALSE(cache.contains(4));
  CHECK_FALSE(cache.contains(36));
  for (const auto& [ellp, d] : cache.entries()) {
    CHECK(d.params().v == ellp);
    CHECK(d.params().k == 3);
    CHECK(verify_exhaustive(d).is_covering);
  }
  // The (7,3,2) entry can't beat the exact bound of 7 blocks.
  CHECK(cache.at(7).block_count() >= 7);
  CHECK_THROWS_AS(cache.at(100), CacheMissError);
}

TEST_CASE("cache directory round trip, with junk files skipped") {
  const std::string dir = "/tmp/covgen_test_cache";
  std::filesystem::remove_all(dir);
  const SmallCoverCache cache = precompute_small_covers(3, 2, 2, 5);
  save_cache_dir(cache, dir, 3, 2);

  SmallCoverCache loaded;
  CHECK(load_cache_dir(loaded, dir, 3, 2) == cache.entries().size());
  REQUIRE(loaded.entries().size() == cache.entries().size());
  for (const auto& [ellp, d] : cache.entries())
    CHECK(write_design(loaded.at(ellp)) == write_design(d));

  // A corrupt file and a foreign (k,t) are both ignored.
  std::ofstream(dir + "/ellprime-9_k3_t2.cov") << "garbage\n";
  std::ofstream(dir + "/ellprime-5_k4_t2.cov") << "{}\n";
  SmallCoverCache reloaded;
  CHECK(load_cache_dir(reloaded, dir, 3, 2) == cache.entries().size() - 1);
  CHECK_FALSE(reloaded.contains(9));
  // Missing directory means zero entries, not an error.
  SmallCoverCache none;
  CHECK(load_cache_dir(none, "/tmp/covgen_no_such_dir", 3, 2) == 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("induced_cover produces a verified covering for (500,3,2)") {
  const DesignParams dp = make_params(500, 3, 2);
  InducedConfig cfg = select_induced_params(dp);
  cfg.seed = 0;
  const SmallCoverCache cache = precompute_small_covers(3, 2, cfg.ell, 0);
  const auto [d, stats] = induced_cover(dp, cache, cfg);
  CHECK(stats.prime == 23);
  CHECK(stats.hyperplanes == 24 * 23);  // (p^2-1)/(p-1) directions, p offsets
  CHECK(verify_exhaustive(d).is_covering);
  CHECK(density(d).value <= 2.5);
  // Histogram accounts for every hyperplane.
  u64 total = 0;
  for (const auto& [ellp, n] : stats.ellprime_histogram) total += n;
  CHECK(total == stats.hyperplanes);
  // Same seed: identical output.
  const auto [d2, stats2] = induced_cover(dp, cache, cfg);
  CHECK(write_design(d2) == write_design(d));
}

TEST_CASE("induced_cover needs every intersection size in the cache") {
  const DesignParams dp = make_params(500, 3, 2);
  InducedConfig cfg = select_induced_params(dp);
  const SmallCoverCache full = precompute_small_covers(3, 2, cfg.ell, 0);
  const auto [d, stats] = induced_cover(dp, full, cfg);
  (void)d;
  // Drop one size that actually occurred and expect a targeted miss.
  u32 victim = 0;
  for (const auto& [ellp, n] : stats.ellprime_histogram) {
    if (ellp > cfg.ell && ellp < 9 * cfg.ell && full.contains(ellp)) {
      victim = ellp;
      break;
    }
  }
  REQUIRE(victim != 0);
  SmallCoverCache holey;
  for (const auto& [ellp, des] : full.entries())
    if (ellp != victim) holey.put(ellp, des);
  try {
    induced_cover(dp, holey, cfg);
    FAIL("expected CacheMissError");
  } catch (const CacheMissError& e) {
    CHECK(std::string(e.what()).find(std::to_string(victim)) !=
          std::string::npos);
  }
}

TEST_CASE("induced_cover validates its configuration") {
  const DesignParams dp = make_params(500, 3, 2);
  const SmallCoverCache cache;
  InducedConfig cfg = select_induced_params(dp);
  cfg.p = 24;  // not prime
  CHECK_THROWS_AS(induced_cover(dp, cache, cfg), std::invalid_argument);
  cfg = select_induced_params(dp);
  cfg.p = 97;  // prime but violates 4*ell*p <= v-t
  CHECK_THROWS_AS(induced_cover(dp, cache, cfg), std::invalid_argument);
}
