// CoveringDesign, CoverageBitmap, verification and the design file format.
// The Fano plane (the unique minimal (7,3,2) covering) is the main worked
// example; parsing is checked against hand-written malformed inputs.
#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <vector>

#include "design.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "greedy.hpp"
#include "rng.hpp"

using namespace covgen;

namespace {

// The Fano plane: every pair of {0..6} in exactly one triple.
CoveringDesign fano() {
  CoveringDesign d(make_params(7, 3, 2));
  for (const auto& b : std::vector<std::vector<u32>>{{0, 1, 2},
                                                     {0, 3, 4},
                                                     {0, 5, 6},
                                                     {1, 3, 5},
                                                     {1, 4, 6},
                                                     {2, 3, 6},
                                                     {2, 4, 5}})
    d.add_block(b);
  return d;
}

CoveringDesign all_k_subsets(u32 v, u32 k, u32 t) {
  CoveringDesign d(make_params(v, k, t));
  std::vector<u32> s(k);
  for (u32 i = 0; i < k; ++i) s[i] = i;
  do {
    d.add_block(s);
  } while (next_combination(s, v));
  return d;
}

}  // namespace

TEST_CASE("make_params enforces 1 <= t <= k <= v") {
  CHECK_THROWS_AS(make_params(5, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(5, 6, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_params(5, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_params(0, 0, 0), std::invalid_argument);
  const DesignParams p = make_params(5, 5, 5);
  CHECK(p.v == 5);
}

TEST_CASE("add_block validates and normalizes") {
  CoveringDesign d(make_params(6, 3, 2));
  d.add_block(std::vector<u32>{5, 0, 3});  // unsorted input is sorted
  CHECK(d.block_vec(0) == std::vector<u32>{0, 3, 5});
  CHECK_THROWS_AS(d.add_block(std::vector<u32>{0, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(d.add_block(std::vector<u32>{0, 1, 6}), std::invalid_argument);
  CHECK_THROWS_AS(d.add_block(std::vector<u32>{0, 1}), std::invalid_argument);
  CHECK(d.block_count() == 1);  // failed inserts leave no residue
}

TEST_CASE("density of the Fano plane is exactly 1") {
  // 7 blocks * C(3,2) over C(7,2) = 21/21, reduced to lowest terms.
  const Density dens = density(fano());
  CHECK(dens.num == 1);
  CHECK(dens.den == 1);
  CHECK(dens.value == 1.0);
}

TEST_CASE("density counts repeated coverage") {
  // All C(5,3)=10 triples of a 5-set: each pair lies in 3 of them, so the
  // raw ratio 30/10 reduces to 3/1.
  const Density dens = density(all_k_subsets(5, 3, 2));
  CHECK(dens.num == 3);
  CHECK(dens.den == 1);
  CHECK(dens.value == 3.0);
}

TEST_CASE("CoverageBitmap marks exactly the t-subsets of a block") {
  CoverageBitmap bm(make_params(7, 3, 2));
  CHECK(bm.total_bits() == 21);
  CHECK(bm.covered_count() == 0);
  const std::vector<u32> block{0, 1, 2};
  CHECK(bm.block_is_clean(block.data()));
  CHECK(bm.mark_block(block.data()) == 3);  // three fresh pairs
  CHECK(bm.covered_count() == 3);
  const std::vector<std::vector<u32>> in{{0, 1}, {0, 2}, {1, 2}};
  for (const auto& ts : in) CHECK(bm.test(bm.rank_of_tset(ts.data())));
  const std::vector<u32> out{3, 4};
  CHECK_FALSE(bm.test(bm.rank_of_tset(out.data())));
  // {0,1,3} shares the pair {0,1}; {3,4,5} is untouched.
  const std::vector<u32> dirty{0, 1, 3}, clean{3, 4, 5};
  CHECK_FALSE(bm.block_is_clean(dirty.data()));
  CHECK(bm.block_is_clean(clean.data()));
  // Re-marking covers nothing new.
  CHECK(bm.mark_block(block.data()) == 0);
  CHECK(bm.covered_count() == 3);
}

TEST_CASE("rank_of_tset and unrank_tset are mutually inverse") {
  CoverageBitmap bm(make_params(11, 5, 3));
  for (u64 r = 0; r < bm.total_bits(); ++r) {
    const std::vector<u32> ts = bm.unrank_tset(r);
    CHECK(bm.rank_of_tset(ts.data()) == r);
  }
}

TEST_CASE("coverage bookkeeping equals a set-union oracle") {
  // Every (v,k,t) with v <= 12 below; mark_block's incremental counting and
  // the final bit state are compared against plain set arithmetic.
  for (const auto& [v, k, t] : std::vector<std::array<u32, 3>>{
           {6, 3, 2}, {8, 4, 3}, {12, 4, 2}, {10, 5, 4}, {7, 3, 3}}) {
    const DesignParams p = make_params(v, k, t);
    CoverageBitmap bm(p);
    std::set<std::vector<u32>> oracle;
    Rng rng(u64(v) * 1000 + k * 10 + t);
    for (int step = 0; step < 40; ++step) {
      const std::vector<u32> block = random_k_subset(v, k, rng);
      const u64 before = oracle.size();
      for (const auto& ts : t_subsets_of(block, t)) oracle.insert(ts);
      const u64 fresh_oracle = oracle.size() - before;
      CHECK(bm.mark_block(block.data()) == fresh_oracle);
      CHECK(bm.covered_count() == oracle.size());
    }
    std::vector<u32> ts(t);
    for (u32 i = 0; i < t; ++i) ts[i] = i;
    u64 rank = 0;
    do {
      CHECK(bm.test(rank) == (oracle.count(ts) > 0));
      ++rank;
    } while (next_combination(ts, v));
  }
}

TEST_CASE("verify_exhaustive accepts the Fano plane") {
  const VerifyReport r = verify_exhaustive(fano());
  CHECK(r.exhaustive);
  CHECK(r.is_covering);
  CHECK(r.checked == 21);
  CHECK(r.uncovered_total == 0);
  CHECK(r.uncovered_examples.empty());
}

TEST_CASE("verify_exhaustive pinpoints the holes left by a removed block") {
  // Dropping one Fano block uncovers exactly its three pairs.
  const CoveringDesign full = fano();
  CoveringDesign partial(full.params());
  for (u64 i = 1; i < full.block_count(); ++i)
    partial.add_block(full.block(i), 3);
  const VerifyReport r = verify_exhaustive(partial);
  CHECK_FALSE(r.is_covering);
  CHECK(r.uncovered_total == 3);
  REQUIRE(r.uncovered_examples.size() == 3);
  const std::set<std::vector<u32>> holes(r.uncovered_examples.begin(),
                                         r.uncovered_examples.end());
  CHECK(holes == std::set<std::vector<u32>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("verify_exhaustive agrees with brute force on random partials") {
  Rng rng(5150);
  for (int rep = 0; rep < 20; ++rep) {
    const DesignParams p = make_params(9, 4, 2);
    CoveringDesign d(p);
    for (int b = 0; b < 6; ++b) d.add_block(random_k_subset(9, 4, rng));
    // Brute force: union of t-subsets.
    std::set<std::vector<u32>> covered;
    for (u64 i = 0; i < d.block_count(); ++i)
      for (const auto& ts : t_subsets_of(d.block_vec(i), 2)) covered.insert(ts);
    const VerifyReport r = verify_exhaustive(d);
    CHECK(r.checked == 36);
    CHECK(r.uncovered_total == 36 - covered.size());
    CHECK(r.is_covering == (covered.size() == 36));
  }
}

TEST_CASE("all k-subsets always form a covering") {
  for (const auto& [v, k, t] : std::vector<std::array<u32, 3>>{
           {6, 3, 2}, {7, 4, 3}, {9, 2, 1}}) {
    const VerifyReport r = verify_exhaustive(all_k_subsets(v, k, t));
    CHECK(r.is_covering);
  }
}

TEST_CASE("verify_exhaustive refuses work beyond its bit budget") {
  CHECK_THROWS_AS(verify_exhaustive(fano(), 10), BudgetError);
}

TEST_CASE("verify_sampled finds holes but never certifies") {
  Rng rng(3);
  const VerifyReport ok = verify_sampled(fano(), 2000, rng);
  CHECK_FALSE(ok.exhaustive);
  CHECK_FALSE(ok.is_covering);  // sampling proves nothing
  CHECK(ok.checked == 2000);
  CHECK(ok.uncovered_total == 0);

  CoveringDesign sparse(make_params(30, 3, 2));
  sparse.add_block(std::vector<u32>{0, 1, 2});
  Rng rng2(4);
  const VerifyReport bad = verify_sampled(sparse, 500, rng2);
  CHECK(bad.uncovered_total > 0);
  CHECK_FALSE(bad.uncovered_examples.empty());
}

TEST_CASE("design text round-trips bit-exactly") {
  GreedyConfig cfg;
  cfg.seed = 11;
  const CoveringDesign d = greedy_cover(make_params(10, 4, 2), cfg).first;
  const std::string text = write_design(d);
  const CoveringDesign back = read_design(text);
  CHECK(back.params().v == 10);
  CHECK(back.block_count() == d.block_count());
  CHECK(write_design(back) == text);  // canonical: rewriting is identity
}

TEST_CASE("write_design emits the documented canonical form") {
  CoveringDesign d(make_params(5, 2, 2));
  d.add_block(std::vector<u32>{3, 4});
  d.add_block(std::vector<u32>{0, 1});  // inserted out of order
  CHECK(write_design(d) ==
        "{\"v\":5,\"k\":2,\"t\":2,\"blocks\":2}\n0 1\n3 4\n");
}

TEST_CASE("read_design rejects malformed inputs with line numbers") {
  const std::string good = "{\"v\":5,\"k\":2,\"t\":2,\"blocks\":2}\n0 1\n3 4\n";
  CHECK(read_design(good).block_count() == 2);

  auto line_of = [](const std::string& text) -> u64 {
    try {
      read_design(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;  // no throw
  };

  // Missing trailing newline.
  CHECK_THROWS_AS(read_design("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n0 1"),
                  ParseError);
  // Corrupt header.
  CHECK(line_of("{\"v\":5,\"k\":2,\"blocks\":1}\n0 1\n") == 1);
  CHECK(line_of("{\"v\":5,\"k\":9,\"t\":2,\"blocks\":1}\n0 1\n") == 1);
  // Block line defects: duplicate, out of range, not ascending, wrong arity,
  // double space, trailing junk.
  CHECK(line_of("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n1 1\n") == 2);
  CHECK(line_of("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n1 5\n") == 2);
  CHECK(line_of("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n2 1\n") == 2);
  CHECK(line_of("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n0 1 2\n") == 2);
  CHECK(line_of("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n0  1\n") == 2);
  CHECK(line_of("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n0 1 \n") == 2);
  // Count mismatches: extra line, missing line.
  CHECK_THROWS_AS(
      read_design("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":1}\n0 1\n3 4\n"),
      ParseError);
  CHECK_THROWS_AS(
      read_design("{\"v\":5,\"k\":2,\"t\":2,\"blocks\":3}\n0 1\n3 4\n"),
      ParseError);
}

TEST_CASE("design files survive a disk round trip") {
  const CoveringDesign d = fano();
  const std::string path = "/tmp/covgen_test_fano.cov";
  write_design_file(d, path);
  const CoveringDesign back = read_design_file(path);
  CHECK(write_design(back) == write_design(d));
  CHECK_THROWS_AS(read_design_file("/tmp/covgen_no_such_file.cov"), IoError);
  std::remove(path.c_str());
}
