#include "design.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace covgen {

namespace {

// Enumerates the colex ranks of all t-subsets of `block` (size k) and feeds
// them to `visit`; stops early when visit returns false. Returns false iff
// stopped early. t = 2 is the greedy inner loop and gets a branch-free-ish
// pair walk; the generic path runs a combination odometer over positions.
template <typename Visit>
bool for_each_tset_rank(const BinomTable& tab, const u32* block, u32 k, u32 t,
                        Visit&& visit) {
  if (t == 2) {
    for (u32 j = 1; j < k; ++j) {
      const u64 cj = tab.raw(block[j], 2);
      for (u32 i = 0; i < j; ++i) {
        if (!visit(cj + block[i])) return false;
      }
    }
    return true;
  }
  thread_local std::vector<u32> idx;
  idx.resize(t);
  for (u32 i = 0; i < t; ++i) idx[i] = i;
  do {
    u64 rank = 0;
    for (u32 i = 0; i < t; ++i) rank += tab.raw(block[idx[i]], i + 1);
    if (!visit(rank)) return false;
  } while (next_combination(idx.data(), t, k));
  return true;
}

}  // namespace

DesignParams make_params(u32 v, u32 k, u32 t) {
  if (t < 1 || t > k || k > v)
    throw std::invalid_argument("design parameters must satisfy 1 <= t <= k <= v");
  return DesignParams{v, k, t};
}

CoveringDesign::CoveringDesign(DesignParams params)
    : params_(make_params(params.v, params.k, params.t)) {}

void CoveringDesign::add_block(const u32* elems, std::size_t len) {
  if (len != params_.k)
    throw std::invalid_argument("add_block: block size differs from k");
  std::vector<u32> sorted(elems, elems + len);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < len; ++i) {
    if (sorted[i] == sorted[i + 1])
      throw std::invalid_argument("add_block: duplicate element in block");
  }
  if (sorted.back() >= params_.v)
    throw std::invalid_argument("add_block: element out of range");
  flat_.insert(flat_.end(), sorted.begin(), sorted.end());
}

void CoveringDesign::add_block(const std::vector<u32>& elems) {
  add_block(elems.data(), elems.size());
}

std::vector<u32> CoveringDesign::block_vec(u64 i) const {
  const u32* b = block(i);
  return std::vector<u32>(b, b + params_.k);
}

Density density(const CoveringDesign& d) {
  const auto& p = d.params();
  const u64 per_block = binomial(p.k, p.t);
  const u64 den0 = binomial(p.v, p.t);
  const unsigned __int128 num_wide =
      static_cast<unsigned __int128>(d.block_count()) * per_block;
  if (num_wide > std::numeric_limits<u64>::max())
    throw std::overflow_error("density: numerator exceeds 64 bits");
  const u64 num0 = static_cast<u64>(num_wide);
  const u64 g = std::gcd(num0, den0);
  Density out;
  out.num = num0 / g;
  out.den = den0 / g;
  out.value = static_cast<double>(static_cast<long double>(num0) /
                                  static_cast<long double>(den0));
  return out;
}

CoverageBitmap::CoverageBitmap(DesignParams params, u64 max_bits)
    : params_(make_params(params.v, params.k, params.t)),
      tab_(params.v, params.t) {
  try {
    total_ = binomial(params_.v, params_.t);
  } catch (const std::overflow_error&) {
    throw BudgetError("coverage bitmap: C(v,t) exceeds 64 bits");
  }
  if (total_ > max_bits)
    throw BudgetError("coverage bitmap: C(v,t) = " + std::to_string(total_) +
                      " bits exceeds the limit of " + std::to_string(max_bits));
  words_.assign((total_ + 63) / 64, 0);
}

u64 CoverageBitmap::mark_block(const u32* block) {
  u64 added = 0;
  for_each_tset_rank(tab_, block, params_.k, params_.t, [&](u64 rank) {
    u64& word = words_[rank >> 6];
    const u64 bit = u64(1) << (rank & 63);
    if (!(word & bit)) {
      word |= bit;
      ++added;
    }
    return true;
  });
  covered_ += added;
  return added;
}

bool CoverageBitmap::block_is_clean(const u32* block) const {
  return for_each_tset_rank(tab_, block, params_.k, params_.t,
                            [&](u64 rank) { return !test(rank); });
}

u64 CoverageBitmap::rank_of_tset(const u32* tset) const {
  u64 rank = 0;
  for (u32 i = 0; i < params_.t; ++i) rank += tab_.at(tset[i], i + 1);
  return rank;
}

std::vector<u32> CoverageBitmap::unrank_tset(u64 rank) const {
  const u32 t = params_.t;
  std::vector<u32> out(t);
  for (u32 pos = t; pos > 0; --pos) {
    // Largest x with C(x,pos) <= rank, found by binary search on the table
    // row (monotone in x).
    u32 lo = pos - 1, hi = params_.v - 1;
    while (lo < hi) {
      const u32 mid = lo + (hi - lo + 1) / 2;
      if (tab_.raw(mid, pos) <= rank)
        lo = mid;
      else
        hi = mid - 1;
    }
    out[pos - 1] = lo;
    rank -= tab_.raw(lo, pos);
  }
  return out;
}

VerifyReport verify_exhaustive(const CoveringDesign& d, u64 bit_budget) {
  const auto& p = d.params();
  u64 total;
  try {
    total = binomial(p.v, p.t);
  } catch (const std::overflow_error&) {
    throw BudgetError(
        "verify: C(v,t) exceeds 64 bits; use sampled verification");
  }
  if (total > bit_budget)
    throw BudgetError("verify: C(v,t) = " + std::to_string(total) +
                      " exceeds the exhaustive budget of " +
                      std::to_string(bit_budget) +
                      " bits; use sampled verification");

  CoverageBitmap bm(p, bit_budget);
  const u64 n = d.block_count();
  for (u64 i = 0; i < n; ++i) bm.mark_block(d.block(i));

  VerifyReport report;
  report.exhaustive = true;
  report.checked = total;
  report.uncovered_total = total - bm.covered_count();
  report.is_covering = report.uncovered_total == 0;
  if (!report.is_covering) {
    for (u64 rank = 0;
         rank < total && report.uncovered_examples.size() < kMaxUncoveredExamples;
         ++rank) {
      if (!bm.test(rank)) report.uncovered_examples.push_back(bm.unrank_tset(rank));
    }
  }
  return report;
}

VerifyReport verify_sampled(const CoveringDesign& d, u64 samples, Rng& rng) {
  const auto& p = d.params();
  const u64 n_blocks = d.block_count();
  // Inverted index: point -> ids of blocks containing it. A sampled t-set is
  // covered iff one of the blocks containing its first element contains all
  // of it.
  std::vector<std::vector<u64>> by_point(p.v);
  for (u64 i = 0; i < n_blocks; ++i) {
    const u32* b = d.block(i);
    for (u32 j = 0; j < p.k; ++j) by_point[b[j]].push_back(i);
  }

  VerifyReport report;
  report.exhaustive = false;
  report.checked = samples;
  report.is_covering = false;  // sampling never certifies a covering
  std::vector<u32> tset(p.t);
  for (u64 s = 0; s < samples; ++s) {
    random_k_subset_into(p.v, p.t, rng, tset.data());
    bool covered = false;
    for (const u64 bi : by_point[tset[0]]) {
      const u32* b = d.block(bi);
      u32 bi_pos = 0, hits = 0;
      for (u32 ti = 0; ti < p.t; ++ti) {
        while (bi_pos < p.k && b[bi_pos] < tset[ti]) ++bi_pos;
        if (bi_pos == p.k || b[bi_pos] != tset[ti]) break;
        ++hits;
        ++bi_pos;
      }
      if (hits == p.t) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      ++report.uncovered_total;
      if (report.uncovered_examples.size() < kMaxUncoveredExamples)
        report.uncovered_examples.push_back(tset);
    }
  }
  return report;
}

namespace {

void append_u64(std::string& out, u64 value) {
  char buf[20];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  out.append(buf, res.ptr);
}

}  // namespace

std::string write_design(const CoveringDesign& d) {
  const auto& p = d.params();
  const u64 n = d.block_count();
  char header[128];
  const int head_len =
      std::snprintf(header, sizeof header,
                    "{\"v\":%u,\"k\":%u,\"t\":%u,\"blocks\":%llu}\n", p.v, p.k,
                    p.t, static_cast<unsigned long long>(n));
  std::string out(header, static_cast<std::size_t>(head_len));
  out.reserve(out.size() + n * p.k * 5);

  // Canonical block order: lexicographic (elements within a block are already
  // ascending by construction).
  std::vector<u64> order(n);
  for (u64 i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](u64 a, u64 b) {
    const u32* ba = d.block(a);
    const u32* bb = d.block(b);
    return std::lexicographical_compare(ba, ba + p.k, bb, bb + p.k);
  });

  for (const u64 i : order) {
    const u32* b = d.block(i);
    for (u32 j = 0; j < p.k; ++j) {
      if (j) out.push_back(' ');
      append_u64(out, b[j]);
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, std::size_t col,
                             const std::string& what) {
  throw ParseError("design parse error at line " + std::to_string(line) +
                       ", col " + std::to_string(col) + ": " + what,
                   line);
}

u64 header_uint(const nlohmann::json& j, const char* key, u64 max_value) {
  if (!j.contains(key)) parse_fail(1, 1, std::string("missing key \"") + key + "\"");
  const auto& field = j.at(key);
  if (!field.is_number_unsigned())
    parse_fail(1, 1, std::string("key \"") + key + "\" must be a non-negative integer");
  const u64 value = field.get<u64>();
  if (value > max_value)
    parse_fail(1, 1, std::string("key \"") + key + "\" out of range");
  return value;
}

}  // namespace

CoveringDesign read_design(std::string_view text) {
  if (text.empty()) parse_fail(1, 1, "empty input");
  if (text.back() != '\n')
    throw ParseError("design parse error: missing trailing newline", 0);

  const std::size_t header_end = text.find('\n');
  const std::string_view header_line = text.substr(0, header_end);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(1, 1, std::string("bad JSON header: ") + e.what());
  }
  if (!j.is_object() || j.size() != 4)
    parse_fail(1, 1, "header must be exactly {\"v\":..,\"k\":..,\"t\":..,\"blocks\":..}");
  const u64 v = header_uint(j, "v", std::numeric_limits<u32>::max());
  const u64 k = header_uint(j, "k", std::numeric_limits<u32>::max());
  const u64 t = header_uint(j, "t", std::numeric_limits<u32>::max());
  const u64 n_blocks = header_uint(j, "blocks", std::numeric_limits<u64>::max());

  DesignParams params;
  try {
    params = make_params(static_cast<u32>(v), static_cast<u32>(k),
                         static_cast<u32>(t));
  } catch (const std::invalid_argument& e) {
    parse_fail(1, 1, e.what());
  }

  CoveringDesign d(params);
  // A block line is at least 2k bytes; don't let a lying header drive a huge
  // reservation before the length mismatch is detected.
  if (n_blocks <= text.size() / (2 * static_cast<u64>(params.k)) + 1)
    d.reserve_blocks(n_blocks);
  std::vector<u32> block(params.k);

  std::size_t pos = header_end + 1;
  for (u64 bi = 0; bi < n_blocks; ++bi) {
    const std::size_t line_no = 2 + bi;
    if (pos >= text.size())
      parse_fail(line_no, 1,
                 "expected " + std::to_string(n_blocks) + " blocks, found " +
                     std::to_string(bi));
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line = text.substr(pos, eol - pos);
    std::size_t cur = 0;
    for (u32 j2 = 0; j2 < params.k; ++j2) {
      if (j2) {
        if (cur >= line.size() || line[cur] != ' ')
          parse_fail(line_no, cur + 1, "expected single space between elements");
        ++cur;
      }
      u32 value = 0;
      const char* begin = line.data() + cur;
      const char* end = line.data() + line.size();
      const auto res = std::from_chars(begin, end, value);
      if (res.ec != std::errc() || res.ptr == begin)
        parse_fail(line_no, cur + 1, "expected decimal integer");
      cur += static_cast<std::size_t>(res.ptr - begin);
      if (value >= params.v)
        parse_fail(line_no, cur, "element " + std::to_string(value) +
                                     " out of range (v = " +
                                     std::to_string(params.v) + ")");
      if (j2 > 0 && value <= block[j2 - 1])
        parse_fail(line_no, cur,
                   "elements must be strictly ascending within a block");
      block[j2] = value;
    }
    if (cur != line.size())
      parse_fail(line_no, cur + 1, "trailing characters after block");
    d.add_block(block);
    pos = eol + 1;
  }
  if (pos != text.size())
    parse_fail(2 + n_blocks, 1, "unexpected content after last block");
  return d;
}

void write_design_file(const CoveringDesign& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  const std::string text = write_design(d);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path);
}

CoveringDesign read_design_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return read_design(buf.str());
}

}  // namespace covgen
