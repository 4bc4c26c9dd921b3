#include "ngdep/eval.hpp"

#include <cmath>
#include <cstdio>

#include "ngdep/errors.hpp"

namespace ngdep {

namespace {

void check_aligned(const std::vector<Sentence>& gold, std::size_t preds,
                   const char* what) {
  if (gold.size() != preds)
    throw DataError(std::string(what) + ": " + std::to_string(preds) +
                    " predictions for " + std::to_string(gold.size()) +
                    " gold sentences");
}

void check_lengths(const Sentence& g, const DependencyTree& p,
                   std::size_t index) {
  if (g.size() != p.size())
    throw DataError("prediction length mismatch at sentence " +
                    std::to_string(index + 1));
}

// splitmix64; fixed algorithm so bootstrap draws are stable across
// platforms and library versions.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

EvalReport uas(const std::vector<Sentence>& gold,
               const std::vector<DependencyTree>& predicted,
               bool exclude_punct, const PunctPolicy& punct) {
  check_aligned(gold, predicted.size(), "uas");
  EvalReport report;
  std::uint64_t correct = 0;
  for (std::size_t si = 0; si < gold.size(); ++si) {
    const Sentence& g = gold[si];
    const DependencyTree& p = predicted[si];
    check_lengths(g, p, si);
    for (int i = 0; i < g.size(); ++i) {
      if (exclude_punct && punct.is_punct(g.tokens[i])) {
        ++report.excluded_tokens;
        continue;
      }
      ++report.scored_tokens;
      PerPosStat& stat = report.per_pos[g.tokens[i].fpos];
      ++stat.freq;
      if (p.heads[i] == g.tokens[i].gold_head) {
        ++correct;
        ++stat.correct;
      }
    }
  }
  report.uas = report.scored_tokens == 0
                   ? 0.0
                   : static_cast<double>(correct) / report.scored_tokens;
  return report;
}

std::map<std::string, PosComparison> per_pos_comparison(
    const std::vector<Sentence>& gold,
    const std::vector<DependencyTree>& pred_a,
    const std::vector<DependencyTree>& pred_b, bool exclude_punct,
    const PunctPolicy& punct) {
  EvalReport ra = uas(gold, pred_a, exclude_punct, punct);
  EvalReport rb = uas(gold, pred_b, exclude_punct, punct);
  std::map<std::string, PosComparison> out;
  double total_delta = 0;
  for (const auto& [tag, stat] : ra.per_pos) {
    PosComparison& cmp = out[tag];
    cmp.freq = stat.freq;
    cmp.correct_a = stat.correct;
  }
  for (const auto& [tag, stat] : rb.per_pos) out[tag].correct_b = stat.correct;
  for (const auto& [tag, cmp] : out)
    total_delta += static_cast<double>(cmp.correct_b) -
                   static_cast<double>(cmp.correct_a);
  for (auto& [tag, cmp] : out) {
    double delta = static_cast<double>(cmp.correct_b) -
                   static_cast<double>(cmp.correct_a);
    cmp.pct_of_reduction = total_delta == 0.0 ? 0.0
                                              : 100.0 * delta / total_delta;
  }
  return out;
}

BootstrapResult bootstrap_significance(const std::vector<Sentence>& gold,
                                       const std::vector<DependencyTree>& a,
                                       const std::vector<DependencyTree>& b,
                                       int resamples, std::uint64_t seed,
                                       bool exclude_punct,
                                       const PunctPolicy& punct) {
  check_aligned(gold, a.size(), "bootstrap");
  check_aligned(gold, b.size(), "bootstrap");
  const std::size_t n = gold.size();
  if (n < 2)
    throw DataError("bootstrap needs at least 2 sentences, got " +
                    std::to_string(n));
  if (resamples < 1) throw ConfigError("resamples must be >= 1");

  // Per-sentence scored-token and correct counts for both systems.
  std::vector<std::uint64_t> scored(n, 0), corr_a(n, 0), corr_b(n, 0);
  for (std::size_t si = 0; si < n; ++si) {
    const Sentence& g = gold[si];
    check_lengths(g, a[si], si);
    check_lengths(g, b[si], si);
    for (int i = 0; i < g.size(); ++i) {
      if (exclude_punct && punct.is_punct(g.tokens[i])) continue;
      ++scored[si];
      if (a[si].heads[i] == g.tokens[i].gold_head) ++corr_a[si];
      if (b[si].heads[i] == g.tokens[i].gold_head) ++corr_b[si];
    }
  }
  auto ratio = [](std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / den;
  };
  std::uint64_t tot_scored = 0, tot_a = 0, tot_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    tot_scored += scored[i];
    tot_a += corr_a[i];
    tot_b += corr_b[i];
  }
  BootstrapResult result;
  result.uas_a = ratio(tot_a, tot_scored);
  result.uas_b = ratio(tot_b, tot_scored);
  const bool b_is_winner = result.uas_b >= result.uas_a;
  result.better = b_is_winner ? 'b' : 'a';

  const std::vector<std::uint64_t>& win = b_is_winner ? corr_b : corr_a;
  const std::vector<std::uint64_t>& lose = b_is_winner ? corr_a : corr_b;
  std::uint64_t not_better = 0;
  for (int r = 0; r < resamples; ++r) {
    // Independent sub-generator per resample.
    std::uint64_t state =
        seed ^ (0xD1B54A32D192ED03ULL * (static_cast<std::uint64_t>(r) + 1));
    std::uint64_t sw = 0, sl = 0, ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t pick = static_cast<std::size_t>(splitmix64(state) % n);
      sw += win[pick];
      sl += lose[pick];
      ss += scored[pick];
    }
    if (ratio(sw, ss) - ratio(sl, ss) <= 0.0) ++not_better;
  }
  result.p = static_cast<double>(not_better) / resamples;
  return result;
}

CoverageReport coverage_report(
    const std::vector<std::vector<std::string>>& query_keysets,
    const CountTable& table) {
  CoverageReport report;
  report.total = query_keysets.size();
  for (const auto& keys : query_keysets) {
    bool covered = false;
    for (const std::string& key : keys)
      if (table.contains(key)) {
        covered = true;
        break;
      }
    if (!covered) ++report.missing;
  }
  return report;
}

std::uint64_t coverage_intersection(
    const std::vector<std::vector<std::string>>& query_keysets,
    const CountTable& table_a, const CountTable& table_b) {
  std::uint64_t both = 0;
  for (const auto& keys : query_keysets) {
    bool in_a = false, in_b = false;
    for (const std::string& key : keys) {
      if (!in_a && table_a.contains(key)) in_a = true;
      if (!in_b && table_b.contains(key)) in_b = true;
    }
    if (!in_a && !in_b) ++both;
  }
  return both;
}

std::string format_pct(double value) {
  double rounded = std::round(value * 10.0) / 10.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", rounded);
  // Avoid "-0.0".
  if (std::string(buf) == "-0.0") return "0.0";
  return buf;
}

}  // namespace ngdep
