#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ngdep/conll.hpp"
#include "ngdep/count_store.hpp"
#include "ngdep/punct.hpp"

namespace ngdep {

struct PerPosStat {
  std::uint64_t freq = 0;
  std::uint64_t correct = 0;
  std::uint64_t errors() const { return freq - correct; }
};

struct EvalReport {
  double uas = 0;                   // fraction in [0, 1]
  std::uint64_t scored_tokens = 0;
  std::uint64_t excluded_tokens = 0;
  std::map<std::string, PerPosStat> per_pos;  // keyed by gold argument fpos
};

EvalReport uas(const std::vector<Sentence>& gold,
               const std::vector<DependencyTree>& predicted,
               bool exclude_punct, const PunctPolicy& punct = {});

// Two-system breakdown by gold argument POS; pct is each tag's share of the
// overall error reduction from A to B, in percent.
struct PosComparison {
  std::uint64_t freq = 0;
  std::uint64_t correct_a = 0;
  std::uint64_t correct_b = 0;
  double pct_of_reduction = 0;
};

std::map<std::string, PosComparison> per_pos_comparison(
    const std::vector<Sentence>& gold,
    const std::vector<DependencyTree>& pred_a,
    const std::vector<DependencyTree>& pred_b, bool exclude_punct,
    const PunctPolicy& punct = {});

struct BootstrapResult {
  double p = 1.0;
  double uas_a = 0;
  double uas_b = 0;
  // 'b' when predB scored higher on the full set, else 'a'; ties keep 'b'.
  char better = 'b';
};

// Paired bootstrap over sentences: p = fraction of resamples where the
// full-set winner fails to outscore the other system. Deterministic given
// the seed, independent of parallelism.
BootstrapResult bootstrap_significance(const std::vector<Sentence>& gold,
                                       const std::vector<DependencyTree>& a,
                                       const std::vector<DependencyTree>& b,
                                       int resamples = 10000,
                                       std::uint64_t seed = 1,
                                       bool exclude_punct = true,
                                       const PunctPolicy& punct = {});

struct CoverageReport {
  std::uint64_t total = 0;
  std::uint64_t missing = 0;
  double missing_fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(missing) / total;
  }
};

// A query is covered when any of its keys appears in the table. The key
// sets must follow the table's key convention.
CoverageReport coverage_report(
    const std::vector<std::vector<std::string>>& query_keysets,
    const CountTable& table);

// Queries missing from BOTH tables (intersection of the missing sets).
std::uint64_t coverage_intersection(
    const std::vector<std::vector<std::string>>& query_keysets,
    const CountTable& table_a, const CountTable& table_b);

// Percent with one decimal, half rounded away from zero (e.g. 12.04 ->
// "12.0", -0.65 -> "-0.7").
std::string format_pct(double value);

}  // namespace ngdep
