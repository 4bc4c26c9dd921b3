#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ngdep/conll.hpp"
#include "ngdep/errors.hpp"
#include "ngdep/eval.hpp"
#include "ngdep/model.hpp"
#include "ngdep/pipeline.hpp"
#include "ngdep/query.hpp"
#include "ngdep/train.hpp"

namespace fs = std::filesystem;
using namespace ngdep;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitNotSignificant = 3;

struct GlobalArgs {
  std::string config_path;
  std::vector<std::string> enable_groups;
  std::vector<std::string> disable_groups;
  PipelineConfig config;

  // Flags that must win over the config file are applied after loading it.
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  bool strict = false;
  std::string surface_table, surface_para, syntactic_table, syntactic_para;
};

void set_group(FeatureGroups& groups, const std::string& name, bool value) {
  if (name == "baseline")
    groups.baseline = value;
  else if (name == "surface-affinity")
    groups.surface_affinity = value;
  else if (name == "surface-paraphrase")
    groups.surface_paraphrase = value;
  else if (name == "surface-second-order")
    groups.surface_second_order = value;
  else if (name == "syntactic-first-order")
    groups.syntactic_first_order = value;
  else if (name == "syntactic-second-order")
    groups.syntactic_second_order = value;
  else if (name == "syntactic-paraphrase")
    groups.syntactic_paraphrase = value;
  else
    throw ConfigError("unknown feature group '" + name + "'");
}

void finalize_config(GlobalArgs& g) {
  if (!g.config_path.empty()) g.config.apply_json_file(g.config_path);
  for (const std::string& name : g.enable_groups)
    set_group(g.config.groups, name, true);
  for (const std::string& name : g.disable_groups)
    set_group(g.config.groups, name, false);
  if (g.seed) g.config.seed = *g.seed;
  if (g.jobs) g.config.jobs = *g.jobs;
  if (g.strict) g.config.strict = true;
  if (!g.surface_table.empty()) g.config.surface_table_path = g.surface_table;
  if (!g.surface_para.empty())
    g.config.surface_paraphrase_path = g.surface_para;
  if (!g.syntactic_table.empty())
    g.config.syntactic_table_path = g.syntactic_table;
  if (!g.syntactic_para.empty())
    g.config.syntactic_paraphrase_path = g.syntactic_para;
}

std::vector<Sentence> read_treebank(const std::string& path) {
  return parse_conll_file(path);
}

std::vector<DependencyTree> read_predictions(const std::string& path) {
  std::vector<DependencyTree> trees;
  for (const Sentence& s : parse_conll_file(path))
    trees.push_back(DependencyTree{s.gold_heads()});
  return trees;
}

void check_same_lengths(const std::vector<Sentence>& gold,
                        const std::vector<DependencyTree>& pred,
                        const std::string& what) {
  if (gold.size() != pred.size())
    throw DataError(what + ": sentence count mismatch");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-gram count features for second-order dependency parsing"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_path, "JSON configuration file");
  app.add_option("--seed", g.seed, "master random seed (default 1)");
  app.add_option("--jobs", g.jobs, "parallel workers for corpus scans");
  app.add_flag("--strict", g.strict, "fail on malformed corpus lines");
  app.add_option("--enable", g.enable_groups, "enable a feature group")
      ->take_all();
  app.add_option("--disable", g.disable_groups, "disable a feature group")
      ->take_all();
  app.add_option("--surface-table", g.surface_table, "surface count table");
  app.add_option("--surface-paraphrase", g.surface_para,
                 "surface paraphrase TSV");
  app.add_option("--syntactic-table", g.syntactic_table,
                 "syntactic count table");
  app.add_option("--syntactic-paraphrase", g.syntactic_para,
                 "syntactic paraphrase TSV");

  // extract-queries
  auto* cmd_extract = app.add_subcommand(
      "extract-queries", "enumerate corpus queries from treebanks");
  std::vector<std::string> extract_inputs;
  std::string extract_out;
  cmd_extract->add_option("treebanks", extract_inputs, "CoNLL input files")
      ->required();
  cmd_extract->add_option("--out", extract_out, "output directory")
      ->required();

  // scan
  auto* cmd_scan =
      app.add_subcommand("scan", "stream corpus shards against a query set");
  std::string scan_kind, scan_queries, scan_table_out, scan_para_out;
  std::vector<std::string> scan_shards;
  cmd_scan->add_option("--kind", scan_kind, "web1t | books | syntactic")
      ->required();
  cmd_scan->add_option("--queries", scan_queries, "query directory")
      ->required();
  cmd_scan->add_option("--out", scan_table_out, "output count table")
      ->required();
  cmd_scan->add_option("--paraphrase-out", scan_para_out,
                       "output paraphrase TSV");
  cmd_scan->add_option("shards", scan_shards, "corpus files (.gz supported)")
      ->required();

  // build-table
  auto* cmd_build =
      app.add_subcommand("build-table", "merge shard tables, apply cutoff");
  std::vector<std::string> build_inputs;
  std::string build_out;
  std::optional<std::uint64_t> build_cutoff;
  cmd_build->add_option("tables", build_inputs, "input tables")->required();
  cmd_build->add_option("--out", build_out, "merged table")->required();
  cmd_build->add_option("--cutoff", build_cutoff,
                        "minimum count applied after merging");

  // train
  auto* cmd_train = app.add_subcommand("train", "train a parser with MIRA");
  std::string train_input, train_model_out;
  cmd_train->add_option("--train", train_input, "training CoNLL")->required();
  cmd_train->add_option("--model", train_model_out, "output model file")
      ->required();
  std::optional<int> train_order, train_k, train_iters;
  std::optional<std::string> train_loss;
  cmd_train->add_option("--order", train_order, "1 or 2 (default 2)");
  cmd_train->add_option("--k", train_k, "k-best size (default 5)");
  cmd_train->add_option("--iters", train_iters, "passes (default 10)");
  cmd_train->add_option("--loss", train_loss, "nopunc | punc");
  bool train_verbose = false;
  cmd_train->add_flag("--verbose", train_verbose, "progress to stderr");

  // parse
  auto* cmd_parse = app.add_subcommand("parse", "parse with a trained model");
  std::string parse_model, parse_input, parse_output;
  cmd_parse->add_option("--model", parse_model, "model file")->required();
  cmd_parse->add_option("--input", parse_input, "input CoNLL")->required();
  cmd_parse->add_option("--output", parse_output, "predicted CoNLL")
      ->required();

  // evaluate
  auto* cmd_eval = app.add_subcommand("evaluate", "UAS and significance");
  std::string eval_gold, eval_pred, eval_pred_b;
  bool eval_include_punct = false, eval_require_sig = false;
  int eval_resamples = 10000;
  cmd_eval->add_option("--gold", eval_gold, "gold CoNLL")->required();
  cmd_eval->add_option("--pred", eval_pred, "predicted CoNLL")->required();
  cmd_eval->add_option("--pred-b", eval_pred_b,
                       "second prediction file for significance");
  cmd_eval->add_flag("--include-punct", eval_include_punct,
                     "score punctuation tokens too");
  cmd_eval->add_flag("--require-significance", eval_require_sig,
                     "exit 3 unless p < 0.05");
  cmd_eval->add_option("--resamples", eval_resamples,
                       "bootstrap resamples (default 10000)");

  // analyze
  auto* cmd_analyze =
      app.add_subcommand("analyze", "per-POS attachment breakdown");
  std::string an_gold, an_pred_a, an_pred_b, an_out;
  cmd_analyze->add_option("--gold", an_gold, "gold CoNLL")->required();
  cmd_analyze->add_option("--pred-a", an_pred_a, "baseline predictions")
      ->required();
  cmd_analyze->add_option("--pred-b", an_pred_b, "comparison predictions");
  cmd_analyze->add_option("--out", an_out, "output TSV (default stdout)");
  bool an_include_punct = false;
  cmd_analyze->add_flag("--include-punct", an_include_punct,
                        "score punctuation tokens too");
  bool an_pretty = false;
  cmd_analyze->add_flag("--pretty", an_pretty,
                        "space-aligned table instead of TSV");

  // coverage
  auto* cmd_cov =
      app.add_subcommand("coverage", "queries with no table entries");
  std::string cov_queries, cov_table, cov_table_b, cov_out;
  cmd_cov->add_option("--queries", cov_queries, "query directory")
      ->required();
  cmd_cov->add_option("--table", cov_table, "count table")->required();
  cmd_cov->add_option("--table2", cov_table_b, "second table (intersection)");
  cmd_cov->add_option("--out", cov_out, "output TSV (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    finalize_config(g);
    const PunctPolicy punct = g.config.punct_policy();

    if (cmd_extract->parsed()) {
      QuerySet queries;
      for (const std::string& path : extract_inputs)
        queries = merge_query_sets(std::move(queries),
                                   extract_queries(read_treebank(path)));
      fs::create_directories(extract_out);
      write_query_files(queries, extract_out);
      std::cout << "queries: " << queries.arcs.size() << " arcs, "
                << queries.triples.size() << " triples, "
                << queries.siblings.size() << " siblings, "
                << queries.syn_keys.size() << " syntactic keys\n";
      return kExitOk;
    }

    if (cmd_scan->parsed()) {
      QuerySet queries = read_query_files(scan_queries);
      ScanOutput out = run_scan(parse_corpus_kind(scan_kind), scan_shards,
                                queries, g.config);
      out.table.write_file(scan_table_out);
      if (!scan_para_out.empty())
        write_paraphrase_file(scan_para_out, out.paraphrase);
      std::cout << "scanned " << out.stats.records << " records ("
                << out.stats.malformed << " malformed skipped), "
                << out.table.size() << " table entries\n";
      return kExitOk;
    }

    if (cmd_build->parsed()) {
      CountTable merged = CountTable::read_file(build_inputs[0]);
      for (std::size_t i = 1; i < build_inputs.size(); ++i)
        merged =
            CountTable::merge(merged, CountTable::read_file(build_inputs[i]));
      if (build_cutoff) merged.apply_cutoff(*build_cutoff);
      merged.write_file(build_out);
      std::cout << "merged " << build_inputs.size() << " tables into "
                << merged.size() << " entries\n";
      return kExitOk;
    }

    if (cmd_train->parsed()) {
      if (train_order) g.config.train.order = *train_order;
      if (train_k) g.config.train.training_k = *train_k;
      if (train_iters) g.config.train.iters = *train_iters;
      if (train_loss) g.config.train.loss_type = *train_loss;
      validate_resource_paths(g.config.groups, g.config);
      std::vector<Sentence> train = read_treebank(train_input);
      Model model = run_train(train, g.config, train_verbose);
      model.save_file(train_model_out);
      std::cout << "trained on " << train.size() << " sentences, "
                << model.alphabet.size() << " features\n";
      return kExitOk;
    }

    if (cmd_parse->parsed()) {
      Model model = Model::load_file(parse_model);
      std::vector<Sentence> input = read_treebank(parse_input);
      std::vector<DependencyTree> trees = run_parse(input, model, g.config);
      write_conll_file(parse_output, input, &trees);
      std::cout << "parsed " << input.size() << " sentences\n";
      return kExitOk;
    }

    if (cmd_eval->parsed()) {
      std::vector<Sentence> gold = read_treebank(eval_gold);
      std::vector<DependencyTree> pred = read_predictions(eval_pred);
      check_same_lengths(gold, pred, "evaluate");
      EvalReport report = uas(gold, pred, !eval_include_punct, punct);
      std::cout << "UAS\t" << format_pct(report.uas * 100) << "\t("
                << report.scored_tokens << " scored, "
                << report.excluded_tokens << " punctuation excluded)\n";
      if (!eval_pred_b.empty()) {
        std::vector<DependencyTree> pred_b = read_predictions(eval_pred_b);
        check_same_lengths(gold, pred_b, "evaluate");
        EvalReport report_b = uas(gold, pred_b, !eval_include_punct, punct);
        std::cout << "UAS-B\t" << format_pct(report_b.uas * 100) << "\n";
        BootstrapResult sig = bootstrap_significance(
            gold, pred, pred_b, eval_resamples, g.config.seed,
            !eval_include_punct, punct);
        std::cout << "delta\t"
                  << format_pct((report_b.uas - report.uas) * 100)
                  << "\nbetter\t" << (sig.better == 'b' ? "B" : "A")
                  << "\np-value\t" << sig.p << "\n";
        if (eval_require_sig && sig.p >= 0.05) return kExitNotSignificant;
      }
      return kExitOk;
    }

    if (cmd_analyze->parsed()) {
      std::vector<Sentence> gold = read_treebank(an_gold);
      std::vector<DependencyTree> pred_a = read_predictions(an_pred_a);
      check_same_lengths(gold, pred_a, "analyze");
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!an_out.empty()) {
        file.open(an_out);
        if (!file) throw DataError("cannot open output: " + an_out);
        out = &file;
      }
      std::vector<std::vector<std::string>> rows;
      if (an_pred_b.empty()) {
        EvalReport report = uas(gold, pred_a, !an_include_punct, punct);
        rows.push_back({"tag", "freq", "correct", "errors"});
        for (const auto& [tag, stat] : report.per_pos)
          rows.push_back({tag, std::to_string(stat.freq),
                          std::to_string(stat.correct),
                          std::to_string(stat.errors())});
      } else {
        std::vector<DependencyTree> pred_b = read_predictions(an_pred_b);
        check_same_lengths(gold, pred_b, "analyze");
        auto cmp =
            per_pos_comparison(gold, pred_a, pred_b, !an_include_punct, punct);
        rows.push_back({"tag", "freq", "base", "comb", "pct"});
        for (const auto& [tag, c] : cmp)
          rows.push_back({tag, std::to_string(c.freq),
                          std::to_string(c.correct_a),
                          std::to_string(c.correct_b),
                          format_pct(c.pct_of_reduction)});
      }
      if (an_pretty) {
        std::vector<std::size_t> widths(rows[0].size(), 0);
        for (const auto& row : rows)
          for (std::size_t c = 0; c < row.size(); ++c)
            widths[c] = std::max(widths[c], row[c].size());
        for (const auto& row : rows) {
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) *out << "  ";
            *out << row[c];
            if (c + 1 < row.size())
              *out << std::string(widths[c] - row[c].size(), ' ');
          }
          *out << '\n';
        }
      } else {
        for (const auto& row : rows) {
          for (std::size_t c = 0; c < row.size(); ++c)
            *out << (c ? "\t" : "") << row[c];
          *out << '\n';
        }
      }
      return kExitOk;
    }

    if (cmd_cov->parsed()) {
      QuerySet queries = read_query_files(cov_queries);
      CountTable table = CountTable::read_file(cov_table);
      auto keysets = table.corpus_id() == "syntactic"
                         ? syntactic_coverage_keysets(queries)
                         : surface_coverage_keysets(queries);
      std::ostream* out = &std::cout;
      std::ofstream file;
      if (!cov_out.empty()) {
        file.open(cov_out);
        if (!file) throw DataError("cannot open output: " + cov_out);
        out = &file;
      }
      CoverageReport report = coverage_report(keysets, table);
      *out << "table\tmissing\ttotal\tpct\n";
      *out << cov_table << '\t' << report.missing << '\t' << report.total
           << '\t' << format_pct(report.missing_fraction() * 100) << '\n';
      if (!cov_table_b.empty()) {
        CountTable table_b = CountTable::read_file(cov_table_b);
        auto keysets_b = table_b.corpus_id() == "syntactic"
                             ? syntactic_coverage_keysets(queries)
                             : surface_coverage_keysets(queries);
        CoverageReport report_b = coverage_report(keysets_b, table_b);
        *out << cov_table_b << '\t' << report_b.missing << '\t'
             << report_b.total << '\t'
             << format_pct(report_b.missing_fraction() * 100) << '\n';
        if (table.corpus_id() != table_b.corpus_id() &&
            (table.corpus_id() == "syntactic" ||
             table_b.corpus_id() == "syntactic"))
          throw ConfigError(
              "intersection needs two tables of the same key convention");
        std::uint64_t both = coverage_intersection(keysets, table, table_b);
        *out << "intersection\t" << both << '\t' << report.total << '\t'
             << format_pct(report.total == 0
                               ? 0.0
                               : 100.0 * both / report.total)
             << '\n';
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
