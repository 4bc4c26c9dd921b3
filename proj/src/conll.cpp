#include "ngdep/conll.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

std::vector<int> Sentence::gold_heads() const {
  std::vector<int> heads;
  heads.reserve(tokens.size());
  for (const Token& t : tokens) heads.push_back(t.gold_head);
  return heads;
}

std::optional<std::string> tree_violation(const std::vector<int>& heads,
                                          bool single_root) {
  const int n = static_cast<int>(heads.size());
  if (n == 0) return "empty sentence";
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    if (heads[i] < 0 || heads[i] > n)
      return "head " + std::to_string(heads[i]) + " of token " +
             std::to_string(i + 1) + " out of range [0," + std::to_string(n) +
             "]";
    if (heads[i] == i + 1)
      return "token " + std::to_string(i + 1) + " is its own head";
    if (heads[i] == 0) ++roots;
  }
  if (roots == 0) return "no token attaches to the root";
  if (single_root && roots != 1)
    return std::to_string(roots) + " tokens attach to the root";
  // Walk up from every token; a cycle never reaches 0 within n steps.
  for (int i = 1; i <= n; ++i) {
    int cur = i;
    int steps = 0;
    while (cur != 0) {
      cur = heads[cur - 1];
      if (++steps > n)
        return "cyclic heads involving token " + std::to_string(i);
    }
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw DataError("line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

std::vector<Sentence> parse_conll(std::istream& in, const ConllOptions& opts) {
  std::vector<Sentence> out;
  Sentence cur;
  std::vector<int> token_lines;  // source line of each token in `cur`
  int line_no = 0;
  int sent_first_line = 0;

  auto finish_sentence = [&] {
    if (cur.tokens.empty()) return;
    const int n = cur.size();
    for (int i = 0; i < n; ++i)
      if (cur.tokens[i].gold_head > n)
        fail(token_lines[i],
             "HEAD " + std::to_string(cur.tokens[i].gold_head) +
                 " out of range for a " + std::to_string(n) +
                 "-token sentence");
    if (auto why = tree_violation(cur.gold_heads(), opts.single_root))
      fail(sent_first_line, "invalid gold tree: " + *why);
    out.push_back(std::move(cur));
    cur = Sentence{};
    token_lines.clear();
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish_sentence();
      continue;
    }
    if (line[0] == '#') continue;
    if (cur.tokens.empty()) sent_first_line = line_no;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 10)
      fail(line_no, "expected 10 tab-separated columns, got " +
                        std::to_string(cols.size()));
    Token tok;
    try {
      tok.index = parse_int(cols[0], "ID");
      tok.gold_head = parse_int(cols[6], "HEAD");
    } catch (const DataError& e) {
      fail(line_no, e.what());
    }
    if (tok.index != cur.size() + 1)
      fail(line_no, "ID " + cols[0] + " breaks the 1,2,... sequence");
    if (tok.gold_head < 0) fail(line_no, "negative HEAD");
    if (tok.gold_head == tok.index) fail(line_no, "token is its own head");
    tok.form = cols[1];
    tok.lemma = cols[2];
    tok.cpos = cols[3];
    tok.fpos = cols[4];
    tok.feats = cols[5];
    tok.deprel = cols[7];
    tok.phead = cols[8];
    tok.pdeprel = cols[9];
    if (tok.form.empty()) fail(line_no, "empty FORM");
    if (tok.fpos.empty()) fail(line_no, "empty FPOS");
    cur.tokens.push_back(std::move(tok));
    token_lines.push_back(line_no);
  }
  finish_sentence();
  return out;
}

std::vector<Sentence> parse_conll_file(const std::string& path,
                                       const ConllOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open treebank file: " + path);
  try {
    return parse_conll(in, opts);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_conll(std::ostream& out, const std::vector<Sentence>& sentences,
                 const std::vector<DependencyTree>* predicted) {
  if (predicted && predicted->size() != sentences.size())
    throw DataError("prediction count " + std::to_string(predicted->size()) +
                    " does not match sentence count " +
                    std::to_string(sentences.size()));
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    const Sentence& sent = sentences[s];
    if (predicted && (*predicted)[s].size() != sent.size())
      throw DataError("prediction length mismatch at sentence " +
                      std::to_string(s + 1));
    for (int i = 0; i < sent.size(); ++i) {
      const Token& t = sent.tokens[i];
      int head = predicted ? (*predicted)[s].heads[i] : t.gold_head;
      const std::string& deprel = predicted ? "_" : t.deprel;
      out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.cpos
          << '\t' << t.fpos << '\t' << t.feats << '\t' << head << '\t'
          << deprel << '\t' << t.phead << '\t' << t.pdeprel << '\n';
    }
    out << '\n';
  }
}

void write_conll_file(const std::string& path,
                      const std::vector<Sentence>& sentences,
                      const std::vector<DependencyTree>* predicted) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open output file: " + path);
  write_conll(out, sentences, predicted);
}

}  // namespace ngdep
