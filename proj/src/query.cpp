#include "ngdep/query.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "ngdep/errors.hpp"

namespace ngdep {

namespace {

// Representative distance for a bin, so queries reconstructed from files
// rebuild positions that land back in the same bin.
int bin_min_distance(const std::string& bin) {
  if (bin == "6-10") return 6;
  if (bin == ">10") return 11;
  if (bin.size() == 1 && bin[0] >= '1' && bin[0] <= '5') return bin[0] - '0';
  throw DataError("unknown distance bin '" + bin + "'");
}

Direction parse_direction(const std::string& s, int line_no) {
  if (s == "L") return Direction::HeadLeft;
  if (s == "R") return Direction::HeadRight;
  throw DataError("line " + std::to_string(line_no) + ": bad direction '" +
                  s + "'");
}

}  // namespace

std::array<std::string, 2> ArcCandidate::surface_query() const {
  if (direction == Direction::HeadLeft) return {head_form, arg_form};
  return {arg_form, head_form};
}

std::array<std::string, 3> TripleQuery::surface_query() const {
  if (side() == ParentSide::First) return {parent_form, c1_form, c2_form};
  return {c2_form, c1_form, parent_form};
}

std::array<std::string, 3> TripleQuery::pos_query() const {
  if (side() == ParentSide::First) return {parent_fpos, c1_fpos, c2_fpos};
  return {c2_fpos, c1_fpos, parent_fpos};
}

std::array<std::string, 2> SiblingQuery::surface_query() const {
  if (c1_first()) return {c1_form, c2_form};
  return {c2_form, c1_form};
}

std::array<std::string, 2> SiblingQuery::pos_query() const {
  if (c1_first()) return {c1_fpos, c2_fpos};
  return {c2_fpos, c1_fpos};
}

const char* syn_key_kind_id(SynKeyKind kind) {
  switch (kind) {
    case SynKeyKind::HeadWord: return "hw";
    case SynKeyKind::ArgWord: return "aw";
    case SynKeyKind::WordWord: return "ww";
    case SynKeyKind::WordWordDir: return "wwd";
    case SynKeyKind::HeadPos: return "hp";
    case SynKeyKind::ArgPos: return "ap";
    case SynKeyKind::PosChildDir: return "cdir";
    case SynKeyKind::PosHeadDir: return "hdir";
    case SynKeyKind::PosPos: return "pp";
    case SynKeyKind::PosPosDir: return "ppd";
    case SynKeyKind::WordPos: return "wp";
    case SynKeyKind::WordPosDir: return "wpd";
    case SynKeyKind::PosWord: return "pw";
    case SynKeyKind::PosWordDir: return "pwd";
  }
  throw DataError("unreachable syn key kind");
}

std::string SyntacticLookupKey::table_key() const {
  std::string out = "syn:";
  out += syn_key_kind_id(kind);
  for (const std::string& p : payload) {
    out += ':';
    out += p;
  }
  return out;
}

std::string pair_table_key(const std::string& pattern, const std::string& w1,
                           const std::string& w2) {
  return "pair:" + pattern + ":" + w1 + " " + w2;
}

std::string triple_table_key(const std::string& w1, const std::string& w2,
                             const std::string& w3) {
  return "triple:" + w1 + " " + w2 + " " + w3;
}

std::string syn2_word_table_key(ParentSide side,
                                const std::array<std::string, 3>& linear) {
  return std::string("syn2w:P") + static_cast<char>(side) + ":" + linear[0] +
         " " + linear[1] + " " + linear[2];
}

std::string syn2_pos_table_key(ParentSide side,
                               const std::array<std::string, 3>& linear) {
  return std::string("syn2p:P") + static_cast<char>(side) + ":" + linear[0] +
         " " + linear[1] + " " + linear[2];
}

std::string sib2_word_table_key(const std::array<std::string, 2>& linear) {
  return "sib2w:" + linear[0] + " " + linear[1];
}

std::string sib2_pos_table_key(const std::array<std::string, 2>& linear) {
  return "sib2p:" + linear[0] + " " + linear[1];
}

std::string syn_paraphrase_key(const std::string& head_form,
                               const std::string& arg_form) {
  return head_form + " " + arg_form;
}

std::string surface_paraphrase_key(const std::string& q1,
                                   const std::string& q2) {
  return q1 + " " + q2;
}

std::vector<ArcCandidate> enumerate_arc_pairs(const Sentence& sentence) {
  std::vector<ArcCandidate> out;
  const int n = sentence.size();
  out.reserve(static_cast<std::size_t>(n) * (n - 1));
  for (int h = 1; h <= n; ++h) {
    for (int a = 1; a <= n; ++a) {
      if (h == a) continue;
      const Token& ht = sentence.tokens[h - 1];
      const Token& at = sentence.tokens[a - 1];
      ArcCandidate arc;
      arc.head_form = ht.form;
      arc.head_fpos = ht.fpos;
      arc.arg_form = at.form;
      arc.arg_fpos = at.fpos;
      arc.head_position = h;
      arc.arg_position = a;
      arc.direction = h < a ? Direction::HeadLeft : Direction::HeadRight;
      arc.surface_distance = h < a ? a - h : h - a;
      out.push_back(std::move(arc));
    }
  }
  return out;
}

namespace {

template <typename T>
std::vector<T> dedup_sorted(std::vector<T> items) {
  std::sort(items.begin(), items.end(), [](const T& a, const T& b) {
    return serialize(a) < serialize(b);
  });
  items.erase(std::unique(items.begin(), items.end(),
                          [](const T& a, const T& b) {
                            return serialize(a) == serialize(b);
                          }),
              items.end());
  return items;
}

}  // namespace

std::vector<ArcCandidate> extract_arc_candidates(const Sentence& sentence) {
  return dedup_sorted(enumerate_arc_pairs(sentence));
}

std::pair<std::vector<TripleQuery>, std::vector<SiblingQuery>>
extract_second_order_candidates(const Sentence& sentence) {
  std::vector<TripleQuery> triples;
  std::vector<SiblingQuery> siblings;
  const int n = sentence.size();
  auto add = [&](int p, int c1, int c2) {
    const Token& pt = sentence.tokens[p - 1];
    const Token& t1 = sentence.tokens[c1 - 1];
    const Token& t2 = sentence.tokens[c2 - 1];
    TripleQuery tq;
    tq.parent_form = pt.form;
    tq.parent_fpos = pt.fpos;
    tq.c1_form = t1.form;
    tq.c1_fpos = t1.fpos;
    tq.c2_form = t2.form;
    tq.c2_fpos = t2.fpos;
    tq.parent_position = p;
    tq.c1_position = c1;
    tq.c2_position = c2;
    triples.push_back(std::move(tq));
    SiblingQuery sq;
    sq.c1_form = t1.form;
    sq.c1_fpos = t1.fpos;
    sq.c2_form = t2.form;
    sq.c2_fpos = t2.fpos;
    sq.c1_position = c1;
    sq.c2_position = c2;
    siblings.push_back(std::move(sq));
  };
  for (int p = 1; p <= n; ++p) {
    for (int c1 = p + 1; c1 <= n; ++c1)
      for (int c2 = c1 + 1; c2 <= n; ++c2) add(p, c1, c2);  // p < c1 < c2
    for (int c1 = p - 1; c1 >= 1; --c1)
      for (int c2 = c1 - 1; c2 >= 1; --c2) add(p, c1, c2);  // c2 < c1 < p
  }
  return {dedup_sorted(std::move(triples)), dedup_sorted(std::move(siblings))};
}

std::vector<SyntacticLookupKey> syntactic_lookup_keys(
    const ArcCandidate& arc) {
  const std::string d(1, direction_char(arc.direction));
  // Side of the child relative to the head, and of the head relative to the
  // child: a head-left arc has its child to the right.
  const std::string child_side = arc.direction == Direction::HeadLeft ? "R"
                                                                      : "L";
  const std::string head_side = d;
  std::vector<SyntacticLookupKey> keys;
  keys.reserve(kSynKeyKinds);
  auto put = [&](SynKeyKind kind, std::vector<std::string> payload) {
    keys.push_back(SyntacticLookupKey{kind, std::move(payload)});
  };
  put(SynKeyKind::HeadWord, {arc.head_form});
  put(SynKeyKind::ArgWord, {arc.arg_form});
  put(SynKeyKind::WordWord, {arc.head_form + " " + arc.arg_form});
  put(SynKeyKind::WordWordDir, {d, arc.head_form + " " + arc.arg_form});
  put(SynKeyKind::HeadPos, {arc.head_fpos});
  put(SynKeyKind::ArgPos, {arc.arg_fpos});
  put(SynKeyKind::PosChildDir, {child_side, arc.head_fpos});
  put(SynKeyKind::PosHeadDir, {head_side, arc.arg_fpos});
  put(SynKeyKind::PosPos, {arc.head_fpos + " " + arc.arg_fpos});
  put(SynKeyKind::PosPosDir, {d, arc.head_fpos + " " + arc.arg_fpos});
  put(SynKeyKind::WordPos, {arc.head_form + " " + arc.arg_fpos});
  put(SynKeyKind::WordPosDir, {d, arc.head_form + " " + arc.arg_fpos});
  put(SynKeyKind::PosWord, {arc.head_fpos + " " + arc.arg_form});
  put(SynKeyKind::PosWordDir, {d, arc.head_fpos + " " + arc.arg_form});
  return keys;
}

std::string serialize(const ArcCandidate& a) {
  std::string out = "arc\t";
  out += a.head_form;
  out += '\t';
  out += a.head_fpos;
  out += '\t';
  out += a.arg_form;
  out += '\t';
  out += a.arg_fpos;
  out += '\t';
  out += direction_char(a.direction);
  out += '\t';
  out += a.dist_bin();
  return out;
}

std::string serialize(const TripleQuery& t) {
  std::string out = "triple\t";
  out += t.parent_form;
  out += '\t';
  out += t.parent_fpos;
  out += '\t';
  out += t.c1_form;
  out += '\t';
  out += t.c1_fpos;
  out += '\t';
  out += t.c2_form;
  out += '\t';
  out += t.c2_fpos;
  out += "\tP";
  out += static_cast<char>(t.side());
  out += '\t';
  out += t.child_dist_bin();
  return out;
}

std::string serialize(const SiblingQuery& s) {
  std::string out = "sibling\t";
  out += s.c1_form;
  out += '\t';
  out += s.c1_fpos;
  out += '\t';
  out += s.c2_form;
  out += '\t';
  out += s.c2_fpos;
  out += '\t';
  out += s.c1_first() ? "S12" : "S21";
  out += '\t';
  out += s.child_dist_bin();
  return out;
}

std::string serialize(const SyntacticLookupKey& k) {
  std::string out = syn_key_kind_id(k.kind);
  for (const std::string& p : k.payload) {
    out += '\t';
    out += p;
  }
  return out;
}

ArcCandidate parse_arc_query(const std::string& line, int line_no) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() != 7 || cols[0] != "arc")
    throw DataError("line " + std::to_string(line_no) +
                    ": malformed arc query");
  ArcCandidate a;
  a.head_form = cols[1];
  a.head_fpos = cols[2];
  a.arg_form = cols[3];
  a.arg_fpos = cols[4];
  a.direction = parse_direction(cols[5], line_no);
  a.surface_distance = bin_min_distance(cols[6]);
  if (a.direction == Direction::HeadLeft) {
    a.head_position = 1;
    a.arg_position = 1 + a.surface_distance;
  } else {
    a.arg_position = 1;
    a.head_position = 1 + a.surface_distance;
  }
  return a;
}

TripleQuery parse_triple_query(const std::string& line, int line_no) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() != 9 || cols[0] != "triple")
    throw DataError("line " + std::to_string(line_no) +
                    ": malformed triple query");
  TripleQuery t;
  t.parent_form = cols[1];
  t.parent_fpos = cols[2];
  t.c1_form = cols[3];
  t.c1_fpos = cols[4];
  t.c2_form = cols[5];
  t.c2_fpos = cols[6];
  int cd = bin_min_distance(cols[8]);
  if (cols[7] == "P1") {
    t.parent_position = 1;
    t.c1_position = 2;
    t.c2_position = 2 + cd;
  } else if (cols[7] == "P3") {
    t.c2_position = 1;
    t.c1_position = 1 + cd;
    t.parent_position = 2 + cd;
  } else {
    throw DataError("line " + std::to_string(line_no) +
                    ": bad parent side '" + cols[7] + "'");
  }
  return t;
}

SiblingQuery parse_sibling_query(const std::string& line, int line_no) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() != 7 || cols[0] != "sibling")
    throw DataError("line " + std::to_string(line_no) +
                    ": malformed sibling query");
  SiblingQuery s;
  s.c1_form = cols[1];
  s.c1_fpos = cols[2];
  s.c2_form = cols[3];
  s.c2_fpos = cols[4];
  int cd = bin_min_distance(cols[6]);
  if (cols[5] == "S12") {
    s.c1_position = 1;
    s.c2_position = 1 + cd;
  } else if (cols[5] == "S21") {
    s.c2_position = 1;
    s.c1_position = 1 + cd;
  } else {
    throw DataError("line " + std::to_string(line_no) + ": bad order '" +
                    cols[5] + "'");
  }
  return s;
}

SyntacticLookupKey parse_syn_key(const std::string& line, int line_no) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() < 2)
    throw DataError("line " + std::to_string(line_no) +
                    ": malformed syntactic key");
  SyntacticLookupKey k;
  bool found = false;
  for (int i = 0; i < kSynKeyKinds; ++i) {
    if (cols[0] == syn_key_kind_id(static_cast<SynKeyKind>(i))) {
      k.kind = static_cast<SynKeyKind>(i);
      found = true;
      break;
    }
  }
  if (!found)
    throw DataError("line " + std::to_string(line_no) +
                    ": unknown syntactic key kind '" + cols[0] + "'");
  k.payload.assign(cols.begin() + 1, cols.end());
  for (const std::string& p : k.payload)
    if (p.empty())
      throw DataError("line " + std::to_string(line_no) +
                      ": empty payload field");
  // Directional kinds carry (direction, payload); the rest a single field.
  const bool directional =
      k.kind == SynKeyKind::WordWordDir || k.kind == SynKeyKind::PosChildDir ||
      k.kind == SynKeyKind::PosHeadDir || k.kind == SynKeyKind::PosPosDir ||
      k.kind == SynKeyKind::WordPosDir || k.kind == SynKeyKind::PosWordDir;
  if (k.payload.size() != (directional ? 2u : 1u))
    throw DataError("line " + std::to_string(line_no) + ": kind '" + cols[0] +
                    "' expects " + (directional ? "2" : "1") +
                    " payload fields");
  return k;
}

QuerySet extract_queries(const std::vector<Sentence>& sentences) {
  QuerySet qs;
  for (const Sentence& s : sentences) {
    auto arcs = extract_arc_candidates(s);
    for (ArcCandidate& a : arcs) {
      for (SyntacticLookupKey& k : syntactic_lookup_keys(a))
        qs.syn_keys.push_back(std::move(k));
      qs.arcs.push_back(std::move(a));
    }
    auto [triples, siblings] = extract_second_order_candidates(s);
    std::move(triples.begin(), triples.end(), std::back_inserter(qs.triples));
    std::move(siblings.begin(), siblings.end(),
              std::back_inserter(qs.siblings));
  }
  qs.arcs = dedup_sorted(std::move(qs.arcs));
  qs.triples = dedup_sorted(std::move(qs.triples));
  qs.siblings = dedup_sorted(std::move(qs.siblings));
  qs.syn_keys = dedup_sorted(std::move(qs.syn_keys));
  return qs;
}

QuerySet merge_query_sets(QuerySet a, const QuerySet& b) {
  a.arcs.insert(a.arcs.end(), b.arcs.begin(), b.arcs.end());
  a.triples.insert(a.triples.end(), b.triples.begin(), b.triples.end());
  a.siblings.insert(a.siblings.end(), b.siblings.begin(), b.siblings.end());
  a.syn_keys.insert(a.syn_keys.end(), b.syn_keys.begin(), b.syn_keys.end());
  a.arcs = dedup_sorted(std::move(a.arcs));
  a.triples = dedup_sorted(std::move(a.triples));
  a.siblings = dedup_sorted(std::move(a.siblings));
  a.syn_keys = dedup_sorted(std::move(a.syn_keys));
  return a;
}

namespace {

template <typename T>
void write_query_file(const std::string& path, const std::vector<T>& items) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open query file for writing: " + path);
  for (const T& item : items) out << serialize(item) << '\n';
}

template <typename T, typename Parse>
std::vector<T> read_query_file(const std::string& path, Parse parse) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open query file: " + path);
  std::vector<T> out;
  std::string line;
  int line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      out.push_back(parse(line, line_no));
    }
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
  return out;
}

}  // namespace

void write_query_files(const QuerySet& queries, const std::string& dir) {
  write_query_file(dir + "/arcs.tsv", queries.arcs);
  write_query_file(dir + "/triples.tsv", queries.triples);
  write_query_file(dir + "/siblings.tsv", queries.siblings);
  write_query_file(dir + "/synkeys.tsv", queries.syn_keys);
}

QuerySet read_query_files(const std::string& dir) {
  QuerySet qs;
  qs.arcs =
      read_query_file<ArcCandidate>(dir + "/arcs.tsv", parse_arc_query);
  qs.triples =
      read_query_file<TripleQuery>(dir + "/triples.tsv", parse_triple_query);
  qs.siblings = read_query_file<SiblingQuery>(dir + "/siblings.tsv",
                                              parse_sibling_query);
  qs.syn_keys =
      read_query_file<SyntacticLookupKey>(dir + "/synkeys.tsv", parse_syn_key);
  return qs;
}

}  // namespace ngdep
