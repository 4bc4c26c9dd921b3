#pragma once

#include <array>
#include <string>
#include <vector>

#include "ngdep/conll.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

// A head-argument pair considered by the parser. Positions are 1-based
// sentence indices; after deduplication they are representative (the first
// occurrence), since identity is (forms, fposes, direction, distance bin).
struct ArcCandidate {
  std::string head_form, head_fpos;
  std::string arg_form, arg_fpos;
  int head_position = 0;
  int arg_position = 0;
  Direction direction = Direction::HeadLeft;
  int surface_distance = 0;

  std::string dist_bin() const { return distance_bin(surface_distance); }
  // Forms in linear order: (q1, q2) with q1 preceding q2.
  std::array<std::string, 2> surface_query() const;
};

enum class ParentSide : char { First = '1', Last = '3' };

// A parent with two adjacent same-side children; child1 lies strictly
// between the parent and child2.
struct TripleQuery {
  std::string parent_form, parent_fpos;
  std::string c1_form, c1_fpos;
  std::string c2_form, c2_fpos;
  int parent_position = 0, c1_position = 0, c2_position = 0;

  ParentSide side() const {
    return parent_position < c1_position ? ParentSide::First
                                         : ParentSide::Last;
  }
  int child_distance() const {
    return c1_position < c2_position ? c2_position - c1_position
                                     : c1_position - c2_position;
  }
  std::string child_dist_bin() const { return distance_bin(child_distance()); }
  std::array<std::string, 3> surface_query() const;  // forms, linear order
  std::array<std::string, 3> pos_query() const;      // fposes, linear order
};

struct SiblingQuery {
  std::string c1_form, c1_fpos;
  std::string c2_form, c2_fpos;
  int c1_position = 0, c2_position = 0;

  bool c1_first() const { return c1_position < c2_position; }
  int child_distance() const {
    return c1_first() ? c2_position - c1_position : c1_position - c2_position;
  }
  std::string child_dist_bin() const { return distance_bin(child_distance()); }
  std::array<std::string, 2> surface_query() const;
  std::array<std::string, 2> pos_query() const;
};

// The 14 first-order lookup templates, in table order.
enum class SynKeyKind : int {
  HeadWord,     // hold (head)
  ArgWord,      // hearing (arg)
  WordWord,     // hold -> hearing
  WordWordDir,  // hold -> hearing (head left)
  HeadPos,      // VB (head)
  ArgPos,       // NN (arg)
  PosChildDir,  // VB (child right)
  PosHeadDir,   // NN (head left)
  PosPos,       // VB -> NN
  PosPosDir,    // VB -> NN (head left)
  WordPos,      // hold -> NN
  WordPosDir,   // hold -> NN (head left)
  PosWord,      // VB -> hearing
  PosWordDir,   // VB -> hearing (head left)
};

inline constexpr int kSynKeyKinds = 14;
const char* syn_key_kind_id(SynKeyKind kind);

struct SyntacticLookupKey {
  SynKeyKind kind;
  std::vector<std::string> payload;

  // Canonical count-table key, e.g. "syn:wwd:L:hold hearing".
  std::string table_key() const;
};

// Canonical count-table keys shared by the scanners and the parser.
std::string pair_table_key(const std::string& pattern, const std::string& w1,
                           const std::string& w2);
std::string triple_table_key(const std::string& w1, const std::string& w2,
                             const std::string& w3);
std::string syn2_word_table_key(ParentSide side,
                                const std::array<std::string, 3>& linear);
std::string syn2_pos_table_key(ParentSide side,
                               const std::array<std::string, 3>& linear);
std::string sib2_word_table_key(const std::array<std::string, 2>& linear);
std::string sib2_pos_table_key(const std::array<std::string, 2>& linear);
// Role-ordered key for syntactic paraphrase harvests.
std::string syn_paraphrase_key(const std::string& head_form,
                               const std::string& arg_form);
// Linear-ordered key for surface paraphrase harvests.
std::string surface_paraphrase_key(const std::string& q1,
                                   const std::string& q2);

// All ordered (head, arg) pairs over real tokens, no deduplication;
// |result| = n(n-1).
std::vector<ArcCandidate> enumerate_arc_pairs(const Sentence& sentence);

// Deduplicated by (forms, fposes, direction, distance bin), sorted by
// serialization.
std::vector<ArcCandidate> extract_arc_candidates(const Sentence& sentence);

// All (parent, child1, child2) with p<c1<c2 or c2<c1<p over real tokens;
// siblings are the (child1, child2) projection. The artificial root never
// appears: root-parent structures exist only inside the decoder and are
// skipped for corpus queries.
std::pair<std::vector<TripleQuery>, std::vector<SiblingQuery>>
extract_second_order_candidates(const Sentence& sentence);

// Exactly the 14 template instantiations, in table order.
std::vector<SyntacticLookupKey> syntactic_lookup_keys(const ArcCandidate& arc);

// The full pre-extracted query inventory for a treebank collection.
struct QuerySet {
  std::vector<ArcCandidate> arcs;
  std::vector<TripleQuery> triples;
  std::vector<SiblingQuery> siblings;
  std::vector<SyntacticLookupKey> syn_keys;
};

// Union over all sentences, deduplicated and sorted.
QuerySet extract_queries(const std::vector<Sentence>& sentences);
QuerySet merge_query_sets(QuerySet a, const QuerySet& b);

// Serialized TSV line (also the dedup/sort key).
std::string serialize(const ArcCandidate& a);
std::string serialize(const TripleQuery& t);
std::string serialize(const SiblingQuery& s);
std::string serialize(const SyntacticLookupKey& k);

ArcCandidate parse_arc_query(const std::string& line, int line_no);
TripleQuery parse_triple_query(const std::string& line, int line_no);
SiblingQuery parse_sibling_query(const std::string& line, int line_no);
SyntacticLookupKey parse_syn_key(const std::string& line, int line_no);

// One file per family under `dir`: arcs.tsv, triples.tsv, siblings.tsv,
// synkeys.tsv.
void write_query_files(const QuerySet& queries, const std::string& dir);
QuerySet read_query_files(const std::string& dir);

}  // namespace ngdep
