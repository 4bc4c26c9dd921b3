#include "ngdep/syntactic_scan.hpp"

#include <algorithm>

#include "ngdep/conll.hpp"
#include "ngdep/errors.hpp"
#include "ngdep/text.hpp"

namespace ngdep {

namespace {

SynToken parse_syn_token(const std::string& field) {
  // form/fpos/deplabel/head_index, split from the right; the form may
  // itself contain '/'.
  std::size_t p3 = field.rfind('/');
  if (p3 == std::string::npos || p3 == 0)
    throw DataError("token '" + field + "' lacks /fpos/deplabel/head fields");
  std::size_t p2 = field.rfind('/', p3 - 1);
  if (p2 == std::string::npos || p2 == 0)
    throw DataError("token '" + field + "' lacks /fpos/deplabel/head fields");
  std::size_t p1 = field.rfind('/', p2 - 1);
  if (p1 == std::string::npos || p1 == 0)
    throw DataError("token '" + field + "' lacks /fpos/deplabel/head fields");
  SynToken tok;
  tok.form = field.substr(0, p1);
  tok.fpos = field.substr(p1 + 1, p2 - p1 - 1);
  tok.deplabel = field.substr(p2 + 1, p3 - p2 - 1);
  tok.head_index = parse_int(field.substr(p3 + 1), "head index");
  if (tok.form.empty() || tok.fpos.empty())
    throw DataError("token '" + field + "' has an empty form or tag");
  return tok;
}

}  // namespace

SyntacticNgramRecord parse_syngram_line(const std::string& line) {
  std::vector<std::string> cols = split(line, '\t');
  if (cols.size() < 3)
    throw DataError("expected head_word, ngram, total_count columns");
  SyntacticNgramRecord rec;
  rec.head_word = cols[0];
  rec.total_count = parse_count(cols[2], "total_count");
  // Year breakdown columns beyond cols[2] are ignored.
  for (const std::string& field : split_ws(cols[1]))
    rec.tokens.push_back(parse_syn_token(field));
  if (rec.tokens.empty()) throw DataError("empty syntactic n-gram");
  std::vector<int> heads;
  heads.reserve(rec.tokens.size());
  for (const SynToken& t : rec.tokens) heads.push_back(t.head_index);
  if (auto why = tree_violation(heads, /*single_root=*/true))
    throw DataError("fragment is not a tree: " + *why);
  return rec;
}

std::vector<std::pair<int, int>> record_arcs(
    const SyntacticNgramRecord& record) {
  std::vector<std::pair<int, int>> arcs;
  for (int i = 0; i < static_cast<int>(record.tokens.size()); ++i)
    if (record.tokens[i].head_index != 0)
      arcs.emplace_back(record.tokens[i].head_index, i + 1);
  return arcs;
}

SyntacticQueries SyntacticQueries::build(const QuerySet& qs) {
  SyntacticQueries out;
  for (const SyntacticLookupKey& k : qs.syn_keys)
    out.first_order.insert(k.table_key());
  for (const TripleQuery& t : qs.triples) {
    out.second_order.insert(syn2_word_table_key(t.side(), t.surface_query()));
    out.second_order.insert(syn2_pos_table_key(t.side(), t.pos_query()));
  }
  for (const SiblingQuery& s : qs.siblings) {
    out.second_order.insert(sib2_word_table_key(s.surface_query()));
    out.second_order.insert(sib2_pos_table_key(s.pos_query()));
  }
  for (const ArcCandidate& a : qs.arcs)
    out.para_arcs.insert(syn_paraphrase_key(a.head_form, a.arg_form));
  return out;
}

void SyntacticAccumulator::accumulate(const SyntacticNgramRecord& record) {
  ++records_;
  const auto arcs = record_arcs(record);
  first_order(record, arcs);
  second_order(record, arcs);
  paraphrase(record, arcs);
}

void SyntacticAccumulator::first_order(
    const SyntacticNgramRecord& record,
    const std::vector<std::pair<int, int>>& arcs) {
  for (const auto& [h, a] : arcs) {
    const SynToken& ht = record.tokens[h - 1];
    const SynToken& at = record.tokens[a - 1];
    ArcCandidate arc;
    arc.head_form = ht.form;
    arc.head_fpos = ht.fpos;
    arc.arg_form = at.form;
    arc.arg_fpos = at.fpos;
    arc.head_position = h;
    arc.arg_position = a;
    arc.direction = h < a ? Direction::HeadLeft : Direction::HeadRight;
    arc.surface_distance = h < a ? a - h : h - a;
    for (const SyntacticLookupKey& key : syntactic_lookup_keys(arc)) {
      std::string table_key = key.table_key();
      if (queries_->first_order.count(table_key))
        counts_[table_key] += record.total_count;
    }
  }
}

void SyntacticAccumulator::second_order(
    const SyntacticNgramRecord& record,
    const std::vector<std::pair<int, int>>& arcs) {
  // Children grouped by parent, in linear order.
  std::vector<std::vector<int>> children(record.tokens.size() + 1);
  for (const auto& [h, a] : arcs) children[h].push_back(a);
  for (auto& c : children) std::sort(c.begin(), c.end());

  for (int p = 1; p <= static_cast<int>(record.tokens.size()); ++p) {
    const auto& kids = children[p];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        int x = kids[i], y = kids[j];  // x < y in linear order
        // Siblings need only a shared parent and preserved child order.
        auto sib_words = std::array<std::string, 2>{record.tokens[x - 1].form,
                                                    record.tokens[y - 1].form};
        auto sib_pos = std::array<std::string, 2>{record.tokens[x - 1].fpos,
                                                  record.tokens[y - 1].fpos};
        std::string wkey = sib2_word_table_key(sib_words);
        std::string pkey = sib2_pos_table_key(sib_pos);
        if (queries_->second_order.count(wkey))
          counts_[wkey] += record.total_count;
        if (queries_->second_order.count(pkey))
          counts_[pkey] += record.total_count;

        // Triples additionally pin the parent's position relative to the
        // children: both children on one side, inner child adjacent to the
        // parent in role order.
        if (p < x) {
          auto linw = std::array<std::string, 3>{record.tokens[p - 1].form,
                                                 sib_words[0], sib_words[1]};
          auto linp = std::array<std::string, 3>{record.tokens[p - 1].fpos,
                                                 sib_pos[0], sib_pos[1]};
          std::string twkey = syn2_word_table_key(ParentSide::First, linw);
          std::string tpkey = syn2_pos_table_key(ParentSide::First, linp);
          if (queries_->second_order.count(twkey))
            counts_[twkey] += record.total_count;
          if (queries_->second_order.count(tpkey))
            counts_[tpkey] += record.total_count;
        } else if (p > y) {
          auto linw = std::array<std::string, 3>{
              sib_words[0], sib_words[1], record.tokens[p - 1].form};
          auto linp = std::array<std::string, 3>{sib_pos[0], sib_pos[1],
                                                 record.tokens[p - 1].fpos};
          std::string twkey = syn2_word_table_key(ParentSide::Last, linw);
          std::string tpkey = syn2_pos_table_key(ParentSide::Last, linp);
          if (queries_->second_order.count(twkey))
            counts_[twkey] += record.total_count;
          if (queries_->second_order.count(tpkey))
            counts_[tpkey] += record.total_count;
        }
      }
    }
  }
}

void SyntacticAccumulator::paraphrase(
    const SyntacticNgramRecord& record,
    const std::vector<std::pair<int, int>>& arcs) {
  for (const auto& [h, a] : arcs) {
    std::string key = syn_paraphrase_key(record.tokens[h - 1].form,
                                         record.tokens[a - 1].form);
    if (!queries_->para_arcs.count(key)) continue;
    int lo = std::min(h, a), hi = std::max(h, a);
    SlotTally& tally = harvest_.queries[key];
    for (int t = 1; t <= static_cast<int>(record.tokens.size()); ++t) {
      if (t == h || t == a) continue;
      Slot word_slot, pos_slot;
      if (t < lo) {
        word_slot = Slot::Before;
        pos_slot = Slot::PosBefore;
      } else if (t > hi) {
        word_slot = Slot::After;
        pos_slot = Slot::PosAfter;
      } else {
        word_slot = Slot::Mid;
        pos_slot = Slot::PosMid;
      }
      tally.add(word_slot, record.tokens[t - 1].form, record.total_count);
      tally.add(pos_slot, record.tokens[t - 1].fpos, record.total_count);
    }
  }
}

void SyntacticAccumulator::merge(const SyntacticAccumulator& other) {
  for (const auto& [key, count] : other.counts_) counts_[key] += count;
  harvest_.merge(other.harvest_);
  records_ += other.records_;
}

CountTable SyntacticAccumulator::to_count_table(
    const std::string& corpus_id, const std::string& config_hash) const {
  CountTable table(corpus_id, config_hash);
  for (const auto& [key, count] : counts_)
    if (count > 0) table.add(key, count);
  return table;
}

namespace {

std::shared_ptr<const SyntacticQueries> queries_from(const QuerySet& qs) {
  return std::make_shared<const SyntacticQueries>(SyntacticQueries::build(qs));
}

}  // namespace

std::map<std::string, std::uint64_t> accumulate_first_order(
    const SyntacticNgramRecord& record,
    const std::vector<SyntacticLookupKey>& keys) {
  QuerySet qs;
  qs.syn_keys = keys;
  SyntacticAccumulator acc(queries_from(qs));
  acc.accumulate(record);
  return acc.counts();
}

std::map<std::string, std::uint64_t> accumulate_second_order(
    const SyntacticNgramRecord& record,
    const std::vector<TripleQuery>& triples,
    const std::vector<SiblingQuery>& siblings) {
  QuerySet qs;
  qs.triples = triples;
  qs.siblings = siblings;
  SyntacticAccumulator acc(queries_from(qs));
  acc.accumulate(record);
  return acc.counts();
}

ParaphraseHarvest harvest_syntactic_paraphrase(
    const SyntacticNgramRecord& record,
    const std::vector<ArcCandidate>& arcs) {
  QuerySet qs;
  qs.arcs = arcs;
  SyntacticAccumulator acc(queries_from(qs));
  acc.accumulate(record);
  return acc.harvest();
}

}  // namespace ngdep
