#include "ngdep/decoder.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#include "ngdep/errors.hpp"

namespace ngdep {

namespace {

// Partial head assignment over a span; -1 = assigned outside this item.
struct Entry {
  double score = 0;
  std::vector<std::int16_t> heads;
};

bool better(const Entry& a, const Entry& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.heads < b.heads;
}

Entry combine(const Entry& a, const Entry& b, double extra) {
  Entry out;
  out.score = a.score + b.score + extra;
  out.heads = a.heads;
  for (std::size_t i = 0; i < b.heads.size(); ++i)
    if (b.heads[i] >= 0) out.heads[i] = b.heads[i];
  return out;
}

using EntryList = std::vector<Entry>;

// Sorts candidates best-first, drops duplicate trees, caps at k.
void finalize_list(EntryList& list, int k) {
  std::sort(list.begin(), list.end(), better);
  list.erase(std::unique(list.begin(), list.end(),
                         [](const Entry& a, const Entry& b) {
                           return a.heads == b.heads;
                         }),
             list.end());
  if (static_cast<int>(list.size()) > k)
    list.resize(static_cast<std::size_t>(k));
}

// Chart accessor over flattened (s, t) spans.
class Chart {
 public:
  explicit Chart(int n) : n_(n), items_(static_cast<std::size_t>(n + 1) *
                                        (n + 1)) {}
  EntryList& at(int s, int t) {
    return items_[static_cast<std::size_t>(s) * (n_ + 1) + t];
  }

 private:
  int n_;
  std::vector<EntryList> items_;
};

}  // namespace

std::vector<ScoredTree> decode_second_order(const ScoreTables& scores,
                                            int k) {
  const int n = scores.n;
  if (n < 1) throw DataError("cannot decode an empty sentence");
  if (k < 1) throw ConfigError("k must be >= 1");
  const bool second = !scores.sib.empty();
  auto sib = [&](int p, int prev, int m) {
    return second ? scores.sib_score(p, prev, m) : 0.0;
  };

  Chart cr(n), cl(n), ir(n), il(n), sb(n);
  Entry base;
  base.heads.assign(static_cast<std::size_t>(n) + 1, -1);
  for (int s = 0; s <= n; ++s) {
    cr.at(s, s).push_back(base);
    cl.at(s, s).push_back(base);
  }

  EntryList scratch;
  auto cross = [&](const EntryList& a, const EntryList& b, double extra,
                   int assign_pos, int assign_head) {
    for (const Entry& ea : a) {
      for (const Entry& eb : b) {
        Entry e = combine(ea, eb, extra);
        if (assign_pos >= 0)
          e.heads[static_cast<std::size_t>(assign_pos)] =
              static_cast<std::int16_t>(assign_head);
        scratch.push_back(std::move(e));
      }
    }
  };

  for (int len = 1; len <= n; ++len) {
    for (int s = 0; s + len <= n; ++s) {
      const int t = s + len;

      // Sibling span: s and t are adjacent modifiers of a head outside.
      if (s >= 1) {
        scratch.clear();
        for (int r = s; r < t; ++r)
          cross(cr.at(s, r), cl.at(r + 1, t), 0.0, -1, 0);
        finalize_list(scratch, k);
        sb.at(s, t) = scratch;
      }

      // Incomplete right: arc s -> t.
      {
        scratch.clear();
        cross(cr.at(s, s), cl.at(s + 1, t),
              scores.arc_score(s, t) + sib(s, 0, t), t, s);
        if (s >= 1) {  // the root takes exactly one modifier
          for (int c = s + 1; c < t; ++c)
            cross(ir.at(s, c), sb.at(c, t),
                  scores.arc_score(s, t) + sib(s, c, t), t, s);
        }
        finalize_list(scratch, k);
        ir.at(s, t) = scratch;
      }

      // Incomplete left: arc t -> s (never onto the root).
      if (s >= 1) {
        scratch.clear();
        cross(cr.at(s, t - 1), cl.at(t, t),
              scores.arc_score(t, s) + sib(t, 0, s), s, t);
        for (int c = s + 1; c < t; ++c)
          cross(sb.at(s, c), il.at(c, t),
                scores.arc_score(t, s) + sib(t, c, s), s, t);
        finalize_list(scratch, k);
        il.at(s, t) = scratch;
      }

      // Complete right: head s, last modifier m.
      {
        scratch.clear();
        for (int m = s + 1; m <= t; ++m)
          cross(ir.at(s, m), cr.at(m, t), 0.0, -1, 0);
        finalize_list(scratch, k);
        cr.at(s, t) = scratch;
      }

      // Complete left: head t.
      if (s >= 1) {
        scratch.clear();
        for (int m = s; m < t; ++m)
          cross(cl.at(s, m), il.at(m, t), 0.0, -1, 0);
        finalize_list(scratch, k);
        cl.at(s, t) = scratch;
      }
    }
  }

  std::vector<ScoredTree> out;
  for (const Entry& e : cr.at(0, n)) {
    ScoredTree st;
    st.score = e.score;
    st.tree.heads.reserve(n);
    for (int i = 1; i <= n; ++i) st.tree.heads.push_back(e.heads[i]);
    out.push_back(std::move(st));
  }
  return out;
}

DependencyTree decode_first_order(const ScoreTables& scores) {
  ScoreTables arc_only;
  arc_only.n = scores.n;
  arc_only.arc = scores.arc;
  auto best = decode_second_order(arc_only, 1);
  return best.front().tree;
}

}  // namespace ngdep
