#include <doctest.h>

#include <sstream>

#include "ngdep/count_store.hpp"
#include "ngdep/errors.hpp"
#include "oracles.hpp"

using namespace ngdep;

TEST_CASE("bucketize evaluates the log2/5 formula exactly") {
  CHECK(bucketize(1) == 0);
  CHECK(bucketize(32) == 5);
  CHECK(bucketize(15000) == 10);
  CHECK(bucketize(80129000) == 25);
}

TEST_CASE("bucket boundaries are exact at powers of two") {
  for (int k = 1; k <= 12; ++k) {
    std::uint64_t boundary = 1ULL << (5 * k);
    CHECK(bucketize(boundary) == 5 * k);
    CHECK(bucketize(boundary - 1) == 5 * (k - 1));
  }
}

TEST_CASE("bucketize is monotone non-decreasing") {
  oracle::Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    std::uint64_t a = 1 + rng.below(1ULL << 40);
    std::uint64_t b = a + rng.below(1ULL << 40);
    CHECK(bucketize(a) <= bucketize(b));
  }
}

TEST_CASE("zero frequency is absent, not bucket 0") {
  CHECK(!bucket_label(0).has_value());
  CHECK(bucket_label(1).value() == 0);
  CHECK_THROWS_AS(bucketize(0), DataError);
}

TEST_CASE("cumulative buckets enumerate 0..B") {
  CHECK(cumulative_buckets(0) == std::vector<int>{0});
  CHECK(cumulative_buckets(10) == std::vector<int>{0, 5, 10});
  CHECK(cumulative_buckets(25).size() == 6);
  CHECK_THROWS_AS(cumulative_buckets(7), DataError);
}

TEST_CASE("cutoff boundary is inclusive") {
  CountTable t("fix", "h");
  t.add("k1", 9999);
  t.add("k2", 10000);
  t.apply_cutoff(10000);
  CHECK(t.size() == 1);
  CHECK(t.get("k2") == 10000);
  CHECK(t.cutoff() == 10000);

  CountTable id("fix", "h");
  id.add("a", 1);
  id.apply_cutoff(0);
  CHECK(id.size() == 1);

  CountTable empty("fix", "h");
  empty.apply_cutoff(10000);
  CHECK(empty.size() == 0);
}

TEST_CASE("merge sums counts key-wise") {
  CountTable a("fix", "h"), b("fix", "h");
  a.add("k", 3);
  b.add("k", 4);
  b.add("other", 2);
  CountTable m = CountTable::merge(a, b);
  CHECK(m.get("k") == 7);
  CHECK(m.get("other") == 2);

  CountTable wrong("other-corpus", "h");
  CHECK_THROWS_AS(CountTable::merge(a, wrong), ConfigError);
  CountTable wrong_cfg("fix", "h2");
  CHECK_THROWS_AS(CountTable::merge(a, wrong_cfg), ConfigError);
}

TEST_CASE("merge is commutative and associative") {
  oracle::Rng rng(17);
  auto random_table = [&] {
    CountTable t("fix", "h");
    for (int i = 0; i < 40; ++i)
      t.add("k" + std::to_string(rng.below(30)), rng.below(100));
    return t;
  };
  for (int trial = 0; trial < 20; ++trial) {
    CountTable a = random_table(), b = random_table(), c = random_table();
    std::ostringstream ab_c, a_bc, ab, ba;
    CountTable::merge(CountTable::merge(a, b), c).write(ab_c);
    CountTable::merge(a, CountTable::merge(b, c)).write(a_bc);
    CountTable::merge(a, b).write(ab);
    CountTable::merge(b, a).write(ba);
    CHECK(ab_c.str() == a_bc.str());
    CHECK(ab.str() == ba.str());
  }
}

TEST_CASE("cutoff must run after the full merge") {
  // Two half-shards each below the cutoff; the true total survives it.
  CountTable shard1("fix", "h"), shard2("fix", "h");
  shard1.add("k", 6000);
  shard2.add("k", 6000);
  CountTable merged = CountTable::merge(shard1, shard2);
  merged.apply_cutoff(10000);
  CHECK(merged.get("k") == 12000);

  CountTable early1 = shard1, early2 = shard2;
  early1.apply_cutoff(10000);
  early2.apply_cutoff(10000);
  CountTable broken = CountTable::merge(early1, early2);
  CHECK(broken.get("k") == 0);  // cutoff-then-merge loses the key
}

TEST_CASE("table read/write round trip is bit-exact") {
  oracle::Rng rng(23);
  CountTable t("fix", "cfg123");
  for (int i = 0; i < 5000; ++i)
    t.add("key:" + std::to_string(rng.next()), 1 + rng.below(1ULL << 50));
  t.apply_cutoff(2);
  std::ostringstream first;
  t.write(first);
  std::istringstream in(first.str());
  CountTable back = CountTable::read(in, "mem");
  std::ostringstream second;
  back.write(second);
  CHECK(first.str() == second.str());
  CHECK(back.corpus_id() == "fix");
  CHECK(back.config_hash() == "cfg123");
  CHECK(back.cutoff() == 2);
}

TEST_CASE("table reader rejects malformed files") {
  auto read = [](const std::string& text) {
    std::istringstream in(text);
    return CountTable::read(in, "mem");
  };
  const std::string meta =
      "#meta\tcorpus\tfix\n#meta\tconfig\th\n#meta\tcutoff\t0\n";
  CHECK_THROWS_AS(read(meta + "b\t1\na\t2\n"), DataError);   // unsorted
  CHECK_THROWS_AS(read(meta + "a\t1\na\t2\n"), DataError);   // duplicate
  CHECK_THROWS_AS(read(meta + "a\tx\n"), DataError);         // bad count
  CHECK_THROWS_AS(read("a\t1\n"), DataError);                // missing meta
  CHECK_THROWS_AS(read(meta + "a\n"), DataError);            // missing count
  CHECK(read(meta).size() == 0);
}

TEST_CASE("config fingerprints separate different configurations") {
  CHECK(config_fingerprint("a") != config_fingerprint("b"));
  CHECK(config_fingerprint("same") == config_fingerprint("same"));
}
