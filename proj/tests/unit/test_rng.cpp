#include <doctest.h>

#include <set>
#include <vector>

#include "mfsteiner/rng.hpp"

using namespace mfsteiner;

TEST_CASE("stream outputs match a reference implementation") {
  Stream s({1, 2, 3});
  CHECK(s() == 0x8a041c8dca4cc948ULL);
  CHECK(s() == 0x5ee52fe528f80646ULL);
  CHECK(s() == 0x6b32163744a9aee8ULL);
  CHECK(s.position() == 3);
}

TEST_CASE("purpose tags are FNV-1a") {
  CHECK(purpose_tag("") == 0xcbf29ce484222325ULL);
  CHECK(purpose_tag("instance") == 0x414a134c24ef8152ULL);
}

TEST_CASE("equal seeds give equal streams, at() agrees with operator()") {
  Stream a({7, 8, 9});
  Stream b({7, 8, 9});
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = a();
    CHECK(x == b());
    CHECK(x == b.at(i));
  }
}

TEST_CASE("distinct triples give distinct streams") {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t m = 0; m < 4; ++m) {
    for (std::uint64_t p = 0; p < 4; ++p) {
      for (std::uint64_t t = 0; t < 4; ++t) {
        firsts.insert(Stream({m, p, t})());
      }
    }
  }
  CHECK(firsts.size() == 64);
  // Swapping fields must not collide.
  CHECK(Stream({1, 2, 0})() != Stream({2, 1, 0})());
  CHECK(Stream({0, 1, 2})() != Stream({0, 2, 1})());
}

TEST_CASE("uniform ranges") {
  Stream s({11, 0, 0});
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = s.uniform();
    const double v = s.uniform_open();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("below is in range and covers every value") {
  Stream s({5, 5, 5});
  CHECK(s.below(0) == 0);
  CHECK(s.below(1) == 0);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = s.below(7);
    REQUIRE(x < 7);
    ++hits[x];
  }
  for (int h : hits) CHECK(h > 800);
}
