#include "betakit/words.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"

using namespace betakit;

namespace {

// Brute-force oracle: all words of length n over digits 0..maxd, lex order.
std::vector<DigitWord> all_words(std::size_t n, Digit maxd) {
  std::vector<DigitWord> out;
  std::vector<Digit> v(n, 0);
  while (true) {
    out.push_back(DigitWord(std::vector<Digit>(v)));
    std::size_t pos = n;
    while (pos > 0) {
      if (v[pos - 1] < maxd) {
        v[pos - 1] += 1;
        std::fill(v.begin() + pos, v.end(), 0);
        break;
      }
      --pos;
    }
    if (pos == 0) break;
  }
  return out;
}

// Oracle self-admissibility straight from the definition.
bool oracle_self_admissible(const DigitWord& w) {
  if (w[0] == 0) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!lex_leq(shift(w, i), w.prefix(w.size() - i))) return false;
  }
  return true;
}

bool oracle_admissible(const DigitWord& w, const DigitStream& ceiling) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    DigitWord s = i == 0 ? w : shift(w, i);
    if (!lex_leq(s, ceiling.prefix(w.size() - i))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("lex_compare with zero padding") {
  CHECK(lex_compare(DigitWord{1, 0}, DigitWord{0, 1}) == Ordering::greater);
  CHECK(lex_compare(DigitWord{1, 0}, DigitWord{1}) == Ordering::equal);
  CHECK(lex_compare(DigitWord{1, 0, 1}, DigitWord{1, 1}) == Ordering::less);
  CHECK(lex_compare(DigitWord{1}, DigitWord{1, 0, 0}) == Ordering::equal);
}

TEST_CASE("shift") {
  CHECK(shift(DigitWord{1, 0, 1}, 1) == DigitWord{0, 1});
  CHECK(shift(DigitWord{1, 0, 1}, 0) == DigitWord{1, 0, 1});
  CHECK(shift(DigitWord{2, 1, 0}, 2) == DigitWord{0});
  CHECK_THROWS_AS(shift(DigitWord{1, 0}, 2), std::out_of_range);
}

TEST_CASE("is_self_admissible examples") {
  CHECK(is_self_admissible(DigitWord{1, 0, 1}));
  CHECK_FALSE(is_self_admissible(DigitWord{1, 2}));
  CHECK(is_self_admissible(DigitWord{2, 1, 1}));
  CHECK_FALSE(is_self_admissible(DigitWord{0, 1}));  // leading zero rejected
}

TEST_CASE("is_self_admissible agrees with the definition, exhaustively") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const DigitWord& w : all_words(n, 3)) {
      CAPTURE(w.to_string());
      CHECK(is_self_admissible(w) == oracle_self_admissible(w));
    }
  }
}

TEST_CASE("self-admissibility is prefix-monotone") {
  for (const DigitWord& w : all_words(7, 2)) {
    if (!is_self_admissible(w)) continue;
    for (std::size_t m = 1; m < w.size(); ++m) {
      CAPTURE(w.to_string());
      CHECK(is_self_admissible(w.prefix(m)));
    }
  }
}

TEST_CASE("is_admissible examples") {
  DigitStream golden = DigitStream::periodic(DigitWord{1, 0});
  DigitStream base2 = DigitStream::periodic(DigitWord{1});
  CHECK_FALSE(is_admissible(DigitWord{1, 1}, golden));
  CHECK(is_admissible(DigitWord{1, 0, 1}, golden));
  CHECK(is_admissible(DigitWord{1, 1, 1}, base2));
}

TEST_CASE("is_admissible agrees with definition oracle") {
  DigitStream tri = DigitStream::periodic(DigitWord{1, 1, 0});
  DigitStream twotwo = DigitStream::eventually_periodic(DigitWord{2}, DigitWord{1, 0, 2});
  for (const DigitWord& w : all_words(6, 2)) {
    CAPTURE(w.to_string());
    CHECK(is_admissible(w, tri) == oracle_admissible(w, tri));
    CHECK(is_admissible(w, twotwo) == oracle_admissible(w, twotwo));
  }
}

TEST_CASE("count_admissible examples") {
  DigitStream base2 = DigitStream::periodic(DigitWord{1});
  DigitStream golden = DigitStream::periodic(DigitWord{1, 0});
  CHECK(count_admissible(base2, 3) == 8);
  CHECK(count_admissible(golden, 3) == 5);
  CHECK(count_admissible(base2, 1) == 2);
}

TEST_CASE("count_admissible equals exhaustive filter") {
  std::vector<DigitStream> ceilings = {
      DigitStream::periodic(DigitWord{1}),
      DigitStream::periodic(DigitWord{1, 0}),
      DigitStream::periodic(DigitWord{1, 1, 0}),
      DigitStream::periodic(DigitWord{2, 0}),
      DigitStream::eventually_periodic(DigitWord{2, 1}, DigitWord{1, 0, 1, 0, 0}),
  };
  for (const DigitStream& c : ceilings) {
    Digit maxd = c[0];
    for (std::size_t n = 1; n <= 8; ++n) {
      std::uint64_t brute = 0;
      for (const DigitWord& w : all_words(n, maxd)) {
        if (is_admissible(w, c)) ++brute;
      }
      CAPTURE(n);
      CHECK(count_admissible(c, n) == brute);
    }
  }
}

TEST_CASE("enumerate_admissible matches the filter and is ordered") {
  DigitStream golden = DigitStream::periodic(DigitWord{1, 0});
  auto words = enumerate_admissible(golden, 7);
  CHECK(words.size() == count_admissible(golden, 7));
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    CHECK(lex_less(words[i], words[i + 1]));
  }
  for (const DigitWord& w : words) CHECK(is_admissible(w, golden));
}

TEST_CASE("enumerate_self_admissible examples") {
  auto r1 = enumerate_self_admissible(2, DigitWord{1, 0}, DigitWord{2, 0});
  REQUIRE(r1.size() == 3);
  CHECK(r1[0] == DigitWord{1, 0});
  CHECK(r1[1] == DigitWord{1, 1});
  CHECK(r1[2] == DigitWord{2, 0});

  auto r2 = enumerate_self_admissible(3, DigitWord{1, 1, 1}, DigitWord{2, 0, 0});
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == DigitWord{1, 1, 1});
  CHECK(r2[1] == DigitWord{2, 0, 0});

  auto r3 = enumerate_self_admissible(1, DigitWord{1}, DigitWord{3});
  REQUIRE(r3.size() == 3);
  CHECK(r3[0] == DigitWord{1});
  CHECK(r3[2] == DigitWord{3});
}

TEST_CASE("enumeration equals exhaustive scan") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<DigitWord> brute;
    for (const DigitWord& w : all_words(n, 3)) {
      if (is_self_admissible(w)) brute.push_back(w);
    }
    auto lo = DigitWord::zeros(n, 1);
    std::vector<Digit> top(n, 3);
    auto enumerated = enumerate_self_admissible(n, lo, DigitWord(top), 3);
    CHECK(enumerated == brute);
  }
}

TEST_CASE("adjacent_self_admissible examples") {
  auto p = adjacent_self_admissible(DigitWord{1, 0, 1}, Direction::Pred);
  REQUIRE(p.has_value());
  CHECK(*p == DigitWord{1, 0, 0});

  auto s = adjacent_self_admissible(DigitWord{1, 1, 1}, Direction::Succ);
  REQUIRE(s.has_value());
  CHECK(*s == DigitWord{2, 0, 0});

  CHECK_FALSE(adjacent_self_admissible(DigitWord{1, 0, 0}, Direction::Pred).has_value());
  CHECK_THROWS_AS(adjacent_self_admissible(DigitWord{1, 2}, Direction::Succ),
                  std::domain_error);
}

TEST_CASE("succ then pred is the identity off the boundary") {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<Digit> top(n, 3);
    auto words = enumerate_self_admissible(n, DigitWord::zeros(n, 1), DigitWord(top), 3);
    for (std::size_t i = 0; i + 1 < words.size(); ++i) {
      auto s = adjacent_self_admissible(words[i], Direction::Succ, 3);
      REQUIRE(s.has_value());
      CHECK(*s == words[i + 1]);
      auto back = adjacent_self_admissible(*s, Direction::Pred, 3);
      REQUIRE(back.has_value());
      CHECK(*back == words[i]);
    }
  }
}

TEST_CASE("words serialize as comma-separated digits") {
  CHECK(DigitWord{1, 0, 2}.to_string() == "1,0,2");
  CHECK(DigitWord::parse("1,0,2") == DigitWord{1, 0, 2});
  CHECK_THROWS(DigitWord::parse("1,x"));
  CHECK_THROWS(DigitWord::parse(""));
}
