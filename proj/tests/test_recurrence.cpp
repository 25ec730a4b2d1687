#include "betakit/recurrence.hpp"

#include <vector>

#include "doctest.h"

using namespace betakit;

namespace {

std::vector<DigitWord> self_admissible_upto(std::size_t n, Digit maxd) {
  std::vector<Digit> top(n, maxd);
  return enumerate_self_admissible(n, DigitWord::zeros(n, 1), DigitWord(top), maxd);
}

// Brute force: lexicographically largest self-admissible extension of w to
// length m, found by always taking the largest digit that keeps the prefix
// self-admissible.
DigitWord oracle_max_extension(const DigitWord& w, std::size_t m) {
  std::vector<Digit> v = w.digits();
  while (v.size() < m) {
    Digit d = w[0];
    while (true) {
      std::vector<Digit> cand = v;
      cand.push_back(d);
      if (is_self_admissible(DigitWord(cand))) {
        v = std::move(cand);
        break;
      }
      REQUIRE(d > 0);
      --d;
    }
  }
  return DigitWord(std::move(v));
}

}  // namespace

TEST_CASE("recurrence_time examples") {
  auto r1 = recurrence_time(DigitWord{1, 0, 1});
  CHECK(r1.tau == 2);
  CHECK_FALSE(r1.is_full);

  auto r2 = recurrence_time(DigitWord{1, 0, 0});
  CHECK(r2.tau == 3);
  CHECK(r2.is_full);

  auto r3 = recurrence_time(DigitWord{1, 1});
  CHECK(r3.tau == 1);
  CHECK_FALSE(r3.is_full);
}

TEST_CASE("recurrence info invariants, exhaustively") {
  for (std::size_t n = 1; n <= 8; ++n) {
    for (const DigitWord& w : self_admissible_upto(n, 2)) {
      auto info = recurrence_time(w);
      CHECK(info.is_full == (info.tau == n));
      if (info.tau < n) {
        // sigma^tau(w) equals the prefix of length n - tau
        CHECK(shift(w, info.tau) == w.prefix(n - info.tau));
      }
    }
  }
}

TEST_CASE("prefix-gap property of the recurrence time") {
  // For self-admissible w with tau(w)=k: (e_{i+1},...,e_k) < (e_1,...,e_{k-i})
  // strictly, for every 1 <= i < k.
  for (std::size_t n = 1; n <= 9; ++n) {
    for (const DigitWord& w : self_admissible_upto(n, 2)) {
      std::size_t k = recurrence_time(w).tau;
      DigitWord head = w.prefix(k);
      for (std::size_t i = 1; i < k; ++i) {
        CAPTURE(w.to_string());
        CHECK(lex_compare(shift(head, i), head.prefix(k - i)) == Ordering::less);
      }
    }
  }
}

TEST_CASE("maximal_extension examples") {
  CHECK(maximal_extension(DigitWord{1, 1}, 4) == DigitWord{1, 1, 1, 1});
  CHECK(maximal_extension(DigitWord{1, 0, 0}, 5) == DigitWord{1, 0, 0, 1, 0});
  CHECK(maximal_extension(DigitWord{2, 1}, 5) == DigitWord{2, 1, 2, 1, 2});
  CHECK_THROWS_AS(maximal_extension(DigitWord{1, 2}, 4), std::domain_error);
}

TEST_CASE("maximal_extension is the brute-force maximum") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const DigitWord& w : self_admissible_upto(n, 2)) {
      for (std::size_t m = n; m <= n + 4; ++m) {
        DigitWord got = maximal_extension(w, m);
        CHECK(is_self_admissible(got));
        CHECK(got == oracle_max_extension(w, m));
      }
    }
  }
}

TEST_CASE("right_endpoint_word examples") {
  CHECK(right_endpoint_word(DigitWord{1, 1}) == DigitWord{2});
  CHECK(right_endpoint_word(DigitWord{1, 0, 0}) == DigitWord{1, 0, 1});
  CHECK(right_endpoint_word(DigitWord{1, 0, 1, 0}) == DigitWord{1, 1});
  CHECK_THROWS_AS(right_endpoint_word(DigitWord{0, 1}), std::domain_error);
}

TEST_CASE("is_valid_block examples") {
  CHECK(is_valid_block(DigitWord{0, 0, 0}, DigitWord{1, 0, 0}));
  CHECK(is_valid_block(DigitWord{1, 0, 0}, DigitWord{1, 0, 0}));
  CHECK_FALSE(is_valid_block(DigitWord{1, 0, 1}, DigitWord{1, 0, 0}));
  CHECK_THROWS_AS(is_valid_block(DigitWord{1}, DigitWord{1, 0}), std::domain_error);
}

namespace {

// Valid block with strict interior shifts: sigma^i u < (w_1,...,w_{m-i}) for
// 1 <= i < m. This is what multi-block concatenation actually needs; with
// equality allowed inside the block, two blocks can break self-admissibility
// (see the counterexample below).
bool is_valid_block_strict(const DigitWord& u, const DigitWord& w) {
  if (!is_valid_block(u, w)) return false;
  std::size_t m = w.size();
  for (std::size_t i = 1; i < m; ++i) {
    if (lex_compare(shift(u, i), w.prefix(m - i)) == Ordering::equal) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("valid blocks after a full-recurrence word keep self-admissibility") {
  std::vector<Digit> zeros4(4, 0);
  for (const DigitWord& w : self_admissible_upto(4, 2)) {
    if (!recurrence_time(w).is_full) continue;
    for (const DigitWord& u : self_admissible_upto(4, 2)) {
      if (!is_valid_block(u, w)) continue;
      // one block is always safe
      CHECK(is_self_admissible(w.concat(u)));
      // repeated blocks need strict interior shifts
      if (is_valid_block_strict(u, w)) {
        CHECK(is_self_admissible(w.concat(u).concat(u)));
        CHECK(is_self_admissible(w.concat(u).concat(u).concat(u)));
      }
    }
    // the zero block is always valid, with strict interior shifts
    DigitWord zero_block{std::vector<Digit>(zeros4)};
    CHECK(is_valid_block(zero_block, w));
    CHECK(is_valid_block_strict(zero_block, w));
    // w itself is a valid block with strict interior shifts (full recurrence),
    // so periodic prefixes stay self-admissible
    CHECK(is_valid_block(w, w));
    CHECK(is_valid_block_strict(w, w));
    CHECK(is_self_admissible(w.concat(w).concat(w)));
  }
}

TEST_CASE("equality inside a block can break repeated concatenation") {
  // u satisfies sigma^i u <= prefix for all i, yet (w,u,u) fails: the shift
  // entering u's equality run continues across the block boundary and beats
  // the reference word there.
  DigitWord w{1, 0, 0};
  DigitWord u{0, 1, 0};
  CHECK(is_valid_block(u, w));
  CHECK(is_self_admissible(w.concat(u)));
  CHECK_FALSE(is_self_admissible(w.concat(u).concat(u)));
}

TEST_CASE("branch_full_recurrence examples and implication") {
  CHECK(branch_full_recurrence(DigitWord{1, 0, 0}));
  CHECK(recurrence_time(DigitWord{1, 0, 0}).is_full);
  CHECK_FALSE(branch_full_recurrence(DigitWord{1, 1}));
  CHECK(branch_full_recurrence(DigitWord{2, 1, 0}));
  CHECK(recurrence_time(DigitWord{2, 1, 0}).tau == 3);

  for (std::size_t n = 1; n <= 9; ++n) {
    for (const DigitWord& w : self_admissible_upto(n, 2)) {
      if (branch_full_recurrence(w)) {
        CAPTURE(w.to_string());
        CHECK(recurrence_time(w).is_full);
      }
    }
  }
}

TEST_CASE("recurrence time of adjacent cylinders increases downward") {
  // If tau(w1) < n and w2 is the immediate predecessor, tau(w2) > tau(w1).
  for (std::size_t n = 2; n <= 9; ++n) {
    auto words = self_admissible_upto(n, 2);
    for (std::size_t i = 1; i < words.size(); ++i) {
      const DigitWord& w1 = words[i];
      const DigitWord& w2 = words[i - 1];
      std::size_t t1 = recurrence_time(w1).tau;
      if (t1 < n) {
        CAPTURE(w1.to_string());
        CHECK(recurrence_time(w2).tau > t1);
      }
    }
  }
}

TEST_CASE("one full-recurrence word among any n consecutive") {
  for (std::size_t n = 2; n <= 9; ++n) {
    auto words = self_admissible_upto(n, 2);
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      bool found = false;
      for (std::size_t j = i; j < i + n; ++j) {
        if (recurrence_time(words[j]).is_full) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}
