#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace betakit {

using Digit = std::uint32_t;

inline constexpr Digit kDefaultDigitCeiling = 65535;  // 2^16 - 1

using Ordering = std::strong_ordering;

/// A finite word of non-negative digits, the raw combinatorial object of the
/// whole library. Immutable after construction; length >= 1.
class DigitWord {
 public:
  DigitWord() = default;  // empty sentinel, only valid as "unset"
  DigitWord(std::initializer_list<Digit> digits)
      : DigitWord(std::vector<Digit>(digits)) {}
  explicit DigitWord(std::vector<Digit> digits,
                     Digit ceiling = kDefaultDigitCeiling);

  static DigitWord zeros(std::size_t n, Digit first = 0);
  // Parses comma-separated decimal digits, e.g. "1,0,2".
  static DigitWord parse(const std::string& text);

  std::size_t size() const { return digits_.size(); }
  bool empty() const { return digits_.empty(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  const std::vector<Digit>& digits() const { return digits_; }

  DigitWord prefix(std::size_t n) const;
  DigitWord concat(const DigitWord& tail) const;
  DigitWord repeat(std::size_t times) const;
  // Copy with the last digit replaced by `d` (no ceiling check; internal
  // bumps such as right-endpoint words may exceed the ceiling by one).
  DigitWord with_last(Digit d) const;

  std::string to_string() const;  // "1,0,2"

  friend bool operator==(const DigitWord& a, const DigitWord& b) {
    return a.digits_ == b.digits_;
  }

 private:
  std::vector<Digit> digits_;
};

/// Lexicographic order of a·0^inf vs b·0^inf (zero-padding convention).
Ordering lex_compare(const DigitWord& a, const DigitWord& b);

inline bool lex_less(const DigitWord& a, const DigitWord& b) {
  return lex_compare(a, b) == Ordering::less;
}
inline bool lex_leq(const DigitWord& a, const DigitWord& b) {
  return lex_compare(a, b) != Ordering::greater;
}

/// sigma^i w = (e_{i+1},...,e_n); requires i < |w|.
DigitWord shift(const DigitWord& w, std::size_t i);

/// True iff sigma^i w <= (e_1,...,e_{n-i}) for all 1 <= i < n and e_1 >= 1.
/// Words starting with 0 are rejected: no beta > 1 expands 1 with a leading
/// zero, so such words name no parameter cylinder.
bool is_self_admissible(const DigitWord& w);

/// An infinite digit stream, 0-indexed; used for the infinite expansion of 1
/// that drives Parry's admissibility criterion.
class DigitStream {
 public:
  DigitStream() = default;
  explicit DigitStream(std::function<Digit(std::size_t)> f) : f_(std::move(f)) {}

  static DigitStream periodic(DigitWord period);
  // (u_1..u_n, p_1..p_m, p_1..p_m, ...)
  static DigitStream eventually_periodic(DigitWord preperiod, DigitWord period);

  Digit operator[](std::size_t i) const { return f_(i); }
  DigitWord prefix(std::size_t n) const;

 private:
  std::function<Digit(std::size_t)> f_;
};

/// Parry's criterion: sigma^i w <= (ceil_1,...,ceil_{n-i}) for all 0 <= i < n.
bool is_admissible(const DigitWord& w, const DigitStream& ceiling);

/// Exact cardinality of the admissible words of length n under `ceiling`,
/// via the follower (failure-function) automaton of the ceiling prefix.
/// Throws std::overflow_error if the count exceeds uint64.
std::uint64_t count_admissible(const DigitStream& ceiling, std::size_t n);

/// Largest digit d such that appending d to the self-admissible prefix
/// keeps it self-admissible (digits 0..max are all valid). For the empty
/// prefix this is `ceiling` (with minimum admissible digit 1).
Digit max_next_digit(const DigitWord& prefix, Digit ceiling = kDefaultDigitCeiling);

enum class Direction { Pred, Succ };

/// Immediate self-admissible lexicographic neighbor of the same length, or
/// nullopt at the range boundary. Requires w self-admissible.
std::optional<DigitWord> adjacent_self_admissible(
    const DigitWord& w, Direction dir, Digit ceiling = kDefaultDigitCeiling);

/// Smallest self-admissible word of length |from| that is >= from, or nullopt.
std::optional<DigitWord> first_self_admissible_at_least(
    const DigitWord& from, Digit ceiling = kDefaultDigitCeiling);

/// Ordered stream of the self-admissible words w of length n with
/// from <= w <= to. Pull words with next().
class SelfAdmissibleRange {
 public:
  SelfAdmissibleRange(std::size_t n, DigitWord from, DigitWord to,
                      Digit ceiling = kDefaultDigitCeiling);
  std::optional<DigitWord> next();

 private:
  DigitWord to_;
  Digit ceiling_;
  std::optional<DigitWord> cur_;
  bool first_ = true;
};

std::vector<DigitWord> enumerate_self_admissible(
    std::size_t n, const DigitWord& from, const DigitWord& to,
    Digit ceiling = kDefaultDigitCeiling);

/// All words of length n admissible under `ceiling`, in lexicographic order.
std::vector<DigitWord> enumerate_admissible(const DigitStream& ceiling,
                                            std::size_t n);

}  // namespace betakit
