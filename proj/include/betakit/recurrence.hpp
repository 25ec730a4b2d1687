#pragma once

#include "betakit/words.hpp"

namespace betakit {

/// Recurrence time of a word: the least shift k >= 1 under which the word
/// overlaps its own prefix, or |w| ("full") if none does.
struct RecurrenceInfo {
  DigitWord word;
  std::size_t tau = 0;
  bool is_full = false;
};

RecurrenceInfo recurrence_time(const DigitWord& w);

/// The lexicographically maximal self-admissible word of length m >= |w|
/// beginning with w; it is the periodic continuation of w with period tau(w).
/// Requires w self-admissible.
DigitWord maximal_extension(const DigitWord& w, std::size_t m);

/// With k = tau(w), the word (e_1,...,e_{k-1}, e_k + 1): the expansion of 1
/// at the right endpoint of the parameter cylinder of w. Requires w
/// self-admissible; the result is again self-admissible.
DigitWord right_endpoint_word(const DigitWord& w);

/// True iff sigma^i u <= (w_1,...,w_{m-i}) for all 0 <= i < m, the condition
/// under which blocks may follow a full-recurrence word preserving
/// self-admissibility. Requires |u| == |w|.
bool is_valid_block(const DigitWord& u, const DigitWord& w);

/// True iff bumping the last digit of w preserves self-admissibility; this
/// forces tau(w) = |w|. Requires w self-admissible.
bool branch_full_recurrence(const DigitWord& w);

}  // namespace betakit
