#include "betakit/recurrence.hpp"

#include <stdexcept>

namespace betakit {

RecurrenceInfo recurrence_time(const DigitWord& w) {
  std::size_t n = w.size();
  for (std::size_t k = 1; k < n; ++k) {
    bool match = true;
    for (std::size_t j = 0; k + j < n; ++j) {
      if (w[k + j] != w[j]) {
        match = false;
        break;
      }
    }
    if (match) return {w, k, false};
  }
  return {w, n, true};
}

DigitWord maximal_extension(const DigitWord& w, std::size_t m) {
  if (!is_self_admissible(w))
    throw std::domain_error("maximal_extension: word not self-admissible");
  if (m < w.size())
    throw std::invalid_argument("maximal_extension: m < |w|");
  std::size_t k = recurrence_time(w).tau;
  std::vector<Digit> v;
  v.reserve(m);
  for (std::size_t i = 0; i < m; ++i) v.push_back(w[i % k]);
  return DigitWord(std::move(v));
}

DigitWord right_endpoint_word(const DigitWord& w) {
  if (!is_self_admissible(w))
    throw std::domain_error("right_endpoint_word: word not self-admissible");
  std::size_t k = recurrence_time(w).tau;
  DigitWord head = w.prefix(k);
  DigitWord out = head.with_last(head[k - 1] + 1);
  if (!is_self_admissible(out))
    throw std::logic_error("right_endpoint_word: bumped word unexpectedly inadmissible");
  return out;
}

bool is_valid_block(const DigitWord& u, const DigitWord& w) {
  if (u.size() != w.size())
    throw std::domain_error("is_valid_block: length mismatch");
  std::size_t m = w.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; i + j < m; ++j) {
      Digit du = u[i + j];
      Digit dw = w[j];
      if (du < dw) break;
      if (du > dw) return false;
    }
  }
  return true;
}

bool branch_full_recurrence(const DigitWord& w) {
  if (!is_self_admissible(w))
    throw std::domain_error("branch_full_recurrence: word not self-admissible");
  DigitWord bumped = w.with_last(w[w.size() - 1] + 1);
  return is_self_admissible(bumped);
}

}  // namespace betakit
