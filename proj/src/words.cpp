#include "betakit/words.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace betakit {

DigitWord::DigitWord(std::vector<Digit> digits, Digit ceiling)
    : digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("DigitWord: length must be >= 1");
  for (Digit d : digits_) {
    if (d > ceiling) throw std::invalid_argument("DigitWord: digit exceeds ceiling");
  }
}

DigitWord DigitWord::zeros(std::size_t n, Digit first) {
  std::vector<Digit> v(n, 0);
  if (n == 0) throw std::invalid_argument("DigitWord: length must be >= 1");
  v[0] = first;
  return DigitWord(std::move(v));
}

DigitWord DigitWord::parse(const std::string& text) {
  std::vector<Digit> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long val = std::stol(item, &pos);
    if (pos != item.size() || val < 0)
      throw std::invalid_argument("DigitWord: bad digit '" + item + "'");
    v.push_back(static_cast<Digit>(val));
  }
  return DigitWord(std::move(v));
}

DigitWord DigitWord::prefix(std::size_t n) const {
  if (n == 0 || n > size()) throw std::out_of_range("DigitWord::prefix");
  return DigitWord(std::vector<Digit>(digits_.begin(), digits_.begin() + n));
}

DigitWord DigitWord::concat(const DigitWord& tail) const {
  std::vector<Digit> v = digits_;
  v.insert(v.end(), tail.digits_.begin(), tail.digits_.end());
  return DigitWord(std::move(v));
}

DigitWord DigitWord::repeat(std::size_t times) const {
  if (times == 0) throw std::invalid_argument("DigitWord::repeat: times must be >= 1");
  std::vector<Digit> v;
  v.reserve(size() * times);
  for (std::size_t t = 0; t < times; ++t)
    v.insert(v.end(), digits_.begin(), digits_.end());
  return DigitWord(std::move(v));
}

DigitWord DigitWord::with_last(Digit d) const {
  std::vector<Digit> v = digits_;
  v.back() = d;
  DigitWord out;
  out.digits_ = std::move(v);  // skip ceiling check
  return out;
}

std::string DigitWord::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(digits_[i]);
  }
  return s;
}

Ordering lex_compare(const DigitWord& a, const DigitWord& b) {
  std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Digit da = i < a.size() ? a[i] : 0;
    Digit db = i < b.size() ? b[i] : 0;
    if (da != db) return da < db ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

DigitWord shift(const DigitWord& w, std::size_t i) {
  if (i >= w.size()) throw std::out_of_range("shift: i >= |w|");
  return DigitWord(std::vector<Digit>(w.digits().begin() + i, w.digits().end()));
}

namespace {

// sigma^i w vs (e_1,...,e_{n-i}), comparing digitwise without copies.
Ordering shift_vs_prefix(const DigitWord& w, std::size_t i) {
  std::size_t n = w.size();
  for (std::size_t j = 0; j + i < n; ++j) {
    Digit ds = w[i + j];
    Digit dp = w[j];
    if (ds != dp) return ds < dp ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

}  // namespace

bool is_self_admissible(const DigitWord& w) {
  if (w.empty() || w[0] == 0) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (shift_vs_prefix(w, i) == Ordering::greater) return false;
  }
  return true;
}

DigitStream DigitStream::periodic(DigitWord period) {
  if (period.empty()) throw std::invalid_argument("DigitStream: empty period");
  return DigitStream([p = std::move(period)](std::size_t i) { return p[i % p.size()]; });
}

DigitStream DigitStream::eventually_periodic(DigitWord preperiod, DigitWord period) {
  if (period.empty()) throw std::invalid_argument("DigitStream: empty period");
  return DigitStream([u = std::move(preperiod), p = std::move(period)](std::size_t i) {
    return i < u.size() ? u[i] : p[(i - u.size()) % p.size()];
  });
}

DigitWord DigitStream::prefix(std::size_t n) const {
  std::vector<Digit> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f_(i);
  return DigitWord(std::move(v));
}

bool is_admissible(const DigitWord& w, const DigitStream& ceiling) {
  std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; i + j < n; ++j) {
      Digit ds = w[i + j];
      Digit dc = ceiling[j];
      if (ds < dc) break;
      if (ds > dc) return false;
    }
  }
  return true;
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("count_admissible: count exceeds uint64");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("count_admissible: count exceeds uint64");
  return r;
}

// KMP border table of the ceiling prefix e_0..e_{n-1}: border[j] = length of
// the longest proper border of e_0..e_{j-1}.
std::vector<std::size_t> border_table(const std::vector<Digit>& e) {
  std::vector<std::size_t> border(e.size() + 1, 0);
  for (std::size_t j = 2; j <= e.size(); ++j) {
    std::size_t k = border[j - 1];
    while (k > 0 && e[k] != e[j - 1]) k = border[k];
    border[j] = (e[k] == e[j - 1]) ? k + 1 : 0;
  }
  return border;
}

}  // namespace

std::uint64_t count_admissible(const DigitStream& ceiling, std::size_t n) {
  if (n == 0) throw std::invalid_argument("count_admissible: n must be >= 1");
  std::vector<Digit> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = ceiling[i];
  std::vector<std::size_t> border = border_table(e);

  // State j = length of the longest suffix of the word read so far that
  // matches the ceiling prefix. Next digit d is allowed iff d <= e[j]; on
  // d == e[j] the match extends, otherwise it falls back along borders.
  //
  // Digits d < e[j] transition to delta(border-chain, d); grouping them by
  // target would need per-digit walks, so with small alphabets we just walk
  // each digit. The alphabet per state is e[j]+1 digits; the ceiling digit
  // dominates, so cost is O(n * sum e[j]) which is fine at desk scale.
  std::vector<std::uint64_t> cnt(n + 1, 0), nxt(n + 1, 0);
  cnt[0] = 1;
  for (std::size_t step = 0; step < n; ++step) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (std::size_t j = 0; j <= step; ++j) {
      if (cnt[j] == 0) continue;
      // d == e[j]: extend the match
      nxt[j + 1] = checked_add(nxt[j + 1], cnt[j]);
      // d < e[j]: fall back
      for (Digit d = 0; d < e[j]; ++d) {
        std::size_t k = j;
        while (k > 0 && e[k] != d) k = border[k];
        std::size_t target = (e[k] == d) ? k + 1 : 0;
        nxt[target] = checked_add(nxt[target], cnt[j]);
      }
    }
    std::swap(cnt, nxt);
  }
  std::uint64_t total = 0;
  for (std::size_t j = 0; j <= n; ++j) total = checked_add(total, cnt[j]);
  (void)checked_mul(1, 1);
  return total;
}

Digit max_next_digit(const DigitWord& prefix, Digit ceiling) {
  if (prefix.empty()) return ceiling;
  // Active borders: shifts i with sigma^i(prefix) equal to the length-(m-i)
  // prefix; each caps the next digit at e_{m+1-i}. The empty shift (i = m)
  // caps it at e_1.
  std::size_t m = prefix.size();
  Digit cap = std::min<Digit>(prefix[0], ceiling);
  for (std::size_t i = 1; i < m; ++i) {
    if (shift_vs_prefix(prefix, i) == Ordering::equal)
      cap = std::min(cap, prefix[m - i]);
  }
  return cap;
}

namespace {

// Extends `prefix` (self-admissible, possibly empty semantics via vector) to
// length n appending maximal allowed digits.
std::vector<Digit> extend_max(std::vector<Digit> v, std::size_t n, Digit ceiling) {
  while (v.size() < n) {
    DigitWord p{std::vector<Digit>(v)};
    v.push_back(max_next_digit(p, ceiling));
  }
  return v;
}

}  // namespace

std::optional<DigitWord> adjacent_self_admissible(const DigitWord& w,
                                                  Direction dir, Digit ceiling) {
  if (!is_self_admissible(w))
    throw std::domain_error("adjacent_self_admissible: word not self-admissible");
  std::size_t n = w.size();
  std::vector<Digit> v = w.digits();
  if (dir == Direction::Succ) {
    // Odometer: bump the rightmost position that is below its cap, zeros after.
    for (std::size_t pos = n; pos-- > 0;) {
      DigitWord p =
          pos == 0 ? DigitWord() : DigitWord(std::vector<Digit>(v.begin(), v.begin() + pos));
      Digit cap = pos == 0 ? ceiling : max_next_digit(p, ceiling);
      if (v[pos] < cap) {
        v[pos] += 1;
        std::fill(v.begin() + pos + 1, v.end(), 0);
        return DigitWord(std::move(v));
      }
    }
    return std::nullopt;
  }
  // Pred: decrement the rightmost nonzero position (keeping e1 >= 1), then
  // extend maximally; the maximal extension is the periodic one of Lemma-type
  // structure, realized here digit by digit.
  for (std::size_t pos = n; pos-- > 0;) {
    Digit minimum = pos == 0 ? 1 : 0;
    if (v[pos] > minimum) {
      v[pos] -= 1;
      v.resize(pos + 1);
      return DigitWord(extend_max(std::move(v), n, ceiling));
    }
    if (pos == 0) return std::nullopt;  // w == (1,0,...,0), the minimum
  }
  return std::nullopt;
}

std::optional<DigitWord> first_self_admissible_at_least(const DigitWord& from,
                                                        Digit ceiling) {
  std::size_t n = from.size();
  std::vector<Digit> v;
  v.reserve(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    DigitWord p = pos == 0 ? DigitWord()
                           : DigitWord(std::vector<Digit>(v.begin(), v.begin() + pos));
    Digit cap = pos == 0 ? ceiling : max_next_digit(p, ceiling);
    Digit want = from[pos];
    Digit minimum = pos == 0 ? 1 : 0;
    if (want < minimum) {
      // everything below this prefix is smaller; pad with zeros => done
      v.push_back(minimum);
      return DigitWord(extend_max(std::move(v), n, 0));
    }
    if (want <= cap) {
      v.push_back(want);
      continue;
    }
    // want > cap: must bump an earlier position
    while (!v.empty()) {
      std::size_t pos2 = v.size() - 1;
      DigitWord p2 = pos2 == 0
                         ? DigitWord()
                         : DigitWord(std::vector<Digit>(v.begin(), v.begin() + pos2));
      Digit cap2 = pos2 == 0 ? ceiling : max_next_digit(p2, ceiling);
      if (v[pos2] < cap2) {
        v[pos2] += 1;
        while (v.size() < n) v.push_back(0);
        return DigitWord(std::move(v));
      }
      v.pop_back();
    }
    return std::nullopt;
  }
  return DigitWord(std::move(v));  // `from` itself is self-admissible
}

SelfAdmissibleRange::SelfAdmissibleRange(std::size_t n, DigitWord from, DigitWord to,
                                         Digit ceiling)
    : to_(std::move(to)), ceiling_(ceiling) {
  if (from.size() != n || to_.size() != n)
    throw std::invalid_argument("SelfAdmissibleRange: from/to must have length n");
  cur_ = first_self_admissible_at_least(from, ceiling_);
}

std::optional<DigitWord> SelfAdmissibleRange::next() {
  if (!cur_) return std::nullopt;
  if (!first_) cur_ = adjacent_self_admissible(*cur_, Direction::Succ, ceiling_);
  first_ = false;
  if (cur_ && lex_compare(*cur_, to_) == Ordering::greater) cur_ = std::nullopt;
  return cur_;
}

std::vector<DigitWord> enumerate_self_admissible(std::size_t n, const DigitWord& from,
                                                 const DigitWord& to, Digit ceiling) {
  SelfAdmissibleRange range(n, from, to, ceiling);
  std::vector<DigitWord> out;
  while (auto w = range.next()) out.push_back(*w);
  return out;
}

std::vector<DigitWord> enumerate_admissible(const DigitStream& ceiling, std::size_t n) {
  // DFS over prefixes pruned by Parry's criterion; the per-prefix cap is the
  // ceiling digit continuing the longest active match.
  std::vector<DigitWord> out;
  std::vector<Digit> v;
  auto rec = [&](auto&& self) -> void {
    if (v.size() == n) {
      out.push_back(DigitWord(std::vector<Digit>(v)));
      return;
    }
    // max allowed next digit: min over active matches of the next ceiling digit
    std::size_t m = v.size();
    Digit cap = ceiling[0];
    for (std::size_t i = 0; i < m; ++i) {
      bool active = true;
      for (std::size_t j = 0; i + j < m; ++j) {
        if (v[i + j] != ceiling[j]) {
          active = false;
          break;
        }
      }
      if (active) cap = std::min(cap, ceiling[m - i]);
    }
    for (Digit d = 0; d <= cap; ++d) {
      v.push_back(d);
      self(self);
      v.pop_back();
    }
  };
  rec(rec);
  return out;
}

}  // namespace betakit
