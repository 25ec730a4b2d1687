#pragma once

#include <memory>

#include "betakit/numeric.hpp"
#include "betakit/words.hpp"

namespace betakit {

/// Thrown when a digit floor cannot be certified at the precision cap.
/// Carries the 1-based index of the offending digit.
class UndeterminedError : public std::runtime_error {
 public:
  UndeterminedError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// A base value beta > 1: either a fixed enclosure (not refinable) or an
/// algebraic number given by a certified PolyRoot. Algebraic betas admit
/// exact digit certification through arithmetic in Z[beta] mod the defining
/// polynomial.
class Beta {
 public:
  Beta() = default;
  static Beta fixed(RealEnclosure enc);
  static Beta algebraic(PolyRoot root);
  // throws std::domain_error for boundary roots (beta would be 1)
  static Beta from_unit_root(const UnitRoot& r);

  bool is_algebraic() const { return root_.has_value(); }
  const PolyRoot& root() const;
  // For algebraic betas: refined on demand; fixed betas return the stored
  // enclosure regardless of the requested precision.
  RealEnclosure enclosure(long frac_bits = kDefaultPrecBits) const;

 private:
  std::optional<PolyRoot> root_;
  RealEnclosure fixed_;
};

struct OrbitOptions {
  long prec_bits = kDefaultPrecBits;
  long cap_bits = 4096;
};

/// Greedy orbit of a point under T_beta with certified digits.
struct OrbitRecord {
  Beta beta;
  RealEnclosure point;
  DigitWord digits;                  // digits 1..n
  std::vector<RealEnclosure> orbit;  // T^k(point), k = 1..n, each within [0,1]
  std::size_t certified_depth = 0;   // == digits.size() on success
};

/// First n digits of the beta-expansion of x. Requires beta > 1 (certified)
/// and x within [0,1). Refines adaptively; throws UndeterminedError when a
/// floor stays ambiguous at the precision cap.
OrbitRecord digits_of_x(const Beta& beta, const RealEnclosure& x, std::size_t n,
                        const OrbitOptions& opts = {});

/// The expansion of 1 and its infinite (star) version.
struct ExpansionOfOne {
  Beta beta;
  DigitWord raw_digits;    // eps(1,beta): full finite expansion for simple
                           // Parry numbers, otherwise the first `depth` digits
  bool is_simple_parry;    // certified hit of 0 within the computed depth
  DigitStream star_digits; // eps*(1,beta)
  std::size_t depth;
};

ExpansionOfOne digits_of_one(const Beta& beta, std::size_t n,
                             const OrbitOptions& opts = {});

/// Enclosures of T^k_beta(1) for k = 1..n.
std::vector<RealEnclosure> orbit_of_one(const Beta& beta, std::size_t n,
                                        const OrbitOptions& opts = {});

/// Zero-run statistics of eps*(1,beta): runs[n-1] = l_n = length of the zero
/// run just after position n.
struct ZeroRuns {
  std::vector<std::size_t> runs;
  double sup_ratio = 0.0;   // max l_n / n over n <= N
  std::size_t argmax = 0;   // n achieving the max (1-based; 0 if all zero)
};

ZeroRuns zero_runs(const Beta& beta, std::size_t N, const OrbitOptions& opts = {});

/// Finite-depth classifier of zero-run growth. Descriptive only: the label
/// reports evidence at this depth and never claims a limit.
struct ZeroGrowthReport {
  ZeroRuns runs;
  bool bounded_so_far = true;
  // per grid alpha: how many n <= N had l_n >= alpha * n
  std::vector<std::pair<double, std::size_t>> alpha_exceedances;
  std::string label;  // "bounded-so-far" | "unbounded-evidence"
};

ZeroGrowthReport classify_zero_growth(const Beta& beta, std::size_t N,
                                      const std::vector<double>& alpha_grid,
                                      const OrbitOptions& opts = {});

/// A beta whose expansion of 1 is certified infinite and eventually periodic:
/// eps(1,beta) = (u, p, p, ...). The digit stream is validated combinatorially
/// (strict self-admissibility of the infinite word) and the root solves the
/// induced polynomial equation, sign-certified.
class InfiniteBeta {
 public:
  InfiniteBeta() = default;

  const DigitWord& preperiod() const { return preperiod_; }
  const DigitWord& period() const { return period_; }
  DigitStream stream() const {
    return DigitStream::eventually_periodic(preperiod_, period_);
  }
  RealEnclosure enclosure(long frac_bits = kDefaultPrecBits) const;
  Beta beta() const;

  friend InfiniteBeta solve_infinite_expansion(const DigitWord& u, const DigitWord& p);

 private:
  DigitWord preperiod_, period_;
  PolyRoot root_;
};

/// Solves for the unique beta > 1 with eps(1,beta) = (u, p^inf). Throws
/// std::domain_error when the sequence is not strictly self-admissible as an
/// infinite word (equivalently, is no expansion of 1) or the period is zero.
InfiniteBeta solve_infinite_expansion(const DigitWord& u, const DigitWord& p);

/// The canonical infinite-expansion beta attached to a full-recurrence word
/// w with last digit >= 1: eps(1,beta) = (w, (w_1..w_{n-1}, w_n - 1)^inf).
InfiniteBeta canonical_infinite_beta(const DigitWord& w);

}  // namespace betakit
