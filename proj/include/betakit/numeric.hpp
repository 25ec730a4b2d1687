#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "betakit/words.hpp"

namespace betakit {

// Working precision, counted in fractional bits below the binary point.
inline constexpr long kDefaultPrecBits = 128;

enum class Round { Down, Up };

/// A dyadic rational man * 2^exp, stored exactly.
///
/// All ring operations (+, -, *) are exact; `quantize` rounds to a grid of
/// 2^-frac_bits in a chosen direction. Sign tests and comparisons are exact,
/// which is what the root-certification code relies on.
class Dyadic {
 public:
  Dyadic() : man_(0), exp_(0) {}
  Dyadic(long v) : man_(v), exp_(0) {}
  Dyadic(const mpz_class& man, long exp) : man_(man), exp_(exp) { normalize(); }

  static Dyadic from_double(double v);
  // Nearest dyadic with `frac_bits` fractional bits, rounded toward `dir`.
  static Dyadic from_rational(const mpq_class& q, long frac_bits, Round dir);

  const mpz_class& mantissa() const { return man_; }
  long exponent() const { return exp_; }

  int sign() const { return sgn(man_); }
  bool is_zero() const { return man_ == 0; }

  Dyadic operator-() const { return Dyadic(-man_, exp_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  friend bool operator==(const Dyadic& a, const Dyadic& b) { return cmp(a, b) == 0; }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) != 0; }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }
  static int cmp(const Dyadic& a, const Dyadic& b);

  // Round to a multiple of 2^-frac_bits.
  Dyadic quantize(long frac_bits, Round dir) const;
  // a/b rounded toward dir on the 2^-frac_bits grid; b must be nonzero.
  static Dyadic div(const Dyadic& a, const Dyadic& b, long frac_bits, Round dir);
  // Largest integer <= value.
  mpz_class floor() const;

  mpq_class to_rational() const;
  double to_double() const;
  // Deterministic scientific rendering with `sig` significant decimal digits.
  std::string to_sci_string(int sig = 17) const;

  size_t bit_size() const { return mpz_sizeinbase(man_.get_mpz_t(), 2); }

 private:
  void normalize();
  mpz_class man_;
  long exp_;
};

/// Certified interval [lo, hi]; every operation rounds outward so the exact
/// real result of the corresponding real operation is contained.
class RealEnclosure {
 public:
  RealEnclosure() : lo_(), hi_() {}
  RealEnclosure(const Dyadic& point) : lo_(point), hi_(point) {}
  RealEnclosure(const Dyadic& lo, const Dyadic& hi) : lo_(lo), hi_(hi) {
    if (hi_ < lo_) throw std::invalid_argument("RealEnclosure: hi < lo");
  }

  static RealEnclosure exact(long v) { return RealEnclosure(Dyadic(v)); }
  static RealEnclosure of_rational(const mpq_class& q, long frac_bits);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  Dyadic width() const { return hi_ - lo_; }
  Dyadic mid() const;
  bool is_point() const { return lo_ == hi_; }
  bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
  bool contains(const Dyadic& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RealEnclosure& x) const { return lo_ <= x.lo_ && x.hi_ <= hi_; }

  // Certified order tests between enclosures: true only when provable.
  static bool certified_lt(const RealEnclosure& a, const RealEnclosure& b) {
    return a.hi_ < b.lo_;
  }
  static bool certified_le(const RealEnclosure& a, const RealEnclosure& b) {
    return a.hi_ <= b.lo_;
  }

  RealEnclosure quantize(long frac_bits) const {
    return RealEnclosure(lo_.quantize(frac_bits, Round::Down),
                         hi_.quantize(frac_bits, Round::Up));
  }

  friend RealEnclosure operator+(const RealEnclosure& a, const RealEnclosure& b) {
    return RealEnclosure(a.lo_ + b.lo_, a.hi_ + b.hi_);
  }
  friend RealEnclosure operator-(const RealEnclosure& a, const RealEnclosure& b) {
    return RealEnclosure(a.lo_ - b.hi_, a.hi_ - b.lo_);
  }
  friend RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b);

  RealEnclosure negate() const { return RealEnclosure(-hi_, -lo_); }
  RealEnclosure abs() const;
  // Reciprocal; throws if the interval contains 0.
  RealEnclosure recip(long frac_bits) const;
  RealEnclosure div(const RealEnclosure& b, long frac_bits) const;
  // Integer power, outward; quantizes per step when frac_bits > 0.
  RealEnclosure powi(unsigned long e, long frac_bits = 0) const;
  // x^(p / 2^k) for x >= 0, via repeated squaring and k square roots.
  RealEnclosure pow_frac(unsigned long p, unsigned k, long frac_bits) const;

  std::string to_string(int sig = 17) const;

 private:
  Dyadic lo_, hi_;
};

// x^(1/2) on dyadics, rounded toward dir on the 2^-frac_bits grid; x >= 0.
Dyadic dyadic_sqrt(const Dyadic& x, long frac_bits, Round dir);

// --- polynomial views of a digit word -------------------------------------
//
// For w = (e1,...,en):
//   unit polynomial     P_w(b) = b^n - e1 b^(n-1) - ... - en,
// whose root b>1 solves 1 = e1/b + ... + en/b^n, and which also equals the
// orbit value T^n_b(1) when b lies in the parameter cylinder of w.

// Exact evaluation of P_w at a dyadic point (no rounding anywhere).
Dyadic eval_unit_poly_exact(const DigitWord& w, const Dyadic& beta);
// Exact evaluation of P_w' at a dyadic point.
Dyadic eval_unit_poly_deriv_exact(const DigitWord& w, const Dyadic& beta);

/// Enclosure of sum_i e_i beta^-i with outward rounding. Requires beta.lo > 1.
RealEnclosure eval_power_sum(const DigitWord& w, const RealEnclosure& beta,
                             long frac_bits = kDefaultPrecBits);

/// Enclosure of f(beta) = beta^n - (e1 beta^(n-1) + ... + en). Requires beta.lo > 1.
RealEnclosure eval_orbit_polynomial(const DigitWord& w, const RealEnclosure& beta,
                                    long frac_bits = kDefaultPrecBits);

/// Enclosure of f'(beta). Requires beta.lo > 1.
RealEnclosure eval_orbit_derivative(const DigitWord& w, const RealEnclosure& beta,
                                    long frac_bits = kDefaultPrecBits);

// --- integer polynomials (ascending coefficients; index = power) ----------

using Poly = std::vector<mpz_class>;

Poly poly_from_unit_word(const DigitWord& w);  // b^n - e1 b^(n-1) - ... - en
Poly poly_derivative(const Poly& p);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_add(const Poly& a, const Poly& b);
// p mod d for monic d; the remainder has degree < deg d.
Poly poly_mod(Poly p, const Poly& d);
bool poly_is_zero(const Poly& p);
Dyadic poly_eval_exact(const Poly& p, const Dyadic& x);
RealEnclosure poly_eval(const Poly& p, const RealEnclosure& x, long frac_bits);

/// A root of a monic integer polynomial, isolated by a bracket [lo, hi] with
/// exactly certified signs f(lo) <= 0 < f(hi), refinable on demand. Assumes
/// the sign pattern "negative below, positive above" holds on the bracket's
/// component, which both the unit equations and the eventually-periodic
/// expansion equations satisfy on (1, inf).
class PolyRoot {
 public:
  PolyRoot() = default;
  // Verifies f(lo) <= 0 and widens hi until f(hi) > 0.
  PolyRoot(Poly f, Dyadic lo, Dyadic hi);

  const Poly& poly() const { return f_; }
  bool is_exact() const { return !f_.empty() && lo_ == hi_; }

  // Enclosure with width <= 2^-frac_bits (exact roots give point enclosures).
  RealEnclosure enclosure(long frac_bits = kDefaultPrecBits) const;

 private:
  Poly f_, fp_;
  mutable Dyadic lo_, hi_;
};

/// The solution beta >= 1 of 1 = e1/beta + ... + en/beta^n together with a
/// sign-certified bracket and an on-demand refinement handle.
class UnitRoot {
 public:
  UnitRoot() = default;

  const DigitWord& word() const { return word_; }
  bool at_boundary() const { return at_boundary_; }
  const PolyRoot& root() const { return root_; }

  // Enclosure with width <= 2^-frac_bits (exact roots give point enclosures).
  RealEnclosure enclosure(long frac_bits = kDefaultPrecBits) const;

  friend UnitRoot solve_unit_equation(const DigitWord& w);

 private:
  DigitWord word_;
  bool at_boundary_ = false;
  PolyRoot root_;
};

/// Certified root of the unit equation of w (requires e1 >= 1). Words whose
/// root is exactly 1 (digit sum 1) yield the point enclosure [1,1] flagged
/// at_boundary.
UnitRoot solve_unit_equation(const DigitWord& w);

}  // namespace betakit
