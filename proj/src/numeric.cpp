#include "betakit/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace betakit {

void Dyadic::normalize() {
  if (man_ == 0) {
    exp_ = 0;
    return;
  }
  mp_bitcnt_t tz = mpz_scan1(man_.get_mpz_t(), 0);
  if (tz > 0) {
    man_ >>= tz;
    exp_ += static_cast<long>(tz);
  }
}

Dyadic Dyadic::from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("Dyadic: non-finite double");
  mpq_class q(v);
  mpz_class num = q.get_num(), den = q.get_den();
  mp_bitcnt_t k = mpz_scan1(den.get_mpz_t(), 0);
  return Dyadic(num, -static_cast<long>(k));
}

Dyadic Dyadic::from_rational(const mpq_class& q, long frac_bits, Round dir) {
  mpz_class num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), frac_bits);
  mpz_class m;
  if (dir == Round::Down)
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  else
    mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  return Dyadic(m, -frac_bits);
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
  if (a.man_ == 0 || b.man_ == 0) return sgn(a.man_) - sgn(b.man_) > 0   ? 1
                                         : sgn(a.man_) - sgn(b.man_) < 0 ? -1
                                                                         : 0;
  int sa = sgn(a.man_), sb = sgn(b.man_);
  if (sa != sb) return sa < sb ? -1 : 1;
  long e = std::min(a.exp_, b.exp_);
  mpz_class ma = a.man_ << static_cast<unsigned long>(a.exp_ - e);
  mpz_class mb = b.man_ << static_cast<unsigned long>(b.exp_ - e);
  return ::cmp(ma, mb);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.man_ == 0) return b;
  if (b.man_ == 0) return a;
  long e = std::min(a.exp_, b.exp_);
  mpz_class ma = a.man_ << static_cast<unsigned long>(a.exp_ - e);
  mpz_class mb = b.man_ << static_cast<unsigned long>(b.exp_ - e);
  return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.man_ * b.man_, a.exp_ + b.exp_);
}

Dyadic Dyadic::quantize(long frac_bits, Round dir) const {
  if (exp_ >= -frac_bits) return *this;  // already on a coarser grid
  unsigned long s = static_cast<unsigned long>(-frac_bits - exp_);
  mpz_class m;
  if (dir == Round::Down)
    mpz_fdiv_q_2exp(m.get_mpz_t(), man_.get_mpz_t(), s);
  else
    mpz_cdiv_q_2exp(m.get_mpz_t(), man_.get_mpz_t(), s);
  return Dyadic(m, -frac_bits);
}

Dyadic Dyadic::div(const Dyadic& a, const Dyadic& b, long frac_bits, Round dir) {
  if (b.man_ == 0) throw std::domain_error("Dyadic::div: division by zero");
  // a/b = ma 2^(ea - eb) / mb; target grid 2^-frac_bits
  mpz_class num = a.man_;
  mpz_class den = b.man_;
  long s = a.exp_ - b.exp_ + frac_bits;
  if (s >= 0)
    num <<= static_cast<unsigned long>(s);
  else
    den <<= static_cast<unsigned long>(-s);
  if (sgn(den) < 0) {
    num = -num;
    den = -den;
  }
  mpz_class m;
  if (dir == Round::Down)
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  else
    mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Dyadic(m, -frac_bits);
}

mpz_class Dyadic::floor() const {
  mpz_class m;
  if (exp_ >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), man_.get_mpz_t(), static_cast<unsigned long>(exp_));
  } else {
    mpz_fdiv_q_2exp(m.get_mpz_t(), man_.get_mpz_t(), static_cast<unsigned long>(-exp_));
  }
  return m;
}

mpq_class Dyadic::to_rational() const {
  mpq_class q(man_);
  if (exp_ >= 0) {
    mpz_class t = man_ << static_cast<unsigned long>(exp_);
    q = mpq_class(t);
  } else {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-exp_));
    q = mpq_class(man_, den);
    q.canonicalize();
  }
  return q;
}

double Dyadic::to_double() const { return to_rational().get_d(); }

std::string Dyadic::to_sci_string(int sig) const {
  if (man_ == 0) return "0";
  bool neg = sgn(man_) < 0;
  mpz_class aman = abs(man_);
  // decimal exponent estimate from the binary magnitude
  long bits = static_cast<long>(mpz_sizeinbase(aman.get_mpz_t(), 2)) + exp_;
  long e10 = static_cast<long>(std::floor(static_cast<double>(bits) * 0.30102999566398119));
  // digits = round(|v| * 10^(sig-1-e10)), adjusting e10 until it has `sig` digits
  auto scaled = [&](long e) {
    // |v| * 10^(sig-1-e) as an exact rational, rounded to nearest integer
    mpq_class q(aman);
    if (exp_ >= 0)
      q *= mpq_class(mpz_class(1) << static_cast<unsigned long>(exp_));
    else
      q /= mpq_class(mpz_class(1) << static_cast<unsigned long>(-exp_));
    long p = sig - 1 - e;
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(p >= 0 ? p : -p));
    if (p >= 0) q *= pow10; else q /= pow10;
    q += mpq_class(1, 2);
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
  };
  mpz_class digits = scaled(e10);
  std::string ds = digits.get_str();
  while (static_cast<int>(ds.size()) > sig) {
    ++e10;
    ds = scaled(e10).get_str();
  }
  while (static_cast<int>(ds.size()) < sig) {
    --e10;
    ds = scaled(e10).get_str();
  }
  std::string out = neg ? "-" : "";
  out += ds.substr(0, 1);
  if (sig > 1) out += "." + ds.substr(1);
  out += "e";
  out += (e10 < 0 ? "-" : "+");
  std::string es = std::to_string(e10 < 0 ? -e10 : e10);
  if (es.size() < 2) es = "0" + es;
  out += es;
  return out;
}

RealEnclosure RealEnclosure::of_rational(const mpq_class& q, long frac_bits) {
  return RealEnclosure(Dyadic::from_rational(q, frac_bits, Round::Down),
                       Dyadic::from_rational(q, frac_bits, Round::Up));
}

Dyadic RealEnclosure::mid() const {
  Dyadic s = lo_ + hi_;
  return Dyadic(s.mantissa(), s.exponent() - 1);
}

RealEnclosure operator*(const RealEnclosure& a, const RealEnclosure& b) {
  Dyadic p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
  Dyadic lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Dyadic hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return RealEnclosure(lo, hi);
}

RealEnclosure RealEnclosure::abs() const {
  if (lo_.sign() >= 0) return *this;
  if (hi_.sign() <= 0) return negate();
  return RealEnclosure(Dyadic(0), std::max(-lo_, hi_));
}

RealEnclosure RealEnclosure::recip(long frac_bits) const {
  if (contains_zero()) throw std::domain_error("RealEnclosure::recip: contains zero");
  Dyadic one(1);
  return RealEnclosure(Dyadic::div(one, hi_, frac_bits, Round::Down),
                       Dyadic::div(one, lo_, frac_bits, Round::Up));
}

RealEnclosure RealEnclosure::div(const RealEnclosure& b, long frac_bits) const {
  return (*this) * b.recip(frac_bits);
}

RealEnclosure RealEnclosure::powi(unsigned long e, long frac_bits) const {
  RealEnclosure acc = RealEnclosure::exact(1);
  RealEnclosure base = *this;
  while (e > 0) {
    if (e & 1) {
      acc = acc * base;
      if (frac_bits > 0) acc = acc.quantize(frac_bits);
    }
    e >>= 1;
    if (e == 0) break;
    base = base * base;
    if (frac_bits > 0) base = base.quantize(frac_bits);
  }
  return acc;
}

Dyadic dyadic_sqrt(const Dyadic& x, long frac_bits, Round dir) {
  if (x.sign() < 0) throw std::domain_error("dyadic_sqrt: negative argument");
  if (x.is_zero()) return Dyadic(0);
  // floor/ceil of sqrt(x) * 2^frac_bits via integer sqrt of x * 2^(2*frac_bits)
  mpz_class man = x.mantissa();
  long shift = x.exponent() + 2 * frac_bits;
  mpz_class t;
  bool exact_shift = true;
  if (shift >= 0) {
    t = man << static_cast<unsigned long>(shift);
  } else {
    if (dir == Round::Down)
      mpz_fdiv_q_2exp(t.get_mpz_t(), man.get_mpz_t(), static_cast<unsigned long>(-shift));
    else
      mpz_cdiv_q_2exp(t.get_mpz_t(), man.get_mpz_t(), static_cast<unsigned long>(-shift));
    exact_shift = false;
  }
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
  if (dir == Round::Up) {
    if (s * s != t || !exact_shift) s += 1;
  }
  return Dyadic(s, -frac_bits);
}

RealEnclosure RealEnclosure::pow_frac(unsigned long p, unsigned k, long frac_bits) const {
  if (lo_.sign() < 0) throw std::domain_error("pow_frac: negative base");
  auto one_side = [&](const Dyadic& x, Round dir) {
    // x^p with per-step quantization, then k square roots
    Dyadic acc(1), base = x;
    unsigned long e = p;
    while (e > 0) {
      if (e & 1) acc = (acc * base).quantize(frac_bits, dir);
      base = (base * base).quantize(frac_bits, dir);
      e >>= 1;
    }
    if (dir == Round::Down && acc.sign() < 0) acc = Dyadic(0);
    for (unsigned i = 0; i < k; ++i) acc = dyadic_sqrt(acc, frac_bits, dir);
    return acc;
  };
  return RealEnclosure(one_side(lo_, Round::Down), one_side(hi_, Round::Up));
}

std::string RealEnclosure::to_string(int sig) const {
  Dyadic w = width();
  std::string m = mid().to_sci_string(sig);
  if (w.is_zero()) return m + " (exact)";
  return m + " ±" + w.to_sci_string(2);
}

Dyadic eval_unit_poly_exact(const DigitWord& w, const Dyadic& beta) {
  Dyadic acc(1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc = acc * beta - Dyadic(static_cast<long>(w[i]));
  }
  return acc;
}

Dyadic eval_unit_poly_deriv_exact(const DigitWord& w, const Dyadic& beta) {
  std::size_t n = w.size();
  Dyadic acc(static_cast<long>(n));
  for (std::size_t i = 1; i < n; ++i) {
    acc = acc * beta - Dyadic(static_cast<long>(n - i) * static_cast<long>(w[i - 1]));
  }
  return acc;
}

namespace {

void require_beta_gt1(const RealEnclosure& beta) {
  if (!(beta.lo() > Dyadic(1)))
    throw std::domain_error("beta enclosure must satisfy lo > 1");
}

}  // namespace

RealEnclosure eval_power_sum(const DigitWord& w, const RealEnclosure& beta,
                             long frac_bits) {
  require_beta_gt1(beta);
  RealEnclosure r = beta.recip(frac_bits + 8);
  RealEnclosure acc = RealEnclosure::exact(0);
  for (std::size_t i = w.size(); i-- > 0;) {
    acc = ((acc + RealEnclosure::exact(static_cast<long>(w[i]))) * r)
              .quantize(frac_bits + 8);
  }
  return acc;
}

RealEnclosure eval_orbit_polynomial(const DigitWord& w, const RealEnclosure& beta,
                                    long frac_bits) {
  require_beta_gt1(beta);
  RealEnclosure acc = RealEnclosure::exact(1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc = (acc * beta - RealEnclosure::exact(static_cast<long>(w[i])))
              .quantize(frac_bits);
  }
  return acc;
}

RealEnclosure eval_orbit_derivative(const DigitWord& w, const RealEnclosure& beta,
                                    long frac_bits) {
  require_beta_gt1(beta);
  std::size_t n = w.size();
  RealEnclosure acc = RealEnclosure::exact(static_cast<long>(n));
  for (std::size_t i = 1; i < n; ++i) {
    long c = static_cast<long>(n - i) * static_cast<long>(w[i - 1]);
    acc = (acc * beta - RealEnclosure::exact(c)).quantize(frac_bits);
  }
  return acc;
}

Poly poly_from_unit_word(const DigitWord& w) {
  std::size_t n = w.size();
  Poly p(n + 1);
  p[n] = 1;
  for (std::size_t i = 0; i < n; ++i) p[n - 1 - i] = -mpz_class(w[i]);
  return p;
}

Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return Poly{mpz_class(0)};
  Poly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = mpz_class(i) * p[i];
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

namespace {

void poly_trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

}  // namespace

Poly poly_mod(Poly p, const Poly& d) {
  if (d.empty() || d.back() != 1)
    throw std::invalid_argument("poly_mod: divisor must be monic");
  std::size_t dd = d.size() - 1;
  while (p.size() > dd) {
    mpz_class c = p.back();
    std::size_t k = p.size() - 1 - dd;
    if (c != 0) {
      for (std::size_t i = 0; i < dd; ++i) p[k + i] -= c * d[i];
    }
    p.pop_back();
  }
  poly_trim(p);
  return p;
}

bool poly_is_zero(const Poly& p) {
  for (const auto& c : p)
    if (c != 0) return false;
  return true;
}

Dyadic poly_eval_exact(const Poly& p, const Dyadic& x) {
  Dyadic acc(p.empty() ? mpz_class(0) : p.back(), 0);
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    acc = acc * x + Dyadic(p[i], 0);
  }
  return acc;
}

RealEnclosure poly_eval(const Poly& p, const RealEnclosure& x, long frac_bits) {
  RealEnclosure acc(Dyadic(p.empty() ? mpz_class(0) : p.back(), 0));
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    acc = (acc * x + RealEnclosure(Dyadic(p[i], 0))).quantize(frac_bits);
  }
  return acc;
}

namespace {

double poly_eval_double(const Poly& p, double x) {
  double acc = p.empty() ? 0.0 : p.back().get_d();
  for (std::size_t i = p.size() - 1; i-- > 0;) acc = acc * x + p[i].get_d();
  return acc;
}

}  // namespace

PolyRoot::PolyRoot(Poly f, Dyadic lo, Dyadic hi) : f_(std::move(f)), lo_(lo), hi_(hi) {
  poly_trim(f_);
  fp_ = poly_derivative(f_);
  Dyadic flo = poly_eval_exact(f_, lo_);
  if (flo.sign() > 0) throw std::invalid_argument("PolyRoot: f(lo) must be <= 0");
  if (flo.is_zero() && lo_ == hi_) return;  // exact root supplied
  int guard = 0;
  while (poly_eval_exact(f_, hi_).sign() <= 0) {
    hi_ = hi_ * Dyadic(2);
    if (++guard > 64) throw std::invalid_argument("PolyRoot: no sign change found");
  }
}

RealEnclosure PolyRoot::enclosure(long frac_bits) const {
  if (f_.empty()) throw std::logic_error("PolyRoot: empty");
  if (lo_ == hi_) return RealEnclosure(lo_);
  Dyadic target_width(mpz_class(1), -frac_bits);
  if (!(hi_ - lo_ > target_width)) return RealEnclosure(lo_, hi_);

  // Seed with ~50 bits of double bisection when the bracket is still wide.
  if (hi_ - lo_ > Dyadic(mpz_class(1), -40)) {
    double a = lo_.to_double(), b = hi_.to_double();
    if (std::isfinite(poly_eval_double(f_, b))) {
      for (int it = 0; it < 200 && b - a > 1e-13 * std::abs(b); ++it) {
        double m = a + (b - a) / 2;
        if (poly_eval_double(f_, m) < 0)
          a = m;
        else
          b = m;
      }
      // verify the candidate bracket with exact signs; adopt what certifies
      Dyadic cl = Dyadic::from_double(a) - Dyadic(mpz_class(1), -30);
      Dyadic ch = Dyadic::from_double(b) + Dyadic(mpz_class(1), -30);
      if (lo_ < cl && poly_eval_exact(f_, cl).sign() <= 0) lo_ = cl;
      if (ch < hi_ && poly_eval_exact(f_, ch).sign() > 0) hi_ = ch;
    }
  }

  // Newton with doubling working precision; each candidate is collapsed to a
  // width-2^-frac_bits bracket by exact sign checks on both sides.
  long work = 96;
  Dyadic x = RealEnclosure(lo_, hi_).mid();
  Dyadic delta(mpz_class(1), -(frac_bits + 1));
  for (int it = 0; it < 300; ++it) {
    Dyadic fx = poly_eval_exact(f_, x);
    if (fx.is_zero()) {
      lo_ = x;
      hi_ = x;
      return RealEnclosure(x);
    }
    if (fx.sign() < 0) {
      if (lo_ < x) lo_ = x;
    } else {
      if (x < hi_) hi_ = x;
    }
    if (!(hi_ - lo_ > target_width)) return RealEnclosure(lo_, hi_);
    // Collapse to x ± delta when the signs certify it; the sign pattern is
    // monotone across the isolated root, so containment in the current
    // bracket is not required. Intersect to keep the cache monotone.
    Dyadic a = x - delta, b = x + delta;
    if (lo_ <= a && b <= hi_) {
      int sa = poly_eval_exact(f_, a).sign();
      int sb = poly_eval_exact(f_, b).sign();
      if (sa <= 0 && sb > 0) {
        lo_ = a;
        hi_ = b;
        return RealEnclosure(lo_, hi_);
      }
    } else if (a.sign() > 0) {
      int sa = poly_eval_exact(f_, a).sign();
      int sb = poly_eval_exact(f_, b).sign();
      if (sa <= 0 && sb > 0) {
        lo_ = std::max(lo_, a);
        hi_ = std::min(hi_, b);
        return RealEnclosure(lo_, hi_);
      }
    }
    Dyadic fp = poly_eval_exact(fp_, x);
    Dyadic next;
    if (fp.sign() > 0) {
      next = (x - Dyadic::div(fx, fp, work, Round::Down)).quantize(work, Round::Down);
    }
    if (fp.sign() <= 0 || !(lo_ < next && next < hi_)) {
      next = RealEnclosure(lo_, hi_).mid().quantize(work + 8, Round::Down);
      if (!(lo_ < next && next < hi_)) next = RealEnclosure(lo_, hi_).mid();
    }
    x = next;
    work = std::min(2 * work, 2 * frac_bits + 128);
  }
  throw std::logic_error("PolyRoot::enclosure: refinement did not converge");
}

UnitRoot solve_unit_equation(const DigitWord& w) {
  if (w.empty() || w[0] == 0)
    throw std::domain_error("solve_unit_equation: first digit must be >= 1");
  UnitRoot root;
  root.word_ = w;
  unsigned long digit_sum = 0;
  Digit dmax = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    digit_sum += w[i];
    dmax = std::max(dmax, w[i]);
  }
  if (digit_sum == 1) {
    // word (1,0,...,0): the formal root is exactly 1, outside the open
    // parameter space
    root.at_boundary_ = true;
    root.root_ = PolyRoot(Poly{mpz_class(-1), mpz_class(1)}, Dyadic(1), Dyadic(1));
    return root;
  }
  // f(1) = 1 - digit_sum < 0; f(dmax+1) > 0 since sum e_i b^-i < 1 there.
  root.root_ = PolyRoot(poly_from_unit_word(w), Dyadic(1),
                        Dyadic(static_cast<long>(dmax) + 1));
  return root;
}

RealEnclosure UnitRoot::enclosure(long frac_bits) const {
  if (word_.empty()) throw std::logic_error("UnitRoot: empty");
  if (at_boundary_) return RealEnclosure(Dyadic(1));
  return root_.enclosure(frac_bits);
}

}  // namespace betakit
