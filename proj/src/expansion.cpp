#include "betakit/expansion.hpp"

#include <algorithm>

#include "betakit/recurrence.hpp"

namespace betakit {

Beta Beta::fixed(RealEnclosure enc) {
  Beta b;
  b.fixed_ = std::move(enc);
  return b;
}

Beta Beta::algebraic(PolyRoot root) {
  Beta b;
  b.root_ = std::move(root);
  return b;
}

Beta Beta::from_unit_root(const UnitRoot& r) {
  if (r.at_boundary())
    throw std::domain_error("Beta: boundary unit root (beta = 1) is not a base");
  return algebraic(r.root());
}

const PolyRoot& Beta::root() const {
  if (!root_) throw std::logic_error("Beta::root: not algebraic");
  return *root_;
}

RealEnclosure Beta::enclosure(long frac_bits) const {
  if (root_) return root_->enclosure(frac_bits);
  return fixed_;
}

namespace {

// Enclosure of beta certified > 1, refining algebraic roots as needed.
RealEnclosure beta_above_one(const Beta& beta, long frac_bits, long cap_bits) {
  RealEnclosure e = beta.enclosure(frac_bits);
  long bits = frac_bits;
  while (!(e.lo() > Dyadic(1))) {
    if (!beta.is_algebraic() || bits >= cap_bits)
      throw std::domain_error("beta enclosure must satisfy lo > 1");
    bits *= 2;
    e = beta.enclosure(bits);
  }
  return e;
}

RealEnclosure clamp_unit(const RealEnclosure& t) {
  Dyadic lo = std::max(t.lo(), Dyadic(0));
  Dyadic hi = std::min(t.hi(), Dyadic(1));
  if (hi < lo)
    throw std::domain_error("orbit value left [0,1]: inconsistent beta enclosure");
  return RealEnclosure(lo, hi);
}

// Digit engine for the expansion of 1 under one beta; memoizes digits and
// orbit values, switching between the exact Z[beta] path (algebraic betas)
// and interval iteration with restarts (fixed enclosures).
class OneSource {
 public:
  OneSource(Beta beta, OrbitOptions opts)
      : beta_(std::move(beta)), opts_(opts), bits_(opts.prec_bits) {
    (void)beta_above_one(beta_, opts_.prec_bits, opts_.cap_bits);
  }

  // Compute digits until at least `count` are known or the expansion ends.
  void ensure(std::size_t count) {
    if (beta_.is_algebraic()) {
      while (!parry_ && raw_.size() < count) step_algebraic();
    } else if (raw_.size() < count && !parry_) {
      run_interval(count);
    }
  }

  const std::vector<Digit>& raw() const { return raw_; }
  bool parry() const { return parry_; }

  Digit star(std::size_t i) {
    ensure(i + 1);
    if (parry_) {
      std::size_t m = raw_.size();
      std::size_t j = i % m;
      return j + 1 == m ? raw_[m - 1] - 1 : raw_[j];
    }
    return raw_[i];
  }

  // T^k(1) for 1 <= k <= computed depth (or any k past a simple-Parry hit).
  RealEnclosure orbit_value(std::size_t k, long frac_bits) {
    ensure(k);
    if (parry_ && k >= raw_.size()) return RealEnclosure::exact(0);
    if (k == 0) return RealEnclosure::exact(1);
    if (beta_.is_algebraic()) {
      RealEnclosure be = beta_.enclosure(frac_bits);
      return clamp_unit(poly_eval(orbit_polys_[k - 1], be, frac_bits));
    }
    if (frac_bits > bits_) run_interval(std::max(raw_.size(), k));
    return orbit_enc_[k - 1];
  }

  const Beta& beta() const { return beta_; }

 private:
  void step_algebraic() {
    const Poly& D = beta_.root().poly();
    // pv = beta * v mod D
    Poly pv(v_.size() + 1);
    for (std::size_t i = 0; i < v_.size(); ++i) pv[i + 1] = v_[i];
    pv = poly_mod(std::move(pv), D);
    if (poly_is_zero(pv))
      throw std::logic_error("expansion of one: zero value before digit hit");
    std::optional<Digit> digit;
    if (pv.size() == 1) {
      // the value is exactly the integer pv[0]
      if (pv[0] < 0 || !pv[0].fits_ulong_p())
        throw std::logic_error("expansion of one: integer value out of range");
      digit = static_cast<Digit>(pv[0].get_ui());
    } else {
      long bits = opts_.prec_bits;
      while (true) {
        RealEnclosure e = poly_eval(pv, beta_.enclosure(bits), bits);
        mpz_class flo = e.lo().floor(), fhi = e.hi().floor();
        if (flo == fhi && flo >= 0) {
          digit = static_cast<Digit>(flo.get_ui());
          break;
        }
        if (bits >= opts_.cap_bits)
          throw UndeterminedError("digit floor undetermined at precision cap",
                                  raw_.size() + 1);
        bits *= 2;
      }
    }
    raw_.push_back(*digit);
    Poly v = pv;
    v[0] -= *digit;
    poly_trim_zero(v);
    orbit_polys_.push_back(v);
    v_ = std::move(v);
    if (poly_is_zero(v_)) parry_ = true;
  }

  static void poly_trim_zero(Poly& p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
  }

  void run_interval(std::size_t count) {
    while (true) {
      std::vector<Digit> raw2;
      std::vector<RealEnclosure> orb2;
      RealEnclosure be = beta_.enclosure(bits_);
      RealEnclosure t = RealEnclosure::exact(1);
      bool parry2 = false;
      std::size_t ambiguous_at = 0;
      while (raw2.size() < count) {
        RealEnclosure prod = (be * t).quantize(bits_);
        mpz_class flo = prod.lo().floor(), fhi = prod.hi().floor();
        if (flo != fhi || flo < 0) {
          ambiguous_at = raw2.size() + 1;
          break;
        }
        Digit d = static_cast<Digit>(flo.get_ui());
        t = clamp_unit(prod - RealEnclosure::exact(static_cast<long>(d)));
        raw2.push_back(d);
        orb2.push_back(t);
        if (t.is_point() && t.lo().is_zero()) {
          parry2 = true;
          break;
        }
      }
      if (ambiguous_at == 0) {
        // recomputation must reproduce previously certified digits
        for (std::size_t i = 0; i < raw_.size() && i < raw2.size(); ++i) {
          if (raw_[i] != raw2[i])
            throw std::logic_error("expansion of one: digits changed under refinement");
        }
        raw_ = std::move(raw2);
        orbit_enc_ = std::move(orb2);
        parry_ = parry2;
        return;
      }
      if (bits_ >= opts_.cap_bits)
        throw UndeterminedError("digit floor undetermined at precision cap",
                                ambiguous_at);
      bits_ *= 2;
    }
  }

  Beta beta_;
  OrbitOptions opts_;
  std::vector<Digit> raw_;
  bool parry_ = false;
  Poly v_{mpz_class(1)};
  std::vector<Poly> orbit_polys_;
  long bits_;
  std::vector<RealEnclosure> orbit_enc_;
};

}  // namespace

OrbitRecord digits_of_x(const Beta& beta, const RealEnclosure& x, std::size_t n,
                        const OrbitOptions& opts) {
  if (n == 0) throw std::invalid_argument("digits_of_x: n must be >= 1");
  if (x.lo().sign() < 0 || !(x.hi() < Dyadic(1)))
    throw std::invalid_argument("digits_of_x: x must lie within [0,1)");
  long bits = opts.prec_bits;
  while (true) {
    RealEnclosure be = beta_above_one(beta, bits, opts.cap_bits);
    std::vector<Digit> digits;
    std::vector<RealEnclosure> orbit;
    RealEnclosure t = x;
    std::size_t ambiguous_at = 0;
    while (digits.size() < n) {
      RealEnclosure prod = (be * t).quantize(bits);
      mpz_class flo = prod.lo().floor(), fhi = prod.hi().floor();
      if (flo != fhi || flo < 0) {
        ambiguous_at = digits.size() + 1;
        break;
      }
      Digit d = static_cast<Digit>(flo.get_ui());
      t = clamp_unit(prod - RealEnclosure::exact(static_cast<long>(d)));
      digits.push_back(d);
      orbit.push_back(t);
    }
    if (ambiguous_at == 0) {
      OrbitRecord rec;
      rec.beta = beta;
      rec.point = x;
      rec.digits = DigitWord(std::move(digits));
      rec.orbit = std::move(orbit);
      rec.certified_depth = n;
      return rec;
    }
    if (bits >= opts.cap_bits)
      throw UndeterminedError("digit floor undetermined at precision cap",
                              ambiguous_at);
    bits *= 2;
  }
}

ExpansionOfOne digits_of_one(const Beta& beta, std::size_t n, const OrbitOptions& opts) {
  if (n == 0) throw std::invalid_argument("digits_of_one: n must be >= 1");
  auto src = std::make_shared<OneSource>(beta, opts);
  src->ensure(n);
  ExpansionOfOne out;
  out.beta = beta;
  out.is_simple_parry = src->parry();
  std::size_t depth = std::min<std::size_t>(n, src->raw().size());
  out.depth = out.is_simple_parry ? src->raw().size() : depth;
  std::vector<Digit> digits(src->raw().begin(), src->raw().begin() + out.depth);
  out.raw_digits = DigitWord(std::move(digits));
  out.star_digits = DigitStream([src](std::size_t i) { return src->star(i); });
  return out;
}

std::vector<RealEnclosure> orbit_of_one(const Beta& beta, std::size_t n,
                                        const OrbitOptions& opts) {
  OneSource src(beta, opts);
  src.ensure(n);
  std::vector<RealEnclosure> out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(src.orbit_value(k, opts.prec_bits));
  return out;
}

ZeroRuns zero_runs(const Beta& beta, std::size_t N, const OrbitOptions& opts) {
  if (N == 0) throw std::invalid_argument("zero_runs: N must be >= 1");
  auto src = std::make_shared<OneSource>(beta, opts);
  ZeroRuns zr;
  zr.runs.reserve(N);
  const std::size_t lookahead_cap = 8 * N + 1024;
  for (std::size_t n = 1; n <= N; ++n) {
    std::size_t k = 0;
    while (src->star(n + k) == 0) {
      ++k;
      if (n + k > lookahead_cap)
        throw UndeterminedError("zero run did not close before the lookahead cap", n);
    }
    zr.runs.push_back(k);
    double ratio = static_cast<double>(k) / static_cast<double>(n);
    if (ratio > zr.sup_ratio) {
      zr.sup_ratio = ratio;
      zr.argmax = n;
    }
  }
  return zr;
}

ZeroGrowthReport classify_zero_growth(const Beta& beta, std::size_t N,
                                      const std::vector<double>& alpha_grid,
                                      const OrbitOptions& opts) {
  ZeroGrowthReport rep;
  rep.runs = zero_runs(beta, N, opts);
  for (double alpha : alpha_grid) {
    std::size_t hits = 0;
    for (std::size_t n = 1; n <= N; ++n) {
      if (static_cast<double>(rep.runs.runs[n - 1]) >=
          alpha * static_cast<double>(n))
        ++hits;
    }
    rep.alpha_exceedances.emplace_back(alpha, hits);
  }
  // Evidence of growth at this depth: the best ratio is achieved late in the
  // horizon. Descriptive only; no limit claim.
  rep.bounded_so_far = rep.runs.argmax <= N / 2 || rep.runs.sup_ratio == 0.0;
  rep.label = rep.bounded_so_far ? "bounded-so-far" : "unbounded-evidence";
  return rep;
}

RealEnclosure InfiniteBeta::enclosure(long frac_bits) const {
  return root_.enclosure(frac_bits);
}

Beta InfiniteBeta::beta() const { return Beta::algebraic(root_); }

InfiniteBeta solve_infinite_expansion(const DigitWord& u, const DigitWord& p) {
  if (u.empty() || p.empty())
    throw std::domain_error("solve_infinite_expansion: empty preperiod or period");
  if (u[0] == 0)
    throw std::domain_error("solve_infinite_expansion: leading digit must be >= 1");
  bool period_nonzero = false;
  for (std::size_t i = 0; i < p.size(); ++i) period_nonzero |= (p[i] != 0);
  if (!period_nonzero)
    throw std::domain_error(
        "solve_infinite_expansion: period is all zeros (finite expansion)");

  // Strict infinite self-admissibility: sigma^i s < s for every i >= 1.
  // Both sequences are m-periodic past the preperiod, so comparing the first
  // a+m digits decides, and shifts repeat with period m past i = a.
  std::size_t a = u.size(), m = p.size();
  DigitStream s = DigitStream::eventually_periodic(u, p);
  for (std::size_t i = 1; i <= a + m; ++i) {
    bool decided = false;
    for (std::size_t k = 0; k < a + m; ++k) {
      Digit xs = s[k + i], ys = s[k];
      if (xs != ys) {
        if (xs > ys)
          throw std::domain_error(
              "solve_infinite_expansion: sequence is not strictly self-admissible");
        decided = true;
        break;
      }
    }
    if (!decided)
      throw std::domain_error(
          "solve_infinite_expansion: sigma^i equals the sequence (not strict)");
  }

  // 1 = V(beta) for the eventually periodic digit value V reduces to the
  // monic polynomial g = f_u (x^m - 1) - x^m + f_p having its unique root
  // beyond 1 exactly at beta (V is strictly decreasing on (1, inf)).
  Poly fu = poly_from_unit_word(u);
  Poly fp = poly_from_unit_word(p);
  Poly xm_minus_1(m + 1, mpz_class(0));
  xm_minus_1[m] = 1;
  xm_minus_1[0] = -1;
  Poly g = poly_mul(fu, xm_minus_1);
  Poly minus_xm(m + 1, mpz_class(0));
  minus_xm[m] = -1;
  g = poly_add(g, poly_add(minus_xm, fp));

  Digit dmax = 1;
  for (std::size_t i = 0; i < u.size(); ++i) dmax = std::max(dmax, u[i]);
  for (std::size_t i = 0; i < p.size(); ++i) dmax = std::max(dmax, p[i]);

  InfiniteBeta out;
  out.preperiod_ = u;
  out.period_ = p;
  out.root_ = PolyRoot(std::move(g), Dyadic(1), Dyadic(static_cast<long>(dmax) + 1));
  return out;
}

InfiniteBeta canonical_infinite_beta(const DigitWord& w) {
  if (!is_self_admissible(w))
    throw std::domain_error("canonical_infinite_beta: word not self-admissible");
  if (!recurrence_time(w).is_full)
    throw std::domain_error("canonical_infinite_beta: word must have full recurrence time");
  Digit last = w[w.size() - 1];
  if (last == 0)
    throw std::domain_error("canonical_infinite_beta: last digit must be >= 1");
  return solve_infinite_expansion(w, w.with_last(last - 1));
}

}  // namespace betakit
