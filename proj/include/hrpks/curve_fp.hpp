#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "hrpks/bigint.hpp"
#include "hrpks/curve_q.hpp"
#include "hrpks/encoding.hpp"
#include "hrpks/rng.hpp"
#include "hrpks/weierstrass.hpp"

namespace hrpks {

/// E(F_p): the reduction of a rational curve at a prime of good reduction.
///
/// Nothing here is constant-time.
struct CurveFp {
  Integer p;
  WeierstrassCoeffs<Integer> coeffs;
  std::string source;

  WeierstrassGroup<PrimeField> group() const { return {PrimeField(p), coeffs}; }

  friend bool operator==(const CurveFp& a, const CurveFp& b) {
    return a.p == b.p && a.coeffs.a1 == b.coeffs.a1 && a.coeffs.a2 == b.coeffs.a2 &&
           a.coeffs.a3 == b.coeffs.a3 && a.coeffs.a4 == b.coeffs.a4 && a.coeffs.a6 == b.coeffs.a6 &&
           a.source == b.source;
  }
};

/// num * den^{-1} mod p; throws when p divides the denominator.
inline Integer reduce_rational(const Rational& q, const Integer& p) {
  if (mod(q.get_den(), p) == 0) {
    throw Error(ErrorCode::kBadReduction, p.get_str() + " divides denominator " + q.get_den().get_str());
  }
  return mod(q.get_num() * inv_mod(q.get_den(), p), p);
}

inline CurveFp reduce_curve(const CurveQ& curve, const Integer& p) {
  if (!is_probable_prime(p)) throw Error(ErrorCode::kNotPrime, p.get_str() + " is not prime");
  CurveFp out;
  out.p = p;
  out.source = curve.id;
  const auto& c = curve.coeffs;
  out.coeffs = {reduce_rational(c.a1, p), reduce_rational(c.a2, p), reduce_rational(c.a3, p),
                reduce_rational(c.a4, p), reduce_rational(c.a6, p)};
  if (weierstrass_discriminant(PrimeField(p), out.coeffs) == 0) {
    throw Error(ErrorCode::kBadReduction,
                "discriminant of " + curve.id + " vanishes mod " + p.get_str() + " (bad reduction)");
  }
  return out;
}

/// Reduction map E(Q) -> E(F_p). A point whose coordinate denominators are
/// divisible by p lands on the identity.
inline ModPoint reduce_point(const CurveFp& curve, const RationalPoint& pt) {
  if (pt.infinity) return ModPoint::at_infinity();
  if (mod(pt.x.get_den(), curve.p) == 0 || mod(pt.y.get_den(), curve.p) == 0) return ModPoint::at_infinity();
  return ModPoint::affine(reduce_rational(pt.x, curve.p), reduce_rational(pt.y, curve.p));
}

inline bool on_curve_fp(const CurveFp& curve, const ModPoint& pt) {
  if (pt.infinity) return true;
  if (pt.x < 0 || pt.x >= curve.p || pt.y < 0 || pt.y >= curve.p) return false;
  return curve.group().contains(pt);
}

inline void require_on_curve_fp(const CurveFp& curve, const ModPoint& pt) {
  if (!on_curve_fp(curve, pt)) {
    throw Error(ErrorCode::kNotOnCurve,
                "point (" + pt.x.get_str() + ", " + pt.y.get_str() + ") is not on the curve mod " + curve.p.get_str());
  }
}

inline ModPoint add_fp(const CurveFp& curve, const ModPoint& a, const ModPoint& b) {
  require_on_curve_fp(curve, a);
  require_on_curve_fp(curve, b);
  return curve.group().add(a, b);
}

inline ModPoint negate_fp(const CurveFp& curve, const ModPoint& a) {
  require_on_curve_fp(curve, a);
  return curve.group().negate(a);
}

inline ModPoint scalar_mul_fp(const CurveFp& curve, const Integer& n, const ModPoint& a) {
  require_on_curve_fp(curve, a);
  return curve.group().mul(n, a);
}

/// Sum of scalars[i] * points[i] by interleaved double-and-add (one shared doubling chain).
inline ModPoint msm(const CurveFp& curve, const std::vector<Integer>& scalars, const std::vector<ModPoint>& points) {
  if (scalars.size() != points.size()) {
    throw Error(ErrorCode::kLengthMismatch, "msm: " + std::to_string(scalars.size()) + " scalars vs " +
                                                std::to_string(points.size()) + " points");
  }
  auto grp = curve.group();
  std::vector<ModPoint> bases;
  std::vector<Integer> mags;
  std::size_t top = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_on_curve_fp(curve, points[i]);
    if (scalars[i] == 0 || points[i].infinity) continue;
    bases.push_back(scalars[i] < 0 ? grp.negate(points[i]) : points[i]);
    mags.push_back(abs(scalars[i]));
    top = std::max(top, bit_length(mags.back()));
  }
  ModPoint acc = ModPoint::at_infinity();
  for (std::size_t bit = top; bit-- > 0;) {
    acc = grp.dbl(acc);
    for (std::size_t i = 0; i < bases.size(); ++i) {
      if (mpz_tstbit(mags[i].get_mpz_t(), bit)) acc = grp.add(acc, bases[i]);
    }
  }
  return acc;
}

/// Exact byte key for hash tables of points.
inline std::string point_key(const ModPoint& p) {
  Bytes b = encode(Encodable(p));
  return std::string(b.begin(), b.end());
}

/// Closed Hasse interval [p + 1 - floor(2 sqrt p), p + 1 + floor(2 sqrt p)].
struct HasseInterval {
  Integer low;
  Integer high;
};

inline HasseInterval hasse_interval(const Integer& p) {
  Integer w = isqrt(4 * p);
  return {p + 1 - w, p + 1 + w};
}

// ---- factorisation -------------------------------------------------------

namespace detail {

inline Integer pollard_rho(const Integer& n, unsigned long c) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  Integer x = 2, y = 2, d = 1;
  auto step = [&](const Integer& v) { return mod(v * v + c, n); };
  while (d == 1) {
    x = step(x);
    y = step(step(y));
    Integer diff = abs(x - y);
    mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
  }
  return d;
}

inline void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  for (unsigned long c = 1;; ++c) {
    Integer d = pollard_rho(n, c);
    if (d != n) {
      factor_into(d, out);
      factor_into(n / d, out);
      return;
    }
  }
}

}  // namespace detail

/// Prime factorisation: trial division by small primes, then Pollard rho on the cofactor.
inline std::map<Integer, unsigned> factorize(Integer n) {
  if (n <= 0) throw Error(ErrorCode::kInvariant, "factorize needs a positive integer");
  std::map<Integer, unsigned> out;
  for (unsigned long d = 2; d < 10000 && Integer(d) * d <= n; d += (d == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      ++out[Integer(d)];
      n /= d;
    }
  }
  detail::factor_into(n, out);
  return out;
}

/// Result of the order computation: the exact order and the annihilating
/// multiple from the Hasse interval it was derived from.
struct OrderResult {
  Integer order;
  Integer annihilator;
};

/// Baby-step giant-step search for m in the Hasse interval with m*P = O.
inline Integer hasse_annihilator(const CurveFp& curve, const ModPoint& pt) {
  require_on_curve_fp(curve, pt);
  auto grp = curve.group();
  HasseInterval hi = hasse_interval(curve.p);
  Integer width = hi.high - hi.low + 1;
  Integer steps = isqrt(width);
  if (steps * steps < width) steps += 1;
  if (steps > Integer(1) << 32) throw Error(ErrorCode::kGuardExceeded, "BSGS table too large for p");
  const unsigned long baby = steps.get_ui();

  // Baby steps j*P for j in [0, baby).
  std::unordered_map<std::string, unsigned long> table;
  table.reserve(baby * 2);
  ModPoint cur = ModPoint::at_infinity();
  for (unsigned long j = 0; j < baby; ++j) {
    table.emplace(point_key(cur), j);
    cur = grp.add(cur, pt);
  }
  // Giant steps: look for j with j*P = -(low + i*baby)*P, i.e. (low + i*baby + j)*P = O.
  ModPoint giant = grp.negate(grp.mul(Integer(baby), pt));
  ModPoint probe = grp.negate(grp.mul(hi.low, pt));
  for (Integer base = hi.low; base <= hi.high; base += baby) {
    auto it = table.find(point_key(probe));
    if (it != table.end()) return base + it->second;
    probe = grp.add(probe, giant);
  }
  throw Error(ErrorCode::kNoAnnihilator, "no multiple in the Hasse interval kills the point");
}

/// Exact order of P: annihilator from BSGS, then strip prime factors while
/// the smaller multiple still kills P.
inline OrderResult point_order_detail(const CurveFp& curve, const ModPoint& pt) {
  require_on_curve_fp(curve, pt);
  if (pt.infinity) return {1, 1};
  auto grp = curve.group();
  Integer m = hasse_annihilator(curve, pt);
  Integer n = m;
  for (const auto& [prime, exp] : factorize(m)) {
    for (unsigned e = 0; e < exp; ++e) {
      Integer candidate = n / prime;
      if (!grp.mul(candidate, pt).infinity) break;
      n = candidate;
    }
  }
  return {n, m};
}

inline Integer point_order(const CurveFp& curve, const ModPoint& pt) { return point_order_detail(curve, pt).order; }

// ---- square roots and random points ------------------------------------

/// Tonelli-Shanks; returns false when a is a non-residue mod odd prime p.
inline bool sqrt_mod(const Integer& a_in, const Integer& p, Integer& root) {
  Integer a = mod(a_in, p);
  if (a == 0) {
    root = 0;
    return true;
  }
  if (p == 2) {
    root = a;
    return true;
  }
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1) return false;
  Integer q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q >>= 1;
    ++s;
  }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) z += 1;
  Integer c = pow_mod(z, q, p);
  Integer x = pow_mod(a, (q + 1) / 2, p);
  Integer t = pow_mod(a, q, p);
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = mod(t2 * t2, p);
      ++i;
    }
    Integer b = pow_mod(c, Integer(1) << static_cast<mp_bitcnt_t>(m - i - 1), p);
    x = mod(x * b, p);
    c = mod(b * b, p);
    t = mod(t * c, p);
    m = i;
  }
  root = x;
  return true;
}

/// Uniform-x random affine point on E(F_p), p odd: completes the square
/// (2y + a1*x + a3)^2 = 4(x^3 + a2*x^2 + a4*x + a6) + (a1*x + a3)^2.
inline ModPoint random_point_fp(const CurveFp& curve, Rng& rng) {
  if (curve.p == 2) throw Error(ErrorCode::kUnsupported, "random_point_fp needs odd p");
  PrimeField f(curve.p);
  const auto& c = curve.coeffs;
  Integer inv2 = inv_mod(2, curve.p);
  for (;;) {
    Integer x = rng.below(curve.p);
    Integer x2 = f.mul(x, x);
    Integer rhs = f.add(f.add(f.mul(x2, x), f.mul(c.a2, x2)), f.add(f.mul(c.a4, x), c.a6));
    Integer lin = f.add(f.mul(c.a1, x), c.a3);
    Integer disc = f.add(f.mul(4, rhs), f.mul(lin, lin));
    Integer w;
    if (!sqrt_mod(disc, curve.p, w)) continue;
    if (rng.below(2) == 1) w = f.neg(w);
    Integer y = f.mul(f.sub(w, lin), inv2);
    return ModPoint::affine(x, y);
  }
}

inline Json curve_fp_to_json(const CurveFp& c) {
  return Json{{"p", int_to_json(c.p)},
              {"a1", int_to_json(c.coeffs.a1)},
              {"a2", int_to_json(c.coeffs.a2)},
              {"a3", int_to_json(c.coeffs.a3)},
              {"a4", int_to_json(c.coeffs.a4)},
              {"a6", int_to_json(c.coeffs.a6)},
              {"source", c.source}};
}

}  // namespace hrpks
