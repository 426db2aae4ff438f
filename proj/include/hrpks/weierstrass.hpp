#pragma once

#include <utility>
#include <vector>

#include "hrpks/bigint.hpp"

namespace hrpks {

/// A point of a Weierstrass curve in affine coordinates, or the point at infinity.
template <class Elem>
struct AffinePoint {
  bool infinity = true;
  Elem x{};
  Elem y{};

  static AffinePoint at_infinity() { return AffinePoint{}; }
  static AffinePoint affine(Elem px, Elem py) { return AffinePoint{false, std::move(px), std::move(py)}; }

  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }
};

/// Exact arithmetic over Q. gmpxx keeps every result in lowest terms.
struct RationalField {
  using Elem = Rational;

  Elem zero() const { return 0; }
  Elem from_int(long v) const { return v; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const { return 1 / a; }
  bool is_zero(const Elem& a) const { return a == 0; }
};

/// The prime field F_p with elements held as least non-negative residues.
class PrimeField {
 public:
  using Elem = Integer;

  explicit PrimeField(Integer p) : p_(std::move(p)) {}

  const Integer& modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem from_int(long v) const { return reduce(Integer(v)); }
  Elem reduce(const Integer& a) const { return mod(a, p_); }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a + b;
    if (r >= p_) r -= p_;
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = a - b;
    if (r < 0) r += p_;
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const { return mod(a * b, p_); }
  Elem neg(const Elem& a) const { return a == 0 ? Elem(0) : Elem(p_ - a); }
  Elem inv(const Elem& a) const { return inv_mod(a, p_); }
  bool is_zero(const Elem& a) const { return a == 0; }

 private:
  Integer p_;
};

/// Coefficients of y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6.
template <class Elem>
struct WeierstrassCoeffs {
  Elem a1{}, a2{}, a3{}, a4{}, a6{};
};

/// Group law of a long-Weierstrass curve over an arbitrary field policy.
///
/// Field must provide Elem, zero, from_int, add, sub, mul, neg, inv, is_zero.
/// Formulas follow the standard chord-tangent construction including the
/// a1/a3 terms, so the same code serves Q and F_p.
template <class Field>
class WeierstrassGroup {
 public:
  using Elem = typename Field::Elem;
  using Point = AffinePoint<Elem>;

  WeierstrassGroup(Field field, WeierstrassCoeffs<Elem> c) : f_(std::move(field)), c_(std::move(c)) {}

  const Field& field() const { return f_; }
  const WeierstrassCoeffs<Elem>& coeffs() const { return c_; }

  bool contains(const Point& p) const {
    if (p.infinity) return true;
    const Elem& x = p.x;
    const Elem& y = p.y;
    Elem lhs = f_.add(f_.mul(y, y), f_.add(f_.mul(c_.a1, f_.mul(x, y)), f_.mul(c_.a3, y)));
    Elem x2 = f_.mul(x, x);
    Elem rhs = f_.add(f_.add(f_.mul(x2, x), f_.mul(c_.a2, x2)), f_.add(f_.mul(c_.a4, x), c_.a6));
    return f_.is_zero(f_.sub(lhs, rhs));
  }

  /// -(x, y) = (x, -y - a1*x - a3).
  Point negate(const Point& p) const {
    if (p.infinity) return p;
    return Point::affine(p.x, f_.sub(f_.neg(p.y), f_.add(f_.mul(c_.a1, p.x), c_.a3)));
  }

  Point add(const Point& p, const Point& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    Elem lambda, nu;
    if (p.x == q.x) {
      // Vertical line: q = -p (covers the 2-torsion doubling case too).
      Elem ysum = f_.add(f_.add(p.y, q.y), f_.add(f_.mul(c_.a1, q.x), c_.a3));
      if (f_.is_zero(ysum)) return Point::at_infinity();
      return dbl(p);
    }
    Elem dx_inv = f_.inv(f_.sub(q.x, p.x));
    lambda = f_.mul(f_.sub(q.y, p.y), dx_inv);
    nu = f_.mul(f_.sub(f_.mul(p.y, q.x), f_.mul(q.y, p.x)), dx_inv);
    return finish(p.x, q.x, lambda, nu);
  }

  Point dbl(const Point& p) const {
    if (p.infinity) return p;
    Elem denom = f_.add(f_.add(f_.add(p.y, p.y), f_.mul(c_.a1, p.x)), c_.a3);
    if (f_.is_zero(denom)) return Point::at_infinity();
    Elem denom_inv = f_.inv(denom);
    Elem x2 = f_.mul(p.x, p.x);
    // lambda = (3x^2 + 2*a2*x + a4 - a1*y) / (2y + a1*x + a3)
    Elem num = f_.add(f_.add(f_.mul(f_.from_int(3), x2), f_.mul(f_.from_int(2), f_.mul(c_.a2, p.x))),
                      f_.sub(c_.a4, f_.mul(c_.a1, p.y)));
    Elem lambda = f_.mul(num, denom_inv);
    // nu = (-x^3 + a4*x + 2*a6 - a3*y) / (2y + a1*x + a3)
    Elem nnum = f_.add(f_.sub(f_.mul(c_.a4, p.x), f_.mul(x2, p.x)),
                       f_.sub(f_.mul(f_.from_int(2), c_.a6), f_.mul(c_.a3, p.y)));
    Elem nu = f_.mul(nnum, denom_inv);
    return finish(p.x, p.x, lambda, nu);
  }

  Point sub(const Point& p, const Point& q) const { return add(p, negate(q)); }

  /// n*P by left-to-right double-and-add; negative n goes through -P.
  Point mul(const Integer& n, const Point& p) const {
    if (n == 0 || p.infinity) return Point::at_infinity();
    Point base = n < 0 ? negate(p) : p;
    Integer k = abs(n);
    Point acc = Point::at_infinity();
    for (std::size_t bit = bit_length(k); bit-- > 0;) {
      acc = dbl(acc);
      if (mpz_tstbit(k.get_mpz_t(), bit)) acc = add(acc, base);
    }
    return acc;
  }

 private:
  Point finish(const Elem& x1, const Elem& x2, const Elem& lambda, const Elem& nu) const {
    // x3 = lambda^2 + a1*lambda - a2 - x1 - x2 ; y3 = -(lambda + a1)*x3 - nu - a3
    Elem x3 = f_.sub(f_.sub(f_.add(f_.mul(lambda, lambda), f_.mul(c_.a1, lambda)), c_.a2), f_.add(x1, x2));
    Elem y3 = f_.sub(f_.neg(f_.mul(f_.add(lambda, c_.a1), x3)), f_.add(nu, c_.a3));
    return Point::affine(std::move(x3), std::move(y3));
  }

  Field f_;
  WeierstrassCoeffs<Elem> c_;
};

}  // namespace hrpks
