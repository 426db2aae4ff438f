#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hrpks/bigint.hpp"
#include "hrpks/encoding.hpp"
#include "hrpks/weierstrass.hpp"

namespace hrpks {

/// An elliptic curve over Q in long Weierstrass form together with the
/// rank and generator data the catalog records for it.
struct CurveQ {
  std::string id;
  WeierstrassCoeffs<Rational> coeffs;
  unsigned declared_rank = 0;
  std::vector<RationalPoint> generators;
  std::string torsion_note;

  WeierstrassGroup<RationalField> group() const { return {RationalField{}, coeffs}; }

  friend bool operator==(const CurveQ& a, const CurveQ& b) {
    return a.id == b.id && a.coeffs.a1 == b.coeffs.a1 && a.coeffs.a2 == b.coeffs.a2 &&
           a.coeffs.a3 == b.coeffs.a3 && a.coeffs.a4 == b.coeffs.a4 && a.coeffs.a6 == b.coeffs.a6 &&
           a.declared_rank == b.declared_rank && a.generators == b.generators &&
           a.torsion_note == b.torsion_note;
  }
};

/// Default cap on |n| for scalar_mul_q. Coordinate heights grow roughly
/// quadratically in n, so 2^20 already produces multi-megabyte numerators.
inline const Integer kDefaultMaxRationalScalar = Integer(1) << 20;

/// Discriminant via the b2/b4/b6/b8 invariants.
template <class Field>
typename Field::Elem weierstrass_discriminant(const Field& f, const WeierstrassCoeffs<typename Field::Elem>& c) {
  using E = typename Field::Elem;
  auto k = [&f](long v) { return f.from_int(v); };
  E b2 = f.add(f.mul(c.a1, c.a1), f.mul(k(4), c.a2));
  E b4 = f.add(f.mul(k(2), c.a4), f.mul(c.a1, c.a3));
  E b6 = f.add(f.mul(c.a3, c.a3), f.mul(k(4), c.a6));
  E b8 = f.sub(f.add(f.add(f.mul(f.mul(c.a1, c.a1), c.a6), f.mul(k(4), f.mul(c.a2, c.a6))),
                     f.mul(c.a2, f.mul(c.a3, c.a3))),
               f.add(f.mul(c.a1, f.mul(c.a3, c.a4)), f.mul(c.a4, c.a4)));
  // -b2^2*b8 - 8*b4^3 - 27*b6^2 + 9*b2*b4*b6
  E t1 = f.neg(f.mul(f.mul(b2, b2), b8));
  E t2 = f.mul(k(8), f.mul(b4, f.mul(b4, b4)));
  E t3 = f.mul(k(27), f.mul(b6, b6));
  E t4 = f.mul(k(9), f.mul(b2, f.mul(b4, b6)));
  return f.add(f.sub(f.sub(t1, t2), t3), t4);
}

inline Rational discriminant_q(const CurveQ& curve) {
  return weierstrass_discriminant(RationalField{}, curve.coeffs);
}

inline bool on_curve_q(const CurveQ& curve, const RationalPoint& p) { return curve.group().contains(p); }

inline void require_on_curve_q(const CurveQ& curve, const RationalPoint& p) {
  if (!on_curve_q(curve, p)) {
    throw Error(ErrorCode::kNotOnCurve, "point (" + p.x.get_str() + ", " + p.y.get_str() +
                                            ") is not on curve " + curve.id);
  }
}

/// Checks nonsingularity and that every listed generator lies on the curve.
inline void validate_curve_q(const CurveQ& curve) {
  if (discriminant_q(curve) == 0) throw Error(ErrorCode::kInvariant, "curve " + curve.id + " is singular");
  if (curve.generators.size() > curve.declared_rank) {
    throw Error(ErrorCode::kInvariant, "curve " + curve.id + " lists more generators than its rank");
  }
  for (const auto& g : curve.generators) require_on_curve_q(curve, g);
}

inline RationalPoint add_q(const CurveQ& curve, const RationalPoint& p, const RationalPoint& q) {
  require_on_curve_q(curve, p);
  require_on_curve_q(curve, q);
  return curve.group().add(p, q);
}

inline RationalPoint negate_q(const CurveQ& curve, const RationalPoint& p) {
  require_on_curve_q(curve, p);
  return curve.group().negate(p);
}

inline RationalPoint scalar_mul_q(const CurveQ& curve, const Integer& n, const RationalPoint& p,
                                  const Integer& max_abs_scalar = kDefaultMaxRationalScalar) {
  require_on_curve_q(curve, p);
  if (abs(n) > max_abs_scalar) {
    throw Error(ErrorCode::kScalarTooLarge,
                "|n| = " + Integer(abs(n)).get_str() + " exceeds " + max_abs_scalar.get_str() +
                    "; rational point heights grow quadratically in n, so coordinates would explode");
  }
  return curve.group().mul(n, p);
}

namespace detail {

inline CurveQ make_curve(std::string id, long a1, long a2, long a3, std::string_view a4, std::string_view a6,
                         unsigned rank, std::vector<RationalPoint> gens, std::string note) {
  CurveQ c;
  c.id = std::move(id);
  c.coeffs = {Rational(a1), Rational(a2), Rational(a3), parse_rational(a4), parse_rational(a6)};
  c.declared_rank = rank;
  c.generators = std::move(gens);
  c.torsion_note = std::move(note);
  return c;
}

}  // namespace detail

inline const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = {"rank0_3x", "rank1_877x", "rank2_73x", "toy17", "rank14", "rank28"};
  return ids;
}

/// Built-in curves. Ranks are recorded as published, not recomputed.
inline CurveQ catalog(std::string_view curve_id) {
  using detail::make_curve;
  if (curve_id == "rank0_3x") return make_curve("rank0_3x", 0, 0, 0, "3", "0", 0, {}, "");
  if (curve_id == "rank1_877x") return make_curve("rank1_877x", 0, 0, 0, "877", "0", 1, {}, "");
  if (curve_id == "rank2_73x") return make_curve("rank2_73x", 0, 0, 0, "73", "0", 2, {}, "");
  if (curve_id == "toy17") {
    return make_curve("toy17", 0, 0, 0, "0", "17", 2,
                      {RationalPoint::affine(-2, 3), RationalPoint::affine(2, 5)}, "no torsion over Q");
  }
  if (curve_id == "rank14") {
    return make_curve("rank14", 0, 0, 0, "402599774387690701016910427272483", "0", 14, {}, "");
  }
  if (curve_id == "rank28") {
    return make_curve("rank28", 1, -1, 1, "-20067762415575526585033208209338542750930230312178956502",
                      "34481611795030556467032985690390720374855944359319180361266008296291939448732243429", 28,
                      {}, "");
  }
  throw Error(ErrorCode::kUnknownCurve, "unknown curve id '" + std::string(curve_id) + "'");
}

inline Json curve_q_to_json(const CurveQ& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(rational_point_to_json(g));
  return Json{{"id", c.id},
              {"a1", rational_to_json(c.coeffs.a1)},
              {"a2", rational_to_json(c.coeffs.a2)},
              {"a3", rational_to_json(c.coeffs.a3)},
              {"a4", rational_to_json(c.coeffs.a4)},
              {"a6", rational_to_json(c.coeffs.a6)},
              {"rank", std::to_string(c.declared_rank)},
              {"generators", gens},
              {"torsion_note", c.torsion_note}};
}

inline CurveQ curve_q_from_json(const Json& j) {
  CurveQ c;
  c.id = string_from_json(j.at("id"));
  c.coeffs = {rational_from_json(j.at("a1")), rational_from_json(j.at("a2")), rational_from_json(j.at("a3")),
              rational_from_json(j.at("a4")), rational_from_json(j.at("a6"))};
  Integer rank = int_from_json(j.at("rank"));
  if (rank < 0 || rank > 1024) throw Error(ErrorCode::kParse, "implausible rank");
  c.declared_rank = static_cast<unsigned>(rank.get_ui());
  if (!j.at("generators").is_array()) throw Error(ErrorCode::kParse, "generators must be an array");
  for (const auto& g : j.at("generators")) c.generators.push_back(rational_point_from_json(g));
  c.torsion_note = string_from_json(j.at("torsion_note"));
  validate_curve_q(c);
  return c;
}

}  // namespace hrpks
