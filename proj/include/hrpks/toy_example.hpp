#pragma once

#include <string>
#include <vector>

#include "hrpks/curve_fp.hpp"
#include "hrpks/curve_q.hpp"

// Published reference values for y^2 = x^3 + 17 with P1 = (-2, 3),
// P2 = (2, 5) and p = q = 3123456773, plus a checker that recomputes them.

namespace hrpks::toy {

inline const char* const kPrime = "3123456773";

struct RationalRow {
  const char* x;
  const char* y;
};

struct ModRow {
  const char* x;
  const char* y;
};

/// n*P1 for n = 1..7.
inline const RationalRow kMultiplesP1[7] = {
    {"-2", "3"},
    {"8", "-23"},
    {"19/25", "522/125"},
    {"752/529", "-54239/12167"},
    {"174598/32761", "76943337/5929741"},
    {"-4471631/3027600", "-19554357097/5268024000"},
    {"12870778678/76545001", "1460185427995887/669692213749"},
};

inline const ModRow kMultiplesP1ModP[7] = {
    {"3123456771", "3"},          {"8", "3123456750"},          {"2748641961", "2148938264"},
    {"743961350", "253378136"},   {"1176218259", "691053659"},  {"2180670293", "2607412353"},
    {"128580328", "2472269909"},
};

/// n*P2 for n = 1..7.
inline const RationalRow kMultiplesP2[7] = {
    {"2", "5"},
    {"-64/25", "59/125"},
    {"5023/3249", "-842480/185193"},
    {"38194304/87025", "-236046706033/25672375"},
    {"279124379042/111229587121", "212464088270704525/37096290830311831"},
    {"-22792283822695031/9224204064998400", "1225613646951190271274203/885917648237503131648000"},
    {"17206060394388022298882/15290847667056681428641",
     "-8116122042886721305956245646487115/1890807614539313964919688531912561"},
};

inline const ModRow kMultiplesP2ModP[7] = {
    {"2", "5"},                   {"2248888874", "2923555540"}, {"2602399966", "2884651714"},
    {"1188080486", "863393529"},  {"842290081", "2500317348"},  {"2145964735", "2073955284"},
    {"759645483", "758431348"},
};

/// Department planes a0 + a1*x1 + a2*x2 = 0, stored as {a0, a1, a2}.
struct Plane {
  const char* name;
  long a0, a1, a2;
};

inline const Plane kPlanes[3] = {
    {"fin", 123, 48, 79},
    {"hr", 752, 36, 139},
    {"eng", 937, 58, 32},
};

inline const char* const kSk1Printed[2] = {"3257", "2774256590"};
inline const char* const kSk1OnPlane[2] = {"3257", "3083917365"};
inline const char* const kSk2[2] = {"6789", "118608156"};
inline const ModRow kPk1Printed = {"1385928692", "2187054458"};
inline const ModRow kPk2Printed = {"2132129612", "2902520269"};

struct Check {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok;
  std::string note;
};

inline std::string show(const RationalPoint& p) {
  return p.infinity ? "O" : "(" + p.x.get_str() + ", " + p.y.get_str() + ")";
}

inline std::string show(const ModPoint& p) {
  return p.infinity ? "O" : "(" + p.x.get_str() + ", " + p.y.get_str() + ")";
}

inline RationalPoint rational_row(const RationalRow& r) {
  return RationalPoint::affine(parse_rational(r.x), parse_rational(r.y));
}

inline ModPoint mod_row(const ModRow& r) { return ModPoint::affine(parse_integer(r.x), parse_integer(r.y)); }

/// Recomputes every published value of the worked example.
inline std::vector<Check> reproduce() {
  std::vector<Check> out;
  auto push = [&out](std::string name, const std::string& expected, const std::string& actual, std::string note = {}) {
    out.push_back({std::move(name), expected, actual, expected == actual, std::move(note)});
  };
  const Integer p = parse_integer(kPrime);
  const CurveQ curve = catalog("toy17");
  const CurveFp fp = reduce_curve(curve, p);
  const RationalPoint gens[2] = {curve.generators[0], curve.generators[1]};
  const RationalRow* tables[2] = {kMultiplesP1, kMultiplesP2};
  const ModRow* reduced[2] = {kMultiplesP1ModP, kMultiplesP2ModP};
  for (int g = 0; g < 2; ++g) {
    ModPoint base = reduce_point(fp, gens[g]);
    for (int n = 1; n <= 7; ++n) {
      std::string label = std::to_string(n) + "*P" + std::to_string(g + 1);
      RationalPoint rq = scalar_mul_q(curve, n, gens[g]);
      push(label + " over Q", show(rational_row(tables[g][n - 1])), show(rq));
      push(label + " reduced mod p", show(mod_row(reduced[g][n - 1])), show(reduce_point(fp, rq)));
      push(label + " computed mod p", show(mod_row(reduced[g][n - 1])), show(scalar_mul_fp(fp, n, base)));
    }
  }

  auto on_fin = [&](const char* const x[2]) {
    Integer v = kPlanes[0].a0 + kPlanes[0].a1 * parse_integer(x[0]) + kPlanes[0].a2 * parse_integer(x[1]);
    return mod(v, p) == 0 ? "on plane" : "off plane";
  };
  push("SK2 on fin plane", "on plane", on_fin(kSk2));
  push("SK1 (verification-line x2) on fin plane", "on plane", on_fin(kSk1OnPlane));
  push("SK1 (printed tuple) on fin plane", "off plane", on_fin(kSk1Printed),
       "the printed SK1 tuple does not satisfy the fin plane; its x2 differs from the verification line");

  const std::vector<ModPoint> bases = {reduce_point(fp, gens[0]), reduce_point(fp, gens[1])};
  auto pk_of = [&](const char* const x[2]) {
    return msm(fp, {parse_integer(x[0]), parse_integer(x[1])}, bases);
  };
  push("PK2 = 6789*P1 + 118608156*P2", show(mod_row(kPk2Printed)), show(pk_of(kSk2)));
  push("PK1 from printed SK1 tuple", show(mod_row(kPk1Printed)), show(pk_of(kSk1Printed)),
       "published PK1 was computed from the off-plane tuple (3257, 2774256590)");
  ModPoint pk1_on_plane = pk_of(kSk1OnPlane);
  push("PK1 from on-plane SK1", "(2298108553, 327407787)", show(pk1_on_plane),
       "key that a consistent fin-department join would have produced");
  return out;
}

}  // namespace hrpks::toy
