#include <gtest/gtest.h>

#include "hrpks/curve_fp.hpp"
#include "hrpks/rng.hpp"
#include "hrpks/toy_example.hpp"

namespace hrpks {
namespace {

const Integer kP("3123456773");

ModPoint mp(const char* x, const char* y) { return ModPoint::affine(Integer(x), Integer(y)); }

// Brute-force oracle: all affine points plus infinity.
std::vector<ModPoint> enumerate_points(const CurveFp& c) {
  std::vector<ModPoint> out{ModPoint::at_infinity()};
  unsigned long p = c.p.get_ui();
  for (unsigned long x = 0; x < p; ++x)
    for (unsigned long y = 0; y < p; ++y) {
      ModPoint pt = ModPoint::affine(x, y);
      if (on_curve_fp(c, pt)) out.push_back(pt);
    }
  return out;
}

TEST(ReduceCurve, Toy17) {
  CurveFp c = reduce_curve(catalog("toy17"), kP);
  EXPECT_EQ(c.coeffs.a6, 17);
  EXPECT_EQ(c.coeffs.a1, 0);
  EXPECT_EQ(c.coeffs.a4, 0);
  EXPECT_EQ(c.source, "toy17");
}

TEST(ReduceCurve, BadReductionAndCompositeModulus) {
  try {
    reduce_curve(catalog("toy17"), 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBadReduction);
  }
  EXPECT_THROW(reduce_curve(catalog("toy17"), 3), Error);  // 3 | 124848
  try {
    reduce_curve(catalog("toy17"), 91);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotPrime);
  }
}

TEST(ReduceCurve, Rank28) {
  CurveQ q = catalog("rank28");
  CurveFp c = reduce_curve(q, kP);
  EXPECT_EQ(c.coeffs.a2, kP - 1);
  EXPECT_EQ(c.coeffs.a4, mod(q.coeffs.a4.get_num(), kP));
  EXPECT_EQ(c.coeffs.a6, mod(q.coeffs.a6.get_num(), kP));
}

TEST(ReducePoint, TableRows) {
  CurveQ q = catalog("toy17");
  CurveFp c = reduce_curve(q, kP);
  EXPECT_EQ(reduce_point(c, q.generators[0]), mp("3123456771", "3"));
  EXPECT_TRUE(reduce_point(c, RationalPoint::at_infinity()).infinity);
  EXPECT_EQ(reduce_point(c, scalar_mul_q(q, 6, q.generators[0])), mp("2180670293", "2607412353"));
}

TEST(ReducePoint, DenominatorDivisibleByPGoesToInfinity) {
  CurveQ q = catalog("toy17");
  // 3*P1 = (19/25, 522/125): p = 5 is a bad prime for toy17? 124848 = 2^4*3^3*17*17, so 5 is good.
  CurveFp c = reduce_curve(q, 5);
  EXPECT_TRUE(reduce_point(c, scalar_mul_q(q, 3, q.generators[0])).infinity);
}

TEST(AddFp, TableRows) {
  CurveQ q = catalog("toy17");
  CurveFp c = reduce_curve(q, kP);
  ModPoint p1 = mp("3123456771", "3");
  EXPECT_EQ(scalar_mul_fp(c, 2, p1), mp("8", "3123456750"));
  EXPECT_EQ(add_fp(c, p1, p1), mp("8", "3123456750"));
  EXPECT_EQ(scalar_mul_fp(c, 7, reduce_point(c, q.generators[1])), mp("759645483", "758431348"));
  EXPECT_EQ(scalar_mul_fp(c, 1, p1), p1);
  EXPECT_TRUE(scalar_mul_fp(c, 0, p1).infinity);
  EXPECT_EQ(scalar_mul_fp(c, -1, p1), negate_fp(c, p1));
  EXPECT_THROW(add_fp(c, mp("1", "1"), p1), Error);
}

TEST(ReductionHomomorphism, BothGeneratorsUpToSeven) {
  CurveQ q = catalog("toy17");
  CurveFp c = reduce_curve(q, kP);
  const toy::ModRow* tables[2] = {toy::kMultiplesP1ModP, toy::kMultiplesP2ModP};
  for (int g = 0; g < 2; ++g) {
    ModPoint base = reduce_point(c, q.generators[g]);
    for (int n = 1; n <= 7; ++n) {
      ModPoint over_q = reduce_point(c, scalar_mul_q(q, n, q.generators[g]));
      EXPECT_EQ(over_q, scalar_mul_fp(c, n, base));
      EXPECT_EQ(over_q, toy::mod_row(tables[g][n - 1])) << "P" << g + 1 << " n=" << n;
    }
  }
}

TEST(Msm, PublicKeys) {
  CurveQ q = catalog("toy17");
  CurveFp c = reduce_curve(q, kP);
  std::vector<ModPoint> gens = {reduce_point(c, q.generators[0]), reduce_point(c, q.generators[1])};
  EXPECT_EQ(msm(c, {6789, Integer("118608156")}, gens), mp("2132129612", "2902520269"));
  EXPECT_TRUE(msm(c, {0, 0}, gens).infinity);
  // The printed PK1 comes from the printed x2, not from the on-plane one.
  EXPECT_EQ(msm(c, {3257, Integer("2774256590")}, gens), mp("1385928692", "2187054458"));
  EXPECT_EQ(msm(c, {3257, Integer("3083917365")}, gens), mp("2298108553", "327407787"));
  EXPECT_THROW(msm(c, {1}, gens), Error);
}

TEST(Msm, MatchesNaiveSum) {
  CurveQ q = catalog("toy17");
  CurveFp c = reduce_curve(q, kP);
  Rng rng = Rng::seeded("msm-naive");
  for (int i = 0; i < 500; ++i) {
    std::size_t len = 1 + rng.below(4).get_ui();
    std::vector<Integer> scalars;
    std::vector<ModPoint> points;
    ModPoint naive = ModPoint::at_infinity();
    for (std::size_t k = 0; k < len; ++k) {
      scalars.push_back(rng.range(-(Integer(1) << 40), Integer(1) << 40));
      points.push_back(random_point_fp(c, rng));
      naive = add_fp(c, naive, scalar_mul_fp(c, scalars.back(), points.back()));
    }
    ASSERT_EQ(msm(c, scalars, points), naive);
  }
}

TEST(GroupAxiomsFp, Sampled) {
  CurveFp c = reduce_curve(catalog("toy17"), kP);
  Rng rng = Rng::seeded("fp-axioms");
  for (int i = 0; i < 200; ++i) {
    ModPoint a = random_point_fp(c, rng), b = random_point_fp(c, rng), d = random_point_fp(c, rng);
    ASSERT_TRUE(on_curve_fp(c, a));
    EXPECT_EQ(add_fp(c, a, b), add_fp(c, b, a));
    EXPECT_EQ(add_fp(c, add_fp(c, a, b), d), add_fp(c, a, add_fp(c, b, d)));
    EXPECT_TRUE(add_fp(c, a, negate_fp(c, a)).infinity);
    Integer m = rng.bits(40), n = rng.bits(40);
    EXPECT_EQ(scalar_mul_fp(c, m + n, a), add_fp(c, scalar_mul_fp(c, m, a), scalar_mul_fp(c, n, a)));
  }
}

TEST(PointOrder, InfinityIsOne) {
  CurveFp c = reduce_curve(catalog("toy17"), 97);
  EXPECT_EQ(point_order(c, ModPoint::at_infinity()), 1);
}

TEST(PointOrder, Toy17Over97MatchesEnumeration) {
  CurveFp c = reduce_curve(catalog("toy17"), 97);
  auto pts = enumerate_points(c);
  Integer n = pts.size();
  EXPECT_EQ(n, 103);
  for (const auto& pt : pts) {
    Integer ord = point_order(c, pt);
    EXPECT_EQ(n % ord, 0);
    EXPECT_TRUE(scalar_mul_fp(c, ord, pt).infinity);
  }
}

// Small-prime sweep over a few curves, comparing against brute-force counts.
TEST(PointOrder, DividesEnumeratedGroupOrder) {
  std::vector<CurveQ> curves = {catalog("toy17"), catalog("rank1_877x"), catalog("rank2_73x")};
  CurveQ c5077;
  c5077.id = "5077a1";
  c5077.coeffs = {0, 0, 1, -7, 6};
  curves.push_back(c5077);
  for (const auto& cq : curves) {
    for (unsigned long p : {5ul, 7ul, 11ul, 13ul, 29ul, 101ul, 211ul}) {
      CurveFp c;
      try {
        c = reduce_curve(cq, p);
      } catch (const Error&) {
        continue;  // bad prime for this curve
      }
      auto pts = enumerate_points(c);
      Integer n = pts.size();
      for (const auto& pt : pts) {
        Integer ord = point_order(c, pt);
        EXPECT_EQ(n % ord, 0) << cq.id << " p=" << p;
        ASSERT_TRUE(scalar_mul_fp(c, ord, pt).infinity);
        for (const auto& [ell, e] : factorize(ord)) {
          (void)e;
          EXPECT_FALSE(scalar_mul_fp(c, ord / ell, pt).infinity);
        }
      }
    }
  }
}

TEST(PointOrder, ToyGenerators) {
  CurveQ q = catalog("toy17");
  CurveFp c = reduce_curve(q, kP);
  ModPoint p1 = reduce_point(c, q.generators[0]), p2 = reduce_point(c, q.generators[1]);
  OrderResult r1 = point_order_detail(c, p1);
  HasseInterval hi = hasse_interval(kP);
  EXPECT_GE(r1.annihilator, hi.low);
  EXPECT_LE(r1.annihilator, hi.high);
  EXPECT_EQ(r1.annihilator % r1.order, 0);
  EXPECT_EQ(r1.order, Integer("3123456774"));
  EXPECT_EQ(point_order(c, p2), Integer("520576129"));
  EXPECT_TRUE(scalar_mul_fp(c, Integer("520576129"), p2).infinity);
}

TEST(Factorize, ProductMatches) {
  Rng rng = Rng::seeded("factor");
  for (int i = 0; i < 100; ++i) {
    Integer n = rng.bits(60) + 2;
    Integer prod = 1;
    for (const auto& [ell, e] : factorize(n)) {
      EXPECT_TRUE(is_probable_prime(ell));
      for (unsigned k = 0; k < e; ++k) prod *= ell;
    }
    EXPECT_EQ(prod, n);
  }
}

TEST(SqrtMod, AgreesWithSquaring) {
  Rng rng = Rng::seeded("sqrt");
  for (Integer p : {Integer(97), Integer(17), kP, Integer("18446744073709551557")}) {
    for (int i = 0; i < 50; ++i) {
      Integer a = rng.below(p), r;
      if (sqrt_mod(a, p, r)) EXPECT_EQ(mod(r * r, p), a);
    }
  }
}

}  // namespace
}  // namespace hrpks
