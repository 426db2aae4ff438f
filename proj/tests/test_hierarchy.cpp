#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace hrpks {
namespace {

using testing::kToyP;
using testing::plane;

TEST(Setup, ToyParamsReduceGenerators) {
  auto res = testing::toy_setup();
  const auto& params = res.params;
  ASSERT_EQ(params.r(), 2u);
  EXPECT_EQ(params.gens[0], ModPoint::affine(Integer("3123456771"), 3));
  EXPECT_EQ(params.gens[1], ModPoint::affine(2, 5));
  EXPECT_EQ(params.l_c, 31u);
  EXPECT_EQ(res.gm.pk.point, params.gm_pub);
  EXPECT_EQ(msm(params.curve, res.gm.sk.x, params.gens), params.gm_pub);
  EXPECT_FALSE(res.warnings.empty());  // q = p
}

TEST(Setup, AuxGroupForToyQ) {
  auto params = testing::toy_setup().params;
  EXPECT_EQ(params.aux.rho, Integer("18740740639"));
  EXPECT_EQ(params.aux.g, 64);
  EXPECT_EQ(params.aux.h, Integer("5189001025"));
  EXPECT_NO_THROW(validate_aux_group(params.aux, params.q));
  EXPECT_EQ(pow_mod(params.aux.h, params.q, params.aux.rho), 1);
}

TEST(Setup, DeterministicUnderSeed) {
  EXPECT_EQ(testing::toy_setup("s").params, testing::toy_setup("s").params);
  EXPECT_NE(testing::toy_setup("s").params.gm_pub, testing::toy_setup("t").params.gm_pub);
}

TEST(Setup, Errors) {
  Rng rng = Rng::seeded("errs");
  auto code = [&](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;  // marker for "did not throw"
  };
  EXPECT_EQ(code([&] { setup("toy17", 4, kToyP, std::nullopt, 64, rng); }), ErrorCode::kNotPrime);
  EXPECT_EQ(code([&] { setup("toy17", kToyP, 15, std::nullopt, 64, rng); }), ErrorCode::kNotPrime);
  EXPECT_EQ(code([&] { setup("toy17", 2, kToyP, std::nullopt, 64, rng); }), ErrorCode::kBadReduction);
  EXPECT_EQ(code([&] { setup("rank14", kToyP, kToyP, std::nullopt, 64, rng); }), ErrorCode::kSetupFailed);
  EXPECT_EQ(code([&] { setup("toy17", kToyP, kToyP, 40u, 64, rng); }), ErrorCode::kSetupFailed);
}

TEST(Departments, InjectedFinancialPlane) {
  auto params = testing::toy_setup().params;
  DeptTree tree = testing::toy_tree(params);
  const DeptNode& fin = tree.at("/fin");
  EXPECT_EQ(fin.level, 1u);
  ASSERT_EQ(fin.constraints.size(), 1u);
  EXPECT_EQ(fin.constraints[0], plane(123, 48, 79));
  EXPECT_EQ(tree.root().children.size(), 3u);
}

TEST(Departments, DepthCappedAtRMinusOne) {
  auto params = testing::toy_setup().params;
  DeptTree tree = testing::toy_tree(params);
  Rng rng = Rng::seeded("depth");
  try {
    add_department(params, tree, "/fin", "audit", rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDepthLimit);
  }
}

TEST(Departments, RejectsBadInput) {
  auto params = testing::toy_setup().params;
  DeptTree tree = testing::toy_tree(params);
  EXPECT_THROW(add_department_with(params, tree, "/", "fin", plane(1, 2, 3)), Error);       // duplicate
  EXPECT_THROW(add_department_with(params, tree, "/", "x y", plane(1, 2, 3)), Error);       // bad name
  EXPECT_THROW(add_department_with(params, tree, "/", "zero", plane(5, 0, 0)), Error);      // zero linear part
  EXPECT_THROW(add_department_with(params, tree, "/nope", "a", plane(1, 2, 3)), Error);    // unknown parent
  EXPECT_THROW(add_department_with(params, tree, "/", "short", Hyperplane{{1, 2}}), Error);  // wrong width
}

TEST(Departments, RankThreeLevelTwoIsFullRank) {
  auto params = testing::rank3_setup().params;
  DeptTree tree;
  Rng rng = Rng::seeded("r3-tree");
  add_department(params, tree, "/", "a", rng);
  const DeptNode& leaf = add_department(params, tree, "/a", "b", rng);
  EXPECT_EQ(leaf.level, 2u);
  ASSERT_EQ(leaf.constraints.size(), 2u);
  EXPECT_EQ(leaf.constraints[0], tree.at("/a").constraints[0]);
  EXPECT_EQ(rank_mod(coefficient_rows(leaf.constraints), params.q), 2u);
  EXPECT_THROW(add_department(params, tree, "/a/b", "c", rng), Error);
  // A plane parallel to the parent's is dependent.
  Hyperplane parallel = tree.at("/a").constraints[0];
  parallel.coeffs[0] = mod(parallel.coeffs[0] + 1, params.q);
  EXPECT_THROW(add_department_with(params, tree, "/a", "dup", parallel), Error);
}

// Plain Gaussian elimination over small primes as an oracle for rank_mod.
std::size_t oracle_rank(MatrixMod m, long q) {
  std::size_t rank = 0, cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && mod(m[piv][c], q) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    Integer inv = inv_mod(m[rank][c], q);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank) continue;
      Integer f = mod(m[r][c] * inv, q);
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = mod(m[r][k] - f * m[rank][k], q);
    }
    ++rank;
  }
  return rank;
}

TEST(LinalgMod, RankMatchesOracle) {
  Rng rng = Rng::seeded("rank-oracle");
  for (int i = 0; i < 500; ++i) {
    long q = i % 2 ? 5 : 7;
    std::size_t rows = 1 + rng.below(4).get_ui(), cols = 1 + rng.below(4).get_ui();
    MatrixMod m(rows, std::vector<Integer>(cols));
    for (auto& row : m)
      for (auto& v : row) v = rng.below(q);
    EXPECT_EQ(rank_mod(m, q), oracle_rank(m, q));
  }
}

TEST(Join, FixedFreeCoordinateGivesWorkedExampleKeys) {
  auto res = testing::toy_setup();
  DeptTree tree = testing::toy_tree(res.params);
  Rng rng = Rng::seeded("join");
  KeyPair k2 = join(res.params, res.gm, tree.at("/fin"), "member2", rng, {{0, 6789}});
  EXPECT_EQ(k2.sk.x, (std::vector<Integer>{6789, Integer("118608156")}));
  EXPECT_EQ(k2.pk.point, ModPoint::affine(Integer("2132129612"), Integer("2902520269")));
  KeyPair k1 = join(res.params, res.gm, tree.at("/fin"), "member1", rng, {{0, 3257}});
  EXPECT_EQ(k1.sk.x[1], Integer("3083917365"));
  EXPECT_TRUE(verify_cert(res.params, k1.pk));
}

TEST(Join, RootIsNotADepartment) {
  auto res = testing::toy_setup();
  DeptTree tree = testing::toy_tree(res.params);
  Rng rng = Rng::seeded("join-root");
  EXPECT_THROW(join(res.params, res.gm, tree.root(), "m", rng), Error);
}

TEST(Join, KeysSatisfyEveryAncestorConstraint) {
  auto res = testing::rank3_setup();
  const auto& params = res.params;
  DeptTree tree;
  Rng rng = Rng::seeded("join-prop");
  add_department(params, tree, "/", "a", rng);
  add_department(params, tree, "/a", "a1", rng);
  add_department(params, tree, "/a", "a2", rng);
  add_department(params, tree, "/", "b", rng);
  for (const char* path : {"/a", "/a/a1", "/a/a2", "/b"}) {
    for (int i = 0; i < 20; ++i) {
      KeyPair kp = join(params, res.gm, tree.at(path), "m" + std::to_string(i), rng);
      EXPECT_TRUE(satisfies_all(tree.at(path).constraints, kp.sk.x, params.q));
      EXPECT_EQ(msm(params.curve, kp.sk.x, params.gens), kp.pk.point);
      for (const auto& xi : kp.sk.x) {
        EXPECT_GE(xi, 0);
        EXPECT_LT(xi, params.q);
      }
    }
  }
}

TEST(Join, SiblingKeysFailEachOthersConstraints) {
  auto res = testing::toy_setup();
  DeptTree tree = testing::toy_tree(res.params);
  Rng rng = Rng::seeded("siblings");
  for (int i = 0; i < 20; ++i) {
    KeyPair fin = join(res.params, res.gm, tree.at("/fin"), "f", rng);
    KeyPair hr = join(res.params, res.gm, tree.at("/hr"), "h", rng);
    EXPECT_FALSE(satisfies_all(tree.at("/hr").constraints, fin.sk.x, res.params.q));
    EXPECT_FALSE(satisfies_all(tree.at("/fin").constraints, hr.sk.x, res.params.q));
  }
}

TEST(Cert, BindsEveryField) {
  auto res = testing::toy_setup();
  DeptTree tree = testing::toy_tree(res.params);
  Rng rng = Rng::seeded("cert");
  KeyPair kp = join(res.params, res.gm, tree.at("/hr"), "alice", rng);
  ASSERT_TRUE(verify_cert(res.params, kp.pk));

  PublicKey renamed = kp.pk;
  renamed.member_id[0] ^= 1;
  EXPECT_FALSE(verify_cert(res.params, renamed));
  PublicKey moved = kp.pk;
  moved.dept = "/fin";
  EXPECT_FALSE(verify_cert(res.params, moved));
  PublicKey other_point = kp.pk;
  other_point.point = res.params.gens[0];
  EXPECT_FALSE(verify_cert(res.params, other_point));
  PublicKey no_cert = kp.pk;
  no_cert.cert.reset();
  EXPECT_FALSE(verify_cert(res.params, no_cert));
  PublicKey garbage = kp.pk;
  garbage.cert = "{}";
  EXPECT_FALSE(verify_cert(res.params, garbage));
}

TEST(Cert, OtherParamsReject) {
  auto a = testing::toy_setup("a");
  auto b = testing::toy_setup("b");
  DeptTree tree = testing::toy_tree(a.params);
  Rng rng = Rng::seeded("cross");
  KeyPair kp = join(a.params, a.gm, tree.at("/eng"), "bob", rng);
  EXPECT_TRUE(verify_cert(a.params, kp.pk));
  EXPECT_FALSE(verify_cert(b.params, kp.pk));
}

TEST(Hyperplane, EvaluateAndText) {
  Hyperplane fin = plane(123, 48, 79);
  EXPECT_EQ(fin.evaluate({6789, Integer("118608156")}, kToyP), 0);
  EXPECT_NE(fin.evaluate({3257, Integer("2774256590")}, kToyP), 0);
  EXPECT_EQ(fin.to_string(), "48*x1 + 79*x2 + 123 = 0");
}

}  // namespace
}  // namespace hrpks
