#pragma once

#include <string>

#include "hrpks.hpp"

namespace hrpks::testing {

inline const Integer kToyP("3123456773");

// p = q as in the worked example; l_c defaults to 31 bits.
inline SetupResult toy_setup(std::string_view seed = "toy") {
  Rng rng = Rng::seeded(seed, "setup");
  return setup("toy17", kToyP, kToyP, std::nullopt, 64, rng);
}

inline Hyperplane plane(long a0, long a1, long a2) { return Hyperplane{{a0, a1, a2}}; }

/// Financial, HR and Engineering departments with the worked-example planes.
inline DeptTree toy_tree(const SystemParams& params) {
  DeptTree tree;
  add_department_with(params, tree, "/", "fin", plane(123, 48, 79));
  add_department_with(params, tree, "/", "hr", plane(752, 36, 139));
  add_department_with(params, tree, "/", "eng", plane(937, 58, 32));
  return tree;
}

/// y^2 + y = x^3 - 7x + 6 (conductor 5077, rank 3) with three rational points.
inline CurveQ rank3_curve() {
  CurveQ c;
  c.id = "5077a1";
  c.coeffs = {0, 0, 1, -7, 6};
  c.declared_rank = 3;
  c.generators = {RationalPoint::affine(0, 2), RationalPoint::affine(1, 0), RationalPoint::affine(2, 0)};
  c.torsion_note = "trivial";
  return c;
}

inline SetupResult rank3_setup(std::string_view seed = "rank3") {
  Rng rng = Rng::seeded(seed, "setup");
  return setup(rank3_curve(), kToyP, Integer("2147483647"), std::nullopt, 64, rng);
}

}  // namespace hrpks::testing
