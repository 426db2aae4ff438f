#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrpks/bigint.hpp"
#include "hrpks/curve_fp.hpp"
#include "hrpks/curve_q.hpp"
#include "hrpks/encoding.hpp"
#include "hrpks/linalg_mod.hpp"
#include "hrpks/rng.hpp"

namespace hrpks {

/// Order-q subgroup of (Z/rho)^* hosting the Pedersen commitments.
struct AuxGroup {
  Integer rho;
  Integer g;
  Integer h;

  friend bool operator==(const AuxGroup&, const AuxGroup&) = default;
};

struct SystemParams {
  CurveQ curve_q;
  CurveFp curve;
  Integer q;
  std::vector<ModPoint> gens;  // reduced generators, one per rank coordinate
  AuxGroup aux;
  unsigned l_c = 0;  // challenge bits
  unsigned l_s = 0;  // statistical slack bits
  ModPoint gm_pub;

  std::size_t r() const { return gens.size(); }
  const Integer& p() const { return curve.p; }

  /// Bit width of integer responses and masks: bitlen(q) + l_c + l_s.
  std::size_t response_bits() const { return bit_length(q) + l_c + l_s; }

  friend bool operator==(const SystemParams& a, const SystemParams& b) {
    return a.curve_q == b.curve_q && a.curve == b.curve && a.q == b.q && a.gens == b.gens && a.aux == b.aux &&
           a.l_c == b.l_c && a.l_s == b.l_s && a.gm_pub == b.gm_pub;
  }
};

/// a_0 + a_1 x_1 + ... + a_r x_r = 0 (mod q); coeffs[0] is the constant term.
struct Hyperplane {
  std::vector<Integer> coeffs;

  std::size_t dim() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

  Integer evaluate(const std::vector<Integer>& x, const Integer& q) const {
    Integer v = coeffs.at(0);
    for (std::size_t i = 0; i < x.size(); ++i) v += coeffs.at(i + 1) * x[i];
    return mod(v, q);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
      out += coeffs[i].get_str() + "*x" + std::to_string(i) + " + ";
    }
    return out + coeffs[0].get_str() + " = 0";
  }

  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
};

struct DeptNode {
  std::string path;  // "/" for the root, "/fin", "/fin/audit", ...
  unsigned level = 0;
  std::vector<Hyperplane> constraints;  // own hyperplane last, ancestors' first
  std::vector<std::string> children;

  friend bool operator==(const DeptNode&, const DeptNode&) = default;
};

inline constexpr std::string_view kRootPath = "/";

/// The GM's department tree, keyed by path.
struct DeptTree {
  std::map<std::string, DeptNode, std::less<>> nodes;

  DeptTree() { nodes.emplace(std::string(kRootPath), DeptNode{std::string(kRootPath), 0, {}, {}}); }

  const DeptNode& root() const { return nodes.at(std::string(kRootPath)); }

  const DeptNode& at(std::string_view path) const {
    auto it = nodes.find(path);
    if (it == nodes.end()) throw Error(ErrorCode::kInvariant, "no department '" + std::string(path) + "'");
    return it->second;
  }

  bool contains(std::string_view path) const { return nodes.find(path) != nodes.end(); }

  friend bool operator==(const DeptTree&, const DeptTree&) = default;
};

struct SecretKey {
  std::vector<Integer> x;
  std::string member_id;
  std::string dept;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct PublicKey {
  ModPoint point;
  std::string member_id;
  std::string dept;
  std::optional<std::string> cert;  // canonical signature document issued by the GM

  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct KeyPair {
  SecretKey sk;
  PublicKey pk;
};

// ---- setup ---------------------------------------------------------------

namespace detail {

inline constexpr unsigned long kMaxAuxCofactor = 1000000;

inline Integer aux_h_exponent(const Integer& rho, const Integer& g, const Integer& q) {
  return hash_to_challenge(tags::kAuxH, {Encodable(rho), Encodable(g)}, bit_length(q) - 1) + 2;
}

}  // namespace detail

/// Smallest rho = k*q + 1 (k >= 2) that is prime; g = z^((rho-1)/q) for the
/// first z >= 2 giving g != 1; h = g^e with e hashed from (rho, g), so nobody
/// knows log_g(h).
inline AuxGroup make_aux_group(const Integer& q) {
  for (unsigned long k = 2; k <= detail::kMaxAuxCofactor; ++k) {
    Integer rho = q * k + 1;
    if (!is_probable_prime(rho)) continue;
    Integer cof = (rho - 1) / q;
    for (Integer z = 2; z < rho; ++z) {
      Integer g = pow_mod(z, cof, rho);
      if (g == 1) continue;
      Integer h = pow_mod(g, detail::aux_h_exponent(rho, g, q), rho);
      if (h == 1) throw Error(ErrorCode::kSetupFailed, "derived h is the identity");
      return {rho, g, h};
    }
  }
  throw Error(ErrorCode::kSetupFailed, "no prime rho = k*q + 1 with k <= 10^6");
}

inline void validate_aux_group(const AuxGroup& aux, const Integer& q) {
  auto bad = [](const char* why) { throw Error(ErrorCode::kInvariant, std::string("aux group: ") + why); };
  if (!is_probable_prime(aux.rho)) bad("rho not prime");
  if (mod(aux.rho - 1, q) != 0) bad("q does not divide rho - 1");
  if (aux.g <= 1 || aux.g >= aux.rho || pow_mod(aux.g, q, aux.rho) != 1) bad("g not in the order-q subgroup");
  if (aux.h <= 1 || aux.h >= aux.rho || pow_mod(aux.h, q, aux.rho) != 1) bad("h not in the order-q subgroup");
  if (aux.h != pow_mod(aux.g, detail::aux_h_exponent(aux.rho, aux.g, q), aux.rho)) bad("h not derived from g");
}

inline unsigned default_challenge_bits(const Integer& q) {
  return static_cast<unsigned>(std::min<std::size_t>(128, bit_length(q) - 1));
}

struct SetupResult {
  SystemParams params;
  KeyPair gm;
  std::vector<std::string> warnings;
};

/// Reduces the curve and its generators mod p, builds the commitment group and
/// samples the GM key (unconstrained, uniform in [0, q)^r).
inline SetupResult setup(const CurveQ& curve_q, const Integer& p, const Integer& q, std::optional<unsigned> l_c,
                         unsigned l_s, Rng& rng) {
  validate_curve_q(curve_q);
  if (!is_probable_prime(p)) throw Error(ErrorCode::kNotPrime, "p = " + p.get_str() + " is not prime");
  if (!is_probable_prime(q)) throw Error(ErrorCode::kNotPrime, "q = " + q.get_str() + " is not prime");
  if (curve_q.generators.empty()) {
    throw Error(ErrorCode::kSetupFailed, "curve " + curve_q.id + " has no generators; supply them explicitly");
  }
  SetupResult out;
  auto& params = out.params;
  params.curve_q = curve_q;
  params.curve = reduce_curve(curve_q, p);
  params.q = q;
  params.l_c = l_c.value_or(default_challenge_bits(q));
  params.l_s = l_s;
  if (params.l_c < 8) throw Error(ErrorCode::kSetupFailed, "challenge width must be at least 8 bits");
  if ((Integer(1) << params.l_c) >= q) throw Error(ErrorCode::kSetupFailed, "need 2^l_c < q");

  for (const auto& g : curve_q.generators) {
    ModPoint reduced = reduce_point(params.curve, g);
    if (reduced.infinity) throw Error(ErrorCode::kBadReduction, "a generator reduces to infinity mod p");
    if (std::find(params.gens.begin(), params.gens.end(), reduced) != params.gens.end()) {
      throw Error(ErrorCode::kBadReduction, "two generators coincide mod p");
    }
    params.gens.push_back(reduced);
  }
  params.aux = make_aux_group(q);

  std::vector<Integer> x;
  for (std::size_t i = 0; i < params.r(); ++i) x.push_back(rng.below(q));
  params.gm_pub = msm(params.curve, x, params.gens);
  out.gm.sk = SecretKey{x, "gm", std::string(kRootPath)};
  out.gm.pk = PublicKey{params.gm_pub, "gm", std::string(kRootPath), std::nullopt};

  if (q >= p) {
    out.warnings.push_back("q >= p: key coordinates are not significantly smaller than the generator orders, "
                           "so the bounded-relation hardness assumption does not apply (toy mode)");
  }
  return out;
}

inline SetupResult setup(std::string_view curve_id, const Integer& p, const Integer& q, std::optional<unsigned> l_c,
                         unsigned l_s, Rng& rng) {
  return setup(catalog(curve_id), p, q, l_c, l_s, rng);
}

// ---- departments ---------------------------------------------------------

inline MatrixMod coefficient_rows(const std::vector<Hyperplane>& hs) {
  MatrixMod rows;
  for (const auto& h : hs) rows.emplace_back(h.coeffs.begin() + 1, h.coeffs.end());
  return rows;
}

inline std::string child_path(std::string_view parent, std::string_view name) {
  bool ok = !name.empty();
  for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-');
  if (!ok) throw Error(ErrorCode::kInvariant, "department name must be [A-Za-z0-9_-]+");
  return parent == kRootPath ? "/" + std::string(name) : std::string(parent) + "/" + std::string(name);
}

inline void check_hyperplane_shape(const SystemParams& params, const Hyperplane& h) {
  if (h.coeffs.size() != params.r() + 1) throw Error(ErrorCode::kInvariant, "hyperplane needs r + 1 coefficients");
  bool nonzero = false;
  for (std::size_t i = 0; i < h.coeffs.size(); ++i) {
    if (h.coeffs[i] < 0 || h.coeffs[i] >= params.q) throw Error(ErrorCode::kInvariant, "coefficient outside [0, q)");
    if (i > 0 && h.coeffs[i] != 0) nonzero = true;
  }
  if (!nonzero) throw Error(ErrorCode::kInvariant, "hyperplane has all-zero linear part");
}

/// Adds a child department with a caller-chosen hyperplane. The stacked
/// constraint matrix must stay full rank mod q and depth is capped at r - 1.
inline const DeptNode& add_department_with(const SystemParams& params, DeptTree& tree, std::string_view parent_path,
                                           std::string_view name, Hyperplane h) {
  const DeptNode& parent = tree.at(parent_path);
  if (params.r() < 2 || parent.level + 1 > params.r() - 1) {
    throw Error(ErrorCode::kDepthLimit, "department depth would reach " + std::to_string(parent.level + 1) +
                                            " but the cap is r - 1 = " + std::to_string(params.r() - 1));
  }
  check_hyperplane_shape(params, h);
  std::string path = child_path(parent.path, name);
  if (tree.contains(path)) throw Error(ErrorCode::kDuplicate, "department " + path + " exists");
  DeptNode node{path, parent.level + 1, parent.constraints, {}};
  node.constraints.push_back(std::move(h));
  if (rank_mod(coefficient_rows(node.constraints), params.q) != node.constraints.size()) {
    throw Error(ErrorCode::kInvariant, "hyperplane is dependent on the parent's constraints");
  }
  tree.nodes.at(parent.path).children.push_back(path);
  return tree.nodes.emplace(path, std::move(node)).first->second;
}

/// Adds a child department with a uniformly random hyperplane, resampling
/// until the stacked coefficient matrix has full rank mod q.
inline const DeptNode& add_department(const SystemParams& params, DeptTree& tree, std::string_view parent_path,
                                      std::string_view name, Rng& rng) {
  const DeptNode& parent = tree.at(parent_path);
  if (params.r() < 2 || parent.level + 1 > params.r() - 1) {
    throw Error(ErrorCode::kDepthLimit, "department depth would reach " + std::to_string(parent.level + 1) +
                                            " but the cap is r - 1");
  }
  for (;;) {
    Hyperplane h;
    for (std::size_t i = 0; i <= params.r(); ++i) h.coeffs.push_back(rng.below(params.q));
    std::vector<Hyperplane> stacked = parent.constraints;
    stacked.push_back(h);
    if (rank_mod(coefficient_rows(stacked), params.q) != stacked.size()) continue;
    return add_department_with(params, tree, parent_path, name, std::move(h));
  }
}

inline bool satisfies_all(const std::vector<Hyperplane>& constraints, const std::vector<Integer>& x,
                          const Integer& q) {
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const Hyperplane& h) { return h.evaluate(x, q) == 0; });
}

/// Point on the department's affine subspace with the free coordinates
/// taken from `free_value(index)`.
template <class FreeValue>
std::vector<Integer> solve_on_department(const SystemParams& params, const DeptNode& dept, FreeValue&& free_value) {
  MatrixMod a = coefficient_rows(dept.constraints);
  std::vector<Integer> b;
  for (const auto& h : dept.constraints) b.push_back(mod(-h.coeffs[0], params.q));
  auto x = solve_affine_mod(a, b, params.r(), params.q, free_value);
  if (!x) throw Error(ErrorCode::kInconsistentSystem, "department " + dept.path + " has no solutions");
  return *x;
}

// ---- canonical form of the parameters --------------------------------------

inline Json params_to_json(const SystemParams& params) {
  Json gens = Json::array();
  for (const auto& g : params.gens) gens.push_back(point_to_json(g));
  return Json{{"curve_q", curve_q_to_json(params.curve_q)},
              {"curve_fp", curve_fp_to_json(params.curve)},
              {"q", int_to_json(params.q)},
              {"r", std::to_string(params.r())},
              {"gens", gens},
              {"aux", Json{{"rho", int_to_json(params.aux.rho)},
                           {"g", int_to_json(params.aux.g)},
                           {"h", int_to_json(params.aux.h)}}},
              {"l_c", std::to_string(params.l_c)},
              {"l_s", std::to_string(params.l_s)},
              {"gm_pub", point_to_json(params.gm_pub)}};
}

inline std::string serialize_params(const SystemParams& params) {
  return canonical_document("params", params_to_json(params));
}

/// Binds every transcript to one parameter set.
inline Digest params_digest(const SystemParams& params) { return sha256(serialize_params(params)); }

}  // namespace hrpks
