#pragma once

#include <set>
#include <string>
#include <string_view>

#include "hrpks/curve_fp.hpp"
#include "hrpks/curve_q.hpp"
#include "hrpks/encoding.hpp"
#include "hrpks/hierarchy.hpp"
#include "hrpks/revocation.hpp"
#include "hrpks/sigma.hpp"

// Canonical text documents for every persisted object (.params, .key, .pub,
// .cert, .rl, .sig, .tree). Loading re-checks each type's invariants.

namespace hrpks {

namespace detail {

template <class Fn>
auto parsing(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse || e.code() == ErrorCode::kInvariant) throw;
    throw Error(ErrorCode::kInvariant, e.what());
  }
}

[[noreturn]] inline void violation(const std::string& what) { throw Error(ErrorCode::kInvariant, what); }

inline unsigned small_uint(const Json& j, unsigned max) {
  Integer v = int_from_json(j);
  if (v < 0 || v > max) throw Error(ErrorCode::kParse, "small integer out of range");
  return static_cast<unsigned>(v.get_ui());
}

inline void check_point(const SystemParams& params, const ModPoint& pt, const std::string& what) {
  if (!on_curve_fp(params.curve, pt)) violation(what + " is not on the curve");
}

}  // namespace detail

// ---- params ----------------------------------------------------------------

inline SystemParams deserialize_params(std::string_view text) {
  return detail::parsing([&] {
    Json j = open_document(text, "params");
    SystemParams params;
    params.curve_q = curve_q_from_json(j.at("curve_q"));
    Integer p = int_from_json(j.at("curve_fp").at("p"));
    params.curve = reduce_curve(params.curve_q, p);
    if (curve_fp_to_json(params.curve) != j.at("curve_fp")) detail::violation("reduced curve does not match curve_q mod p");
    params.q = int_from_json(j.at("q"));
    if (!is_probable_prime(params.q)) detail::violation("q is not prime");
    params.l_c = detail::small_uint(j.at("l_c"), 4096);
    params.l_s = detail::small_uint(j.at("l_s"), 4096);
    if (params.l_c < 8 || (Integer(1) << params.l_c) >= params.q) detail::violation("need 8 <= l_c and 2^l_c < q");
    for (const auto& g : j.at("gens")) params.gens.push_back(point_from_json(g));
    if (params.gens.size() != detail::small_uint(j.at("r"), 4096)) detail::violation("len(gens) != r");
    if (params.gens.size() != params.curve_q.generators.size()) detail::violation("gens do not match the curve's generators");
    for (std::size_t i = 0; i < params.gens.size(); ++i) {
      const auto& g = params.gens[i];
      if (g.infinity) detail::violation("generator at infinity");
      detail::check_point(params, g, "generator");
      if (g != reduce_point(params.curve, params.curve_q.generators[i])) detail::violation("generator is not the reduction");
      for (std::size_t k = 0; k < i; ++k) {
        if (params.gens[k] == g) detail::violation("generators not distinct");
      }
    }
    const Json& aux = j.at("aux");
    params.aux = {int_from_json(aux.at("rho")), int_from_json(aux.at("g")), int_from_json(aux.at("h"))};
    validate_aux_group(params.aux, params.q);
    params.gm_pub = point_from_json(j.at("gm_pub"));
    detail::check_point(params, params.gm_pub, "GM public key");
    return params;
  });
}

// ---- keys ------------------------------------------------------------------

inline Json public_key_to_json(const PublicKey& pk) {
  return Json{{"point", point_to_json(pk.point)},
              {"member_id", pk.member_id},
              {"dept", pk.dept},
              {"signature", pk.cert ? Json::parse(*pk.cert) : Json()}};
}

inline PublicKey public_key_from_json(const Json& j, const SystemParams& params) {
  PublicKey pk;
  pk.point = point_from_json(j.at("point"));
  pk.member_id = string_from_json(j.at("member_id"));
  pk.dept = string_from_json(j.at("dept"));
  if (!j.at("signature").is_null()) {
    std::string cert = j.at("signature").dump();
    deserialize_signature(cert);
    pk.cert = cert;
  }
  detail::check_point(params, pk.point, "public key point");
  return pk;
}

/// .pub / .cert: the public key with the GM certificate embedded.
inline std::string serialize_cert(const PublicKey& pk) { return canonical_document("cert", public_key_to_json(pk)); }

inline PublicKey deserialize_cert(std::string_view text, const SystemParams& params) {
  return detail::parsing([&] { return public_key_from_json(open_document(text, "cert"), params); });
}

inline std::string serialize_keypair(const KeyPair& kp) {
  return canonical_document("keypair", Json{{"sk", Json{{"x", int_vector_to_json(kp.sk.x)},
                                                         {"member_id", kp.sk.member_id},
                                                         {"dept", kp.sk.dept}}},
                                            {"pk", public_key_to_json(kp.pk)}});
}

inline KeyPair deserialize_keypair(std::string_view text, const SystemParams& params) {
  return detail::parsing([&] {
    Json j = open_document(text, "keypair");
    KeyPair kp;
    kp.sk.x = int_vector_from_json(j.at("sk").at("x"));
    kp.sk.member_id = string_from_json(j.at("sk").at("member_id"));
    kp.sk.dept = string_from_json(j.at("sk").at("dept"));
    kp.pk = public_key_from_json(j.at("pk"), params);
    if (kp.sk.x.size() != params.r()) detail::violation("secret key has wrong dimension");
    for (const auto& xi : kp.sk.x) {
      if (xi < 0 || xi >= params.q) detail::violation("secret key coordinate outside [0, q)");
    }
    if (kp.sk.member_id != kp.pk.member_id || kp.sk.dept != kp.pk.dept) detail::violation("key halves disagree");
    if (msm(params.curve, kp.sk.x, params.gens) != kp.pk.point) detail::violation("public key does not match secret key");
    return kp;
  });
}

// ---- tree ------------------------------------------------------------------

inline std::string serialize_tree(const DeptTree& tree) {
  Json nodes = Json::array();
  for (const auto& [path, node] : tree.nodes) {
    Json cons = Json::array();
    for (const auto& h : node.constraints) cons.push_back(hyperplane_to_json(h));
    Json kids = Json::array();
    for (const auto& c : node.children) kids.push_back(c);
    nodes.push_back(Json{{"path", path}, {"level", std::to_string(node.level)}, {"constraints", cons}, {"children", kids}});
  }
  return canonical_document("tree", Json{{"nodes", nodes}});
}

inline DeptTree deserialize_tree(std::string_view text, const SystemParams& params) {
  return detail::parsing([&] {
    Json j = open_document(text, "tree");
    DeptTree tree;
    tree.nodes.clear();
    for (const auto& n : j.at("nodes")) {
      DeptNode node;
      node.path = string_from_json(n.at("path"));
      node.level = detail::small_uint(n.at("level"), 4096);
      for (const auto& h : n.at("constraints")) node.constraints.push_back(hyperplane_from_json(h));
      for (const auto& c : n.at("children")) node.children.push_back(string_from_json(c));
      if (!tree.nodes.emplace(node.path, node).second) detail::violation("duplicate department path");
    }
    if (!tree.contains(kRootPath) || tree.root().level != 0 || !tree.root().constraints.empty()) {
      detail::violation("tree has no proper root");
    }
    std::set<std::string> reached{std::string(kRootPath)};
    for (const auto& [path, node] : tree.nodes) {
      if (node.level > 0 && (params.r() < 2 || node.level > params.r() - 1)) detail::violation("department too deep");
      if (node.constraints.size() != node.level) detail::violation("constraint count != level at " + path);
      for (const auto& h : node.constraints) check_hyperplane_shape(params, h);
      if (rank_mod(coefficient_rows(node.constraints), params.q) != node.constraints.size()) {
        detail::violation("constraints of " + path + " are not independent");
      }
      for (const auto& child_path : node.children) {
        auto it = tree.nodes.find(child_path);
        if (it == tree.nodes.end()) detail::violation("missing child " + child_path);
        const DeptNode& child = it->second;
        if (child.level != node.level + 1 ||
            !std::equal(node.constraints.begin(), node.constraints.end(), child.constraints.begin())) {
          detail::violation("child " + child_path + " does not extend its parent");
        }
        if (!reached.insert(child_path).second) detail::violation("department reachable twice");
      }
    }
    if (reached.size() != tree.nodes.size()) detail::violation("orphan department");
    return tree;
  });
}

// ---- revocation list ---------------------------------------------------------

inline RevocationList deserialize_rl(std::string_view text, const SystemParams& params) {
  return detail::parsing([&] {
    Json j = open_document(text, "rl");
    RevocationList rl;
    rl.version = int_from_json(j.at("rl_version"));
    if (rl.version < 0) detail::violation("negative RL version");
    for (const auto& m : j.at("members")) {
      RevokedMember member{point_from_json(m.at("point")), string_from_json(m.at("member_id")),
                           string_from_json(m.at("dept"))};
      detail::check_point(params, member.point, "revoked key");
      if (is_member_revoked(rl, member.point)) detail::violation("duplicate revoked member");
      rl.members.push_back(std::move(member));
    }
    for (const auto& g : j.at("groups")) {
      ConstraintSet set{string_from_json(g.at("dept")), {}};
      for (const auto& h : g.at("hyperplanes")) {
        set.hyperplanes.push_back(hyperplane_from_json(h));
        check_hyperplane_shape(params, set.hyperplanes.back());
      }
      if (set.hyperplanes.empty()) detail::violation("empty constraint set");
      if (is_group_revoked(rl, set.dept)) detail::violation("duplicate revoked group");
      rl.groups.push_back(std::move(set));
    }
    RevocationList sorted = rl;
    detail::sort_members(sorted.members);
    detail::sort_groups(sorted.groups);
    if (!(sorted == rl)) detail::violation("RL sections are not in canonical order");
    return rl;
  });
}

}  // namespace hrpks
