#pragma once

#include <map>
#include <string>
#include <string_view>

#include "hrpks/hierarchy.hpp"
#include "hrpks/revocation.hpp"
#include "hrpks/sigma.hpp"

namespace hrpks {

/// The bytes the GM signs when certifying a public key.
inline std::string certificate_message(const PublicKey& pk) {
  Bytes b = encode(Encodable::seq({Encodable(pk.point), Encodable::bytes(pk.member_id), Encodable::bytes(pk.dept)}));
  return std::string(b.begin(), b.end());
}

/// GM representation-proof signature (empty RL) over (point, member_id, dept).
inline std::string gm_certify(const SystemParams& params, const KeyPair& gm, const PublicKey& pk, Rng& rng) {
  if (gm.pk.point != params.gm_pub) throw Error(ErrorCode::kInvariant, "GM key does not match the parameters");
  return serialize_signature(sign(params, gm.sk, gm.pk, RevocationList{}, certificate_message(pk), rng));
}

inline bool verify_cert(const SystemParams& params, const PublicKey& pk) {
  if (!pk.cert) return false;
  try {
    Signature sig = deserialize_signature(*pk.cert);
    PublicKey gm_pub{params.gm_pub, "gm", std::string(kRootPath), std::nullopt};
    return verify(params, gm_pub, RevocationList{}, certificate_message(pk), sig).accepted;
  } catch (const Error&) {
    return false;
  }
}

/// Issues a member key on the department's affine subspace. Coordinates that
/// the elimination leaves free are taken from `fixed` when present there and
/// are otherwise uniform in [0, q).
inline KeyPair join(const SystemParams& params, const KeyPair& gm, const DeptNode& dept, std::string_view member_id,
                    Rng& rng, const std::map<std::size_t, Integer>& fixed = {}) {
  if (dept.level < 1) throw Error(ErrorCode::kInvariant, "members join a department, not the root");
  if (member_id.empty()) throw Error(ErrorCode::kInvariant, "member id must be non-empty");
  std::vector<Integer> x = solve_on_department(params, dept, [&](std::size_t col) {
    auto it = fixed.find(col);
    return it != fixed.end() ? it->second : rng.below(params.q);
  });
  if (!satisfies_all(dept.constraints, x, params.q)) {
    throw Error(ErrorCode::kInconsistentSystem, "solution does not satisfy the constraints of " + dept.path);
  }
  KeyPair kp;
  kp.sk = SecretKey{x, std::string(member_id), dept.path};
  kp.pk = PublicKey{msm(params.curve, x, params.gens), std::string(member_id), dept.path, std::nullopt};
  kp.pk.cert = gm_certify(params, gm, kp.pk, rng);
  return kp;
}

}  // namespace hrpks
