#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hrpks/bigint.hpp"
#include "hrpks/curve_fp.hpp"
#include "hrpks/encoding.hpp"
#include "hrpks/hierarchy.hpp"
#include "hrpks/revocation.hpp"
#include "hrpks/rng.hpp"

namespace hrpks {

/// Proof that the collapsed constraint value committed in D is nonzero:
/// knowledge of (w, u) with g = D^w * h^u.
struct NonzeroProof {
  Integer gamma_seed_index;  // index j of the revoked constraint set
  Integer d;                 // D_j = g^{a_0} * prod C_i^{a_i}
  Integer sw;
  Integer su;

  friend bool operator==(const NonzeroProof&, const NonzeroProof&) = default;
};

/// Fiat-Shamir transcript of the representation proof, optionally extended
/// with Pedersen commitments to the key and one nonzero proof per revoked
/// constraint set.
struct Signature {
  Integer challenge;
  std::vector<Integer> s;                     // integer responses k_i + c*x_i
  std::vector<Integer> commitments;           // C_i = g^{x_i} h^{t_i}
  std::vector<Integer> commitment_responses;  // u_i + c*t_i mod q
  std::vector<NonzeroProof> nonzero_proofs;
  Integer retry = 0;
  Integer rl_version = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

enum class RejectReason { kNone, kPkRevoked, kRlMismatch, kMalformed, kRange, kBadChallenge, kBadCert };

inline const char* to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kNone: return "NONE";
    case RejectReason::kPkRevoked: return "PK_REVOKED";
    case RejectReason::kRlMismatch: return "RL_MISMATCH";
    case RejectReason::kMalformed: return "MALFORMED";
    case RejectReason::kRange: return "RANGE";
    case RejectReason::kBadChallenge: return "BAD_CHALLENGE";
    case RejectReason::kBadCert: return "BAD_CERT";
  }
  return "UNKNOWN";
}

struct VerifyResult {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
  std::string detail;

  static VerifyResult accept() { return {true, RejectReason::kNone, {}}; }
  static VerifyResult reject(RejectReason r, std::string why = {}) { return {false, r, std::move(why)}; }

  explicit operator bool() const { return accepted; }
};

inline constexpr unsigned kMaxRetries = 64;

inline Integer pedersen_commit(const SystemParams& params, const Integer& value, const Integer& randomness) {
  const auto& a = params.aux;
  return mod(pow_mod(a.g, mod(value, params.q), a.rho) * pow_mod(a.h, mod(randomness, params.q), a.rho), a.rho);
}

/// Coefficient-wise sum of gamma_l * f_l mod q.
inline Hyperplane collapse_constraints(const std::vector<Hyperplane>& set, const std::vector<Integer>& gammas,
                                       const Integer& q) {
  if (set.empty() || gammas.size() != set.size()) {
    throw Error(ErrorCode::kLengthMismatch, "collapse needs one gamma per hyperplane");
  }
  Hyperplane out{std::vector<Integer>(set.front().coeffs.size(), 0)};
  for (std::size_t l = 0; l < set.size(); ++l) {
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += gammas[l] * set[l].coeffs.at(i);
  }
  for (auto& c : out.coeffs) c = mod(c, q);
  return out;
}

/// gamma_{j,l} = H("HRPKS-v1/gamma", [rl_hash, j, l, retry]) + 1, in [1, q).
inline std::vector<Integer> derive_gammas(const Integer& q, const Digest& rl_digest, std::size_t set_index,
                                          std::size_t set_size, const Integer& retry) {
  std::vector<Integer> out;
  for (std::size_t l = 0; l < set_size; ++l) {
    out.push_back(hash_to_challenge(tags::kGamma,
                                    {Encodable(to_bytes(rl_digest)), Encodable(Integer(static_cast<unsigned long>(set_index))),
                                     Encodable(Integer(static_cast<unsigned long>(l))), Encodable(retry)},
                                    bit_length(q) - 1) +
                  1);
  }
  return out;
}

namespace detail {

inline std::vector<Encodable> as_encodables(const std::vector<Integer>& v) {
  return std::vector<Encodable>(v.begin(), v.end());
}

struct Announcements {
  ModPoint r;
  std::vector<Integer> commitments;
  std::vector<Integer> a;
  std::vector<Integer> d;
  std::vector<Integer> b;
};

inline Integer transcript_challenge(const SystemParams& params, const ModPoint& pk_point, const Digest& rl_digest,
                                    const Integer& retry, const Announcements& ann, std::string_view message) {
  std::vector<Encodable> parts = {
      Encodable(to_bytes(params_digest(params))),
      Encodable(pk_point),
      Encodable(to_bytes(rl_digest)),
      Encodable(retry),
      Encodable(ann.r),
      Encodable::seq(as_encodables(ann.commitments)),
      Encodable::seq(as_encodables(ann.a)),
      Encodable::seq(as_encodables(ann.d)),
      Encodable::seq(as_encodables(ann.b)),
      Encodable::bytes(message),
  };
  return hash_to_challenge(tags::kChallenge, parts, params.l_c);
}

/// D = g^{a_0} * prod C_i^{a_i} mod rho.
inline Integer constraint_commitment(const SystemParams& params, const Hyperplane& f,
                                     const std::vector<Integer>& commitments) {
  const auto& aux = params.aux;
  Integer d = pow_mod(aux.g, f.coeffs.at(0), aux.rho);
  for (std::size_t i = 0; i < commitments.size(); ++i) d = mod(d * pow_mod(commitments[i], f.coeffs.at(i + 1), aux.rho), aux.rho);
  return d;
}

inline std::string describe_set(const ConstraintSet& set) {
  std::string out = set.dept + " [";
  for (std::size_t i = 0; i < set.hyperplanes.size(); ++i) {
    out += (i ? "; " : "") + set.hyperplanes[i].to_string();
  }
  return out + "]";
}

}  // namespace detail

/// Signs `message` under `sk`, proving knowledge of the representation of the
/// public key and that the key is off every revoked constraint set in `rl`.
///
/// Throws kSignerRevoked when pk is on the member list or sk satisfies every
/// hyperplane of some revoked set (the nonzero witness does not exist), and
/// kRetryExhausted when 64 gamma derivations all collapse to zero.
inline Signature sign(const SystemParams& params, const SecretKey& sk, const PublicKey& pk, const RevocationList& rl,
                      std::string_view message, Rng& rng) {
  const std::size_t r = params.r();
  const Integer& q = params.q;
  const auto& aux = params.aux;
  if (sk.x.size() != r) throw Error(ErrorCode::kInvariant, "secret key has wrong dimension");
  if (msm(params.curve, sk.x, params.gens) != pk.point) {
    throw Error(ErrorCode::kInvariant, "secret key does not match public key");
  }
  if (is_member_revoked(rl, pk)) {
    throw Error(ErrorCode::kSignerRevoked, "public key of member " + pk.member_id + " is on the revocation list");
  }
  for (const auto& set : rl.groups) {
    if (satisfies_all(set.hyperplanes, sk.x, q)) {
      throw Error(ErrorCode::kSignerRevoked, "secret key lies on revoked hyperplane set " + detail::describe_set(set));
    }
  }

  const Digest rl_digest = rl_hash(rl);
  const std::size_t nbits = params.response_bits();
  const Integer bound = Integer(1) << static_cast<mp_bitcnt_t>(nbits);
  const bool with_commitments = !rl.groups.empty();

  for (;;) {
    detail::Announcements ann;
    std::vector<Integer> k(r), t, u;
    for (auto& ki : k) ki = rng.bits(nbits);
    ann.r = msm(params.curve, k, params.gens);
    if (with_commitments) {
      for (std::size_t i = 0; i < r; ++i) {
        t.push_back(rng.below(q));
        u.push_back(rng.below(q));
        ann.commitments.push_back(pedersen_commit(params, sk.x[i], t[i]));
        ann.a.push_back(pedersen_commit(params, k[i], u[i]));
      }
    }

    // Collapse each revoked set to one hyperplane; retry if any collapses onto the key.
    Integer retry = 0;
    std::vector<Hyperplane> collapsed;
    std::vector<Integer> values;
    for (;; retry += 1) {
      if (retry >= kMaxRetries) throw Error(ErrorCode::kRetryExhausted, "64 gamma collapses hit zero");
      collapsed.clear();
      values.clear();
      bool ok = true;
      for (std::size_t j = 0; j < rl.groups.size() && ok; ++j) {
        const auto& hs = rl.groups[j].hyperplanes;
        collapsed.push_back(collapse_constraints(hs, derive_gammas(q, rl_digest, j, hs.size(), retry), q));
        values.push_back(collapsed.back().evaluate(sk.x, q));
        ok = values.back() != 0;
      }
      if (ok) break;
    }

    std::vector<Integer> w, ubar, kw, ku;
    for (std::size_t j = 0; j < collapsed.size(); ++j) {
      Integer d = detail::constraint_commitment(params, collapsed[j], ann.commitments);
      Integer tau = 0;
      for (std::size_t i = 0; i < r; ++i) tau += collapsed[j].coeffs[i + 1] * t[i];
      w.push_back(inv_mod(values[j], q));
      ubar.push_back(mod(-mod(tau, q) * w.back(), q));
      kw.push_back(rng.below(q));
      ku.push_back(rng.below(q));
      ann.d.push_back(d);
      ann.b.push_back(mod(pow_mod(d, kw.back(), aux.rho) * pow_mod(aux.h, ku.back(), aux.rho), aux.rho));
    }

    Signature sig;
    sig.challenge = detail::transcript_challenge(params, pk.point, rl_digest, retry, ann, message);
    sig.retry = retry;
    sig.rl_version = rl.version;
    bool overflow = false;
    for (std::size_t i = 0; i < r; ++i) {
      sig.s.push_back(k[i] + sig.challenge * sk.x[i]);
      overflow = overflow || sig.s.back() >= bound;
    }
    // Abort-and-resample keeps every response inside the public range bound.
    if (overflow) continue;
    if (with_commitments) {
      sig.commitments = ann.commitments;
      for (std::size_t i = 0; i < r; ++i) sig.commitment_responses.push_back(mod(u[i] + sig.challenge * t[i], q));
    }
    for (std::size_t j = 0; j < collapsed.size(); ++j) {
      sig.nonzero_proofs.push_back({Integer(static_cast<unsigned long>(j)), ann.d[j], mod(kw[j] + sig.challenge * w[j], q),
                                    mod(ku[j] + sig.challenge * ubar[j], q)});
    }
    return sig;
  }
}

/// Total verification: every failure is a Reject with a reason.
inline VerifyResult verify(const SystemParams& params, const PublicKey& pk, const RevocationList& rl,
                           std::string_view message, const Signature& sig) {
  using R = RejectReason;
  const std::size_t r = params.r();
  const Integer& q = params.q;
  const auto& aux = params.aux;

  if (is_member_revoked(rl, pk)) return VerifyResult::reject(R::kPkRevoked, "member " + pk.member_id);
  if (sig.rl_version != rl.version) return VerifyResult::reject(R::kRlMismatch, "signature bound to another RL version");

  auto in_zq = [&q](const Integer& v) { return v >= 0 && v < q; };
  auto in_subgroup = [&](const Integer& v) { return v > 0 && v < aux.rho && pow_mod(v, q, aux.rho) == 1; };
  const bool with_commitments = !rl.groups.empty();
  if (!on_curve_fp(params.curve, pk.point)) return VerifyResult::reject(R::kMalformed, "public key not on curve");
  if (sig.s.size() != r) return VerifyResult::reject(R::kMalformed, "wrong number of responses");
  if (sig.challenge < 0 || sig.challenge >= (Integer(1) << params.l_c)) {
    return VerifyResult::reject(R::kMalformed, "challenge out of range");
  }
  if (sig.retry < 0 || sig.retry >= kMaxRetries) return VerifyResult::reject(R::kMalformed, "retry out of range");
  const std::size_t expect_c = with_commitments ? r : 0;
  if (sig.commitments.size() != expect_c || sig.commitment_responses.size() != expect_c ||
      sig.nonzero_proofs.size() != rl.groups.size()) {
    return VerifyResult::reject(R::kMalformed, "proof shape does not match the revocation list");
  }
  for (std::size_t i = 0; i < expect_c; ++i) {
    if (!in_subgroup(sig.commitments[i]) || !in_zq(sig.commitment_responses[i])) {
      return VerifyResult::reject(R::kMalformed, "commitment component out of range");
    }
  }
  for (std::size_t j = 0; j < sig.nonzero_proofs.size(); ++j) {
    const auto& np = sig.nonzero_proofs[j];
    if (np.gamma_seed_index != static_cast<unsigned long>(j) || !in_subgroup(np.d) || !in_zq(np.sw) ||
        !in_zq(np.su)) {
      return VerifyResult::reject(R::kMalformed, "nonzero proof component out of range");
    }
  }
  const Integer bound = Integer(1) << static_cast<mp_bitcnt_t>(params.response_bits());
  for (const auto& s : sig.s) {
    if (s < 0 || s >= bound) return VerifyResult::reject(R::kRange, "response outside [0, 2^" +
                                                                        std::to_string(params.response_bits()) + ")");
  }

  const Digest rl_digest = rl_hash(rl);
  const Integer neg_c = mod(-sig.challenge, q);
  detail::Announcements ann;
  std::vector<Integer> scalars = sig.s;
  std::vector<ModPoint> points = params.gens;
  scalars.push_back(-sig.challenge);
  points.push_back(pk.point);
  ann.r = msm(params.curve, scalars, points);
  ann.commitments = sig.commitments;
  for (std::size_t i = 0; i < expect_c; ++i) {
    Integer a = mod(pedersen_commit(params, mod(sig.s[i], q), sig.commitment_responses[i]) *
                        pow_mod(sig.commitments[i], neg_c, aux.rho),
                    aux.rho);
    ann.a.push_back(a);
  }
  for (std::size_t j = 0; j < rl.groups.size(); ++j) {
    const auto& hs = rl.groups[j].hyperplanes;
    Hyperplane f = collapse_constraints(hs, derive_gammas(q, rl_digest, j, hs.size(), sig.retry), q);
    Integer d = detail::constraint_commitment(params, f, sig.commitments);
    if (d != sig.nonzero_proofs[j].d) return VerifyResult::reject(R::kMalformed, "constraint commitment mismatch");
    const auto& np = sig.nonzero_proofs[j];
    Integer b = mod(mod(pow_mod(d, np.sw, aux.rho) * pow_mod(aux.h, np.su, aux.rho), aux.rho) *
                        pow_mod(aux.g, neg_c, aux.rho),
                    aux.rho);
    ann.d.push_back(d);
    ann.b.push_back(b);
  }
  Integer c = detail::transcript_challenge(params, pk.point, rl_digest, sig.retry, ann, message);
  if (c != sig.challenge) return VerifyResult::reject(R::kBadChallenge, "recomputed challenge differs");
  return VerifyResult::accept();
}

inline Json signature_to_json(const Signature& sig) {
  Json proofs = Json::array();
  for (const auto& np : sig.nonzero_proofs) {
    proofs.push_back(Json{{"gamma_seed_index", int_to_json(np.gamma_seed_index)},
                          {"d", int_to_json(np.d)},
                          {"sw", int_to_json(np.sw)},
                          {"su", int_to_json(np.su)}});
  }
  return Json{{"challenge", int_to_json(sig.challenge)},
              {"s", int_vector_to_json(sig.s)},
              {"commitments", int_vector_to_json(sig.commitments)},
              {"commitment_responses", int_vector_to_json(sig.commitment_responses)},
              {"nonzero_proofs", proofs},
              {"retry", int_to_json(sig.retry)},
              {"rl_version", int_to_json(sig.rl_version)}};
}

inline Signature signature_from_json(const Json& j) {
  Signature sig;
  sig.challenge = int_from_json(j.at("challenge"));
  sig.s = int_vector_from_json(j.at("s"));
  sig.commitments = int_vector_from_json(j.at("commitments"));
  sig.commitment_responses = int_vector_from_json(j.at("commitment_responses"));
  if (!j.at("nonzero_proofs").is_array()) throw Error(ErrorCode::kParse, "nonzero_proofs must be an array");
  for (const auto& p : j.at("nonzero_proofs")) {
    sig.nonzero_proofs.push_back(
        {int_from_json(p.at("gamma_seed_index")), int_from_json(p.at("d")), int_from_json(p.at("sw")), int_from_json(p.at("su"))});
  }
  sig.retry = int_from_json(j.at("retry"));
  sig.rl_version = int_from_json(j.at("rl_version"));
  return sig;
}

inline std::string serialize_signature(const Signature& sig) {
  return canonical_document("signature", signature_to_json(sig));
}

inline Signature deserialize_signature(std::string_view text) {
  try {
    return signature_from_json(open_document(text, "signature"));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, e.what());
  }
}

}  // namespace hrpks
