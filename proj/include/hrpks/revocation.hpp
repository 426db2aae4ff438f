#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hrpks/encoding.hpp"
#include "hrpks/hierarchy.hpp"

namespace hrpks {

struct RevokedMember {
  ModPoint point;
  std::string member_id;
  std::string dept;

  friend bool operator==(const RevokedMember&, const RevokedMember&) = default;
};

/// A revoked department: its full constraint list, so verifiers never need the tree.
struct ConstraintSet {
  std::string dept;
  std::vector<Hyperplane> hyperplanes;

  friend bool operator==(const ConstraintSet&, const ConstraintSet&) = default;
};

/// Versioned revocation state. Members are kept sorted by encoded point and
/// groups by department path, so equal contents give equal documents
/// regardless of insertion order.
struct RevocationList {
  std::vector<RevokedMember> members;
  std::vector<ConstraintSet> groups;
  Integer version = 0;

  friend bool operator==(const RevocationList&, const RevocationList&) = default;
};

inline bool is_member_revoked(const RevocationList& rl, const ModPoint& point) {
  return std::any_of(rl.members.begin(), rl.members.end(), [&](const RevokedMember& m) { return m.point == point; });
}

inline bool is_member_revoked(const RevocationList& rl, const PublicKey& pk) { return is_member_revoked(rl, pk.point); }

inline bool is_group_revoked(const RevocationList& rl, std::string_view dept) {
  return std::any_of(rl.groups.begin(), rl.groups.end(), [&](const ConstraintSet& g) { return g.dept == dept; });
}

namespace detail {

inline void sort_members(std::vector<RevokedMember>& members) {
  std::sort(members.begin(), members.end(),
            [](const RevokedMember& a, const RevokedMember& b) { return point_key(a.point) < point_key(b.point); });
}

inline void sort_groups(std::vector<ConstraintSet>& groups) {
  std::sort(groups.begin(), groups.end(), [](const ConstraintSet& a, const ConstraintSet& b) { return a.dept < b.dept; });
}

}  // namespace detail

inline RevocationList revoke_member(RevocationList rl, const PublicKey& pk) {
  if (is_member_revoked(rl, pk)) throw Error(ErrorCode::kDuplicate, "member " + pk.member_id + " already revoked");
  rl.members.push_back({pk.point, pk.member_id, pk.dept});
  detail::sort_members(rl.members);
  rl.version += 1;
  return rl;
}

inline RevocationList revoke_group(RevocationList rl, const DeptNode& dept) {
  if (dept.level == 0) throw Error(ErrorCode::kInvariant, "the root is not a revocable group");
  if (is_group_revoked(rl, dept.path)) throw Error(ErrorCode::kDuplicate, "group " + dept.path + " already revoked");
  rl.groups.push_back({dept.path, dept.constraints});
  detail::sort_groups(rl.groups);
  rl.version += 1;
  return rl;
}

/// Replaces complete sibling families by their parent's entry, to a fixpoint.
///
/// Keys of a child lie on the parent's subspace, so blocked keys stay blocked.
/// The blocked set is unchanged only when members join leaf departments; a key
/// issued directly at the parent becomes blocked too.
inline RevocationList coalesce(RevocationList rl, const DeptTree& tree) {
  bool changed = false;
  for (bool again = true; again;) {
    again = false;
    for (const auto& [path, node] : tree.nodes) {
      if (node.level == 0 || node.children.empty()) continue;
      bool complete = std::all_of(node.children.begin(), node.children.end(),
                                  [&](const std::string& c) { return is_group_revoked(rl, c); });
      if (!complete) continue;
      std::erase_if(rl.groups, [&](const ConstraintSet& g) {
        return std::find(node.children.begin(), node.children.end(), g.dept) != node.children.end();
      });
      if (!is_group_revoked(rl, node.path)) rl.groups.push_back({node.path, node.constraints});
      again = changed = true;
    }
  }
  if (changed) {
    detail::sort_groups(rl.groups);
    rl.version += 1;
  }
  return rl;
}

inline Json hyperplane_to_json(const Hyperplane& h) { return int_vector_to_json(h.coeffs); }

inline Hyperplane hyperplane_from_json(const Json& j) { return Hyperplane{int_vector_from_json(j)}; }

inline Json rl_to_json(const RevocationList& rl) {
  Json members = Json::array();
  for (const auto& m : rl.members) {
    members.push_back(Json{{"point", point_to_json(m.point)}, {"member_id", m.member_id}, {"dept", m.dept}});
  }
  Json groups = Json::array();
  for (const auto& g : rl.groups) {
    Json hs = Json::array();
    for (const auto& h : g.hyperplanes) hs.push_back(hyperplane_to_json(h));
    groups.push_back(Json{{"dept", g.dept}, {"hyperplanes", hs}});
  }
  return Json{{"members", members}, {"groups", groups}, {"rl_version", int_to_json(rl.version)}};
}

inline std::string serialize_rl(const RevocationList& rl) { return canonical_document("rl", rl_to_json(rl)); }

/// SHA-256 of the canonical document.
inline Digest rl_hash(const RevocationList& rl) { return sha256(serialize_rl(rl)); }

}  // namespace hrpks
