#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <unordered_map>
#include <vector>

#include "hrpks/curve_fp.hpp"
#include "hrpks/hierarchy.hpp"

namespace hrpks {

/// Integer relations sum x_i * gen_i = O found in a box [-B, B]^r.
struct RelationReport {
  std::string params_digest;
  std::string method;
  Integer bound;
  std::vector<std::vector<Integer>> relations;  // sorted lexicographically
  std::vector<bool> trivial;                    // exactly one nonzero coordinate
  double wall_seconds = 0;

  std::size_t nontrivial_count() const {
    return static_cast<std::size_t>(std::count(trivial.begin(), trivial.end(), false));
  }
};

namespace detail {

inline bool single_nonzero(const std::vector<Integer>& v) {
  return std::count_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; }) == 1;
}

inline void finish_report(const SystemParams& params, RelationReport& report,
                          std::chrono::steady_clock::time_point start) {
  std::sort(report.relations.begin(), report.relations.end());
  for (const auto& rel : report.relations) {
    if (!msm(params.curve, rel, params.gens).infinity) {
      throw Error(ErrorCode::kInvariant, "reported relation does not re-verify");
    }
    report.trivial.push_back(single_nonzero(rel));
  }
  report.params_digest = to_hex(params_digest(params));
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// multiples[x + B] = x * P for x in [-B, B].
inline std::vector<ModPoint> multiples(const CurveFp& curve, const ModPoint& pt, long bound) {
  auto grp = curve.group();
  std::vector<ModPoint> out;
  out.reserve(static_cast<std::size_t>(2 * bound + 1));
  ModPoint cur = grp.mul(Integer(-bound), pt);
  for (long x = -bound; x <= bound; ++x) {
    out.push_back(cur);
    cur = grp.add(cur, pt);
  }
  return out;
}

}  // namespace detail

inline constexpr double kExhaustiveGuard = 1e8;

/// Enumerates every x in [-B, B]^r other than 0. Refuses B^r > 10^8.
inline RelationReport relation_search_exhaustive(const SystemParams& params, long bound) {
  if (bound < 0) throw Error(ErrorCode::kInvariant, "bound must be non-negative");
  const std::size_t r = params.r();
  if (std::pow(static_cast<double>(bound), static_cast<double>(r)) > kExhaustiveGuard) {
    throw Error(ErrorCode::kGuardExceeded, "B^r exceeds 10^8");
  }
  auto start = std::chrono::steady_clock::now();
  RelationReport report;
  report.method = "exhaustive";
  report.bound = bound;
  if (bound > 0 && r > 0) {
    auto grp = params.curve.group();
    std::vector<std::vector<ModPoint>> tables;
    for (const auto& g : params.gens) tables.push_back(detail::multiples(params.curve, g, bound));
    std::vector<long> coords(r, 0);
    // Depth-first over coordinates carrying the partial sum.
    auto walk = [&](auto&& self, std::size_t i, const ModPoint& partial) -> void {
      if (i == r) {
        bool all_zero = std::all_of(coords.begin(), coords.end(), [](long v) { return v == 0; });
        if (partial.infinity && !all_zero) {
          std::vector<Integer> rel;
          for (long v : coords) rel.emplace_back(v);
          report.relations.push_back(std::move(rel));
        }
        return;
      }
      for (long x = -bound; x <= bound; ++x) {
        coords[i] = x;
        self(self, i + 1, grp.add(partial, tables[i][static_cast<std::size_t>(x + bound)]));
      }
    };
    walk(walk, 0, ModPoint::at_infinity());
  }
  detail::finish_report(params, report, start);
  return report;
}

/// r = 2 only: tabulate x1*P1, then probe -x2*P2.
inline RelationReport relation_search_mitm(const SystemParams& params, long bound) {
  if (params.r() != 2) throw Error(ErrorCode::kUnsupported, "meet-in-the-middle search supports r = 2 only");
  if (bound < 0) throw Error(ErrorCode::kInvariant, "bound must be non-negative");
  auto start = std::chrono::steady_clock::now();
  RelationReport report;
  report.method = "mitm";
  report.bound = bound;
  if (bound > 0) {
    auto grp = params.curve.group();
    std::unordered_map<std::string, std::vector<long>> table;
    table.reserve(static_cast<std::size_t>(2 * bound + 1));
    ModPoint cur = grp.mul(Integer(-bound), params.gens[0]);
    for (long x1 = -bound; x1 <= bound; ++x1) {
      table[point_key(cur)].push_back(x1);
      cur = grp.add(cur, params.gens[0]);
    }
    // -x2 * P2 for x2 = -B..B is B*P2, (B-1)*P2, ...
    ModPoint probe = grp.mul(Integer(bound), params.gens[1]);
    ModPoint neg_p2 = grp.negate(params.gens[1]);
    for (long x2 = -bound; x2 <= bound; ++x2) {
      auto it = table.find(point_key(probe));
      if (it != table.end()) {
        for (long x1 : it->second) {
          if (x1 != 0 || x2 != 0) report.relations.push_back({Integer(x1), Integer(x2)});
        }
      }
      probe = grp.add(probe, neg_p2);
    }
  }
  detail::finish_report(params, report, start);
  return report;
}

struct OrderReport {
  std::string params_digest;
  HasseInterval hasse;
  std::vector<Integer> orders;
  std::vector<Integer> annihilators;
  Integer min_order;
  double q_over_min_order = 0;
};

/// Orders of every reduced generator. Refuses p > 2^64.
inline OrderReport order_report(const SystemParams& params) {
  if (params.p() > Integer(1) << 64) throw Error(ErrorCode::kGuardExceeded, "order report limited to p <= 2^64");
  OrderReport out;
  out.params_digest = to_hex(params_digest(params));
  out.hasse = hasse_interval(params.p());
  for (const auto& g : params.gens) {
    OrderResult res = point_order_detail(params.curve, g);
    if (res.annihilator < out.hasse.low || res.annihilator > out.hasse.high || mod(res.annihilator, res.order) != 0) {
      throw Error(ErrorCode::kInvariant, "order does not divide a Hasse-interval annihilator");
    }
    out.orders.push_back(res.order);
    out.annihilators.push_back(res.annihilator);
  }
  if (!out.orders.empty()) {
    out.min_order = *std::min_element(out.orders.begin(), out.orders.end());
    out.q_over_min_order = params.q.get_d() / out.min_order.get_d();
  }
  return out;
}

inline std::string relation_report_document(const RelationReport& rep) {
  Json rels = Json::array();
  for (std::size_t i = 0; i < rep.relations.size(); ++i) {
    rels.push_back(Json{{"x", int_vector_to_json(rep.relations[i])}, {"trivial", rep.trivial[i]}});
  }
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.6f", rep.wall_seconds);
  return canonical_document("report", Json{{"report", "relations"},
                                           {"params_digest", rep.params_digest},
                                           {"method", rep.method},
                                           {"bound", int_to_json(rep.bound)},
                                           {"relations", rels},
                                           {"nontrivial_count", std::to_string(rep.nontrivial_count())},
                                           {"wall_seconds", secs}});
}

inline std::string order_report_document(const OrderReport& rep) {
  char ratio[64];
  std::snprintf(ratio, sizeof ratio, "%.6g", rep.q_over_min_order);
  return canonical_document("report", Json{{"report", "orders"},
                                           {"params_digest", rep.params_digest},
                                           {"hasse_low", int_to_json(rep.hasse.low)},
                                           {"hasse_high", int_to_json(rep.hasse.high)},
                                           {"orders", int_vector_to_json(rep.orders)},
                                           {"annihilators", int_vector_to_json(rep.annihilators)},
                                           {"min_order", int_to_json(rep.min_order)},
                                           {"q_over_min_order", ratio}});
}

}  // namespace hrpks
