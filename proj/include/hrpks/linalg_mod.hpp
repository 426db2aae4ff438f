#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hrpks/bigint.hpp"

namespace hrpks {

using MatrixMod = std::vector<std::vector<Integer>>;

/// Row-reduced echelon form of a matrix over F_q.
///
/// Pivots are searched from the rightmost column leftwards, so for a single
/// constraint on (x1, ..., xr) the leading coordinates stay free and the last
/// coordinate is solved for. The caller picks up `pivot_cols[i]` for row i.
struct EchelonForm {
  MatrixMod rows;  // reduced, augmented rows (last entry is the right-hand side)
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  bool consistent = true;
};

inline EchelonForm echelon_mod(MatrixMod augmented, std::size_t cols, const Integer& q) {
  EchelonForm out;
  for (auto& row : augmented) {
    for (auto& v : row) v = mod(v, q);
  }
  std::size_t next_row = 0;
  for (std::size_t step = 0; step < cols && next_row < augmented.size(); ++step) {
    std::size_t col = cols - 1 - step;
    std::size_t pivot = next_row;
    while (pivot < augmented.size() && augmented[pivot][col] == 0) ++pivot;
    if (pivot == augmented.size()) continue;
    std::swap(augmented[pivot], augmented[next_row]);
    auto& prow = augmented[next_row];
    Integer inv = inv_mod(prow[col], q);
    for (auto& v : prow) v = mod(v * inv, q);
    for (std::size_t r = 0; r < augmented.size(); ++r) {
      if (r == next_row || augmented[r][col] == 0) continue;
      Integer factor = augmented[r][col];
      for (std::size_t c = 0; c < augmented[r].size(); ++c) {
        augmented[r][c] = mod(augmented[r][c] - factor * prow[c], q);
      }
    }
    out.pivot_cols.push_back(col);
    ++next_row;
  }
  out.rank = next_row;
  // A zero coefficient row with a nonzero right-hand side means no solution.
  for (std::size_t r = next_row; r < augmented.size(); ++r) {
    if (augmented[r].size() > cols && augmented[r][cols] != 0) out.consistent = false;
  }
  out.rows = std::move(augmented);
  return out;
}

/// Rank of a coefficient matrix mod q.
inline std::size_t rank_mod(const MatrixMod& m, const Integer& q) {
  if (m.empty()) return 0;
  return echelon_mod(m, m.front().size(), q).rank;
}

/// Solves A*x = b mod q. Free coordinates take the values supplied by
/// `free_value(col)`; pivot coordinates are then determined. Returns nullopt
/// when the system is inconsistent.
template <class FreeValue>
std::optional<std::vector<Integer>> solve_affine_mod(const MatrixMod& a, const std::vector<Integer>& b,
                                                     std::size_t cols, const Integer& q, FreeValue&& free_value) {
  MatrixMod aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  EchelonForm ef = echelon_mod(std::move(aug), cols, q);
  if (!ef.consistent) return std::nullopt;
  std::vector<bool> is_pivot(cols, false);
  for (auto c : ef.pivot_cols) is_pivot[c] = true;
  std::vector<Integer> x(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) x[c] = mod(free_value(c), q);
  }
  for (std::size_t r = 0; r < ef.rank; ++r) {
    const auto& row = ef.rows[r];
    Integer v = row[cols];
    for (std::size_t c = 0; c < cols; ++c) {
      if (!is_pivot[c]) v -= row[c] * x[c];
    }
    x[ef.pivot_cols[r]] = mod(v, q);
  }
  return x;
}

}  // namespace hrpks
