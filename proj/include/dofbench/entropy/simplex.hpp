#pragma once

#include "dofbench/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dofbench::entropy {

/// Sparse column of a constraint matrix: (row, value) pairs.
using SparseColumn = std::vector<std::pair<std::size_t, Rational>>;

/// Decides feasibility of { x >= 0 : A x = b } exactly with a phase-one
/// revised simplex (dense basis inverse) under Bland's rule, and returns a
/// feasible point when one exists. Pivoting is deterministic.
class ExactFeasibility {
 public:
  ExactFeasibility(std::size_t rows, std::vector<SparseColumn> columns, std::vector<Rational> rhs)
      : rows_(rows), columns_(std::move(columns)), rhs_(std::move(rhs)) {
    if (rhs_.size() != rows_) throw std::invalid_argument("right-hand side length differs from row count");
    for (const auto& col : columns_)
      for (const auto& [r, v] : col)
        if (r >= rows_) throw std::invalid_argument("column entry outside the row range");
  }

  std::optional<std::vector<Rational>> solve() const {
    const std::size_t m = rows_;
    const std::size_t n = columns_.size();

    // Rows with negative rhs are negated so the artificial basis starts feasible.
    std::vector<int> row_sign(m, 1);
    std::vector<Rational> b(rhs_);
    for (std::size_t r = 0; r < m; ++r)
      if (b[r] < 0) {
        row_sign[r] = -1;
        b[r] = -b[r];
      }

    // Variables 0..n-1 are structural, n..n+m-1 artificial.
    std::vector<std::size_t> basis(m);
    std::vector<char> in_basis(n + m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      basis[r] = n + r;
      in_basis[n + r] = 1;
    }
    std::vector<std::vector<Rational>> inverse(m, std::vector<Rational>(m));
    for (std::size_t r = 0; r < m; ++r) inverse[r][r] = 1;
    std::vector<Rational> values(b);

    auto cost = [n](std::size_t var) { return var >= n ? Rational(1) : Rational(0); };

    // B^{-1} A_j for a structural column.
    auto transformed = [&](std::size_t j) {
      std::vector<Rational> u(m);
      for (const auto& [row, v] : columns_[j]) {
        const Rational a = row_sign[row] < 0 ? Rational(-v) : v;
        for (std::size_t r = 0; r < m; ++r)
          if (inverse[r][row] != 0) u[r] += inverse[r][row] * a;
      }
      return u;
    };

    while (true) {
      // Simplex multipliers y = c_B^T B^{-1}.
      std::vector<Rational> y(m);
      for (std::size_t r = 0; r < m; ++r) {
        const Rational c = cost(basis[r]);
        if (c == 0) continue;
        for (std::size_t i = 0; i < m; ++i) y[i] += c * inverse[r][i];
      }

      // Bland: lowest-index structural column with negative reduced cost.
      // Artificials that left the basis are never re-admitted.
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < n && !entering; ++j) {
        if (in_basis[j]) continue;
        Rational reduced = 0;
        for (const auto& [row, v] : columns_[j]) reduced -= y[row] * (row_sign[row] < 0 ? Rational(-v) : v);
        if (reduced < 0) entering = j;
      }
      if (!entering) break;

      const auto u = transformed(*entering);
      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < m; ++r) {
        if (u[r] <= 0) continue;
        const Rational ratio = values[r] / u[r];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) throw std::logic_error("phase-one objective unbounded");

      const std::size_t p = *leaving;
      const Rational pivot = u[p];
      for (auto& v : inverse[p]) v /= pivot;
      values[p] /= pivot;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == p || u[r] == 0) continue;
        const Rational factor = u[r];
        for (std::size_t i = 0; i < m; ++i)
          if (inverse[p][i] != 0) inverse[r][i] -= factor * inverse[p][i];
        values[r] -= factor * values[p];
      }
      in_basis[basis[p]] = 0;
      basis[p] = *entering;
      in_basis[*entering] = 1;
    }

    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] >= n && values[r] != 0) return std::nullopt;

    std::vector<Rational> x(n);
    for (std::size_t r = 0; r < m; ++r)
      if (basis[r] < n) x[basis[r]] = values[r];
    return x;
  }

 private:
  std::size_t rows_;
  std::vector<SparseColumn> columns_;
  std::vector<Rational> rhs_;
};

}  // namespace dofbench::entropy
