// Copyright 2026 The mkcp-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MKCP_SIMPLEX_H_
#define MKCP_SIMPLEX_H_

#include <cmath>
#include <type_traits>
#include <span>
#include <utility>
#include <vector>

#include "mkcp/errors.h"
#include "mkcp/rational.h"

namespace mkcp {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

// Primal simplex for
//
//   maximize c.x  subject to  A x <= b,  x >= 0,
//
// with b >= 0, so the slack basis is feasible. Columns can be appended after
// a solve (column generation); the current basis stays feasible and Solve()
// continues from it. Scalar is double (with tolerance) or Rational (exact,
// tolerance 0).
template <typename Scalar>
class PackingSimplex {
 public:
  PackingSimplex(std::vector<Scalar> rhs, Scalar tolerance)
      : m_(static_cast<int>(rhs.size())), rhs_(std::move(rhs)), tol_(tolerance) {
    for (const Scalar& b : rhs_) {
      if (b < 0) throw PreconditionError("packing LP needs a non-negative right-hand side");
    }
    objective_ = 0;
    for (int k = 0; k < m_; ++k) {
      std::vector<Scalar> unit(m_, Scalar(0));
      unit[k] = 1;
      cols_.push_back(std::move(unit));
      d_.push_back(Scalar(0));
      basis_.push_back(k);
      position_.push_back(k);
    }
  }

  int num_rows() const { return m_; }
  int num_columns() const { return static_cast<int>(cols_.size()) - m_; }

  // Returns the structural column index.
  int AddColumn(const Scalar& cost, std::span<const std::pair<int, Scalar>> entries) {
    std::vector<Scalar> col(m_, Scalar(0));
    Scalar reduced = cost;
    for (const auto& [row, value] : entries) {
      if (value == 0) continue;
      const std::vector<Scalar>& slack = cols_[row];
      for (int i = 0; i < m_; ++i) {
        if (slack[i] != 0) col[i] += value * slack[i];
      }
      reduced += value * d_[row];
    }
    Clean(&col);
    cols_.push_back(std::move(col));
    d_.push_back(reduced);
    position_.push_back(-1);
    return num_columns() - 1;
  }

  LpStatus Solve(long max_pivots = 200000) {
    int degenerate_run = 0;
    for (long it = 0; it < max_pivots; ++it) {
      const bool bland = degenerate_run > 30;
      int q = -1;
      for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
        if (position_[j] >= 0 || !(d_[j] > tol_)) continue;
        if (q < 0 || (!bland && d_[j] > d_[q])) q = j;
        if (bland) break;
      }
      if (q < 0) return LpStatus::kOptimal;
      const std::vector<Scalar>& a = cols_[q];
      int r = -1;
      Scalar best = 0;
      for (int i = 0; i < m_; ++i) {
        if (!(a[i] > tol_)) continue;
        Scalar ratio = rhs_[i] / a[i];
        if (r < 0 || ratio < best - RatioSlack()) {
          r = i;
          best = ratio;
        } else if (!(ratio > best + RatioSlack()) && basis_[i] < basis_[r]) {
          r = i;
          if (ratio < best) best = ratio;
        }
      }
      if (r < 0) return LpStatus::kUnbounded;
      degenerate_run = (best == 0 || !(best > tol_)) ? degenerate_run + 1 : 0;
      Pivot(r, q);
    }
    return LpStatus::kIterationLimit;
  }

  const Scalar& objective() const { return objective_; }

  std::vector<Scalar> Primal() const {
    std::vector<Scalar> x(num_columns(), Scalar(0));
    for (int j = 0; j < num_columns(); ++j) {
      const int row = position_[m_ + j];
      if (row >= 0) x[j] = rhs_[row];
    }
    return x;
  }

  // Row duals y >= 0 with c - y A <= 0 at optimality.
  std::vector<Scalar> Dual() const {
    std::vector<Scalar> y(m_);
    for (int k = 0; k < m_; ++k) y[k] = -d_[k];
    return y;
  }

  const Scalar& ReducedCost(int column) const { return d_[m_ + column]; }

 private:
  static constexpr bool kExact = !std::is_floating_point_v<Scalar>;

  Scalar RatioSlack() const {
    if constexpr (kExact) {
      return Scalar(0);
    } else {
      return Scalar(1e-12);
    }
  }

  void Clean(std::vector<Scalar>* v) const {
    if constexpr (!kExact) {
      for (Scalar& e : *v) {
        if (std::abs(e) < 1e-13) e = 0;
      }
    }
  }

  void Pivot(int r, int q) {
    const std::vector<Scalar> a = cols_[q];
    const Scalar p = a[r];
    const Scalar dq = d_[q];
    for (int j = 0; j < static_cast<int>(cols_.size()); ++j) {
      if (j == q) continue;
      std::vector<Scalar>& col = cols_[j];
      if (col[r] == 0) continue;
      const Scalar f = col[r] / p;
      for (int i = 0; i < m_; ++i) {
        if (i != r && a[i] != 0) col[i] -= f * a[i];
      }
      col[r] = f;
      Clean(&col);
      d_[j] -= f * dq;
    }
    const Scalar f = rhs_[r] / p;
    for (int i = 0; i < m_; ++i) {
      if (i != r && a[i] != 0) rhs_[i] -= f * a[i];
    }
    rhs_[r] = f;
    if constexpr (!kExact) {
      for (Scalar& v : rhs_) {
        if (v < 0 && v > -1e-11) v = 0;
      }
    }
    objective_ += f * dq;
    std::vector<Scalar>& col_q = cols_[q];
    for (int i = 0; i < m_; ++i) col_q[i] = 0;
    col_q[r] = 1;
    d_[q] = 0;
    position_[basis_[r]] = -1;
    basis_[r] = q;
    position_[q] = r;
  }

  int m_;
  std::vector<std::vector<Scalar>> cols_;  // B^-1 A_j, slacks first
  std::vector<Scalar> d_;                  // reduced costs
  std::vector<Scalar> rhs_;                // B^-1 b
  std::vector<int> basis_;
  std::vector<int> position_;
  Scalar objective_;
  Scalar tol_;
};

}  // namespace mkcp

#endif  // MKCP_SIMPLEX_H_
