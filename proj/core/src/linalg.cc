// Copyright 2026 The sbmk Authors.
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

// Eigen backends behind TopEigs: LAPACK dsyevr for dense problems and a
// Lanczos solver with full reorthogonalization for large operators.

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "sbmk/error.h"
#include "sbmk/random.h"
#include "sbmk/spectral.h"

namespace sbmk {
namespace {

void CheckK(int k, int n) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " outside 1.." +
                    std::to_string(n));
  }
}

// max_i ||M v_i - lambda_i v_i|| / norm.
double RelativeResidual(const SymmetricOperator& op, const Eigen::VectorXd& values,
                        const Eigen::MatrixXd& vectors, double norm) {
  const int n = op.size();
  Eigen::VectorXd mv(n);
  double worst = 0.0;
  for (int i = 0; i < values.size(); ++i) {
    const Eigen::VectorXd v = vectors.col(i);
    op.Apply({v.data(), static_cast<size_t>(n)}, {mv.data(), static_cast<size_t>(n)});
    worst = std::max(worst, (mv - values(i) * v).norm());
  }
  return norm > 0.0 ? worst / norm : worst;
}

EigenResult DenseTopEigs(Eigen::MatrixXd a, int k) {
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z(n, k);
  std::vector<lapack_int> support(2 * static_cast<size_t>(k));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, n - k + 1, n,
      0.0, &found, w.data(), z.data(), n, support.data());
  if (info != 0 || found != k) {
    throw Error(ErrorCode::kConvergenceFailure,
                "dsyevr failed with info = " + std::to_string(info));
  }
  EigenResult out;
  out.values.resize(k);
  out.vectors.resize(n, k);
  for (int i = 0; i < k; ++i) {
    out.values(i) = w(k - 1 - i);
    out.vectors.col(i) = z.col(k - 1 - i);
  }
  return out;
}

// Orthogonalizes w against the first m columns of basis (two passes of
// classical Gram-Schmidt).
void Reorthogonalize(const Eigen::MatrixXd& basis, int m, Eigen::VectorXd& w) {
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd h = basis.leftCols(m).transpose() * w;
    w.noalias() -= basis.leftCols(m) * h;
  }
}

Eigen::VectorXd RandomUnit(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.Uniform() - 0.5;
  return v / v.norm();
}

}  // namespace

Eigen::MatrixXd SymmetricOperator::ToDense() const {
  const int n = size();
  Eigen::MatrixXd m(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd col(n);
  for (int j = 0; j < n; ++j) {
    e(j) = 1.0;
    Apply({e.data(), static_cast<size_t>(n)}, {col.data(), static_cast<size_t>(n)});
    m.col(j) = col;
    e(j) = 0.0;
  }
  return m;
}

void DenseOperator::Apply(std::span<const double> x, std::span<double> y) const {
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), m_.rows());
  Eigen::Map<Eigen::VectorXd> yv(y.data(), m_.rows());
  yv.noalias() = m_ * xv;
}

EigenResult TopEigs(const Eigen::MatrixXd& matrix, int k,
                    const EigenOptions& opts) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not square");
  }
  const int n = static_cast<int>(matrix.rows());
  CheckK(k, n);
  const double scale = std::max(matrix.cwiseAbs().maxCoeff(), 1e-300);
  if ((matrix - matrix.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
  }
  DenseOperator op(matrix);
  if (n > opts.dense_limit) return LanczosTopEigs(op, k, opts);
  EigenResult out = DenseTopEigs(matrix, k);
  const double norm = std::max(std::abs(out.values(0)),
                               std::abs(out.values(k - 1)));
  out.residual_tol = RelativeResidual(op, out.values, out.vectors, norm);
  return out;
}

EigenResult TopEigs(const SymmetricOperator& op, int k,
                    const EigenOptions& opts) {
  const int n = op.size();
  CheckK(k, n);
  if (n > opts.operator_dense_limit) return LanczosTopEigs(op, k, opts);
  EigenResult out = DenseTopEigs(op.ToDense(), k);
  const double norm = std::max(std::abs(out.values(0)),
                               std::abs(out.values(k - 1)));
  out.residual_tol = RelativeResidual(op, out.values, out.vectors, norm);
  return out;
}

EigenResult LanczosTopEigs(const SymmetricOperator& op, int k,
                           const EigenOptions& opts) {
  const int n = op.size();
  CheckK(k, n);
  const int64_t cap64 = std::min<int64_t>(
      n, static_cast<int64_t>(opts.max_iterations_factor) * n);
  const int cap = static_cast<int>(std::max<int64_t>(cap64, 1));
  // After a breakdown the Krylov space is invariant and Ritz residuals vanish
  // even if copies of a repeated eigenvalue are still missing; insist on a
  // minimum basis so restarts get a chance to find them.
  const int min_basis = std::min(n, 2 * k + 10);

  Rng rng(opts.seed, 0x1a2c05);
  Eigen::MatrixXd basis(n, std::min(cap, std::max(64, 4 * k)));
  std::vector<double> alpha;
  std::vector<double> beta;  // beta[j] couples v_j and v_{j+1}
  basis.col(0) = RandomUnit(n, rng);

  Eigen::VectorXd w(n);
  Eigen::VectorXd values;
  Eigen::MatrixXd ritz;
  double spectral_norm = 0.0;
  double achieved = std::numeric_limits<double>::infinity();
  int next_check = std::max(min_basis, std::min(n, k + 20));
  int m = 0;

  while (m < cap) {
    op.Apply({basis.col(m).data(), static_cast<size_t>(n)},
             {w.data(), static_cast<size_t>(n)});
    const double a = basis.col(m).dot(w);
    w.noalias() -= a * basis.col(m);
    if (m > 0) w.noalias() -= beta[m - 1] * basis.col(m - 1);
    Reorthogonalize(basis, m + 1, w);
    double b = w.norm();
    alpha.push_back(a);
    ++m;
    spectral_norm = std::max(
        spectral_norm, std::abs(a) + b + (m > 1 ? beta[m - 2] : 0.0));

    bool exhausted = m == n;
    if (!exhausted && m == cap) {
      // Out of iterations: keep the coupling for the residual estimate only.
      beta.push_back(b);
    } else if (!exhausted) {
      if (basis.cols() <= m) {
        basis.conservativeResize(Eigen::NoChange,
                                 std::min<int64_t>(cap, 2 * basis.cols()));
      }
      if (b <= 1e-12 * std::max(spectral_norm, 1e-300)) {
        // Invariant subspace: continue from a fresh direction.
        Eigen::VectorXd r = RandomUnit(n, rng);
        Reorthogonalize(basis, m, r);
        const double rn = r.norm();
        if (rn < 1e-8) {
          exhausted = true;
        } else {
          b = 0.0;
          basis.col(m) = r / rn;
        }
      } else {
        basis.col(m) = w / b;
      }
      if (!exhausted) beta.push_back(b);
    }

    if (!exhausted && m < cap && (m < next_check || m < k)) continue;

    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub(std::max(m - 1, 0));
    for (int j = 0; j + 1 < m; ++j) sub(j) = beta[j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& theta = tri.eigenvalues();
    const double ritz_norm =
        std::max(std::abs(theta(0)), std::abs(theta(m - 1)));
    const double coupling = exhausted ? 0.0 : beta[m - 1];

    bool converged = m >= k;
    for (int i = 0; converged && i < k; ++i) {
      const double r = std::abs(coupling * tri.eigenvectors()(m - 1, m - 1 - i));
      converged = r <= opts.tol * std::max(ritz_norm, 1e-300);
    }
    if (converged || exhausted) {
      values.resize(k);
      Eigen::MatrixXd s(m, k);
      for (int i = 0; i < k; ++i) {
        values(i) = theta(m - 1 - i);
        s.col(i) = tri.eigenvectors().col(m - 1 - i);
      }
      ritz = basis.leftCols(m) * s;
      for (int i = 0; i < k; ++i) ritz.col(i).normalize();
      achieved = RelativeResidual(op, values, ritz, ritz_norm);
      if (achieved <= opts.tol || exhausted) break;
    }
    next_check = m + std::max(8, m / 4);
  }

  if (!(achieved <= opts.tol)) {
    std::ostringstream msg;
    msg << "Lanczos reached residual " << achieved << " after " << m
        << " iterations (tol " << opts.tol << ")";
    throw Error(ErrorCode::kConvergenceFailure, msg.str());
  }
  EigenResult out;
  out.values = std::move(values);
  out.vectors = std::move(ritz);
  out.residual_tol = achieved;
  return out;
}

}  // namespace sbmk
