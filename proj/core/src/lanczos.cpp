#include "edvw/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "edvw/errors.hpp"

namespace edvw {

using Eigen::MatrixXd;
using Eigen::VectorXd;

SparseSymmetricOperator::SparseSymmetricOperator(Eigen::SparseMatrix<double> matrix)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw DomainError("operator matrix must be square");
  matrix_.makeCompressed();
  VectorXd row_sums = VectorXd::Zero(matrix_.rows());
  for (int k = 0; k < matrix_.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix_, k); it; ++it) {
      row_sums[it.row()] += std::abs(it.value());
    }
  }
  norm_bound_ = row_sums.size() > 0 ? row_sums.maxCoeff() : 0.0;
}

void SparseSymmetricOperator::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != size() || out.size() != size()) throw DomainError("operator: vector has wrong length");
  Eigen::Map<const VectorXd> x(in.data(), static_cast<Eigen::Index>(in.size()));
  Eigen::Map<VectorXd> y(out.data(), static_cast<Eigen::Index>(out.size()));
  y.noalias() = matrix_ * x;
}

namespace {

void apply(const SymmetricOperator& op, const VectorXd& x, VectorXd& y, std::size_t& matvecs) {
  y.resize(x.size());
  op.apply(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
           std::span<double>(y.data(), static_cast<std::size_t>(y.size())));
  ++matvecs;
}

// Orthogonalises w against the first `cols` columns of V and the deflation
// vector (twice, classical Gram-Schmidt) and returns the remaining norm.
double orthogonalise(VectorXd& w, const MatrixXd& V, Eigen::Index cols, const VectorXd& deflate) {
  for (int pass = 0; pass < 2; ++pass) {
    if (deflate.size() > 0) w -= deflate.dot(w) * deflate;
    if (cols > 0) {
      VectorXd coeffs = V.leftCols(cols).transpose() * w;
      w.noalias() -= V.leftCols(cols) * coeffs;
    }
  }
  return w.norm();
}

VectorXd random_unit(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = uni(rng);
  return v;
}

EigenSolve dense_solve(const SymmetricOperator& op, std::size_t count, const VectorXd& deflate) {
  const auto n = static_cast<Eigen::Index>(op.size());
  EigenSolve out;
  MatrixXd dense(n, n);
  VectorXd e = VectorXd::Zero(n);
  VectorXd col;
  for (Eigen::Index i = 0; i < n; ++i) {
    e.setZero();
    e[i] = 1.0;
    apply(op, e, col, out.matvecs);
    dense.col(i) = col;
  }
  dense = 0.5 * (dense + dense.transpose());
  out.norm = std::max(op.norm_bound(), dense.cwiseAbs().rowwise().sum().maxCoeff());
  if (deflate.size() > 0) {
    // Push the deflated direction to the top of the spectrum.
    const double shift = 2.0 * out.norm + 1.0;
    dense += shift * deflate * deflate.transpose();
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(dense);
  if (eig.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
  for (std::size_t k = 0; k < count && static_cast<Eigen::Index>(k) < n; ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    VectorXd y = eig.eigenvectors().col(idx);
    VectorXd ly;
    apply(op, y, ly, out.matvecs);
    out.values.push_back(eig.eigenvalues()[idx]);
    out.residuals.push_back((ly - eig.eigenvalues()[idx] * y).norm());
    out.vectors.emplace_back(y.data(), y.data() + n);
  }
  out.converged = true;
  return out;
}

}  // namespace

EigenSolve smallest_eigenpairs(const SymmetricOperator& op, std::size_t count,
                               const LanczosOptions& opts, std::span<const double> deflate_in) {
  const auto n = static_cast<Eigen::Index>(op.size());
  if (n == 0) throw DomainError("eigensolver: empty operator");
  if (count == 0) throw DomainError("eigensolver: count must be positive");
  VectorXd deflate;
  if (!deflate_in.empty()) {
    if (static_cast<Eigen::Index>(deflate_in.size()) != n)
      throw DomainError("eigensolver: deflation vector has wrong length");
    deflate = Eigen::Map<const VectorXd>(deflate_in.data(), n);
    if (!(deflate.norm() > 0.0)) throw DomainError("eigensolver: zero deflation vector");
    deflate.normalize();
  }
  const Eigen::Index room = n - (deflate.size() > 0 ? 1 : 0);
  if (static_cast<Eigen::Index>(count) > room) throw DomainError("eigensolver: too many eigenpairs requested");
  if (static_cast<std::size_t>(n) <= opts.dense_cutoff) return dense_solve(op, count, deflate);

  EigenSolve out;
  const double sigma = std::max(op.norm_bound(), 1e-300);
  out.norm = sigma;
  const double target = opts.tolerance * sigma;
  const auto m = static_cast<Eigen::Index>(
      std::min<std::size_t>(std::max<std::size_t>(opts.basis_size, 2 * count + 8),
                            static_cast<std::size_t>(room)));
  const auto keep = std::max<Eigen::Index>(static_cast<Eigen::Index>(count) + 1, m / 2);

  std::mt19937_64 rng(opts.seed);
  MatrixXd V(n, m);
  MatrixXd BV(n, m);  // (sigma I - L) V
  Eigen::Index cols = 0;
  VectorXd w = random_unit(n, rng);
  VectorXd lw;

  auto push = [&](VectorXd v) {
    double norm = orthogonalise(v, V, cols, deflate);
    while (!(norm > 1e-10)) {
      v = random_unit(n, rng);
      norm = orthogonalise(v, V, cols, deflate);
    }
    V.col(cols) = v / norm;
    apply(op, V.col(cols), lw, out.matvecs);
    BV.col(cols) = sigma * V.col(cols) - lw;
    ++cols;
  };

  push(w);
  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    while (cols < m) push(BV.col(cols - 1));

    MatrixXd H = V.transpose() * BV;
    H = 0.5 * (H + H.transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(H);
    if (eig.info() != Eigen::Success) throw SolverError("Ritz eigensolver failed");
    // Largest eigenvalues of sigma I - L are the smallest of L; reverse order.
    MatrixXd S = eig.eigenvectors().rowwise().reverse();
    VectorXd theta = eig.eigenvalues().reverse();

    MatrixXd Y = V * S.leftCols(keep);
    MatrixXd BY = BV * S.leftCols(keep);
    bool all_converged = true;
    std::vector<double> residuals(count);
    for (std::size_t k = 0; k < count; ++k) {
      const auto idx = static_cast<Eigen::Index>(k);
      residuals[k] = (BY.col(idx) - theta[idx] * Y.col(idx)).norm();
      if (residuals[k] > target) all_converged = false;
    }
    if (all_converged || restart == opts.max_restarts) {
      out.converged = all_converged;
      for (std::size_t k = 0; k < count; ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        VectorXd y = Y.col(idx).normalized();
        out.values.push_back(sigma - theta[idx]);
        out.residuals.push_back(residuals[k]);
        out.vectors.emplace_back(y.data(), y.data() + n);
      }
      return out;
    }

    // Thick restart: keep the leading Ritz vectors, extend with the residual of
    // the first unconverged one.
    std::size_t next = 0;
    while (residuals[next] <= target) ++next;
    VectorXd r = BY.col(static_cast<Eigen::Index>(next)) -
                 theta[static_cast<Eigen::Index>(next)] * Y.col(static_cast<Eigen::Index>(next));
    V.leftCols(keep) = Y;
    BV.leftCols(keep) = BY;
    cols = keep;
    push(r);
  }
  return out;
}

SecondEigen second_eigvec_2lap(const SymmetricOperator& op, std::span<const double> kernel,
                               const LanczosOptions& opts) {
  if (op.size() < 2) throw DomainError("second eigenvector needs at least two vertices");
  EigenSolve solve = kernel.empty() ? smallest_eigenpairs(op, 2, opts)
                                    : smallest_eigenpairs(op, 1, opts, kernel);
  const std::size_t idx = kernel.empty() ? 1 : 0;
  const double target = opts.tolerance * solve.norm;
  if (!solve.converged || solve.residuals[idx] > target) {
    std::ostringstream msg;
    msg << "eigensolver did not converge: residual " << solve.residuals[idx] << " > " << target
        << " after " << solve.matvecs << " products";
    throw SolverError(msg.str());
  }
  SecondEigen out;
  out.value = solve.values[idx];
  out.residual = solve.residuals[idx];
  out.matvecs = solve.matvecs;
  out.vector = std::move(solve.vectors[idx]);
  if (kernel.empty()) {
    // Remove any leakage of the first eigenvector.
    const auto& first = solve.vectors[0];
    double dot = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) dot += first[i] * out.vector[i];
    double norm = 0.0;
    for (std::size_t i = 0; i < first.size(); ++i) {
      out.vector[i] -= dot * first[i];
      norm += out.vector[i] * out.vector[i];
    }
    norm = std::sqrt(norm);
    for (double& v : out.vector) v /= norm;
  }
  if (out.value <= 1e-10 * std::max(solve.norm, 1.0))
    throw PreconditionError("second eigenvalue is zero: the underlying graph is disconnected");
  return out;
}

Eigen::SparseMatrix<double> graph_laplacian(const WeightedGraph& graph) {
  if (!graph.connected()) throw PreconditionError("graph is not connected");
  const auto n = static_cast<Eigen::Index>(graph.n_vertices());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(graph.n_vertices() + 2 * graph.n_edges());
  std::vector<double> degree(graph.n_vertices(), 0.0);
  for (const auto& e : graph.edges()) {
    entries.emplace_back(e.u, e.v, -e.weight);
    entries.emplace_back(e.v, e.u, -e.weight);
    degree[e.u] += e.weight;
    degree[e.v] += e.weight;
  }
  for (std::size_t v = 0; v < degree.size(); ++v) {
    entries.emplace_back(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(v), degree[v]);
  }
  Eigen::SparseMatrix<double> L(n, n);
  L.setFromTriplets(entries.begin(), entries.end());
  return L;
}

SecondEigen second_eigvec_2lap(const WeightedGraph& graph, const LanczosOptions& opts) {
  SparseSymmetricOperator op(graph_laplacian(graph));
  std::vector<double> ones(graph.n_vertices(), 1.0);
  return second_eigvec_2lap(op, ones, opts);
}

}  // namespace edvw
