#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "edvw/clique_expansion.hpp"

namespace edvw {

// y = L x for a real symmetric operator.
class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  virtual std::size_t size() const = 0;
  virtual void apply(std::span<const double> in, std::span<double> out) const = 0;
  // Upper bound on the spectral radius.
  virtual double norm_bound() const = 0;
};

class SparseSymmetricOperator final : public SymmetricOperator {
 public:
  explicit SparseSymmetricOperator(Eigen::SparseMatrix<double> matrix);

  std::size_t size() const override { return static_cast<std::size_t>(matrix_.rows()); }
  void apply(std::span<const double> in, std::span<double> out) const override;
  double norm_bound() const override { return norm_bound_; }
  const Eigen::SparseMatrix<double>& matrix() const noexcept { return matrix_; }

 private:
  Eigen::SparseMatrix<double> matrix_;
  double norm_bound_ = 0.0;
};

struct LanczosOptions {
  std::size_t basis_size = 48;
  std::size_t max_restarts = 4000;
  // Residual target relative to the operator norm bound.
  double tolerance = 1e-8;
  std::uint64_t seed = 7;
  // At or below this size the operator is densified and solved directly.
  std::size_t dense_cutoff = 64;
};

struct EigenSolve {
  std::vector<double> values;               // ascending
  std::vector<std::vector<double>> vectors; // unit 2-norm
  std::vector<double> residuals;            // ||L y - lambda y||
  double norm = 0.0;                        // bound used for the tolerance
  std::size_t matvecs = 0;
  bool converged = false;
};

// `count` smallest eigenpairs by thick-restart Lanczos with full
// reorthogonalisation. The search runs in the orthogonal complement of
// `deflate` when given (e.g. a known kernel vector).
EigenSolve smallest_eigenpairs(const SymmetricOperator& op, std::size_t count,
                               const LanczosOptions& opts = {},
                               std::span<const double> deflate = {});

struct SecondEigen {
  std::vector<double> vector;
  double value = 0.0;
  double residual = 0.0;
  std::size_t matvecs = 0;
};

// Eigenvector of the second smallest eigenvalue of a PSD operator whose
// smallest eigenvalue is 0. With `kernel` the null vector is deflated,
// otherwise the two smallest pairs are computed and the result is
// re-orthogonalised against the first. Throws SolverError when the residual
// target is not met and PreconditionError when the second eigenvalue is also
// zero (disconnected support).
SecondEigen second_eigvec_2lap(const SymmetricOperator& op, std::span<const double> kernel = {},
                               const LanczosOptions& opts = {});

// D - A of a weighted graph. Throws PreconditionError if it is disconnected.
Eigen::SparseMatrix<double> graph_laplacian(const WeightedGraph& graph);
SecondEigen second_eigvec_2lap(const WeightedGraph& graph, const LanczosOptions& opts = {});

}  // namespace edvw
