#pragma once

#include <span>
#include <vector>

#include "fusion/matrix.hpp"

namespace fusion {

/// Orthonormality residuals.
inline constexpr double kOrthoTol = 1e-10;
/// Spectrum comparisons and spectral flags.
inline constexpr double kSpectralTol = 1e-8;

struct EigenDecomposition {
    Vector values;  // descending
    Matrix vectors; // column j pairs with values[j]
};

/**
 * Symmetric eigendecomposition by cyclic Jacobi rotations.
 *
 * Eigenvalues are returned in descending order; equal eigenvalues keep the
 * order in which the rotations left them on the diagonal.
 *
 * Throws NotSymmetric when ‖A − Aᵀ‖_max > tol and NoConvergence when the
 * sweep cap is reached before the off-diagonal mass vanishes.
 */
EigenDecomposition sym_eig(const Matrix& a, double tol = kOrthoTol);

/// Eigenvalues only, descending.
Vector sym_eigenvalues(const Matrix& a, double tol = kOrthoTol);

/**
 * Extends the orthonormal columns of Q (L×M) to an orthonormal basis of ℝ^L
 * and returns the L−M new columns.
 *
 * Candidates are the standard basis vectors; at each step the one with the
 * largest residual after projection onto the current span is taken, then
 * orthogonalized twice (classical Gram-Schmidt with reorthogonalization).
 */
Matrix orthonormal_completion(const Matrix& q, double tol = kOrthoTol);

/// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
/// residual norm after projection is ≤ tol are dropped. `dim` is the vector
/// length, needed when the input is empty.
Matrix gram_schmidt(const std::vector<Vector>& vectors, std::size_t dim, double tol = kOrthoTol);

/// Cholesky factor of a symmetric positive-definite matrix, reusable across solves.
class SpdFactor {
public:
    /// Throws NotSymmetric, or SingularOperator when the smallest eigenvalue is ≤ tol.
    explicit SpdFactor(const Matrix& s, double tol = kOrthoTol);

    Vector solve(std::span<const double> b) const;
    std::size_t dim() const noexcept { return lower_.rows(); }
    double smallest_eigenvalue() const noexcept { return smallest_eigenvalue_; }

private:
    Matrix lower_;
    double smallest_eigenvalue_ = 0.0;
};

Vector solve_spd(const Matrix& s, std::span<const double> b, double tol = kOrthoTol);

/// tr(A·B) = Σ A[a,b]·B[b,a] without forming the product. A is p×q, B is q×p.
double trace_product(const Matrix& a, const Matrix& b);

} // namespace fusion
