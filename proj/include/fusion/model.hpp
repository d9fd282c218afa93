#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fusion/matrix.hpp"
#include "fusion/numerics.hpp"

namespace fusion {

/// Orthonormality tolerance for user-supplied subspace bases.
inline constexpr double kBasisTol = 1e-8;

/// A subspace of ℝ^M stored by an M×m matrix with orthonormal columns.
class Subspace {
public:
    /// Throws NotOrthonormal when ‖UᵀU − I‖_max > tol, DimensionMismatch when m = 0 or m > M.
    explicit Subspace(Matrix basis, double tol = kBasisTol);

    /// Span of arbitrary vectors, orthonormalized by Gram-Schmidt.
    static Subspace span(const std::vector<Vector>& vectors, std::size_t ambient_dim, double tol = kOrthoTol);

    std::size_t ambient_dim() const noexcept { return basis_.rows(); }
    std::size_t dim() const noexcept { return basis_.cols(); }
    const Matrix& basis() const noexcept { return basis_; }

private:
    Matrix basis_;
};

struct WeightedSubspace {
    /// Throws InvariantViolation unless weight is finite and > 0.
    WeightedSubspace(Subspace s, double w);

    Subspace subspace;
    double weight;
};

class FusionFrame {
public:
    /// Throws AmbientMismatch if a member lives in another ambient space,
    /// InvariantViolation if the member list is empty. Spanning is not checked here.
    FusionFrame(std::size_t ambient_dim, std::vector<WeightedSubspace> members);

    /// Unit weights.
    static FusionFrame unweighted(std::size_t ambient_dim, const std::vector<Subspace>& subspaces);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<WeightedSubspace>& members() const noexcept { return members_; }
    const WeightedSubspace& operator[](std::size_t i) const { return members_[i]; }

    std::vector<std::size_t> dims() const;
    /// Σ v_i²
    double weight_energy() const;
    bool has_unit_weights(double tol = kSpectralTol) const;
    /// Common subspace dimension, or 0 when dimensions differ.
    std::size_t common_dim() const;

private:
    std::size_t ambient_dim_;
    std::vector<WeightedSubspace> members_;
};

/// Target eigenvalues for a construction with N subspaces of dimension m.
/// Plain data: the feasibility checks accept any instance and report what is wrong.
struct SpectrumSpec {
    Vector lambdas;
    std::size_t num_subspaces = 0;
    std::size_t subspace_dim = 0;

    std::size_t ambient_dim() const noexcept { return lambdas.size(); }
};

/// Sum tolerance for the factorization condition Σλ = N·m.
inline constexpr double kFactorizationTol = 1e-9;

/**
 * Checked SpectrumSpec: lambdas descending and strictly positive, N, m ≥ 1,
 * and |Σλ − N·m| ≤ 1e-9. The residual of the sum is folded into the last
 * eigenvalue so the stored sum equals N·m. Throws InvariantViolation.
 */
SpectrumSpec make_spectrum_spec(Vector lambdas, std::size_t num_subspaces, std::size_t subspace_dim);

struct FrameBounds {
    double lower = 0.0;
    double upper = 0.0;
};

struct VerificationReport {
    Vector spectrum; // descending
    FrameBounds bounds;
    double tol = kSpectralTol;
    bool is_fusion_frame = false;
    bool is_tight = false;
    bool is_parseval = false;
    std::vector<std::size_t> dims;
    /// chordal_sq[i][j] = M − tr[P_i P_j]; the diagonal holds M − m_i.
    std::vector<Vector> chordal_sq;
    std::string chordal_convention = "dim H - tr[P_i P_j]";
    std::map<std::string, double> residuals;
};

/// U·Uᵀ
Matrix projection(const Subspace& s);

/// S = Σ v_i² P_i
Matrix fusion_frame_operator(const FusionFrame& ff);

/// Optimal bounds: extreme eigenvalues of S. The lower bound is ≈ 0 for non-spanning families.
FrameBounds frame_bounds(const FusionFrame& ff);

/// M − tr[P_a P_b]. Throws AmbientMismatch.
double chordal_distance_sq(const Subspace& a, const Subspace& b);

/// tr[P_a P_b] computed as ‖U_aᵀ U_b‖_F².
double projection_overlap(const Subspace& a, const Subspace& b);

/// Runs every structural check; problems are reported, never thrown.
VerificationReport validate(const FusionFrame& ff, double tol = kSpectralTol);

} // namespace fusion
