#include "fusion/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fusion/error.hpp"

namespace fusion {

Subspace::Subspace(Matrix basis, double tol) : basis_(std::move(basis)) {
    if (basis_.cols() == 0 || basis_.cols() > basis_.rows()) {
        throw Error(ErrorCode::DimensionMismatch, "subspace dimension " + std::to_string(basis_.cols()) +
                                                      " outside [1, " + std::to_string(basis_.rows()) + "]");
    }
    const double r = orthonormality_residual(basis_);
    if (r > tol) {
        throw Error(ErrorCode::NotOrthonormal, "subspace basis orthonormality residual " + std::to_string(r));
    }
}

Subspace Subspace::span(const std::vector<Vector>& vectors, std::size_t ambient_dim, double tol) {
    return Subspace(gram_schmidt(vectors, ambient_dim, tol));
}

WeightedSubspace::WeightedSubspace(Subspace s, double w) : subspace(std::move(s)), weight(w) {
    if (!std::isfinite(weight) || weight <= 0.0) {
        throw Error(ErrorCode::InvariantViolation, "subspace weight must be positive and finite");
    }
}

FusionFrame::FusionFrame(std::size_t ambient_dim, std::vector<WeightedSubspace> members)
    : ambient_dim_(ambient_dim), members_(std::move(members)) {
    if (members_.empty()) throw Error(ErrorCode::InvariantViolation, "fusion frame needs at least one subspace");
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (members_[i].subspace.ambient_dim() != ambient_dim_) {
            throw Error(ErrorCode::AmbientMismatch, "subspace " + std::to_string(i) + " lives in R^" +
                                                        std::to_string(members_[i].subspace.ambient_dim()) +
                                                        ", frame ambient dimension is " + std::to_string(ambient_dim_));
        }
    }
}

FusionFrame FusionFrame::unweighted(std::size_t ambient_dim, const std::vector<Subspace>& subspaces) {
    std::vector<WeightedSubspace> members;
    members.reserve(subspaces.size());
    for (const auto& s : subspaces) members.emplace_back(s, 1.0);
    return FusionFrame(ambient_dim, std::move(members));
}

std::vector<std::size_t> FusionFrame::dims() const {
    std::vector<std::size_t> d;
    d.reserve(members_.size());
    for (const auto& m : members_) d.push_back(m.subspace.dim());
    return d;
}

double FusionFrame::weight_energy() const {
    double s = 0.0;
    for (const auto& m : members_) s += m.weight * m.weight;
    return s;
}

bool FusionFrame::has_unit_weights(double tol) const {
    return std::all_of(members_.begin(), members_.end(),
                       [tol](const WeightedSubspace& m) { return std::abs(m.weight - 1.0) <= tol; });
}

std::size_t FusionFrame::common_dim() const {
    const std::size_t m = members_.front().subspace.dim();
    for (const auto& w : members_)
        if (w.subspace.dim() != m) return 0;
    return m;
}

SpectrumSpec make_spectrum_spec(Vector lambdas, std::size_t num_subspaces, std::size_t subspace_dim) {
    if (lambdas.empty()) throw Error(ErrorCode::InvariantViolation, "spectrum is empty");
    if (num_subspaces == 0 || subspace_dim == 0) {
        throw Error(ErrorCode::InvariantViolation, "num_subspaces and subspace_dim must be positive");
    }
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        if (!std::isfinite(lambdas[j]) || lambdas[j] <= 0.0) {
            throw Error(ErrorCode::InvariantViolation, "lambda[" + std::to_string(j) + "] is not strictly positive");
        }
        if (j > 0 && lambdas[j] > lambdas[j - 1]) {
            throw Error(ErrorCode::InvariantViolation, "lambdas are not descending at index " + std::to_string(j));
        }
    }
    double sum = 0.0;
    for (double l : lambdas) sum += l;
    const double target = static_cast<double>(num_subspaces * subspace_dim);
    if (std::abs(sum - target) > kFactorizationTol) {
        throw Error(ErrorCode::InvariantViolation, "factorization condition fails: sum of lambdas " +
                                                       std::to_string(sum) + " != N*m = " + std::to_string(target));
    }
    lambdas.back() += target - sum;
    return SpectrumSpec{std::move(lambdas), num_subspaces, subspace_dim};
}

Matrix projection(const Subspace& s) { return s.basis() * s.basis().transpose(); }

Matrix fusion_frame_operator(const FusionFrame& ff) {
    const std::size_t n = ff.ambient_dim();
    Matrix s(n, n);
    for (const auto& m : ff.members()) {
        const Matrix& u = m.subspace.basis();
        const double w2 = m.weight * m.weight;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                double p = 0.0;
                for (std::size_t k = 0; k < u.cols(); ++k) p += u(i, k) * u(j, k);
                s(i, j) += w2 * p;
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) s(i, j) = s(j, i);
    return s;
}

FrameBounds frame_bounds(const FusionFrame& ff) {
    const auto values = sym_eigenvalues(fusion_frame_operator(ff));
    return {values.back(), values.front()};
}

double chordal_distance_sq(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) {
        throw Error(ErrorCode::AmbientMismatch, "chordal distance between R^" + std::to_string(a.ambient_dim()) +
                                                    " and R^" + std::to_string(b.ambient_dim()));
    }
    return static_cast<double>(a.ambient_dim()) - trace_product(projection(a), projection(b));
}

double projection_overlap(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw Error(ErrorCode::AmbientMismatch, "projection_overlap");
    const Matrix g = a.basis().transpose() * b.basis();
    double s = 0.0;
    for (double v : g.entries()) s += v * v;
    return s;
}

VerificationReport validate(const FusionFrame& ff, double tol) {
    VerificationReport report;
    report.tol = tol;
    report.dims = ff.dims();

    const Matrix s = fusion_frame_operator(ff);
    const auto eig = sym_eig(s);
    report.spectrum = eig.values;
    report.bounds = {eig.values.back(), eig.values.front()};

    const double a = report.bounds.lower;
    const double b = report.bounds.upper;
    report.is_fusion_frame = a > tol;
    report.is_tight = report.is_fusion_frame && (b - a) <= tol * std::max(1.0, b);
    report.is_parseval = report.is_tight && std::abs(a - 1.0) <= tol;

    const std::size_t n = ff.size();
    std::vector<Matrix> proj;
    proj.reserve(n);
    double basis_residual = 0.0;
    for (const auto& m : ff.members()) {
        proj.push_back(projection(m.subspace));
        basis_residual = std::max(basis_residual, orthonormality_residual(m.subspace.basis()));
    }
    const double dim_h = static_cast<double>(ff.ambient_dim());
    report.chordal_sq.assign(n, Vector(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double d = dim_h - trace_product(proj[i], proj[j]);
            report.chordal_sq[i][j] = report.chordal_sq[j][i] = d;
        }
    }

    double eig_residual = 0.0;
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        const Vector v = eig.vectors.column(k);
        const Vector sv = s * v;
        eig_residual = std::max(eig_residual, norm2(axpy(-eig.values[k], v, sv)));
    }
    double spectrum_sum = 0.0;
    for (double l : eig.values) spectrum_sum += l;
    double weighted_dims = 0.0;
    for (const auto& m : ff.members()) weighted_dims += m.weight * m.weight * static_cast<double>(m.subspace.dim());

    report.residuals["basis_orthonormality"] = basis_residual;
    report.residuals["eigen_residual"] = eig_residual;
    report.residuals["trace_identity"] = std::abs(spectrum_sum - weighted_dims);
    report.residuals["tight_gap"] = b - a;
    report.residuals["parseval_gap"] = max_abs_diff(s, Matrix::identity(ff.ambient_dim()));
    return report;
}

} // namespace fusion
