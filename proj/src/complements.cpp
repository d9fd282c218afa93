#include "fusion/complements.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fusion/error.hpp"
#include "fusion/numerics.hpp"

namespace fusion {

namespace {

void require_parseval(const FusionFrame& pff, double tol) {
    const double gap = max_abs_diff(fusion_frame_operator(pff), Matrix::identity(pff.ambient_dim()));
    if (gap > tol) {
        throw Error(ErrorCode::NotParseval, "fusion frame is not Parseval: ||S - I||_max = " + std::to_string(gap));
    }
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

FusionFrame spatial_complement(const FusionFrame& ff, double tol) {
    const std::size_t m = ff.ambient_dim();
    for (std::size_t i = 0; i < ff.size(); ++i) {
        if (ff[i].subspace.dim() == m) {
            throw Error(ErrorCode::FullSubspace,
                        "subspace " + std::to_string(i + 1) + " is the whole space; its complement is {0}");
        }
    }
    const double energy = ff.weight_energy();
    const FrameBounds bounds = frame_bounds(ff);
    if (bounds.upper >= energy - tol) {
        throw Error(ErrorCode::NontrivialIntersection,
                    "spatial complement needs B < sum v_i^2 (trivial intersection of the subspaces): B = " +
                        fmt(bounds.upper) + ", sum v_i^2 = " + fmt(energy));
    }

    std::vector<WeightedSubspace> members;
    members.reserve(ff.size());
    for (const auto& w : ff.members()) {
        members.emplace_back(Subspace(orthonormal_completion(w.subspace.basis(), kBasisTol)), w.weight);
    }
    return FusionFrame(m, std::move(members));
}

LocalFrame local_parseval_frame(const FusionFrame& pff, double tol) {
    require_parseval(pff, tol);
    LocalFrame out;
    out.offsets.reserve(pff.size() + 1);
    out.offsets.push_back(0);
    for (const auto& w : pff.members()) out.offsets.push_back(out.offsets.back() + w.subspace.dim());

    out.vectors = Matrix(pff.ambient_dim(), out.offsets.back());
    for (std::size_t i = 0; i < pff.size(); ++i) {
        const Matrix& u = pff[i].subspace.basis();
        const double v = pff[i].weight;
        for (std::size_t k = 0; k < u.cols(); ++k)
            for (std::size_t r = 0; r < u.rows(); ++r) out.vectors(r, out.offsets[i] + k) = v * u(r, k);
    }
    return out;
}

Dilation naimark_dilation(const FusionFrame& pff, double tol) {
    const LocalFrame local = local_parseval_frame(pff, tol);
    const Matrix& f = local.vectors;
    const std::size_t l = f.cols();

    Dilation d;
    d.dilation_dim = l;
    d.offsets = local.offsets;
    d.embedding = f.transpose();
    d.projection = d.embedding * f;

    const Matrix& p = d.projection;
    DilationChecks& c = d.checks;
    c.idempotency = max_abs_diff(p * p, p);
    c.symmetry = symmetry_residual(p);
    c.trace = std::abs(p.trace() - static_cast<double>(pff.ambient_dim()));

    Matrix reassembled(l, l);
    d.isometries.reserve(pff.size());
    for (std::size_t i = 0; i < pff.size(); ++i) {
        const double v = pff[i].weight;
        const std::size_t first = d.offsets[i];
        const std::size_t count = d.offsets[i + 1] - first;
        Matrix li = p.column_block(first, count) * (1.0 / v);

        c.isometry = std::max(c.isometry, orthonormality_residual(li));
        c.range = std::max(c.range, max_abs_diff(li, d.embedding * pff[i].subspace.basis()));
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t k = 0; k < count; ++k) reassembled(r, first + k) += v * li(r, k);
        d.isometries.push_back(std::move(li));
    }
    c.reassembly = max_abs_diff(reassembled, p);

    const double worst = std::max({c.idempotency, c.symmetry, c.trace, c.isometry, c.range, c.reassembly});
    if (worst > tol) {
        throw Error(ErrorCode::InvariantViolation, "dilation check failed with residual " + fmt(worst));
    }
    return d;
}

NaimarkComplement naimark_complement(const FusionFrame& pff, double tol) {
    const LocalFrame local = local_parseval_frame(pff, tol);
    for (std::size_t i = 0; i < pff.size(); ++i) {
        if (pff[i].weight >= 1.0 - tol) {
            throw Error(ErrorCode::UnitWeight, "Naimark complement needs every weight < 1; weight " +
                                                   std::to_string(i + 1) + " is " + fmt(pff[i].weight));
        }
    }
    const std::size_t m = pff.ambient_dim();
    const std::size_t l = local.vectors.cols();
    if (l <= m) throw Error(ErrorCode::UnitWeight, "dilation space has no room for a complement");

    // Columns of Fᵀ are orthonormal because F·Fᵀ = S = I.
    const Matrix g = orthonormal_completion(local.vectors.transpose(), tol);
    const std::size_t k = l - m;

    std::vector<WeightedSubspace> members;
    members.reserve(pff.size());
    for (std::size_t i = 0; i < pff.size(); ++i) {
        const std::size_t first = local.offsets[i];
        const std::size_t count = local.offsets[i + 1] - first;
        Matrix basis(k, count);
        for (std::size_t a = 0; a < count; ++a) {
            const auto row = g.row(first + a);
            const double nrm = norm2(row);
            for (std::size_t c = 0; c < k; ++c) basis(c, a) = row[c] / nrm;
        }
        const double r = orthonormality_residual(basis);
        if (r > tol) {
            throw Error(ErrorCode::InvariantViolation,
                        "complement vectors of member " + std::to_string(i + 1) + " are not orthogonal (" + fmt(r) + ")");
        }
        const double v = pff[i].weight;
        members.emplace_back(Subspace(std::move(basis), tol), std::sqrt(1.0 - v * v));
    }
    return {l, FusionFrame(k, std::move(members))};
}

FusionFrame to_parseval(const FusionFrame& tight, double tol) {
    const VerificationReport report = validate(tight, tol);
    if (!report.is_tight) throw Error(ErrorCode::InvariantViolation, "fusion frame is not tight");
    double a = 0.0;
    for (double l : report.spectrum) a += l;
    a /= static_cast<double>(report.spectrum.size());
    const double scale = 1.0 / std::sqrt(a);

    std::vector<WeightedSubspace> members;
    members.reserve(tight.size());
    for (const auto& w : tight.members()) members.emplace_back(w.subspace, w.weight * scale);
    return FusionFrame(tight.ambient_dim(), std::move(members));
}

} // namespace fusion
