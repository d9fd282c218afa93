// Random generators and small helpers shared by the unit and acceptance tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "fusion/complements.hpp"
#include "fusion/completion.hpp"
#include "fusion/matrix.hpp"
#include "fusion/model.hpp"
#include "fusion/numerics.hpp"

namespace fusion::testing {

using Rng = std::mt19937_64;

inline Vector random_vector(Rng& rng, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Vector v(n);
    for (double& x : v) x = g(rng);
    return v;
}

inline Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g;
    Matrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a(r, c) = g(rng);
    return a;
}

inline Matrix random_symmetric(Rng& rng, std::size_t n) {
    const Matrix a = random_matrix(rng, n, n);
    return 0.5 * (a + a.transpose());
}

/// Haar-ish orthonormal n×k matrix from Gram-Schmidt on Gaussian columns.
inline Matrix random_orthonormal(Rng& rng, std::size_t n, std::size_t k) {
    for (;;) {
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < k; ++j) cols.push_back(random_vector(rng, n));
        Matrix q = gram_schmidt(cols, n);
        if (q.cols() == k) return q;
    }
}

inline Subspace random_subspace(Rng& rng, std::size_t ambient, std::size_t dim) {
    return Subspace(random_orthonormal(rng, ambient, dim));
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

/// Random weighted family that spans ℝ^M (lower bound > 0).
inline FusionFrame random_fusion_frame(Rng& rng, std::size_t ambient, std::size_t count, std::size_t max_dim,
                                       bool unit_weights = false) {
    if (count * std::min(max_dim, ambient) < ambient) throw std::logic_error("family cannot span the space");
    for (;;) {
        std::vector<WeightedSubspace> members;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t d = uniform(rng, 1, std::min(max_dim, ambient));
            members.emplace_back(random_subspace(rng, ambient, d), unit_weights ? 1.0 : uniform_real(rng, 0.5, 2.0));
        }
        FusionFrame ff(ambient, std::move(members));
        if (frame_bounds(ff).lower > 1e-3) return ff;
    }
}

inline FusionFrame rotate(const FusionFrame& ff, const Matrix& q) {
    std::vector<WeightedSubspace> members;
    for (const auto& w : ff.members()) members.emplace_back(Subspace(q * w.subspace.basis()), w.weight);
    return FusionFrame(ff.ambient_dim(), std::move(members));
}

inline FusionFrame scale_weights(const FusionFrame& ff, double s) {
    std::vector<WeightedSubspace> members;
    for (const auto& w : ff.members()) members.emplace_back(w.subspace, w.weight * s);
    return FusionFrame(ff.ambient_dim(), std::move(members));
}

inline FusionFrame join(const FusionFrame& a, const FusionFrame& b) {
    std::vector<WeightedSubspace> members = a.members();
    members.insert(members.end(), b.members().begin(), b.members().end());
    return FusionFrame(a.ambient_dim(), std::move(members));
}

/// Parseval frame from the shifts of one random subspace, randomly rotated.
inline FusionFrame random_shift_parseval(Rng& rng, std::size_t ambient, std::size_t dim) {
    const FusionFrame tight = shift_completion({random_subspace(rng, ambient, dim)});
    return rotate(to_parseval(tight), random_orthonormal(rng, ambient, ambient));
}

/// Random Parseval fusion frame with every weight in (lo, hi); mixes two
/// shift families as √t·F₁ ∪ √(1−t)·F₂ when that is needed to reach the range.
inline FusionFrame random_parseval(Rng& rng, double lo, double hi, std::size_t max_ambient = 5) {
    for (;;) {
        const std::size_t ambient = uniform(rng, 3, max_ambient);
        const std::size_t d1 = uniform(rng, 1, std::min<std::size_t>(3, ambient - 1));
        const std::size_t d2 = uniform(rng, 1, std::min<std::size_t>(3, ambient - 1));
        FusionFrame candidate = random_shift_parseval(rng, ambient, d1);
        if (uniform(rng, 0, 1) == 1) {
            const double t = uniform_real(rng, 0.2, 0.8);
            candidate = join(scale_weights(candidate, std::sqrt(t)),
                             scale_weights(random_shift_parseval(rng, ambient, d2), std::sqrt(1.0 - t)));
        }
        bool ok = true;
        for (const auto& w : candidate.members()) ok = ok && w.weight > lo && w.weight < hi;
        if (ok) return candidate;
    }
}

inline double vector_error(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline double max_diff(const Vector& a, const Vector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace fusion::testing
