#include "fusion/completion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fusion/error.hpp"
#include "fusion/numerics.hpp"

namespace fusion {

namespace {

struct Shape {
    std::size_t ambient;
    std::size_t dim;
    std::size_t count;
};

Shape require_unit_equidimensional(const FusionFrame& ff, double tol) {
    if (!ff.has_unit_weights(tol)) throw Error(ErrorCode::InvariantViolation, "tight completion needs unit weights");
    const std::size_t m = ff.common_dim();
    if (m == 0) throw Error(ErrorCode::InvariantViolation, "tight completion needs equal subspace dimensions");
    if (m == ff.ambient_dim()) {
        throw Error(ErrorCode::NoAdmissibleConstant, "no admissible tight constant when every subspace is the whole space");
    }
    return {ff.ambient_dim(), m, ff.size()};
}

} // namespace

FusionFrame shift_completion(const std::vector<Subspace>& subspaces) {
    if (subspaces.empty()) throw Error(ErrorCode::InvariantViolation, "shift completion needs at least one subspace");
    const std::size_t m = subspaces.front().ambient_dim();

    std::vector<WeightedSubspace> members;
    members.reserve(subspaces.size() * m);
    for (const auto& w : subspaces) {
        if (w.ambient_dim() != m) throw Error(ErrorCode::AmbientMismatch, "shift completion: mixed ambient dimensions");
        const Matrix full = hconcat(w.basis(), orthonormal_completion(w.basis(), kBasisTol));
        const std::size_t d = w.dim();
        members.emplace_back(w, 1.0);
        for (std::size_t k = 1; k < m; ++k) {
            std::vector<std::size_t> cols(d);
            for (std::size_t j = 0; j < d; ++j) cols[j] = (j + k) % m;
            members.emplace_back(Subspace(full.select_columns(cols)), 1.0);
        }
    }
    return FusionFrame(m, std::move(members));
}

std::optional<std::size_t> admissible_total(long a, double lambda1, std::size_t ambient_dim, std::size_t subspace_dim,
                                            std::size_t num_subspaces, double tol) {
    if (a < 1 || subspace_dim == 0) return std::nullopt;
    if (lambda1 + 2.0 > static_cast<double>(a) + tol) return std::nullopt;
    const auto product = static_cast<std::size_t>(a) * ambient_dim;
    if (product % subspace_dim != 0) return std::nullopt;
    const std::size_t total = product / subspace_dim;
    const double rhs = lambda1 + static_cast<double>(total) - static_cast<double>(num_subspaces + 3);
    if (static_cast<double>(a) > rhs + tol) return std::nullopt;
    return total;
}

TightConstant minimal_tight_constant(const FusionFrame& ff, double tol) {
    const Shape shape = require_unit_equidimensional(ff, tol);
    const double lambda1 = frame_bounds(ff).upper;

    // The ansatz A = n·m is admissible once n·m ≥ λ₁ + 2 and n·(M − m) ≥ N + 3 − λ₁.
    const double gap = static_cast<double>(shape.ambient - shape.dim);
    const double n_first = std::ceil((lambda1 + 2.0) / static_cast<double>(shape.dim));
    const double n_second = std::ceil((static_cast<double>(shape.count) + 3.0 - lambda1) / gap);
    const long cap = static_cast<long>(std::max(n_first, n_second) + 1.0) * static_cast<long>(shape.dim);

    for (long a = 1; a <= cap; ++a) {
        if (auto total = admissible_total(a, lambda1, shape.ambient, shape.dim, shape.count, tol)) {
            return {a, *total};
        }
    }
    throw Error(ErrorCode::NoAdmissibleConstant, "no admissible tight constant up to " + std::to_string(cap));
}

namespace {

TightCompletion complete_with(const FusionFrame& ff, const Shape& shape, const EigenDecomposition& eig, long a,
                              std::size_t total) {
    if (total <= shape.count) {
        throw InfeasibleError("tight constant is not admissible",
                              {"N0 = " + std::to_string(total) + " leaves no room for added subspaces"});
    }
    const std::size_t added_count = total - shape.count;

    const std::size_t m = shape.ambient;
    Vector mu(m);
    for (std::size_t j = 0; j < m; ++j) mu[j] = static_cast<double>(a) - eig.values[j];
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return mu[i] > mu[j]; });
    Vector mu_sorted(m);
    for (std::size_t j = 0; j < m; ++j) mu_sorted[j] = mu[order[j]];
    const Matrix rotation = eig.vectors.select_columns(order);

    SpectrumSpec spec;
    try {
        spec = make_spectrum_spec(mu_sorted, added_count, shape.dim);
    } catch (const Error& e) {
        throw InfeasibleError("complementary spectrum is invalid", {e.what()});
    }
    const Construction built = ffcre_relaxed(spec);

    std::vector<WeightedSubspace> added;
    added.reserve(built.frame.size());
    for (const auto& w : built.frame.members()) added.emplace_back(Subspace(rotation * w.subspace.basis()), 1.0);

    std::vector<WeightedSubspace> combined = ff.members();
    combined.insert(combined.end(), added.begin(), added.end());
    return {a, FusionFrame(m, std::move(added)), FusionFrame(m, std::move(combined))};
}

} // namespace

TightCompletion tight_completion(const FusionFrame& ff, std::optional<long> constant, double tol) {
    const Shape shape = require_unit_equidimensional(ff, tol);
    const EigenDecomposition eig = sym_eig(fusion_frame_operator(ff));
    const double lambda1 = eig.values.front();

    if (constant) {
        const long a = *constant;
        std::vector<std::string> problems;
        if (lambda1 + 2.0 > static_cast<double>(a) + tol) {
            problems.push_back("lambda_1 + 2 <= A fails: lambda_1 = " + std::to_string(lambda1) + ", A = " + std::to_string(a));
        }
        if (a < 1 || (static_cast<std::size_t>(a) * shape.ambient) % shape.dim != 0) {
            problems.push_back("A*M = N0*m has no integer solution N0 for A = " + std::to_string(a));
        }
        if (!problems.empty()) throw InfeasibleError("tight constant is not admissible", problems);
        return complete_with(ff, shape, eig, a, static_cast<std::size_t>(a) * shape.ambient / shape.dim);
    }

    // The three conditions bound A − λ₁, while the largest entry of μ is A − λ_M,
    // so the smallest admissible A can overfill a column. Keep scanning upward.
    const TightConstant first = minimal_tight_constant(ff, tol);
    const long last = 4 * first.constant + static_cast<long>(shape.count + 3) * static_cast<long>(shape.dim);
    std::vector<std::string> failures;
    for (long a = first.constant; a <= last; ++a) {
        const auto total = admissible_total(a, lambda1, shape.ambient, shape.dim, shape.count, tol);
        if (!total) continue;
        try {
            return complete_with(ff, shape, eig, a, *total);
        } catch (const InfeasibleError& e) {
            if (failures.size() < 4) failures.push_back("A = " + std::to_string(a) + ": " + e.violations().front());
        }
    }
    throw InfeasibleError("no admissible tight constant up to " + std::to_string(last) + " is constructible", failures);
}

} // namespace fusion
