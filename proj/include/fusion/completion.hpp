#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fusion/model.hpp"
#include "fusion/spectral_tetris.hpp"

namespace fusion {

/**
 * Circular-shift completion. Each input W_i is extended to an orthonormal
 * basis e^i_1..e^i_M of ℝ^M whose first m_i vectors are the stored basis of
 * W_i; the output holds span{e^i_{(j+k) mod M} : j < m_i} for k = 0..M−1,
 * member-major, unit weights. The k = 0 member is W_i itself (same basis).
 * Every basis family contributes m_i·I, so the result is (Σ m_i)-tight.
 *
 * Throws AmbientMismatch when the inputs live in different spaces.
 */
FusionFrame shift_completion(const std::vector<Subspace>& subspaces);

struct TightConstant {
    long constant = 0;        // A
    std::size_t total = 0;    // N₀ = A·M/m
};

/**
 * Checks A against the three admissibility conditions for a family of N
 * m-dimensional subspaces of ℝ^M with largest operator eigenvalue λ₁:
 *   λ₁ + 2 ≤ A,   A·M = N₀·m for an integer N₀,   A ≤ λ₁ + N₀ − (N + 3).
 * Returns N₀ when all hold.
 */
std::optional<std::size_t> admissible_total(long a, double lambda1, std::size_t ambient_dim, std::size_t subspace_dim,
                                            std::size_t num_subspaces, double tol = kSpectralTol);

/// Smallest admissible A for a unit-weight, equi-dimensional frame with m < M.
/// Throws InvariantViolation for other inputs; NoAdmissibleConstant if m = M.
TightConstant minimal_tight_constant(const FusionFrame& ff, double tol = kSpectralTol);

struct TightCompletion {
    long constant = 0;
    FusionFrame added;
    FusionFrame combined;
};

/**
 * Adds N₀ − N subspaces of dimension m so the union is A-tight.
 *
 * With S = Q·diag(λ)·Qᵀ, the added frame realizes μ_j = A − λ_j in the
 * eigenbasis: μ is sorted descending (permuting Q's columns alongside),
 * the real spectral tetris construction runs on (μ, N₀ − N, m), and each
 * produced basis is rotated by Q.
 *
 * A given explicitly must satisfy λ₁ + 2 ≤ A and m | A·M, and the
 * construction on μ must succeed, otherwise InfeasibleError.
 *
 * Without A the scan starts at minimal_tight_constant. That value can leave
 * a column of the μ matrix with more than N₀ − N nonzeros (the conditions
 * bound A − λ₁, not A − λ_M); the scan then moves to the next admissible A
 * whose construction succeeds, so the result may exceed the minimum.
 */
TightCompletion tight_completion(const FusionFrame& ff, std::optional<long> constant = std::nullopt,
                                 double tol = kSpectralTol);

} // namespace fusion
