#pragma once

#include <cstddef>
#include <vector>

#include "fusion/matrix.hpp"
#include "fusion/model.hpp"

namespace fusion {

/**
 * Orthogonal complements {(W_i^⊥, v_i)} with unchanged weights.
 *
 * The complement operator is (Σ v_i²)·I − S, so its spectrum is
 * {Σ v_i² − λ_j} on the eigenvectors of S. Requires B < Σ v_i² − tol
 * (equivalently ∩ W_i = {0}) and every W_i ≠ ℝ^M.
 *
 * Throws FullSubspace or NontrivialIntersection.
 */
FusionFrame spatial_complement(const FusionFrame& ff, double tol = kSpectralTol);

/// Flattened local frame {v_i f_ij}: column block i of `vectors` belongs to member i.
struct LocalFrame {
    Matrix vectors;                  // M × L synthesis matrix
    std::vector<std::size_t> offsets; // member i owns columns [offsets[i], offsets[i+1])
};

/// Throws NotParseval unless ‖S − I‖_max ≤ tol.
LocalFrame local_parseval_frame(const FusionFrame& pff, double tol = kSpectralTol);

struct DilationChecks {
    double idempotency = 0.0; // ‖P² − P‖_max
    double symmetry = 0.0;    // ‖P − Pᵀ‖_max
    double trace = 0.0;       // |tr P − M|
    double isometry = 0.0;    // max_i ‖L_iᵀL_i − I‖_max
    double range = 0.0;       // max_i ‖L_i − E·U_i‖_max, E the embedding of ℝ^M
    double reassembly = 0.0;  // ‖Σ v_i L_i − P‖_max
};

/**
 * Naimark dilation of a Parseval fusion frame into ℝ^L, L = Σ m_i.
 *
 * ℝ^M is embedded into ℝ^L by x ↦ Fᵀx where F is the synthesis matrix of
 * the local Parseval frame; P = FᵀF is the orthogonal projection onto that
 * copy and P e_ij is the embedded v_i f_ij. Each isometry L_i is
 * (1/v_i)·P restricted to span{e_j : j ∈ J_i}, stored as an L×m_i block.
 */
struct Dilation {
    std::size_t dilation_dim = 0;
    Matrix projection;                 // P, L × L
    Matrix embedding;                  // Fᵀ, L × M
    std::vector<std::size_t> offsets;  // partition J_i
    std::vector<Matrix> isometries;    // L_i
    DilationChecks checks;
};

/// Throws NotParseval; throws InvariantViolation if any dilation check exceeds tol.
Dilation naimark_dilation(const FusionFrame& pff, double tol = kSpectralTol);

struct NaimarkComplement {
    std::size_t dilation_dim = 0; // L; the complement lives in ℝ^{L−M}
    FusionFrame frame;
};

/**
 * Parseval fusion frame {(W_i', √(1−v_i²))} of ℝ^{L−M}.
 *
 * The transpose of the synthesis matrix is completed to an orthogonal L×L
 * matrix; the rows of the L−M new columns, grouped by member, are the
 * coordinates of (I−P)e_ij and span W_i' once normalized. dim W_i' = m_i.
 *
 * Throws NotParseval, UnitWeight (some v_i ≥ 1 − tol), or InvariantViolation
 * if the grouped rows are not mutually orthogonal within tol.
 */
NaimarkComplement naimark_complement(const FusionFrame& pff, double tol = kSpectralTol);

/// Rescales the weights of a tight fusion frame by 1/√A so it becomes Parseval.
/// Throws InvariantViolation when the frame is not tight.
FusionFrame to_parseval(const FusionFrame& tight, double tol = kSpectralTol);

} // namespace fusion
