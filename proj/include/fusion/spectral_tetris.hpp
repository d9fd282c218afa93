#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fusion/matrix.hpp"
#include "fusion/model.hpp"

namespace fusion {

/// Residuals within this distance of an integer are snapped to it.
inline constexpr double kIntegerSnapTol = 1e-9;

enum class RowKind {
    Singleton,  // e_j
    BlockUpper, // √(r/2)·e_j + √(1−r/2)·e_{j+1}
    BlockLower, // √(r/2)·e_j − √(1−r/2)·e_{j+1}
};

struct ColumnProfile {
    std::size_t nonzeros = 0; // N(j)
    bool has_initial = false;
    bool has_terminal = false;

    friend bool operator==(const ColumnProfile&, const ColumnProfile&) = default;
};

/// The (N·m)×M row matrix produced by the spectral tetris constructions.
struct TetrisMatrix {
    Matrix rows;
    std::vector<RowKind> row_kinds;
    std::vector<ColumnProfile> profile;
};

enum class Condition {
    EmptySpectrum,
    BadCounts,         // N or m is zero
    NotDescending,
    NotPositive,
    NotInteger,        // integer construction only
    Factorization,     // Σλ ≠ N·m
    ExceedsCount,      // λ₁ > N
    SmallestBelowTwo,  // λ_M < 2 with a fractional entry present
    FirstFractionTooLarge, // ⌊λ_{j₀}⌋ > N − 3
};

struct Violation {
    Condition condition;
    std::string message;
};

struct Feasibility {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(Condition c) const;
    std::vector<std::string> messages() const;
};

/// All λ_j integers, N ≥ λ₁, and Σλ = N·m.
Feasibility check_feasibility_integer(const SpectrumSpec& spec);

/**
 * Σλ = N·m, λ₁ ≤ N, and when some λ_j is fractional: λ_M ≥ 2 and
 * ⌊λ_{j₀}⌋ ≤ N − 3 for the first fractional index j₀. All-integer spectra
 * only need the integer conditions since no 2×2 block is ever emitted.
 */
Feasibility check_feasibility_real(const SpectrumSpec& spec);

struct Construction {
    TetrisMatrix matrix;
    FusionFrame frame;
};

/// Integer-eigenvalue construction: standard basis rows only. Throws InfeasibleError.
Construction ffcie(const SpectrumSpec& spec);

/**
 * Real-eigenvalue construction. Column j is filled with unit rows e_j while
 * its residual r is ≥ 1; a residual 0 < r < 1 is closed by the 2×2 block
 * √(r/2)·e_j ± √(1−r/2)·e_{j+1}, which moves 2 − r of squared mass into
 * column j+1. Throws InfeasibleError, or InternalOverrun if the carry would
 * drive a residual negative or run past the last column.
 */
Construction ffcre(const SpectrumSpec& spec);

/**
 * ffcre without the two count bounds (λ₁ ≤ N and ⌊λ_{j₀}⌋ ≤ N − 3), which
 * are sufficient for every column to hold at most N nonzeros but not
 * necessary. The support check of assign_subspaces decides instead; a
 * failure there is reported as InfeasibleError.
 */
Construction ffcre_relaxed(const SpectrumSpec& spec);

/// m = 1 case of ffcre returning the N frame vectors (the rows of W).
std::vector<Vector> fcre(const Vector& lambdas, std::size_t num_vectors);

/**
 * Row k (0-based) goes to subspace k mod N, so subspace i holds rows
 * i, i+N, …, i+(m−1)N. Throws ShapeMismatch unless W has N·m rows and
 * OrthogonalityViolation when two rows of one subspace share support.
 */
FusionFrame assign_subspaces(const TetrisMatrix& w, std::size_t num_subspaces, std::size_t subspace_dim,
                             double tol = kOrthoTol);

/// Per-column nonzero counts and initial/terminal flags derived from the row kinds.
std::vector<ColumnProfile> column_profile(const TetrisMatrix& w);

} // namespace fusion
