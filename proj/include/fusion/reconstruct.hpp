#pragma once

#include <span>
#include <vector>

#include "fusion/model.hpp"
#include "fusion/numerics.hpp"

namespace fusion {

enum class MeasurementMode {
    Full,    // z_i = v_i·P_i f, length M
    Reduced, // c_i = v_i·U_iᵀ f, length m_i
};

struct Measurements {
    MeasurementMode mode = MeasurementMode::Full;
    std::vector<Vector> values; // one entry per subspace
};

/// Throws DimensionMismatch when f has the wrong length.
Measurements measure(const FusionFrame& ff, std::span<const double> f, MeasurementMode mode);

/// Σ v_i z_i (full) or Σ v_i U_i c_i (reduced), i.e. S·f for exact measurements.
/// For a Parseval frame this already equals f.
Vector synthesize(const FusionFrame& ff, const Measurements& meas);

/// A fusion frame with its operator factored once; reconstruct() is const
/// and may be called concurrently.
class Reconstructor {
public:
    /// Throws SingularOperator when the family is not a fusion frame.
    explicit Reconstructor(FusionFrame ff, double tol = kOrthoTol);

    /// f = S⁻¹ Σ v_i z_i. Throws DimensionMismatch on shape errors.
    Vector reconstruct(const Measurements& meas) const;

    const FusionFrame& frame() const noexcept { return frame_; }

private:
    FusionFrame frame_;
    SpdFactor factor_;
};

Vector reconstruct(const FusionFrame& ff, const Measurements& meas, double tol = kOrthoTol);

} // namespace fusion
