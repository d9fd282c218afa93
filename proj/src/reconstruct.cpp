#include "fusion/reconstruct.hpp"

#include <string>

#include "fusion/error.hpp"

namespace fusion {

namespace {

void check_shape(const FusionFrame& ff, const Measurements& meas) {
    if (meas.values.size() != ff.size()) {
        throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(ff.size()) + " measurements, got " +
                                                      std::to_string(meas.values.size()));
    }
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const std::size_t expected =
            meas.mode == MeasurementMode::Full ? ff.ambient_dim() : ff[i].subspace.dim();
        if (meas.values[i].size() != expected) {
            throw Error(ErrorCode::DimensionMismatch, "measurement " + std::to_string(i + 1) + " has length " +
                                                          std::to_string(meas.values[i].size()) + ", expected " +
                                                          std::to_string(expected));
        }
    }
}

} // namespace

Measurements measure(const FusionFrame& ff, std::span<const double> f, MeasurementMode mode) {
    if (f.size() != ff.ambient_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "signal has length " + std::to_string(f.size()) + ", expected " +
                                                      std::to_string(ff.ambient_dim()));
    }
    Measurements out;
    out.mode = mode;
    out.values.reserve(ff.size());
    for (const auto& w : ff.members()) {
        const Matrix& u = w.subspace.basis();
        Vector c = u.transpose() * f;
        for (double& x : c) x *= w.weight;
        out.values.push_back(mode == MeasurementMode::Full ? u * c : std::move(c));
    }
    return out;
}

Vector synthesize(const FusionFrame& ff, const Measurements& meas) {
    check_shape(ff, meas);
    Vector acc(ff.ambient_dim(), 0.0);
    for (std::size_t i = 0; i < ff.size(); ++i) {
        const double v = ff[i].weight;
        const Vector z = meas.mode == MeasurementMode::Full ? meas.values[i] : ff[i].subspace.basis() * meas.values[i];
        for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += v * z[r];
    }
    return acc;
}

Reconstructor::Reconstructor(FusionFrame ff, double tol)
    : frame_(std::move(ff)), factor_(fusion_frame_operator(frame_), tol) {}

Vector Reconstructor::reconstruct(const Measurements& meas) const { return factor_.solve(synthesize(frame_, meas)); }

Vector reconstruct(const FusionFrame& ff, const Measurements& meas, double tol) {
    return Reconstructor(ff, tol).reconstruct(meas);
}

} // namespace fusion
