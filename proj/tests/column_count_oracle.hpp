// Independent column-count oracle: predicts the number of nonzero entries per
// column of a spectral tetris matrix from the spectrum alone, using prefix sums.
#pragma once

#include <cmath>
#include <vector>

#include "fusion/matrix.hpp"

namespace fusion::testing {

struct PredictedColumn {
    std::size_t count = 0;
    bool initial = false;  // a 2x2 block starts in this column
    bool terminal = false; // a 2x2 block ends in this column
};

inline bool near_integer(double x, double tol = 1e-9) { return std::abs(x - std::round(x)) <= tol; }

inline double fractional(double x, double tol = 1e-9) {
    if (near_integer(x, tol)) return 0.0;
    return x - std::floor(x);
}

inline std::size_t snapped_floor(double x, double tol = 1e-9) {
    return static_cast<std::size_t>(near_integer(x, tol) ? std::round(x) : std::floor(x));
}

inline std::vector<PredictedColumn> predict_columns(const Vector& lambdas) {
    std::vector<PredictedColumn> out(lambdas.size());
    double before = 0.0;
    for (std::size_t j = 0; j < lambdas.size(); ++j) {
        const double through = before + lambdas[j];
        PredictedColumn& p = out[j];
        p.initial = !near_integer(through);
        p.terminal = !near_integer(before);
        const std::size_t fl = snapped_floor(lambdas[j]);
        if (!p.initial && !p.terminal) {
            p.count = fl;
        } else if (p.terminal && !p.initial) {
            p.count = fl + 1;
        } else if (p.initial && !p.terminal) {
            p.count = fl + 2;
        } else {
            p.count = fractional(through) >= fractional(before) ? fl + 2 : fl + 3;
        }
        before = through;
    }
    return out;
}

inline std::vector<std::size_t> count_nonzeros(const Matrix& w, double tol = 1e-14) {
    std::vector<std::size_t> out(w.cols(), 0);
    for (std::size_t r = 0; r < w.rows(); ++r)
        for (std::size_t c = 0; c < w.cols(); ++c)
            if (std::abs(w(r, c)) > tol) ++out[c];
    return out;
}

} // namespace fusion::testing
