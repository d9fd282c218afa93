#include "fusion/spectral_tetris.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fusion/error.hpp"

namespace fusion {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) <= kIntegerSnapTol; }

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Conditions shared by both checks. Returns false when the remaining checks
// cannot be evaluated meaningfully.
bool check_common(const SpectrumSpec& spec, Feasibility& out) {
    if (spec.lambdas.empty()) {
        out.violations.push_back({Condition::EmptySpectrum, "spectrum is empty"});
        return false;
    }
    if (spec.num_subspaces == 0 || spec.subspace_dim == 0) {
        out.violations.push_back({Condition::BadCounts, "N and m must be positive"});
        return false;
    }
    for (std::size_t j = 0; j < spec.lambdas.size(); ++j) {
        if (!(spec.lambdas[j] > 0.0) || !std::isfinite(spec.lambdas[j])) {
            out.violations.push_back(
                {Condition::NotPositive, "lambda_" + std::to_string(j + 1) + " = " + num(spec.lambdas[j]) + " is not positive"});
        }
        if (j > 0 && spec.lambdas[j] > spec.lambdas[j - 1]) {
            out.violations.push_back({Condition::NotDescending, "lambdas not descending at index " + std::to_string(j + 1)});
        }
    }
    double sum = 0.0;
    for (double l : spec.lambdas) sum += l;
    const double target = static_cast<double>(spec.num_subspaces * spec.subspace_dim);
    if (std::abs(sum - target) > kFactorizationTol) {
        out.violations.push_back({Condition::Factorization,
                                  "(Fac) fails: sum of lambdas " + num(sum) + " != N*m = " + num(target)});
    }
    const double n = static_cast<double>(spec.num_subspaces);
    const double top = *std::max_element(spec.lambdas.begin(), spec.lambdas.end());
    if (top > n + kIntegerSnapTol) {
        out.violations.push_back({Condition::ExceedsCount, "N >= lambda_1 fails: lambda_1 = " + num(top) +
                                                               " > N = " + std::to_string(spec.num_subspaces)});
    }
    return true;
}

struct Emission {
    std::vector<Vector> rows;
    std::vector<RowKind> kinds;
};

Emission emit_rows(const Vector& lambdas) {
    const std::size_t m = lambdas.size();
    Vector residual = lambdas;
    Emission out;

    auto unit = [m](std::size_t j) {
        Vector e(m, 0.0);
        e[j] = 1.0;
        return e;
    };

    for (std::size_t j = 0; j < m; ++j) {
        for (;;) {
            double& r = residual[j];
            if (near_integer(r)) r = std::round(r);
            if (r <= kIntegerSnapTol) break;
            if (r >= 1.0) {
                out.rows.push_back(unit(j));
                out.kinds.push_back(RowKind::Singleton);
                r -= 1.0;
                continue;
            }
            // 0 < r < 1: close column j with a 2×2 block spilling into column j+1.
            if (j + 1 == m) {
                throw Error(ErrorCode::InternalOverrun,
                            "fractional residual " + num(r) + " left in the last column (would need e_{M+1})");
            }
            const double carry = 2.0 - r;
            if (residual[j + 1] - carry < -kIntegerSnapTol) {
                throw Error(ErrorCode::InternalOverrun, "carry " + num(carry) + " exceeds residual " +
                                                            num(residual[j + 1]) + " of column " + std::to_string(j + 2));
            }
            const double a = std::sqrt(r / 2.0);
            const double b = std::sqrt(1.0 - r / 2.0);
            Vector upper(m, 0.0);
            Vector lower(m, 0.0);
            upper[j] = a;
            upper[j + 1] = b;
            lower[j] = a;
            lower[j + 1] = -b;
            out.rows.push_back(std::move(upper));
            out.kinds.push_back(RowKind::BlockUpper);
            out.rows.push_back(std::move(lower));
            out.kinds.push_back(RowKind::BlockLower);
            residual[j + 1] -= carry;
            r = 0.0;
            break;
        }
    }
    return out;
}

Construction build(const SpectrumSpec& spec) {
    Emission e = emit_rows(spec.lambdas);
    const std::size_t expected = spec.num_subspaces * spec.subspace_dim;
    if (e.rows.size() != expected) {
        throw Error(ErrorCode::InternalOverrun, "emitted " + std::to_string(e.rows.size()) + " rows, expected N*m = " +
                                                    std::to_string(expected));
    }
    TetrisMatrix w;
    w.rows = Matrix(e.rows.size(), spec.ambient_dim());
    for (std::size_t k = 0; k < e.rows.size(); ++k) std::copy(e.rows[k].begin(), e.rows[k].end(), w.rows.row(k).begin());
    w.row_kinds = std::move(e.kinds);
    w.profile = column_profile(w);
    FusionFrame frame = assign_subspaces(w, spec.num_subspaces, spec.subspace_dim);
    return {std::move(w), std::move(frame)};
}

} // namespace

bool Feasibility::has(Condition c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.condition == c; });
}

std::vector<std::string> Feasibility::messages() const {
    std::vector<std::string> out;
    out.reserve(violations.size());
    for (const auto& v : violations) out.push_back(v.message);
    return out;
}

Feasibility check_feasibility_integer(const SpectrumSpec& spec) {
    Feasibility out;
    if (!check_common(spec, out)) return out;
    for (std::size_t j = 0; j < spec.lambdas.size(); ++j) {
        if (!near_integer(spec.lambdas[j])) {
            out.violations.push_back(
                {Condition::NotInteger, "lambda_" + std::to_string(j + 1) + " = " + num(spec.lambdas[j]) + " is not an integer"});
        }
    }
    return out;
}

Feasibility check_feasibility_real(const SpectrumSpec& spec) {
    Feasibility out;
    if (!check_common(spec, out)) return out;
    const auto first_fraction =
        std::find_if(spec.lambdas.begin(), spec.lambdas.end(), [](double l) { return !near_integer(l); });
    if (first_fraction == spec.lambdas.end()) return out;

    const double smallest = spec.lambdas.back();
    if (smallest < 2.0 - kIntegerSnapTol) {
        out.violations.push_back({Condition::SmallestBelowTwo, "lambda_M >= 2 fails: lambda_M = " + num(smallest)});
    }
    const long floor_j0 = static_cast<long>(std::floor(*first_fraction));
    const long bound = static_cast<long>(spec.num_subspaces) - 3;
    if (floor_j0 > bound) {
        const auto j0 = static_cast<std::size_t>(first_fraction - spec.lambdas.begin()) + 1;
        out.violations.push_back({Condition::FirstFractionTooLarge,
                                  "floor(lambda_" + std::to_string(j0) + ") = " + std::to_string(floor_j0) +
                                      " exceeds N - 3 = " + std::to_string(bound)});
    }
    return out;
}

Construction ffcie(const SpectrumSpec& spec) {
    const auto feas = check_feasibility_integer(spec);
    if (!feas.ok()) throw InfeasibleError("spectrum is infeasible for the integer construction", feas.messages());
    return build(spec);
}

Construction ffcre(const SpectrumSpec& spec) {
    const auto feas = check_feasibility_real(spec);
    if (!feas.ok()) throw InfeasibleError("spectrum is infeasible for the real construction", feas.messages());
    return build(spec);
}

Construction ffcre_relaxed(const SpectrumSpec& spec) {
    auto feas = check_feasibility_real(spec);
    std::erase_if(feas.violations, [](const Violation& v) {
        return v.condition == Condition::ExceedsCount || v.condition == Condition::FirstFractionTooLarge;
    });
    if (!feas.ok()) throw InfeasibleError("spectrum is infeasible for the real construction", feas.messages());
    try {
        return build(spec);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::OrthogonalityViolation) throw;
        throw InfeasibleError("spectrum is infeasible for the real construction", {e.what()});
    }
}

std::vector<Vector> fcre(const Vector& lambdas, std::size_t num_vectors) {
    const SpectrumSpec spec{lambdas, num_vectors, 1};
    const auto feas = check_feasibility_real(spec);
    if (!feas.ok()) throw InfeasibleError("spectrum is infeasible for the frame construction", feas.messages());
    const Emission e = emit_rows(lambdas);
    if (e.rows.size() != num_vectors) {
        throw Error(ErrorCode::InternalOverrun, "emitted " + std::to_string(e.rows.size()) + " vectors, expected " +
                                                    std::to_string(num_vectors));
    }
    return e.rows;
}

FusionFrame assign_subspaces(const TetrisMatrix& w, std::size_t num_subspaces, std::size_t subspace_dim, double tol) {
    const Matrix& rows = w.rows;
    if (num_subspaces == 0 || subspace_dim == 0 || rows.rows() != num_subspaces * subspace_dim) {
        throw Error(ErrorCode::ShapeMismatch, "W has " + std::to_string(rows.rows()) + " rows, expected N*m = " +
                                                  std::to_string(num_subspaces * subspace_dim));
    }
    const std::size_t ambient = rows.cols();
    std::vector<WeightedSubspace> members;
    members.reserve(num_subspaces);
    for (std::size_t i = 0; i < num_subspaces; ++i) {
        Matrix basis(ambient, subspace_dim);
        for (std::size_t k = 0; k < subspace_dim; ++k) {
            const std::size_t a = i + k * num_subspaces;
            for (std::size_t prev = 0; prev < k; ++prev) {
                const std::size_t b = i + prev * num_subspaces;
                for (std::size_t c = 0; c < ambient; ++c) {
                    if (std::abs(rows(a, c)) > tol && std::abs(rows(b, c)) > tol) {
                        throw Error(ErrorCode::OrthogonalityViolation,
                                    "rows " + std::to_string(b + 1) + " and " + std::to_string(a + 1) +
                                        " of subspace " + std::to_string(i + 1) + " share column " + std::to_string(c + 1));
                    }
                }
            }
            basis.set_column(k, rows.row(a));
        }
        members.emplace_back(Subspace(std::move(basis)), 1.0);
    }
    return FusionFrame(ambient, std::move(members));
}

std::vector<ColumnProfile> column_profile(const TetrisMatrix& w) {
    std::vector<ColumnProfile> profile(w.rows.cols());
    for (std::size_t k = 0; k < w.rows.rows(); ++k) {
        const auto row = w.rows.row(k);
        const auto first = static_cast<std::size_t>(
            std::find_if(row.begin(), row.end(), [](double v) { return v != 0.0; }) - row.begin());
        if (first == row.size()) continue;
        const RowKind kind = k < w.row_kinds.size() ? w.row_kinds[k] : RowKind::Singleton;
        profile[first].nonzeros += 1;
        if (kind != RowKind::Singleton && first + 1 < row.size()) {
            profile[first].has_initial = true;
            profile[first + 1].nonzeros += 1;
            profile[first + 1].has_terminal = true;
        }
    }
    return profile;
}

} // namespace fusion
