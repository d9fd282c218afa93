#include "fusion/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fusion/error.hpp"

namespace fusion {

namespace {

constexpr int kMaxSweeps = 100;

void require_symmetric(const Matrix& a, double tol, const char* who) {
    if (a.rows() != a.cols()) throw Error(ErrorCode::ShapeMismatch, std::string(who) + ": matrix not square");
    const double r = symmetry_residual(a);
    if (r > tol * std::max(1.0, a.max_abs())) {
        throw Error(ErrorCode::NotSymmetric, std::string(who) + ": symmetry residual " + std::to_string(r));
    }
}

double off_diagonal_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return s;
}

double frobenius_sq(const Matrix& a) {
    double s = 0.0;
    for (double v : a.entries()) s += v * v;
    return s;
}

// Annihilates a(p,q) with a plane rotation applied on both sides.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();

    const double app = a(p, p);
    const double aqq = a(q, q);
    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double arp = a(r, p);
        const double arq = a(r, q);
        a(r, p) = a(p, r) = c * arp - s * arq;
        a(r, q) = a(q, r) = s * arp + c * arq;
    }
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = a(q, p) = 0.0;

    for (std::size_t r = 0; r < n; ++r) {
        const double vrp = v(r, p);
        const double vrq = v(r, q);
        v(r, p) = c * vrp - s * vrq;
        v(r, q) = s * vrp + c * vrq;
    }
}

// One reorthogonalized projection of w against the columns in `basis`.
void orthogonalize(Vector& w, const std::vector<Vector>& basis) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
            const double h = dot(b, w);
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= h * b[i];
        }
    }
}

} // namespace

EigenDecomposition sym_eig(const Matrix& input, double tol) {
    require_symmetric(input, tol, "sym_eig");
    const std::size_t n = input.rows();

    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + input(j, i));
    Matrix v = Matrix::identity(n);

    const double scale = frobenius_sq(a);
    const double eps = std::numeric_limits<double>::epsilon();
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        const double off = off_diagonal_sq(a);
        if (off == 0.0 || off <= eps * eps * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a(p, q) != 0.0) rotate(a, v, p, q);
            }
        }
    }
    if (!converged) {
        const double off = off_diagonal_sq(a);
        if (!(off == 0.0 || off <= eps * eps * scale)) {
            throw Error(ErrorCode::NoConvergence, "sym_eig: Jacobi sweep cap reached");
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.values[k] = a(order[k], order[k]);
    out.vectors = v.select_columns(order);
    return out;
}

Vector sym_eigenvalues(const Matrix& a, double tol) { return sym_eig(a, tol).values; }

Matrix orthonormal_completion(const Matrix& q, double tol) {
    const std::size_t l = q.rows();
    const std::size_t m = q.cols();
    if (m > l) throw Error(ErrorCode::NotOrthonormal, "orthonormal_completion: more columns than rows");
    const double r = orthonormality_residual(q);
    if (r > tol) {
        throw Error(ErrorCode::NotOrthonormal, "orthonormal_completion: input residual " + std::to_string(r));
    }

    std::vector<Vector> basis;
    basis.reserve(l);
    for (std::size_t c = 0; c < m; ++c) basis.push_back(q.column(c));

    std::vector<Vector> added;
    for (std::size_t step = m; step < l; ++step) {
        // Residual of e_c after projection: 1 − Σ_b b[c]².
        std::size_t best = 0;
        double best_residual = -1.0;
        for (std::size_t c = 0; c < l; ++c) {
            double captured = 0.0;
            for (const auto& b : basis) captured += b[c] * b[c];
            const double residual = 1.0 - captured;
            if (residual > best_residual) {
                best_residual = residual;
                best = c;
            }
        }
        Vector w(l, 0.0);
        w[best] = 1.0;
        orthogonalize(w, basis);
        const double nrm = norm2(w);
        for (double& x : w) x /= nrm;
        basis.push_back(w);
        added.push_back(std::move(w));
    }
    return Matrix::from_columns(l, added);
}

Matrix gram_schmidt(const std::vector<Vector>& vectors, std::size_t dim, double tol) {
    std::vector<Vector> basis;
    for (const auto& v : vectors) {
        if (v.size() != dim) throw Error(ErrorCode::ShapeMismatch, "gram_schmidt: vector length mismatch");
        Vector w = v;
        orthogonalize(w, basis);
        const double nrm = norm2(w);
        if (nrm <= tol) continue;
        for (double& x : w) x /= nrm;
        basis.push_back(std::move(w));
    }
    return Matrix::from_columns(dim, basis);
}

SpdFactor::SpdFactor(const Matrix& s, double tol) {
    require_symmetric(s, tol, "solve_spd");
    const auto values = sym_eigenvalues(s, tol);
    smallest_eigenvalue_ = values.empty() ? 0.0 : values.back();
    if (values.empty() || smallest_eigenvalue_ <= tol) {
        throw Error(ErrorCode::SingularOperator,
                    "operator is not positive definite (smallest eigenvalue " + std::to_string(smallest_eigenvalue_) + ")");
    }

    const std::size_t n = s.rows();
    lower_ = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= lower_(j, k) * lower_(j, k);
        if (d <= 0.0) throw Error(ErrorCode::SingularOperator, "Cholesky pivot is not positive");
        const double ljj = std::sqrt(d);
        lower_(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double x = 0.5 * (s(i, j) + s(j, i));
            for (std::size_t k = 0; k < j; ++k) x -= lower_(i, k) * lower_(j, k);
            lower_(i, j) = x / ljj;
        }
    }
}

Vector SpdFactor::solve(std::span<const double> b) const {
    const std::size_t n = lower_.rows();
    if (b.size() != n) throw Error(ErrorCode::DimensionMismatch, "solve_spd: right-hand side length mismatch");
    Vector y(b.begin(), b.end());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) y[i] -= lower_(i, k) * y[k];
        y[i] /= lower_(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) y[i] -= lower_(k, i) * y[k];
        y[i] /= lower_(i, i);
    }
    return y;
}

Vector solve_spd(const Matrix& s, std::span<const double> b, double tol) { return SpdFactor(s, tol).solve(b); }

double trace_product(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.cols() || a.cols() != b.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "trace_product: A is " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + ", B is " + std::to_string(b.rows()) +
                                                  "x" + std::to_string(b.cols()));
    }
    double t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
    return t;
}

} // namespace fusion
