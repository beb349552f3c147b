#include "atrid/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "atrid/errors.hpp"
#include "atrid/flops.hpp"

namespace atrid::oracle {

namespace {
constexpr double kPivotFloor = 1e-300;
}

LUResult lu_decompose(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("lu_decompose: matrix not square");
    const std::size_t n = a.rows();
    const double threshold = kPivotFloor * a.inf_norm();

    LUResult f;
    f.lu = a;
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(f.lu(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double mag = std::fabs(f.lu(i, k));
            if (mag > best) {
                best = mag;
                p = i;
            }
        }
        if (best <= threshold)
            throw SingularError("pivot column " + std::to_string(k + 1) + " below threshold");
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.sign = -f.sign;
            ++f.num_swaps;
        }
        const double pivot = f.lu(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = f.lu(i, k) / pivot;
            f.lu(i, k) = m;
            for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
        const auto below = static_cast<std::int64_t>(n - k - 1);
        flops::div(below);
        flops::mul(below * below);
        flops::add(below * below);
    }
    return f;
}

std::vector<double> lu_solve(const LUResult& f, std::span<const double> rhs) {
    const std::size_t n = f.lu.rows();
    if (rhs.size() != n) throw ShapeError("lu_solve: rhs length differs from order");

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];

    // Forward substitution with the unit lower factor; skip the leading
    // zero segment so solving a unit vector costs only its tail.
    std::int64_t madds = 0;
    std::size_t first = n;
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        if (first < n) {
            for (std::size_t j = first; j < i; ++j) s -= f.lu(i, j) * x[j];
            madds += static_cast<std::int64_t>(i - first);
        } else if (s != 0.0) {
            first = i;
        }
        x[i] = s;
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= f.lu(ii, j) * x[j];
        madds += static_cast<std::int64_t>(n - ii - 1);
        x[ii] = s / f.lu(ii, ii);
    }
    flops::mul(madds);
    flops::add(madds);
    flops::div(static_cast<std::int64_t>(n));
    return x;
}

DenseMatrix lu_invert(const LUResult& f) {
    const std::size_t n = f.lu.rows();
    DenseMatrix inv(n, n);
    std::vector<double> e(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j] = 1.0;
        auto col = lu_solve(f, e);
        e[j] = 0.0;
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    return inv;
}

DetResult lu_det(const LUResult& f) {
    const std::size_t n = f.lu.rows();
    DetResult d;
    d.sign = f.sign;
    d.log_abs = 0.0;
    double value = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = f.lu(i, i);
        if (u == 0.0) {
            d.sign = 0;
            d.value = 0.0;
            d.log_abs = -std::numeric_limits<double>::infinity();
            return d;
        }
        if (u < 0.0) d.sign = -d.sign;
        d.log_abs += std::log(std::fabs(u));
        value *= u;
    }
    d.value = std::isfinite(value) ? value
                                   : d.sign * std::numeric_limits<double>::infinity();
    return d;
}

DenseMatrix gj_invert(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("gj_invert: matrix not square");
    const std::size_t n = a.rows();
    const double threshold = kPivotFloor * a.inf_norm();

    DenseMatrix w = a;
    DenseMatrix inv = DenseMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::fabs(w(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double mag = std::fabs(w(i, k));
            if (mag > best) {
                best = mag;
                p = i;
            }
        }
        if (best <= threshold)
            throw SingularError("pivot column " + std::to_string(k + 1) + " below threshold");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(k, j), w(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        const double inv_pivot = 1.0 / w(k, k);
        std::int64_t row_updates = 0;
        for (std::size_t j = 0; j < n; ++j) {
            w(k, j) *= inv_pivot;
            inv(k, j) *= inv_pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const double m = w(i, k);
            if (m == 0.0) continue;
            ++row_updates;
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= m * w(k, j);
                inv(i, j) -= m * inv(k, j);
            }
        }
        flops::div(1);
        flops::mul(static_cast<std::int64_t>(2 * n) + 2 * row_updates * static_cast<std::int64_t>(n));
        flops::add(2 * row_updates * static_cast<std::int64_t>(n));
    }
    return inv;
}

std::pair<DenseMatrix, DenseMatrix> gauss_eliminate_transpose(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("gauss_eliminate_transpose: matrix not square");
    const std::size_t n = a.rows();
    const double threshold = kPivotFloor * a.inf_norm();

    DenseMatrix u = a.transposed();
    DenseMatrix l = DenseMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double pivot = u(k, k);
        if (std::fabs(pivot) <= threshold)
            throw BreakdownError(k + 1, "zero pivot in unpivoted elimination");
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = u(i, k) / pivot;
            u(i, k) = 0.0;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) u(i, j) -= m * u(k, j);
            for (std::size_t j = 0; j <= k; ++j) l(i, j) -= m * l(k, j);
        }
    }
    return {std::move(l), std::move(u)};
}

double relative_error_inf(const DenseMatrix& p, const DenseMatrix& q) {
    if (!p.same_shape(q)) throw ShapeError("relative_error_inf: shapes differ");
    double num = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) s += std::fabs(p(i, j) - q(i, j));
        if (s > num) num = s;
    }
    const double den = q.inf_norm();
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

std::vector<double> normal_eq_lsq(const DenseMatrix& a, std::span<const double> rhs) {
    if (a.rows() != rhs.size()) throw ShapeError("normal_eq_lsq: rhs length differs from rows");
    const std::size_t m = a.rows(), n = a.cols();
    DenseMatrix ata(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < m; ++k) s += a(k, i) * a(k, j);
            ata(i, j) = s;
        }
    std::vector<double> atb(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += a(k, i) * rhs[k];
        atb[i] = s;
    }
    flops::mul(static_cast<std::int64_t>(n * n * m + n * m));
    flops::add(static_cast<std::int64_t>(n * n * m + n * m));
    return lu_solve(lu_decompose(ata), atb);
}

}  // namespace atrid::oracle
