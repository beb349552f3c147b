#include "atrid/lowertri.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "atrid/errors.hpp"

namespace atrid::lowertri {

double TauTable::operator()(std::size_t i, std::size_t j) const {
    return upper[i * n + j];
}

double& TauTable::at(std::size_t i, std::size_t j) {
    return upper[i * n + j];
}

DenseMatrix FactorSequence::product() const {
    DenseMatrix p = DenseMatrix::identity(n);
    for (const auto& f : factors) p = multiply(p, f);
    return p;
}

namespace {

void require_lower_triangular(const DenseMatrix& l) {
    if (l.rows() != l.cols()) throw ShapeError("matrix not square");
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = i + 1; j < l.cols(); ++j)
            if (l(i, j) != 0.0) throw ShapeError("matrix not lower triangular");
}

}  // namespace

std::pair<TauTable, FactorSequence> tau_decompose(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw ShapeError("tau_decompose: matrix not square");
    const std::size_t n = a.rows();
    const double threshold = 1e-300 * a.inf_norm();

    // Eliminate A^T without pivoting, tracking the eliminator E so that
    // E * A^T = U; tau_{i,j} = -E(j, i) above the diagonal.
    DenseMatrix u = a.transposed();
    DenseMatrix elim = DenseMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double pivot = u(k, k);
        if (std::fabs(pivot) <= threshold)
            throw BreakdownError(k + 1, "pivot below breakdown threshold");
        for (std::size_t i = k + 1; i < n; ++i) {
            const double m = u(i, k) / pivot;
            u(i, k) = 0.0;
            if (m == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) u(i, j) -= m * u(k, j);
            for (std::size_t j = 0; j <= k; ++j) elim(i, j) -= m * elim(k, j);
        }
    }

    TauTable tau;
    tau.n = n;
    tau.upper.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) tau.at(i, j) = -elim(j, i);

    FactorSequence seq;
    seq.n = n;
    seq.factors.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
        DenseMatrix f = DenseMatrix::identity(n);
        for (std::size_t j = 0; j <= m; ++j) f(m, j) = a(m, j);
        for (std::size_t i = 0; i < m; ++i) f(i, m) = tau(i, m);
        seq.factors.push_back(std::move(f));
    }
    return {std::move(tau), std::move(seq)};
}

FactorSequence lower_factor_sequence(const DenseMatrix& l) {
    require_lower_triangular(l);
    const std::size_t n = l.rows();
    FactorSequence seq;
    seq.n = n;
    seq.factors.reserve(n);
    for (std::size_t m = 0; m < n; ++m) {
        if (l(m, m) == 0.0)
            throw SingularError("zero diagonal at row " + std::to_string(m + 1));
        DenseMatrix f = DenseMatrix::identity(n);
        for (std::size_t j = 0; j <= m; ++j) f(m, j) = l(m, j);
        seq.factors.push_back(std::move(f));
    }
    return seq;
}

DenseMatrix lower_inverse(const DenseMatrix& l) {
    require_lower_triangular(l);
    const std::size_t n = l.rows();
    for (std::size_t m = 0; m < n; ++m)
        if (l(m, m) == 0.0)
            throw SingularError("zero diagonal at row " + std::to_string(m + 1));

    // Accumulate M = F_n^-1 * F_{n-1}^-1 * ... * F_1^-1. Each right-hand
    // operand is the identity apart from row m, so the multiply reduces to
    // a rank-style column update touching columns 1..m only.
    DenseMatrix acc(n, n);
    {
        // Seed with F_n^-1.
        const std::size_t m = n - 1;
        for (std::size_t i = 0; i < n; ++i) acc(i, i) = 1.0;
        const double d = l(m, m);
        for (std::size_t j = 0; j < m; ++j) acc(m, j) = -l(m, j) / d;
        acc(m, m) = 1.0 / d;
    }
    for (std::size_t m = n - 1; m-- > 0;) {
        const double d = l(m, m);
        std::vector<double> row(m + 1);
        for (std::size_t j = 0; j < m; ++j) row[j] = -l(m, j) / d;
        row[m] = 1.0 / d;
        for (std::size_t i = 0; i < n; ++i) {
            const double pivot_col = acc(i, m);
            if (pivot_col == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) acc(i, j) += pivot_col * row[j];
            acc(i, m) = pivot_col * row[m];
        }
    }
    return acc;
}

}  // namespace atrid::lowertri
