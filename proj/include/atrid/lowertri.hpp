#pragma once

#include <cstddef>
#include <vector>

#include "atrid/dense.hpp"

namespace atrid::lowertri {

/// Decomposition of an n x n matrix into n elementary factors
/// A = F_1 * F_2 * ... * F_n, where factor m is the identity except for
/// row m (which carries the source row's leading entries, columns 1..m)
/// and the strictly-upper part of column m (which carries tau values).
///
/// For lower triangular input all tau vanish and the factors hold the
/// source entries verbatim, which yields a closed-form inverse as the
/// reversed product of trivially invertible factors.

/// Strictly upper triangular table of tau coefficients.
struct TauTable {
    std::size_t n = 0;
    std::vector<double> upper;  ///< packed row-major strict upper entries

    double operator()(std::size_t i, std::size_t j) const;  // 0-based, i < j
    double& at(std::size_t i, std::size_t j);
};

struct FactorSequence {
    std::size_t n = 0;
    std::vector<DenseMatrix> factors;  ///< F_1 ... F_n

    /// Left-to-right product of the factors.
    DenseMatrix product() const;
};

/// Full decomposition of a square matrix. The tau table is computed from
/// unpivoted Gaussian elimination of A^T (the negated strict upper part of
/// L^T); correctness is judged by the reconstruction property
/// product(factors) == A. Throws BreakdownError when elimination hits a
/// pivot below 1e-300 * |A|_inf.
std::pair<TauTable, FactorSequence> tau_decompose(const DenseMatrix& a);

/// Specialization for lower triangular input: factor m is the identity
/// with row m replaced by the source row. Pure data movement, no
/// arithmetic. Throws SingularError(m) on a zero diagonal entry and
/// ShapeError if the input is not lower triangular.
FactorSequence lower_factor_sequence(const DenseMatrix& l);

/// Inverse of a lower triangular matrix as the reversed product of the
/// elementary factor inverses (factor inverse m: identity except row m =
/// [-l_m1/l_mm, ..., -l_m,m-1/l_mm, 1/l_mm]).
DenseMatrix lower_inverse(const DenseMatrix& l);

}  // namespace atrid::lowertri
