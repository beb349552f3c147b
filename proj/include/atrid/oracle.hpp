#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "atrid/dense.hpp"
#include "atrid/det_result.hpp"

namespace atrid::oracle {

/// Ground-truth routines the structured paths are judged against. Nothing
/// in this namespace may call into the factorization or linalg modules;
/// independence is the whole point.

/// Packed LU factors with partial pivoting: P*A = L*U, L unit lower.
struct LUResult {
    DenseMatrix lu;                ///< U on and above the diagonal, L multipliers below
    std::vector<std::size_t> perm; ///< row i of U came from source row perm[i]
    int sign = 1;                  ///< parity of the permutation
    std::size_t num_swaps = 0;
};

/// Throws SingularError when a pivot column is entirely below
/// 1e-300 * |A|_inf.
LUResult lu_decompose(const DenseMatrix& a);

std::vector<double> lu_solve(const LUResult& f, std::span<const double> rhs);

/// Inverse by solving against the n unit vectors.
DenseMatrix lu_invert(const LUResult& f);

DetResult lu_det(const LUResult& f);

/// Gauss-Jordan inverse with partial pivoting.
DenseMatrix gj_invert(const DenseMatrix& a);

/// Unpivoted Gaussian elimination of A^T: returns (L, U) with L*A^T = U and
/// L unit lower triangular. Deliberately unpivoted so its multiplier
/// structure mirrors the tau recursion it validates. Throws BreakdownError
/// when a pivot falls below 1e-300 * |A|_inf.
std::pair<DenseMatrix, DenseMatrix> gauss_eliminate_transpose(const DenseMatrix& a);

/// |P - Q|_inf / |Q|_inf (max absolute row sums). Zero denominator maps to
/// 0 when P == Q and +inf otherwise.
double relative_error_inf(const DenseMatrix& p, const DenseMatrix& q);

/// Least squares via the normal equations: solves A^T A x = A^T rhs.
std::vector<double> normal_eq_lsq(const DenseMatrix& a, std::span<const double> rhs);

}  // namespace atrid::oracle
