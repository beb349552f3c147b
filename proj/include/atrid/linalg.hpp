#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "atrid/dense.hpp"
#include "atrid/det_result.hpp"
#include "atrid/factor.hpp"

namespace atrid {

/// Solution of a structured system together with its recomputed residual.
struct SolveResult {
    std::vector<double> x;
    double residual_inf = 0.0;  ///< true |A x - b|_inf, recomputed after the solve
    /// The transformed right-hand side Psi^-1 Theta^-1 b fed to the final
    /// back-substitution; diagnostic only. Entries grow like lambda and may
    /// read +-inf when the factorization runs in extended range.
    std::vector<double> transformed_rhs;
};

/// Theta^-1: lower triangular with column j constant lambda_j.
/// O(n^2) writes, no arithmetic.
DenseMatrix theta_inverse(const Factorization& f);

/// Psi^-1: identity except row n, columns j < n hold +zeta_j. Exact
/// inverse in exact arithmetic (-zeta_j + zeta_j telescopes to zero).
DenseMatrix psi_inverse(const Factorization& f);

/// R^-1, lower triangular. Rows 1..n-1 use the closed form
///   gamma_ij = (-1)^{i+j} prod_{t=j}^{i-1} c_t lambda_t
///              / prod_{t=j}^{i} p_t
/// evaluated as a running ratio down each column; row n comes from forward
/// substitution on R y = e_j collapsed to its last row, and (n,n) = 1/mu_n.
/// Throws SingularError when mu_n = 0.
DenseMatrix r_inverse(const Factorization& f);

/// det(A) = (-1)^{n-1} mu_n prod b_i, accumulated in scaled form so sign
/// and log|det| stay exact when the plain value overflows.
DetResult determinant(const Factorization& f);

/// Same determinant through the factor route det(Theta) * det(R)
/// (det(Psi) = 1): prod(1/lambda_i) * mu_n * prod(p_i). Exists as an
/// internal consistency check against determinant().
DetResult determinant_factored(const Factorization& f);

/// A^-1 = (R^-1)^T * (Psi^-1 Theta^-1) with the right-hand pair fused into
/// one lower-triangular pass; the remaining product is a standard cubic
/// dense multiplication. Dense output: the inverse of a banded-plus-corner
/// matrix is generically full.
DenseMatrix inverse(const Factorization& f);

/// Direct solve: b_bar = Psi^-1 Theta^-1 b via the O(n) recurrences
/// (prefix sums of lambda_j b_j, one zeta correction on the last entry),
/// then back-substitution on the sparse upper triangle R^T. O(n) total and
/// never materializes a factor. Works at any order thanks to the scaled
/// intermediates.
SolveResult solve(const Factorization& f, std::span<const double> rhs);

/// Tall system whose top n x n block is structured and whose remaining
/// rows are zero; this is the shape the rectangular factorization
/// A = Theta Psi_rect R^T produces when Psi_rect carries zero rows below
/// its zeta row.
struct RectangularSystem {
    StructuredMatrix block;
    std::size_t rows;  ///< m >= block.order()

    RectangularSystem(StructuredMatrix b, std::size_t m);
};

DenseMatrix to_dense(const RectangularSystem& sys);

/// Pseudoinverse-style solve x = (R^T)^-1 Psi_rect^-1 Theta^-1 rhs. The
/// zero columns of Psi_rect^-1 beyond column n drop every rhs entry past
/// the block, so the computation reduces to the square solve on the
/// leading n entries; the reported residual covers all m rows. For
/// consistent systems this recovers the exact solution. For inconsistent
/// rhs the result is returned with its true residual; least-squares
/// optimality is NOT guaranteed (the factors are not orthogonal), so
/// compare against normal_eq_lsq when optimality matters.
SolveResult pseudo_solve(const RectangularSystem& sys, std::span<const double> rhs,
                         Growth growth = Growth::checked);

}  // namespace atrid
