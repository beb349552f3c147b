#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "atrid/dense.hpp"
#include "atrid/scaled.hpp"
#include "atrid/structured.hpp"

namespace atrid {

/// Which of the three factors of A = Theta * Psi * R^T to materialize.
enum class Factor { theta, psi, r };

/// Whether factorize() must keep every intermediate representable as a
/// plain double. `checked` throws OverflowError as soon as a lambda (or a
/// quantity derived from it) leaves double range; `extended` keeps
/// everything in scaled significand/exponent form so the solve and
/// determinant paths work at orders where |lambda_n| dwarfs DBL_MAX.
enum class Growth { checked, extended };

/// The three-factor decomposition A = Theta * Psi * R^T of a structured
/// matrix, held as the defining sequences rather than materialized
/// matrices:
///
///   lambda_1..lambda_n   lambda_1 = 1, lambda_{j+1} = -(a_j lambda_j +
///                        c_{j-1} lambda_{j-1}) / b_j  (lambda_0 = 0)
///   pivots p_1..p_{n-1}  p_j = a_j lambda_j + c_{j-1} lambda_{j-1},
///                        all nonzero or the factorization breaks down
///   zeta_1..zeta_{n-1}   zeta_1 = -d1 lambda_n / a_1, then
///                        zeta_j = -c_{j-1} lambda_{j-1} zeta_{j-1} / p_j;
///                        identically zero when d1 = 0
///   mu_n                 bottom-right entry of R; zero iff A is singular
///
/// Note zeta_1 consumes lambda_n, so the lambda recursion completes before
/// the zeta recursion starts.
///
/// Total arithmetic is O(n). Instances are immutable; concurrent use needs
/// no locking.
class Factorization {
public:
    const StructuredMatrix& source() const noexcept { return src_; }
    std::size_t order() const noexcept { return src_.order(); }

    /// Plain-double views. Entries may be +-inf/0 under Growth::extended;
    /// under Growth::checked they are guaranteed finite and normal-range.
    std::span<const double> lambda() const noexcept { return lambda_d_; }
    std::span<const double> zeta() const noexcept { return zeta_d_; }
    std::span<const double> pivots() const noexcept { return pivot_d_; }
    /// Cached products c_j * lambda_j (the R subdiagonal), reused by the
    /// zeta recursion, mu, and the solve back-substitution.
    std::span<const double> c_lambda() const noexcept { return cl_d_; }
    double mu() const noexcept { return mu_d_; }

    /// Exact scaled forms, valid at any order.
    std::span<const Scaled> lambda_scaled() const noexcept { return lambda_; }
    std::span<const Scaled> zeta_scaled() const noexcept { return zeta_; }
    std::span<const Scaled> pivots_scaled() const noexcept { return pivot_; }
    std::span<const Scaled> c_lambda_scaled() const noexcept { return cl_; }
    Scaled mu_scaled() const noexcept { return mu_; }

    /// True when every plain-double view is faithful.
    bool plain_ok() const noexcept { return plain_ok_; }

    /// Throws OverflowError unless plain_ok(); used by the dense paths.
    void require_plain() const;

private:
    friend Factorization factorize(const StructuredMatrix&, Growth);

    explicit Factorization(StructuredMatrix m) : src_(std::move(m)) {}

    StructuredMatrix src_;
    std::vector<Scaled> lambda_, pivot_, zeta_, cl_;
    Scaled mu_;
    std::vector<double> lambda_d_, pivot_d_, zeta_d_, cl_d_;
    double mu_d_ = 0.0;
    bool plain_ok_ = false;
    std::size_t first_overflow_ = 0;  // 1-based lambda index, 0 if none
};

/// Runs the three recursions and bundles the result. Throws
/// BreakdownError(j) on b_j = 0 or a vanished pivot p_j, SingularError if
/// a_1 = 0 while d1 != 0, and (checked mode) OverflowError(j) at the first
/// index whose lambda leaves double range. mu_n = 0 is not an error here;
/// downstream operations decide.
Factorization factorize(const StructuredMatrix& m, Growth growth = Growth::checked);

/// The lambda sequence alone, as plain doubles.
std::vector<double> compute_lambda(const StructuredMatrix& m);

/// The zeta sequence for a completed lambda sequence.
std::vector<double> compute_zeta(const StructuredMatrix& m, std::span<const double> lambda);

/// mu_n = a_n lambda_n + (1 + zeta_{n-1}) c_{n-1} lambda_{n-1}
///        + d2 (1 + sum zeta_i);  mu_1 = a_1.
double compute_mu(const StructuredMatrix& m, std::span<const double> lambda,
                  std::span<const double> zeta);

/// Dense form of one factor:
///   Theta: bidiagonal, (j,j) = 1/lambda_j, (j+1,j) = -1/lambda_{j+1}
///   Psi:   identity except row n, columns j < n hold -zeta_j
///   R:     lower triangular, (j,j) = p_j, (j+1,j) = c_j lambda_j,
///          last row [d2 ... d2, d2 + c_{n-1} lambda_{n-1}, mu_n]
DenseMatrix materialize_factor(const Factorization& f, Factor which);

/// Constructive elimination path: applies the row transformations
/// row_{z+1} <- lambda_{z+1} row_{z+1} + row_z for z = 1..n-1, then adds
/// sum_j zeta_j row_j to the last row. The result is (numerically) upper
/// triangular and must match materialize_factor(f, Factor::r) transposed;
/// it serves as an internal cross-check of the closed-form factors.
DenseMatrix eliminate_stepwise(const StructuredMatrix& m);

}  // namespace atrid
