#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "atrid/dense.hpp"

namespace atrid {

/// Nonsymmetric tridiagonal matrix with two corner entries:
///
///     | a1  c1          d2 |
///     | b1  a2  c2         |
///     |     b2  ..  ..     |
///     |         ..  ..  c_{n-1} |
///     | d1          b_{n-1}  a_n |
///
/// Storage is the five defining sequences; order n >= 1. Corners require
/// n >= 3: at n <= 2 the corner positions coincide with band positions and
/// the ambiguity is rejected rather than resolved by summing.
///
/// Values are immutable after construction; instances are safe to share
/// across threads.
class StructuredMatrix {
public:
    /// Validates sequence lengths and the corner/order rule; throws
    /// StructureError on violation. b entries may be zero here — only
    /// factorization requires them nonzero.
    StructuredMatrix(std::size_t n, std::vector<double> diag, std::vector<double> sub,
                     std::vector<double> super, double d1 = 0.0, double d2 = 0.0);

    std::size_t order() const noexcept { return n_; }
    std::span<const double> diag() const noexcept { return a_; }
    std::span<const double> sub() const noexcept { return b_; }
    std::span<const double> super() const noexcept { return c_; }
    double corner_sw() const noexcept { return d1_; }  ///< entry (n, 1)
    double corner_ne() const noexcept { return d2_; }  ///< entry (1, n)

    /// Absolute off-diagonal sum of row i (0-based), corners included.
    double row_offdiag_sum(std::size_t i) const noexcept;

    /// y = A * x in O(n).
    std::vector<double> apply(std::span<const double> x) const;

    double inf_norm() const noexcept;

    friend bool operator==(const StructuredMatrix& x, const StructuredMatrix& y) noexcept;

private:
    std::size_t n_;
    std::vector<double> a_;
    std::vector<double> b_;
    std::vector<double> c_;
    double d1_;
    double d2_;
};

/// Row-wise diagonal dominance report. Advisory: dominance guarantees the
/// factorization pivots stay nonzero, but its absence does not doom them.
struct DominanceReport {
    bool is_dominant = false;
    std::size_t worst_row = 0;  ///< 1-based row attaining the margin
    double margin = 0.0;        ///< min over rows of |a_i| - offdiag sum
};

DominanceReport validate(const StructuredMatrix& m);

DenseMatrix to_dense(const StructuredMatrix& m);

/// Which corner entries a generated matrix carries.
struct CornerFlags {
    bool sw = false;  ///< d1 at (n, 1)
    bool ne = false;  ///< d2 at (1, n)
};

/// Random matrix with guaranteed row dominance margin: off-diagonals are
/// uniform on [-1, 1] (|b_i| floored at 0.1 so the factorization
/// precondition b_i != 0 holds robustly), diagonal signs are random, and
/// |a_i| is set to the row off-diagonal sum plus `margin`. Deterministic
/// for a fixed seed.
StructuredMatrix random_dominant(std::size_t n, double margin, CornerFlags corners,
                                 std::uint64_t seed);

/// Five-line text format:
///
///     line 1: n
///     line 2: a_1 ... a_n
///     line 3: b_1 ... b_{n-1}   (empty line when n = 1)
///     line 4: c_1 ... c_{n-1}   (empty line when n = 1)
///     line 5: d1 d2
///
/// Shortest round-trip decimal formatting; read(write(m)) == m bit-exactly
/// for all finite entries including negative zero.
std::string write_matrix(const StructuredMatrix& m);
StructuredMatrix read_matrix(const std::string& text);
StructuredMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const StructuredMatrix& m);

/// Whitespace-separated vector of doubles (any line layout).
std::vector<double> read_vector(const std::string& text);
std::vector<double> read_vector_file(const std::string& path);

}  // namespace atrid
