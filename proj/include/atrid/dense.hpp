#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace atrid {

/// Row-major dense matrix of doubles. Deliberately minimal: the library's
/// structured paths avoid dense storage wherever possible, and the oracle
/// routines favor clarity over speed.
class DenseMatrix {
public:
    DenseMatrix() = default;

    /// rows x cols matrix filled with `value`.
    DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0);

    /// Build from a nested brace list; all rows must have equal length.
    DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }

    std::span<const double> data() const noexcept { return data_; }
    std::span<double> data() noexcept { return data_; }

    DenseMatrix transposed() const;

    /// Infinity norm: maximum absolute row sum.
    double inf_norm() const noexcept;

    /// Count of entries that are exactly zero / nonzero.
    std::size_t nonzero_count() const noexcept;

    bool same_shape(const DenseMatrix& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) noexcept;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// C = A * B with the standard cubic triple loop. Throws ShapeError on
/// nonconforming operands. Flop-counted when a counting region is active.
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);

/// y = A * x.
std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

/// max_i |a_i - b_i|.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// Plain text dump: "rows cols" header line, then one row per line with
/// shortest round-trip formatting. Readable back by read_dense().
void write_dense(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_dense(std::istream& is);

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double v);

}  // namespace atrid
