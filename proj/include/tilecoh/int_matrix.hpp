#ifndef TILECOH_INT_MATRIX_HPP
#define TILECOH_INT_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace tilecoh {

using Int = mpz_class;
using Rat = mpq_class;

/// Thrown when an internal consistency check fails (a bug, not bad input).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Dense arbitrary-precision integer matrix, row-major.
/// Matrices with zero rows or zero columns are legal and denote zero maps.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const = default;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator*(const Int& c) const;

    std::vector<Int> operator*(const std::vector<Int>& v) const;

    IntMatrix transpose() const;
    IntMatrix pow(std::size_t k) const;   // square only
    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    IntMatrix column(std::size_t j) const;
    std::vector<Int> column_vec(std::size_t j) const;
    void set_column(std::size_t j, const std::vector<Int>& v);

    /// Horizontal concatenation [this | o]; row counts must match.
    IntMatrix hcat(const IntMatrix& o) const;

    /// Submatrix keeping the given rows/columns, in the given order.
    IntMatrix select(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[a] += c * row[b]
    void add_row(std::size_t a, std::size_t b, const Int& c);
    /// col[a] += c * col[b]
    void add_col(std::size_t a, std::size_t b, const Int& c);
    void negate_row(std::size_t a);
    void negate_col(std::size_t a);

    std::string to_string() const;

private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

}  // namespace tilecoh

#endif
