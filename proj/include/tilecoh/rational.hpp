#ifndef TILECOH_RATIONAL_HPP
#define TILECOH_RATIONAL_HPP

#include <optional>
#include <vector>

#include "tilecoh/int_matrix.hpp"

namespace tilecoh {

/// Dense exact rational matrix; just enough Gaussian elimination for the
/// solves, ranks and inverses the integer layer needs.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix from_int(const IntMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMatrix operator*(const RatMatrix& o) const;
    std::vector<Rat> operator*(const std::vector<Rat>& v) const;

    std::size_t rank() const;
    RatMatrix inverse() const;

    /// Any solution of (*this) x = target, or nullopt if inconsistent.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& target) const;

    /// Indices of a maximal set of linearly independent columns.
    std::vector<std::size_t> independent_columns() const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

}  // namespace tilecoh

#endif
