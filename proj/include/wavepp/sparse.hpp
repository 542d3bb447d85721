#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wavepp/kernels.hpp"

namespace wavepp {

struct Triplet {
    std::int32_t row;
    std::int32_t col;
    double value;
};

/// Compressed sparse row matrix with sorted column indices per row.
class CsrMatrix {
public:
    CsrMatrix() = default;

    /// Builds the structure from per-row column sets; values start at zero.
    static CsrMatrix from_pattern(std::int32_t rows, std::int32_t cols,
                                  const std::vector<std::vector<std::int32_t>>& row_cols);
    /// Duplicates are summed in input order.
    static CsrMatrix from_triplets(std::int32_t rows, std::int32_t cols, std::vector<Triplet> entries);
    static CsrMatrix identity(std::int32_t n);

    [[nodiscard]] std::int32_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::int32_t cols() const noexcept { return cols_; }
    [[nodiscard]] std::size_t nnz() const noexcept { return val_.size(); }
    [[nodiscard]] std::span<const std::int32_t> row_ptr() const noexcept { return row_ptr_; }
    [[nodiscard]] std::span<const std::int32_t> col() const noexcept { return col_; }
    [[nodiscard]] std::span<const double> val() const noexcept { return val_; }
    [[nodiscard]] std::span<double> val() noexcept { return val_; }
    [[nodiscard]] kernels::CsrView view() const noexcept { return {rows_, row_ptr_, col_, val_}; }

    /// Index into val() of entry (i, j), or -1 when outside the pattern.
    [[nodiscard]] std::int64_t find(std::int32_t i, std::int32_t j) const noexcept;
    [[nodiscard]] double at(std::int32_t i, std::int32_t j) const noexcept;
    /// Adds v to an existing pattern entry; throws if (i, j) is not in the pattern.
    void add(std::int32_t i, std::int32_t j, double v);

    /// y <- A x
    void multiply(std::span<const double> x, std::span<double> y) const;
    [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

    [[nodiscard]] CsrMatrix transpose() const;
    /// True when A(i,j) == A(j,i) bitwise for all stored entries.
    [[nodiscard]] bool is_symmetric() const;

private:
    std::int32_t rows_ = 0;
    std::int32_t cols_ = 0;
    std::vector<std::int32_t> row_ptr_{0};
    std::vector<std::int32_t> col_;
    std::vector<double> val_;
};

}  // namespace wavepp
