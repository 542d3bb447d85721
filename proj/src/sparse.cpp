#include "wavepp/sparse.hpp"

#include <algorithm>
#include <string>

#include "wavepp/error.hpp"

namespace wavepp {

CsrMatrix CsrMatrix::from_pattern(std::int32_t rows, std::int32_t cols,
                                  const std::vector<std::vector<std::int32_t>>& row_cols) {
    require(static_cast<std::int32_t>(row_cols.size()) == rows, "CsrMatrix: pattern row count mismatch");
    CsrMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
    for (std::int32_t r = 0; r < rows; ++r) {
        std::vector<std::int32_t> c = row_cols[r];
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::int32_t j : c) {
            require(j >= 0 && j < cols, "CsrMatrix: column index out of range");
            m.col_.push_back(j);
        }
        m.row_ptr_[r + 1] = static_cast<std::int32_t>(m.col_.size());
    }
    m.val_.assign(m.col_.size(), 0.0);
    return m;
}

CsrMatrix CsrMatrix::from_triplets(std::int32_t rows, std::int32_t cols, std::vector<Triplet> entries) {
    std::vector<std::vector<std::int32_t>> pattern(static_cast<std::size_t>(rows));
    for (const auto& t : entries) {
        require(t.row >= 0 && t.row < rows, "CsrMatrix: row index out of range");
        pattern[t.row].push_back(t.col);
    }
    CsrMatrix m = from_pattern(rows, cols, pattern);
    for (const auto& t : entries) m.add(t.row, t.col, t.value);
    return m;
}

CsrMatrix CsrMatrix::identity(std::int32_t n) {
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(n));
    for (std::int32_t i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(t));
}

std::int64_t CsrMatrix::find(std::int32_t i, std::int32_t j) const noexcept {
    if (i < 0 || i >= rows_) return -1;
    const auto first = col_.begin() + row_ptr_[i];
    const auto last = col_.begin() + row_ptr_[i + 1];
    const auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return -1;
    return it - col_.begin();
}

double CsrMatrix::at(std::int32_t i, std::int32_t j) const noexcept {
    const auto k = find(i, j);
    return k < 0 ? 0.0 : val_[static_cast<std::size_t>(k)];
}

void CsrMatrix::add(std::int32_t i, std::int32_t j, double v) {
    const auto k = find(i, j);
    if (k < 0) throw Error("CsrMatrix: entry (" + std::to_string(i) + "," + std::to_string(j) + ") not in pattern");
    val_[static_cast<std::size_t>(k)] += v;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    require(static_cast<std::int32_t>(x.size()) == cols_ && static_cast<std::int32_t>(y.size()) == rows_,
            "CsrMatrix::multiply: size mismatch");
    kernels::spmv(view(), x, y);
}

std::vector<double> CsrMatrix::multiply(std::span<const double> x) const {
    std::vector<double> y(static_cast<std::size_t>(rows_));
    multiply(x, y);
    return y;
}

CsrMatrix CsrMatrix::transpose() const {
    std::vector<Triplet> t;
    t.reserve(val_.size());
    for (std::int32_t r = 0; r < rows_; ++r)
        for (std::int32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) t.push_back({col_[k], r, val_[k]});
    return from_triplets(cols_, rows_, std::move(t));
}

bool CsrMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::int32_t r = 0; r < rows_; ++r) {
        for (std::int32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
            const auto kt = find(col_[k], r);
            if (kt < 0 || val_[static_cast<std::size_t>(kt)] != val_[k]) return false;
        }
    }
    return true;
}

}  // namespace wavepp
