#include "casq/bit_matrix.hpp"

#include <stdexcept>

namespace casq {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), data_(rows * stride_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    auto& w = data_[r * stride_ + (c >> 6)];
    if (v)
        w |= std::uint64_t(1) << (c & 63);
    else
        w &= ~(std::uint64_t(1) << (c & 63));
}

void BitMatrix::add_row(std::size_t target, std::size_t source) {
    auto* t = &data_[target * stride_];
    const auto* s = &data_[source * stride_];
    for (std::size_t i = 0; i < stride_; ++i)
        t[i] ^= s[i];
}

bool BitMatrix::row_empty(std::size_t r) const {
    for (std::size_t i = 0; i < stride_; ++i)
        if (data_[r * stride_ + i])
            return false;
    return true;
}

bool BitMatrix::is_identity() const {
    if (rows_ != cols_)
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c) != (r == c))
                return false;
    return true;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("BitMatrix: shape mismatch");
    BitMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k)
            if (get(i, k))
                for (std::size_t j = 0; j < r.stride_; ++j)
                    r.data_[i * r.stride_ + j] ^= o.data_[k * o.stride_ + j];
    return r;
}

bool BitMatrix::operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string BitMatrix::str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            s += get(r, c) ? '1' : '0';
        s += '\n';
    }
    return s;
}

GaussResult gauss(BitMatrix m) {
    std::vector<RowOp> ops;
    auto add = [&](std::size_t t, std::size_t s) {
        m.add_row(t, s);
        ops.push_back({t, s});
    };
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        std::size_t r = pivot_row;
        while (r < m.rows() && !m.get(r, c))
            ++r;
        if (r == m.rows())
            continue;
        if (r != pivot_row) {
            // xor-swap keeps additions as the only primitive
            add(pivot_row, r);
            add(r, pivot_row);
            add(pivot_row, r);
        }
        for (std::size_t k = 0; k < m.rows(); ++k)
            if (k != pivot_row && m.get(k, c))
                add(k, pivot_row);
        ++pivot_row;
    }
    return {std::move(m), std::move(ops)};
}

BitMatrix gf2_inverse(const BitMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("gf2_inverse: non-square");
    auto res = gauss(m);
    if (!res.reduced.is_identity())
        throw std::invalid_argument("gf2_inverse: singular matrix");
    BitMatrix inv = BitMatrix::identity(m.rows());
    for (const auto& op : res.ops)
        inv.add_row(op.target, op.source);
    return inv;
}

} // namespace casq
