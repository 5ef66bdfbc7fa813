#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace casq {

/// Dense matrix over GF(2) with word-packed rows. XOR row addition is the
/// only mutating row operation.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
    }
    void set(std::size_t r, std::size_t c, bool v);

    /// row[target] ^= row[source]
    void add_row(std::size_t target, std::size_t source);

    bool row_empty(std::size_t r) const;
    bool is_identity() const;

    BitMatrix operator*(const BitMatrix& o) const;
    bool operator==(const BitMatrix& o) const;
    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    std::string str() const;

  private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> data_;
};

/// A row operation row[target] ^= row[source].
struct RowOp {
    std::size_t target;
    std::size_t source;
    bool operator==(const RowOp&) const = default;
};

struct GaussResult {
    BitMatrix reduced; // identity iff the input was invertible
    std::vector<RowOp> ops;
};

/// Gauss-Jordan elimination by XOR row additions only (swaps are emitted as
/// three additions). Replaying ops on the input yields reduced; replaying
/// the reversed ops as CNOTs (control=source, target=target) synthesizes the
/// linear map of the input.
GaussResult gauss(BitMatrix m);

/// Inverse of an invertible matrix; throws on singular input.
BitMatrix gf2_inverse(const BitMatrix& m);

} // namespace casq
