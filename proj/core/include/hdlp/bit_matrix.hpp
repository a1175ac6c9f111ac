#ifndef HDLP_BIT_MATRIX_HPP
#define HDLP_BIT_MATRIX_HPP

#include <cstdint>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hdlp {

/// Dense GF(2) matrix with bit-packed rows (row-major, 64-bit words).
/// Parity-check matrices of high-density codes are dense, so no sparse path.
class BitMatrix {
  public:
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    /// Build from rows written as strings of '0'/'1', e.g. {"101", "011"}.
    static BitMatrix from_rows(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = words_[r * words_per_row_ + (c >> 6)];
        const std::uint64_t m = std::uint64_t{1} << (c & 63);
        w = v ? (w | m) : (w & ~m);
    }

    /// row[dst] ^= row[src]
    void xor_rows(std::size_t dst, std::size_t src);
    void swap_rows(std::size_t a, std::size_t b);

    std::size_t row_weight(std::size_t r) const;
    std::vector<std::size_t> row_support(std::size_t r) const;
    bool row_is_zero(std::size_t r) const;
    std::vector<std::uint8_t> row_bits(std::size_t r) const;

    /// Parity of the selected entries: <row r, x> over GF(2).
    bool row_dot(std::size_t r, std::span<const std::uint8_t> x) const;

    bool operator==(const BitMatrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;

    friend struct BitMatrixAccess;
};

/// Gauss-Jordan elimination restricted to a caller-supplied pivot column
/// order. Pivots are taken greedily in that order; columns that are linearly
/// dependent on the pivots found so far are skipped silently (the matrix
/// adaptation preprocessor depends on this). Throws std::invalid_argument on
/// duplicate or out-of-range columns.
BitMatrix row_reduce(const BitMatrix& m, std::span<const std::size_t> pivot_column_order,
                     std::vector<std::pair<std::size_t, std::size_t>>* pivots_out = nullptr);

std::size_t rank(const BitMatrix& m);

/// Basis of the right null space: k = cols - rank vectors of length cols.
std::vector<std::vector<std::uint8_t>> null_space_basis(const BitMatrix& m);

/// Plain-text format: line 1 "rows cols", then one line per row of
/// space-separated 0/1 digits, trailing newline, no comments.
void save_matrix(const BitMatrix& m, std::ostream& out);
BitMatrix load_matrix(std::istream& in);

/// Reader for the alist sparse parity-check interchange format
/// ("n m" header, max degrees, per-column and per-row degrees, then 1-based
/// index lists, zero-padded entries tolerated).
BitMatrix load_alist(std::istream& in);

}  // namespace hdlp

#endif  // HDLP_BIT_MATRIX_HPP
