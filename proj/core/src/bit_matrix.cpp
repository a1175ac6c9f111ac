#include "hdlp/bit_matrix.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hdlp/errors.hpp"

namespace hdlp {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), words_(rows * words_per_row_, 0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("BitMatrix: rows and cols must be >= 1");
    }
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw std::invalid_argument("BitMatrix::from_rows: no rows");
    BitMatrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols()) throw std::invalid_argument("BitMatrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const char ch = rows[r][c];
            if (ch != '0' && ch != '1') throw std::invalid_argument("BitMatrix::from_rows: non-binary digit");
            m.set(r, c, ch == '1');
        }
    }
    return m;
}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
    std::uint64_t* d = words_.data() + dst * words_per_row_;
    const std::uint64_t* s = words_.data() + src * words_per_row_;
    for (std::size_t w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(words_.begin() + a * words_per_row_, words_.begin() + (a + 1) * words_per_row_,
                     words_.begin() + b * words_per_row_);
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
    std::size_t w = 0;
    const std::uint64_t* p = words_.data() + r * words_per_row_;
    for (std::size_t i = 0; i < words_per_row_; ++i) w += std::popcount(p[i]);
    return w;
}

std::vector<std::size_t> BitMatrix::row_support(std::size_t r) const {
    std::vector<std::size_t> s;
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c)) s.push_back(c);
    return s;
}

bool BitMatrix::row_is_zero(std::size_t r) const {
    const std::uint64_t* p = words_.data() + r * words_per_row_;
    for (std::size_t i = 0; i < words_per_row_; ++i)
        if (p[i]) return false;
    return true;
}

std::vector<std::uint8_t> BitMatrix::row_bits(std::size_t r) const {
    std::vector<std::uint8_t> out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c) ? 1 : 0;
    return out;
}

bool BitMatrix::row_dot(std::size_t r, std::span<const std::uint8_t> x) const {
    if (x.size() != cols_) throw LengthMismatch("row_dot: vector length != cols");
    bool parity = false;
    for (std::size_t c = 0; c < cols_; ++c)
        if (get(r, c) && x[c]) parity = !parity;
    return parity;
}

BitMatrix row_reduce(const BitMatrix& m, std::span<const std::size_t> pivot_column_order,
                     std::vector<std::pair<std::size_t, std::size_t>>* pivots_out) {
    std::vector<std::uint8_t> seen(m.cols(), 0);
    for (std::size_t c : pivot_column_order) {
        if (c >= m.cols()) throw std::invalid_argument("row_reduce: column index out of range");
        if (seen[c]) throw std::invalid_argument("row_reduce: duplicate pivot column");
        seen[c] = 1;
    }

    BitMatrix a = m;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    std::size_t next_row = 0;
    for (std::size_t c : pivot_column_order) {
        if (next_row >= a.rows()) break;
        std::size_t pr = next_row;
        while (pr < a.rows() && !a.get(pr, c)) ++pr;
        if (pr == a.rows()) continue;  // dependent column, skip
        a.swap_rows(next_row, pr);
        for (std::size_t r = 0; r < a.rows(); ++r)
            if (r != next_row && a.get(r, c)) a.xor_rows(r, next_row);
        pivots.emplace_back(next_row, c);
        ++next_row;
    }
    if (pivots_out) *pivots_out = std::move(pivots);
    return a;
}

std::size_t rank(const BitMatrix& m) {
    std::vector<std::size_t> order(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) order[c] = c;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    row_reduce(m, order, &pivots);
    return pivots.size();
}

std::vector<std::vector<std::uint8_t>> null_space_basis(const BitMatrix& m) {
    std::vector<std::size_t> order(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) order[c] = c;
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    const BitMatrix red = row_reduce(m, order, &pivots);

    std::vector<std::uint8_t> is_pivot(m.cols(), 0);
    for (auto [r, c] : pivots) is_pivot[c] = 1;

    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint8_t> v(m.cols(), 0);
        v[f] = 1;
        // pivot column value = entry of the free column in the pivot's row
        for (auto [r, c] : pivots) v[c] = red.get(r, f) ? 1 : 0;
        basis.push_back(std::move(v));
    }
    return basis;
}

void save_matrix(const BitMatrix& m, std::ostream& out) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out << ' ';
            out << (m.get(r, c) ? '1' : '0');
        }
        out << '\n';
    }
}

BitMatrix load_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols) || rows == 0 || cols == 0) {
        throw IoError("load_matrix: bad header");
    }
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            int v = -1;
            if (!(in >> v) || (v != 0 && v != 1)) throw IoError("load_matrix: bad entry");
            m.set(r, c, v == 1);
        }
    }
    return m;
}

BitMatrix load_alist(std::istream& in) {
    std::size_t n = 0, mrows = 0;
    if (!(in >> n >> mrows) || n == 0 || mrows == 0) throw IoError("load_alist: bad header");
    std::size_t dcol_max = 0, drow_max = 0;
    if (!(in >> dcol_max >> drow_max)) throw IoError("load_alist: bad max degrees");

    std::vector<std::size_t> dcol(n), drow(mrows);
    for (auto& d : dcol)
        if (!(in >> d)) throw IoError("load_alist: bad column degree list");
    for (auto& d : drow)
        if (!(in >> d)) throw IoError("load_alist: bad row degree list");

    std::vector<long> toks;
    long v;
    while (in >> v) toks.push_back(v);

    std::size_t dcol_sum = 0, drow_sum = 0;
    for (auto d : dcol) dcol_sum += d;
    for (auto d : drow) drow_sum += d;

    // fixed-width files pad every list to the max degree with zeros;
    // variable-width files list exactly the degree
    std::size_t col_stride_fixed = dcol_max;
    bool fixed;
    if (toks.size() == n * dcol_max + mrows * drow_max) {
        fixed = true;
    } else if (toks.size() == dcol_sum + drow_sum) {
        fixed = false;
    } else {
        throw IoError("load_alist: entry count matches neither alist variant");
    }

    BitMatrix m(mrows, n);
    std::size_t pos = 0;
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t count = fixed ? col_stride_fixed : dcol[c];
        for (std::size_t t = 0; t < count; ++t) {
            const long idx = toks[pos++];
            if (idx < 0 || static_cast<std::size_t>(idx) > mrows) throw IoError("load_alist: row index out of range");
            if (idx > 0) m.set(static_cast<std::size_t>(idx - 1), c, true);
        }
    }
    // per-row lists are redundant with the column lists; ignore the rest
    return m;
}

}  // namespace hdlp
