#include "hdlp/linear_code.hpp"

#include <algorithm>

#include "hdlp/errors.hpp"
#include "hdlp/gf2m.hpp"

namespace hdlp {

LinearCode::LinearCode(BitMatrix h, std::string name, AutGroupHint hint)
    : h_(std::move(h)), name_(std::move(name)), hint_(hint) {
    const std::size_t r = rank(h_);
    if (r > h_.cols()) throw InvalidParameters("LinearCode: rank exceeds length");
    k_ = h_.cols() - r;
    basis_ = null_space_basis(h_);
    if (basis_.size() != k_) throw NumericalFailure("LinearCode: null space dimension mismatch");
}

LinearCode LinearCode::with_matrix(BitMatrix h, std::string name) const {
    if (h.cols() != n()) throw LengthMismatch("with_matrix: column count changed");
    LinearCode c(std::move(h), std::move(name), hint_);
    if (c.k() != k()) throw InvalidParameters("with_matrix: rank changed, different code");
    return c;
}

std::vector<std::vector<std::uint8_t>> enumerate_codewords(const LinearCode& code) {
    if (code.k() > 24) throw DimensionTooLarge("enumerate_codewords: k > 24");
    const auto& basis = code.codeword_basis();
    const std::size_t n = code.n();
    const std::uint64_t total = std::uint64_t{1} << code.k();

    std::vector<std::vector<std::uint8_t>> words;
    words.reserve(total);
    for (std::uint64_t t = 0; t < total; ++t) {
        std::vector<std::uint8_t> w(n, 0);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (!((t >> b) & 1)) continue;
            for (std::size_t i = 0; i < n; ++i) w[i] ^= basis[b][i];
        }
        words.push_back(std::move(w));
    }
    return words;
}

bool is_codeword(const LinearCode& code, std::span<const std::uint8_t> x) {
    if (x.size() != code.n()) throw LengthMismatch("is_codeword: word length != n");
    const BitMatrix& h = code.h();
    for (std::size_t r = 0; r < h.rows(); ++r)
        if (h.row_dot(r, x)) return false;
    return true;
}

std::vector<std::uint8_t> encode_information(const LinearCode& code, std::span<const std::uint8_t> info) {
    if (info.size() != code.k()) throw LengthMismatch("encode_information: info length != k");
    std::vector<std::uint8_t> w(code.n(), 0);
    const auto& basis = code.codeword_basis();
    for (std::size_t b = 0; b < basis.size(); ++b) {
        if (!info[b]) continue;
        for (std::size_t i = 0; i < code.n(); ++i) w[i] ^= basis[b][i];
    }
    return w;
}

LinearCode bch_parity_matrix(unsigned m, unsigned design_distance) {
    if (m < 2 || m > 8) throw InvalidParameters("bch_parity_matrix: m must be in [2,8]");
    if (design_distance < 3 || design_distance % 2 == 0)
        throw InvalidParameters("bch_parity_matrix: design distance must be odd and >= 3");

    const Gf2m field(m);
    const std::uint32_t n = field.order();
    if (design_distance > n) throw InvalidParameters("bch_parity_matrix: design distance exceeds length");

    const Gf2Poly g = bch_generator_poly(field, design_distance);
    const std::size_t deg_g = gf2poly_degree(g);
    if (deg_g >= n) throw InvalidParameters("bch_parity_matrix: degenerate code (k = 0)");
    const std::size_t k = n - deg_g;

    // parity polynomial h = (x^n + 1) / g
    Gf2Poly xn1(n + 1, 0);
    xn1[0] = 1;
    xn1[n] = 1;
    Gf2Poly rem;
    const Gf2Poly h = gf2poly_div(xn1, g, &rem);
    if (gf2poly_degree(rem) != 0 || rem[0] != 0) throw NumericalFailure("bch_parity_matrix: g does not divide x^n+1");
    if (gf2poly_degree(h) != k) throw NumericalFailure("bch_parity_matrix: parity polynomial degree mismatch");

    // row i = reversed h placed at column offset i: entries h_k, ..., h_0
    BitMatrix hm(n - k, n);
    for (std::size_t i = 0; i < n - k; ++i)
        for (std::size_t j = 0; j <= k; ++j) hm.set(i, i + j, h[k - j] != 0);

    std::string name = "bch_" + std::to_string(n) + "_" + std::to_string(k);
    return LinearCode(std::move(hm), std::move(name), AutGroupHint::cyclic);
}

namespace {

LinearCode make_hamming_7_4() {
    // column j (1-based) carries the binary digits of j
    BitMatrix h(3, 7);
    for (std::size_t j = 1; j <= 7; ++j)
        for (std::size_t b = 0; b < 3; ++b)
            if ((j >> b) & 1) h.set(b, j - 1, true);
    return LinearCode(std::move(h), "hamming_7_4");
}

LinearCode make_hamming_8_4_paper() {
    const BitMatrix h = BitMatrix::from_rows({
        "11111111",
        "01010101",
        "00110011",
        "00001111",
    });
    return LinearCode(h, "hamming_8_4_paper", AutGroupHint::ext_hamming_affine);
}

}  // namespace

const std::vector<std::string>& builtin_code_names() {
    static const std::vector<std::string> names = {
        "hamming_7_4", "hamming_8_4_paper", "bch_15_7", "bch_15_11", "bch_31_21", "bch_63_39", "bch_63_36",
    };
    return names;
}

LinearCode builtin_code(const std::string& name) {
    if (name == "hamming_7_4") return make_hamming_7_4();
    if (name == "hamming_8_4_paper") return make_hamming_8_4_paper();
    if (name == "bch_15_7") return bch_parity_matrix(4, 5);
    if (name == "bch_15_11") return bch_parity_matrix(4, 3);
    if (name == "bch_31_21") return bch_parity_matrix(5, 5);
    if (name == "bch_63_39") return bch_parity_matrix(6, 9);
    if (name == "bch_63_36") return bch_parity_matrix(6, 11);
    throw UnknownCode("unknown code: " + name);
}

}  // namespace hdlp
