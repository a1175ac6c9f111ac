#ifndef HDLP_LINEAR_CODE_HPP
#define HDLP_LINEAR_CODE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdlp/bit_matrix.hpp"

namespace hdlp {

/// Hint for picking a default automorphism generator set.
enum class AutGroupHint { none, cyclic, ext_hamming_affine };

/// Binary [n, k] linear block code given by a parity-check matrix.
/// rank(H) = n - k is validated at construction.
class LinearCode {
  public:
    LinearCode(BitMatrix h, std::string name, AutGroupHint hint = AutGroupHint::none);

    std::size_t n() const { return h_.cols(); }
    std::size_t k() const { return k_; }
    const BitMatrix& h() const { return h_; }
    const std::string& name() const { return name_; }
    AutGroupHint aut_hint() const { return hint_; }

    /// Basis of the codeword space (k rows of length n).
    const std::vector<std::vector<std::uint8_t>>& codeword_basis() const { return basis_; }

    /// Same code, different parity-check representation (rank preserved).
    LinearCode with_matrix(BitMatrix h, std::string name) const;

  private:
    BitMatrix h_;
    std::size_t k_;
    std::string name_;
    AutGroupHint hint_;
    std::vector<std::vector<std::uint8_t>> basis_;
};

/// All 2^k codewords, information bits counting up (deterministic order).
/// Throws DimensionTooLarge when k > 24.
std::vector<std::vector<std::uint8_t>> enumerate_codewords(const LinearCode& code);

/// H x == 0 over GF(2). Throws LengthMismatch.
bool is_codeword(const LinearCode& code, std::span<const std::uint8_t> x);

/// Codeword from k information bits against the code's basis.
std::vector<std::uint8_t> encode_information(const LinearCode& code, std::span<const std::uint8_t> info);

/// Primitive BCH code of length n = 2^m - 1 with odd design distance,
/// generator polynomial = product of minimal polynomials of
/// alpha..alpha^(delta-1). H is the (n-k) x n band matrix whose row i is the
/// reversed parity polynomial h(x) = (x^n+1)/g(x) shifted by i columns.
LinearCode bch_parity_matrix(unsigned m, unsigned design_distance);

/// Named built-in codes: hamming_7_4, hamming_8_4_paper, bch_15_7, bch_15_11,
/// bch_31_21, bch_63_39, bch_63_36. Throws UnknownCode.
LinearCode builtin_code(const std::string& name);

const std::vector<std::string>& builtin_code_names();

}  // namespace hdlp

#endif  // HDLP_LINEAR_CODE_HPP
