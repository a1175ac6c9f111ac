#ifndef HDLP_AUTOMORPHISM_HPP
#define HDLP_AUTOMORPHISM_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hdlp/bit_matrix.hpp"
#include "hdlp/linear_code.hpp"
#include "hdlp/rng.hpp"

namespace hdlp {

/// Coordinate permutation on {0..n-1}. The action pushes values forward:
/// apply(v)[pi(i)] = v[i].
class Permutation {
  public:
    explicit Permutation(std::vector<int> mapping);
    static Permutation identity(std::size_t n);
    /// Whitespace-separated images, e.g. "1 2 3 0".
    static Permutation parse(const std::string& text);

    std::size_t size() const { return map_.size(); }
    int operator()(int i) const { return map_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& mapping() const { return map_; }

    Permutation inverse() const;
    /// compose(a, b) applies b first, then a.
    static Permutation compose(const Permutation& a, const Permutation& b);

    bool is_identity() const;
    bool operator==(const Permutation&) const = default;

    template <typename T>
    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != map_.size()) throw_length();
        std::vector<T> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(map_[i])] = v[i];
        return out;
    }
    template <typename T>
    std::vector<T> apply(const std::vector<T>& v) const {
        return apply(std::span<const T>(v));
    }

  private:
    [[noreturn]] static void throw_length();
    std::vector<int> map_;
};

/// Column i of H moves to column pi(i); the null space transforms the same
/// way, so an automorphism yields another parity-check matrix of the code.
BitMatrix apply_to_columns(const Permutation& pi, const BitMatrix& h);

/// Random words over a named generator set. Sampling draws a word of length
/// 1..max_word_length uniformly and composes it; an identity result is
/// resampled once.
struct AutomorphismSampler {
    std::size_t n = 0;
    std::vector<Permutation> generators;
    std::vector<std::string> generator_names;
    int max_word_length = 8;

    Permutation sample(RngStream& rng) const;
};

/// {cyclic shift, Frobenius doubling} for a cyclic code of odd length n.
AutomorphismSampler cyclic_code_sampler(std::size_t n);

/// Affine permutations of the [8,4,4] extended Hamming code: positions are
/// identified with GF(2)^3 (LSB-first bits of the index); generators are the
/// three unit translations, one transvection and the coordinate cycle.
AutomorphismSampler ext_hamming_sampler();

/// Picks a generator set from the code's hint and validates every generator
/// against the code at construction. Throws UnknownAutomorphisms when no
/// generator set is known for the code.
AutomorphismSampler sampler_for_code(const LinearCode& code);

/// Checks pi(x) in C. Exhaustive over all codewords when k <= 16, otherwise
/// `trials` random codewords (rng required in that case).
bool verify_automorphism(const LinearCode& code, const Permutation& pi, int trials = 64,
                         RngStream* rng = nullptr);

}  // namespace hdlp

#endif  // HDLP_AUTOMORPHISM_HPP
