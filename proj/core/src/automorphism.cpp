#include "hdlp/automorphism.hpp"

#include <algorithm>
#include <sstream>

#include "hdlp/errors.hpp"

namespace hdlp {

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    std::vector<std::uint8_t> seen(map_.size(), 0);
    for (int v : map_) {
        if (v < 0 || static_cast<std::size_t>(v) >= map_.size() || seen[static_cast<std::size_t>(v)])
            throw InvalidParameters("Permutation: mapping is not a bijection");
        seen[static_cast<std::size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<int> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(i);
    return Permutation(std::move(m));
}

Permutation Permutation::parse(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> m;
    int v;
    while (in >> v) m.push_back(v);
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[static_cast<std::size_t>(map_[i])] = static_cast<int>(i);
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw LengthMismatch("Permutation::compose: size mismatch");
    std::vector<int> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) m[i] = a.map_[static_cast<std::size_t>(b.map_[i])];
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < map_.size(); ++i)
        if (map_[i] != static_cast<int>(i)) return false;
    return true;
}

void Permutation::throw_length() { throw LengthMismatch("Permutation::apply: vector length != n"); }

BitMatrix apply_to_columns(const Permutation& pi, const BitMatrix& h) {
    if (pi.size() != h.cols()) throw LengthMismatch("apply_to_columns: permutation size != columns");
    BitMatrix out(h.rows(), h.cols());
    for (std::size_t r = 0; r < h.rows(); ++r)
        for (std::size_t c = 0; c < h.cols(); ++c)
            if (h.get(r, c)) out.set(r, static_cast<std::size_t>(pi(static_cast<int>(c))), true);
    return out;
}

Permutation AutomorphismSampler::sample(RngStream& rng) const {
    if (generators.empty()) throw UnknownAutomorphisms("AutomorphismSampler: no generators");
    auto draw = [&]() {
        const int len = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_word_length)));
        Permutation pi = Permutation::identity(n);
        for (int t = 0; t < len; ++t) {
            const auto& g = generators[rng.next_below(generators.size())];
            pi = Permutation::compose(g, pi);
        }
        return pi;
    };
    Permutation pi = draw();
    if (pi.is_identity()) pi = draw();  // one resample, then accept
    return pi;
}

AutomorphismSampler cyclic_code_sampler(std::size_t n) {
    if (n % 2 == 0) throw InvalidParameters("cyclic_code_sampler: doubling needs odd length");
    std::vector<int> shift(n), doubling(n);
    for (std::size_t i = 0; i < n; ++i) {
        shift[i] = static_cast<int>((i + 1) % n);
        doubling[i] = static_cast<int>((2 * i) % n);
    }
    AutomorphismSampler s;
    s.n = n;
    s.generators = {Permutation(std::move(shift)), Permutation(std::move(doubling))};
    s.generator_names = {"cyclic_shift", "frobenius_doubling"};
    return s;
}

AutomorphismSampler ext_hamming_sampler() {
    constexpr std::size_t n = 8;
    auto affine = [](auto&& f) {
        std::vector<int> m(n);
        for (std::size_t j = 0; j < n; ++j) {
            const int b0 = static_cast<int>(j) & 1, b1 = (static_cast<int>(j) >> 1) & 1,
                      b2 = (static_cast<int>(j) >> 2) & 1;
            m[j] = f(b0, b1, b2);
        }
        return Permutation(std::move(m));
    };
    AutomorphismSampler s;
    s.n = n;
    s.generators = {
        affine([](int b0, int b1, int b2) { return (b0 ^ 1) | (b1 << 1) | (b2 << 2); }),  // +e1
        affine([](int b0, int b1, int b2) { return b0 | ((b1 ^ 1) << 1) | (b2 << 2); }),  // +e2
        affine([](int b0, int b1, int b2) { return b0 | (b1 << 1) | ((b2 ^ 1) << 2); }),  // +e3
        affine([](int b0, int b1, int b2) { return b0 | ((b1 ^ b0) << 1) | (b2 << 2); }), // transvection
        affine([](int b0, int b1, int b2) { return b2 | (b0 << 1) | (b1 << 2); }),        // coordinate cycle
    };
    s.generator_names = {"translate_e1", "translate_e2", "translate_e3", "transvection_01", "coord_cycle"};
    return s;
}

AutomorphismSampler sampler_for_code(const LinearCode& code) {
    AutomorphismSampler s;
    switch (code.aut_hint()) {
        case AutGroupHint::cyclic:
            s = cyclic_code_sampler(code.n());
            break;
        case AutGroupHint::ext_hamming_affine:
            if (code.n() != 8) throw UnknownAutomorphisms("sampler_for_code: affine hint needs n = 8");
            s = ext_hamming_sampler();
            break;
        case AutGroupHint::none:
            throw UnknownAutomorphisms("sampler_for_code: no generator set known for " + code.name());
    }
    for (std::size_t g = 0; g < s.generators.size(); ++g) {
        RngStream check_rng(0x5eedu, g);
        if (!verify_automorphism(code, s.generators[g], 128, &check_rng))
            throw InvalidParameters("sampler_for_code: generator " + s.generator_names[g] +
                                    " does not preserve " + code.name());
    }
    return s;
}

bool verify_automorphism(const LinearCode& code, const Permutation& pi, int trials, RngStream* rng) {
    if (pi.size() != code.n()) throw LengthMismatch("verify_automorphism: permutation size != n");
    if (code.k() <= 16) {
        for (const auto& w : enumerate_codewords(code))
            if (!is_codeword(code, pi.apply(w))) return false;
        return true;
    }
    if (!rng) throw InvalidParameters("verify_automorphism: rng required for k > 16");
    std::vector<std::uint8_t> info(code.k());
    for (int t = 0; t < trials; ++t) {
        for (auto& b : info) b = rng->next_bool() ? 1 : 0;
        const auto w = encode_information(code, info);
        if (!is_codeword(code, pi.apply(w))) return false;
    }
    return true;
}

}  // namespace hdlp
