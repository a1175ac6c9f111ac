#include "hdlp/gf2m.hpp"

#include <algorithm>
#include <set>

#include "hdlp/errors.hpp"

namespace hdlp {

std::uint32_t Gf2m::default_primitive_poly(unsigned m) {
    switch (m) {
        case 2: return 0b111;
        case 3: return 0b1011;
        case 4: return 0b10011;
        case 5: return 0b100101;
        case 6: return 0b1000011;
        case 7: return 0b10001001;
        case 8: return 0b100011101;
        case 9: return 0b1000010001;
        case 10: return 0b10000001001;
        case 11: return 0b100000000101;
        case 12: return 0b1000001010011;
        case 13: return 0b10000000011011;
        case 14: return 0b100010001000011;
        case 15: return 0b1000000000000011;
        case 16: return 0b10001000000001011;
        default: throw InvalidParameters("GF(2^m): m out of supported range [2,16]");
    }
}

namespace {

unsigned poly_deg(std::uint64_t p) {
    unsigned d = 0;
    while (p >>= 1) ++d;
    return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    const unsigned db = poly_deg(b);
    while (a && poly_deg(a) >= db) {
        a ^= b << (poly_deg(a) - db);
    }
    return a;
}

std::uint64_t poly_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
    std::uint64_t r = 0;
    while (b) {
        if (b & 1) r ^= a;
        b >>= 1;
        a <<= 1;
        if (poly_deg(a) >= poly_deg(mod)) a ^= mod;
    }
    return r;
}

}  // namespace

bool Gf2m::is_irreducible(std::uint32_t poly, unsigned degree) {
    if (poly_deg(poly) != degree) return false;
    if ((poly & 1) == 0) return false;  // divisible by x
    // trial division by all polynomials of degree 1 .. degree/2
    for (std::uint64_t d = 2; poly_deg(d) <= degree / 2; ++d) {
        if (poly_mod(poly, d) == 0) return false;
    }
    return true;
}

Gf2m::Gf2m(unsigned m) : Gf2m(m, default_primitive_poly(m)) {}

Gf2m::Gf2m(unsigned m, std::uint32_t primitive_poly) : m_(m), poly_(primitive_poly) {
    if (m < 2 || m > 16) throw InvalidParameters("GF(2^m): m out of supported range [2,16]");
    if (!is_irreducible(primitive_poly, m)) throw InvalidParameters("GF(2^m): modulus is not irreducible");
}

std::uint32_t Gf2m::mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(poly_mulmod(a, b, poly_));
}

std::uint32_t Gf2m::pow_alpha(std::uint64_t e) const {
    e %= order();
    std::uint32_t r = 1;
    std::uint32_t base = 2;  // alpha
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Gf2Poly gf2poly_trim(Gf2Poly p) {
    while (p.size() > 1 && p.back() == 0) p.pop_back();
    return p;
}

std::size_t gf2poly_degree(const Gf2Poly& p) {
    for (std::size_t i = p.size(); i-- > 0;)
        if (p[i]) return i;
    return 0;
}

Gf2Poly gf2poly_mul(const Gf2Poly& a, const Gf2Poly& b) {
    Gf2Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] ^= b[j];
    }
    return gf2poly_trim(std::move(r));
}

Gf2Poly gf2poly_div(const Gf2Poly& a, const Gf2Poly& b, Gf2Poly* rem) {
    const Gf2Poly bt = gf2poly_trim(b);
    const std::size_t db = gf2poly_degree(bt);
    if (db == 0 && bt[0] == 0) throw InvalidParameters("gf2poly_div: division by zero");

    Gf2Poly r = gf2poly_trim(a);
    Gf2Poly q(r.size(), 0);
    while (true) {
        const std::size_t dr = gf2poly_degree(r);
        if ((dr == 0 && r[0] == 0) || dr < db) break;
        const std::size_t shift = dr - db;
        q[shift] ^= 1;
        for (std::size_t i = 0; i <= db; ++i) r[i + shift] ^= bt[i];
    }
    if (rem) *rem = gf2poly_trim(std::move(r));
    return gf2poly_trim(std::move(q));
}

std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t s, std::uint32_t n) {
    std::set<std::uint32_t> coset;
    std::uint32_t v = s % n;
    while (coset.insert(v).second) {
        v = static_cast<std::uint32_t>((2ull * v) % n);
    }
    return {coset.begin(), coset.end()};
}

Gf2Poly bch_generator_poly(const Gf2m& field, unsigned design_distance) {
    const std::uint32_t n = field.order();
    std::set<std::uint32_t> covered;
    Gf2Poly g{1};
    for (unsigned s = 1; s < design_distance; ++s) {
        if (covered.count(s % n)) continue;
        const auto coset = cyclotomic_coset(s, n);
        covered.insert(coset.begin(), coset.end());

        // minimal polynomial of alpha^s: product of (x + alpha^j), j in coset,
        // computed in GF(2^m)[x]; conjugate closure collapses it into GF(2)
        std::vector<std::uint32_t> mp{1};
        for (std::uint32_t j : coset) {
            const std::uint32_t root = field.pow_alpha(j);
            std::vector<std::uint32_t> next(mp.size() + 1, 0);
            for (std::size_t i = 0; i < mp.size(); ++i) {
                next[i + 1] ^= mp[i];                  // x * mp
                next[i] ^= field.mul(mp[i], root);     // alpha^j * mp
            }
            mp = std::move(next);
        }
        Gf2Poly mp2(mp.size());
        for (std::size_t i = 0; i < mp.size(); ++i) {
            if (mp[i] > 1) throw NumericalFailure("bch_generator_poly: minimal polynomial not binary");
            mp2[i] = static_cast<std::uint8_t>(mp[i]);
        }
        g = gf2poly_mul(g, mp2);
    }
    return g;
}

}  // namespace hdlp
