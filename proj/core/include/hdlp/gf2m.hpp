#ifndef HDLP_GF2M_HPP
#define HDLP_GF2M_HPP

#include <cstdint>
#include <vector>

namespace hdlp {

/// GF(2^m) in polynomial basis. Elements are bit patterns of degree < m;
/// alpha = the class of x, a root of the primitive polynomial.
///
/// Primitive polynomials are fixed per m so that code constructions are
/// bit-reproducible:
///   m=2: x^2+x+1        m=3: x^3+x+1        m=4: x^4+x+1
///   m=5: x^5+x^2+1      m=6: x^6+x+1        m=7: x^7+x^3+1
///   m=8: x^8+x^4+x^3+x^2+1
class Gf2m {
  public:
    explicit Gf2m(unsigned m);
    /// Custom modulus (bits of the degree-m polynomial, x^m bit included);
    /// validated irreducible over GF(2) by trial division.
    Gf2m(unsigned m, std::uint32_t primitive_poly);

    unsigned degree() const { return m_; }
    std::uint32_t primitive_poly() const { return poly_; }
    std::uint32_t order() const { return (1u << m_) - 1; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return a ^ b; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t pow_alpha(std::uint64_t e) const;  // alpha^e

    static std::uint32_t default_primitive_poly(unsigned m);
    static bool is_irreducible(std::uint32_t poly, unsigned degree);

  private:
    unsigned m_;
    std::uint32_t poly_;
};

/// Element of GF(2^m) bundled with its field parameters.
struct FieldElement2m {
    unsigned m;
    std::uint32_t value;
    std::uint32_t primitive_poly;
};

// -- polynomials over GF(2), coefficient vectors, index = degree -------------

using Gf2Poly = std::vector<std::uint8_t>;

Gf2Poly gf2poly_trim(Gf2Poly p);
std::size_t gf2poly_degree(const Gf2Poly& p);  // degree of zero poly = 0
Gf2Poly gf2poly_mul(const Gf2Poly& a, const Gf2Poly& b);
/// Returns quotient; remainder written to *rem when non-null.
Gf2Poly gf2poly_div(const Gf2Poly& a, const Gf2Poly& b, Gf2Poly* rem = nullptr);

/// Cyclotomic coset of s modulo n under doubling, sorted ascending.
std::vector<std::uint32_t> cyclotomic_coset(std::uint32_t s, std::uint32_t n);

/// Generator polynomial of the BCH code of length 2^m-1 and the given design
/// distance: product of minimal polynomials of alpha^1 .. alpha^(delta-1),
/// one factor per distinct cyclotomic coset.
Gf2Poly bch_generator_poly(const Gf2m& field, unsigned design_distance);

}  // namespace hdlp

#endif  // HDLP_GF2M_HPP
