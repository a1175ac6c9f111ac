#ifndef HDLP_RNG_HPP
#define HDLP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace hdlp {

/// splitmix64 step; also used to mix stream identifiers into seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ (b * 0xd1b54a32d192ed03ull)); }

/// Counter-based random stream: the output sequence is a pure function of
/// (seed, stream_index), independent of scheduling or worker count. Paired
/// decoder comparisons rely on this to replay identical noise.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index)
        : seed_(seed), stream_(stream_index), state_(mix64(seed, stream_index)) {}

    /// Additional substream of this stream (frame -> decoder -> purpose...).
    RngStream substream(std::uint64_t index) const { return RngStream(mix64(seed_, stream_), index); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in {0, ..., bound-1} by rejection (bound >= 1).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

    bool next_bool() { return next_u64() >> 63; }

    /// Standard normal via Box-Muller; explicit so sequences do not depend on
    /// the standard library's distribution implementation.
    double next_gaussian() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        const double u2 = next_double();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace hdlp

#endif  // HDLP_RNG_HPP
