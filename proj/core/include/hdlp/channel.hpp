#ifndef HDLP_CHANNEL_HPP
#define HDLP_CHANNEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "hdlp/rng.hpp"

namespace hdlp {

/// BPSK over AWGN. Convention: bit 0 -> symbol -1, bit 1 -> symbol +1,
/// so the decoder cost vector is literally the negated channel output.

struct ChannelConfig {
    double ebn0_db;
    double rate;   // k / n
    double sigma;  // derived noise standard deviation

    static ChannelConfig from_ebn0(double ebn0_db, double rate);
};

/// sigma = sqrt(1 / (2 * rate * 10^(ebn0_db/10))). Throws InvalidRate unless
/// rate in (0, 1].
double sigma_from_ebn0(double ebn0_db, double rate);

std::vector<double> modulate(std::span<const std::uint8_t> bits);

/// received_i = symbols_i + sigma * g_i with g_i iid standard normal drawn
/// from the stream.
std::vector<double> transmit(std::span<const double> symbols, double sigma, RngStream& rng);

/// Per-bit decoding costs c = -received. Keeps the raw received vector for
/// the distance fallback of the diversity decoder. Costs are proportional to
/// the channel LLRs; the positive scale factor never changes an argmin.
struct CostVector {
    std::vector<double> c;
    std::vector<double> source_received;
};

CostVector cost_from_received(std::vector<double> received);

}  // namespace hdlp

#endif  // HDLP_CHANNEL_HPP
