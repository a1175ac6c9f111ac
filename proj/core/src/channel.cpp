#include "hdlp/channel.hpp"

#include <cmath>

#include "hdlp/errors.hpp"

namespace hdlp {

double sigma_from_ebn0(double ebn0_db, double rate) {
    if (!(rate > 0.0 && rate <= 1.0)) throw InvalidRate("sigma_from_ebn0: rate must be in (0, 1]");
    return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0)));
}

ChannelConfig ChannelConfig::from_ebn0(double ebn0_db, double rate) {
    return ChannelConfig{ebn0_db, rate, sigma_from_ebn0(ebn0_db, rate)};
}

std::vector<double> modulate(std::span<const std::uint8_t> bits) {
    std::vector<double> s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? 1.0 : -1.0;
    return s;
}

std::vector<double> transmit(std::span<const double> symbols, double sigma, RngStream& rng) {
    std::vector<double> r(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) r[i] = symbols[i] + sigma * rng.next_gaussian();
    return r;
}

CostVector cost_from_received(std::vector<double> received) {
    CostVector cv;
    cv.c.resize(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) cv.c[i] = -received[i];
    cv.source_received = std::move(received);
    return cv;
}

}  // namespace hdlp
