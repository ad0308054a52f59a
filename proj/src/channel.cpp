#include "ofdmsync/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ofdmsync/rng.hpp"

namespace ofdmsync {

int ChannelModel::duration() const {
    int d = 0;
    for (const auto& tap : taps) d = std::max(d, tap.delay);
    return d;
}

void ChannelModel::validate() const {
    if (taps.empty())
        throw std::invalid_argument("channel needs at least one tap; use delay 1, gain 1 for identity");
    int prev = 0;
    for (const auto& tap : taps) {
        if (tap.delay <= prev)
            throw std::invalid_argument("tap delays must be strictly positive and strictly increasing");
        prev = tap.delay;
    }
}

NoiseSpec NoiseSpec::from_eb_n0_qpsk(double db) {
    // Es = 1 and QPSK carries two bits, so N0 = Es / (2 * Eb/N0)
    return {SnrConvention::kEbN0Qpsk, db, 0.5 * std::pow(10.0, -db / 10.0)};
}

NoiseSpec NoiseSpec::from_es_n0(double db) {
    return {SnrConvention::kEsN0, db, std::pow(10.0, -db / 10.0)};
}

NoiseSpec NoiseSpec::noiseless() {
    return {SnrConvention::kEsN0, std::numeric_limits<double>::infinity(), 0.0};
}

SampleVec apply_multipath(const SampleVec& stream, const ChannelModel& ch) {
    ch.validate();
    SampleVec out(stream.size(), cplx{0.0, 0.0});
    for (const auto& tap : ch.taps) {
        const std::size_t d = static_cast<std::size_t>(tap.delay);
        for (std::size_t n = d; n < stream.size(); ++n)
            out[n] += tap.gain * stream[n - d];
    }
    return out;
}

SampleVec add_awgn(const SampleVec& stream, const NoiseSpec& noise, std::uint64_t seed) {
    if (noise.sigma_sq < 0.0)
        throw std::invalid_argument("noise variance must be non-negative");
    if (noise.sigma_sq == 0.0) return stream;
    Rng rng(seed);
    SampleVec out;
    out.reserve(stream.size());
    for (const cplx& s : stream) out.push_back(s + rng.complex_normal(noise.sigma_sq));
    return out;
}

BurstDescriptor synthesize_scenario(const OfdmConfig& cfg,
                                    const std::optional<ChannelModel>& ch,
                                    const NoiseSpec& noise,
                                    std::uint64_t trial_seed) {
    OfdmConfig local = cfg;
    local.base_seed = trial_seed;
    BurstDescriptor burst = assemble_burst(local);
    if (ch) burst.stream = apply_multipath(burst.stream, *ch);
    burst.stream = add_awgn(burst.stream, noise, derive_seed(trial_seed, 0x0a9e));
    return burst;
}

}  // namespace ofdmsync
