#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ofdmsync/config.hpp"
#include "ofdmsync/frame.hpp"

namespace ofdmsync {

struct ChannelTap {
    int delay = 1;  // strictly positive, samples
    cplx gain;
};

// FIR multipath channel r_n = sum_m h_m s_{n - d_m}.
struct ChannelModel {
    std::vector<ChannelTap> taps;

    int duration() const;  // D = max delay
    void validate() const; // delays strictly positive and strictly increasing
};

enum class SnrConvention { kEbN0Qpsk, kEsN0 };

// Complex noise variance per sample (total over both quadratures).
struct NoiseSpec {
    SnrConvention convention = SnrConvention::kEbN0Qpsk;
    double level_db = 10.0;
    double sigma_sq = 0.05;

    static NoiseSpec from_eb_n0_qpsk(double db);
    static NoiseSpec from_es_n0(double db);
    static NoiseSpec noiseless();
};

SampleVec apply_multipath(const SampleVec& stream, const ChannelModel& ch);

SampleVec add_awgn(const SampleVec& stream, const NoiseSpec& noise, std::uint64_t seed);

// Burst construction, optional multipath, then AWGN over the whole stream.
// Ground-truth indices pass through unchanged.
BurstDescriptor synthesize_scenario(const OfdmConfig& cfg,
                                    const std::optional<ChannelModel>& ch,
                                    const NoiseSpec& noise,
                                    std::uint64_t trial_seed);

}  // namespace ofdmsync
