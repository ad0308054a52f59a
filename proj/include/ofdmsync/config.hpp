#pragma once

#include <cstdint>
#include <stdexcept>

namespace ofdmsync {

// Scenario parameters shared by the frame builder, channel and experiments.
struct OfdmConfig {
    int fft_size = 128;           // N, positive power of two
    int cp_len = 32;              // N_CP < N
    int num_data_symbols = 16;
    int lead_noise_len = 512;     // noise-only span before the burst
    int tail_noise_len = 512;     // noise-only span after the burst
    bool preamble_has_cp = false;
    double eb_over_n0_db = 10.0;
    double es_over_n0_db = 7.0;
    std::uint64_t base_seed = 1;

    int half_len() const { return fft_size / 2; }  // L = N/2

    void validate() const {
        if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
            throw std::invalid_argument("fft_size must be a positive power of two");
        if (cp_len < 0 || cp_len >= fft_size)
            throw std::invalid_argument("cp_len must satisfy 0 <= cp_len < fft_size");
        if (num_data_symbols < 0)
            throw std::invalid_argument("num_data_symbols must be non-negative");
        if (lead_noise_len < 0 || tail_noise_len < 0)
            throw std::invalid_argument("noise span lengths must be non-negative");
    }
};

}  // namespace ofdmsync
