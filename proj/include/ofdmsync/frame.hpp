#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "ofdmsync/config.hpp"

namespace ofdmsync {

using cplx = std::complex<double>;
using SampleVec = std::vector<cplx>;

struct FrequencyDomainSymbol {
    std::vector<cplx> bins;  // length N
};

struct TimeDomainSymbol {
    SampleVec samples;  // N samples, or N + N_CP when has_cp
    bool has_cp = false;
};

// Assembled transmit burst with ground truth attached.
struct BurstDescriptor {
    SampleVec stream;
    std::size_t true_sof_index = 0;      // first sample of the first preamble symbol
    std::size_t expected_peak_index = 0; // causal index of the detector peak
};

// Gray map, unit energy per symbol: (0,0) -> (1+j)/sqrt(2), first bit flips
// the real part, second bit the imaginary part.
std::vector<cplx> qpsk_map(const std::vector<int>& bits);

// Unitary N-point inverse transform of one frequency-domain symbol.
TimeDomainSymbol inverse_transform(const FrequencyDomainSymbol& symbol);

// First preamble symbol: pseudo-random QPSK scaled by sqrt(2) on even bins,
// odd bins zero, so the time-domain halves repeat exactly.
TimeDomainSymbol build_preamble_symbol(const OfdmConfig& cfg, std::uint64_t seed);

// Inverse transform of the payload with an N_CP-sample cyclic prefix.
TimeDomainSymbol build_data_symbol(const OfdmConfig& cfg, const std::vector<cplx>& payload);

// Full burst: lead zeros, preamble symbol 1 (CP per cfg), preamble symbol 2
// (full-band PN with CP), data symbols, tail zeros.
BurstDescriptor assemble_burst(const OfdmConfig& cfg);

// Closed-form length of the assembled stream.
std::size_t burst_length(const OfdmConfig& cfg);

// Index one past the last burst sample (start of the tail span).
std::size_t burst_end_index(const OfdmConfig& cfg);

}  // namespace ofdmsync
