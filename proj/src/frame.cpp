#include "ofdmsync/frame.hpp"

#include <cmath>
#include <stdexcept>

#include "ofdmsync/fft.hpp"
#include "ofdmsync/rng.hpp"

namespace ofdmsync {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;

void append_symbol(SampleVec& out, const TimeDomainSymbol& sym) {
    out.insert(out.end(), sym.samples.begin(), sym.samples.end());
}

TimeDomainSymbol prepend_cp(SampleVec body, int cp_len) {
    TimeDomainSymbol sym;
    sym.has_cp = cp_len > 0;
    sym.samples.reserve(body.size() + static_cast<std::size_t>(cp_len));
    sym.samples.insert(sym.samples.end(), body.end() - cp_len, body.end());
    sym.samples.insert(sym.samples.end(), body.begin(), body.end());
    return sym;
}

std::vector<cplx> random_qpsk(Rng& rng, int count) {
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(rng.qpsk_point());
    return out;
}

}  // namespace

std::vector<cplx> qpsk_map(const std::vector<int>& bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("qpsk_map requires an even number of bits");
    std::vector<cplx> out;
    out.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2) {
        const double re = bits[i] ? -kInvSqrt2 : kInvSqrt2;
        const double im = bits[i + 1] ? -kInvSqrt2 : kInvSqrt2;
        out.emplace_back(re, im);
    }
    return out;
}

TimeDomainSymbol inverse_transform(const FrequencyDomainSymbol& symbol) {
    TimeDomainSymbol sym;
    sym.samples = inverse_transform_vec(symbol.bins);
    sym.has_cp = false;
    return sym;
}

TimeDomainSymbol build_preamble_symbol(const OfdmConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    const int n = cfg.fft_size;
    std::vector<cplx> bins(static_cast<std::size_t>(n), cplx{0.0, 0.0});
    const double sqrt2 = std::sqrt(2.0);
    for (int k = 0; k < n; k += 2) bins[static_cast<std::size_t>(k)] = sqrt2 * rng.qpsk_point();
    SampleVec body = inverse_transform_vec(std::move(bins));
    // odd bins are zero, so body has exact period N/2; enforce it bit-for-bit
    const int half = cfg.half_len();
    for (int i = 0; i < half; ++i)
        body[static_cast<std::size_t>(i + half)] = body[static_cast<std::size_t>(i)];
    if (cfg.preamble_has_cp) return prepend_cp(std::move(body), cfg.cp_len);
    TimeDomainSymbol sym;
    sym.samples = std::move(body);
    return sym;
}

TimeDomainSymbol build_data_symbol(const OfdmConfig& cfg, const std::vector<cplx>& payload) {
    cfg.validate();
    if (payload.size() != static_cast<std::size_t>(cfg.fft_size))
        throw std::invalid_argument("payload length must equal fft_size");
    SampleVec body = inverse_transform_vec(payload);
    return prepend_cp(std::move(body), cfg.cp_len);
}

std::size_t burst_length(const OfdmConfig& cfg) {
    const std::size_t n = static_cast<std::size_t>(cfg.fft_size);
    const std::size_t with_cp = n + static_cast<std::size_t>(cfg.cp_len);
    const std::size_t preamble1 = cfg.preamble_has_cp ? with_cp : n;
    return static_cast<std::size_t>(cfg.lead_noise_len) + preamble1 + with_cp +
           static_cast<std::size_t>(cfg.num_data_symbols) * with_cp +
           static_cast<std::size_t>(cfg.tail_noise_len);
}

std::size_t burst_end_index(const OfdmConfig& cfg) {
    return burst_length(cfg) - static_cast<std::size_t>(cfg.tail_noise_len);
}

BurstDescriptor assemble_burst(const OfdmConfig& cfg) {
    cfg.validate();
    BurstDescriptor burst;
    burst.stream.reserve(burst_length(cfg));
    burst.stream.assign(static_cast<std::size_t>(cfg.lead_noise_len), cplx{0.0, 0.0});
    burst.true_sof_index = static_cast<std::size_t>(cfg.lead_noise_len);
    burst.expected_peak_index = burst.true_sof_index +
                                static_cast<std::size_t>(cfg.fft_size) +
                                (cfg.preamble_has_cp ? static_cast<std::size_t>(cfg.cp_len) : 0);

    append_symbol(burst.stream, build_preamble_symbol(cfg, derive_seed(cfg.base_seed, 0)));

    // second preamble symbol: full-band PN QPSK with CP
    Rng rng2(derive_seed(cfg.base_seed, 1));
    append_symbol(burst.stream, build_data_symbol(cfg, random_qpsk(rng2, cfg.fft_size)));

    for (int i = 0; i < cfg.num_data_symbols; ++i) {
        Rng rng(derive_seed(cfg.base_seed, 2 + static_cast<std::uint64_t>(i)));
        append_symbol(burst.stream, build_data_symbol(cfg, random_qpsk(rng, cfg.fft_size)));
    }

    burst.stream.insert(burst.stream.end(), static_cast<std::size_t>(cfg.tail_noise_len),
                        cplx{0.0, 0.0});
    return burst;
}

}  // namespace ofdmsync
