#include <doctest.h>

#include <cmath>

#include "ofdmsync/fft.hpp"
#include "ofdmsync/frame.hpp"
#include "ofdmsync/rng.hpp"

using namespace ofdmsync;

namespace {

double body_energy(const TimeDomainSymbol& sym, int cp_len) {
    double e = 0.0;
    const std::size_t skip = sym.has_cp ? static_cast<std::size_t>(cp_len) : 0;
    for (std::size_t i = skip; i < sym.samples.size(); ++i) e += std::norm(sym.samples[i]);
    return e;
}

}  // namespace

TEST_CASE("qpsk_map Gray corners and unit energy") {
    const auto syms = qpsk_map({0, 0, 1, 1, 0, 1, 1, 0});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(syms[0] - cplx(s, s)) <= 1e-15);
    CHECK(std::abs(syms[1] - cplx(-s, -s)) <= 1e-15);
    CHECK(std::abs(syms[2] - cplx(s, -s)) <= 1e-15);
    CHECK(std::abs(syms[3] - cplx(-s, s)) <= 1e-15);
    for (const auto& x : syms) CHECK(std::norm(x) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(qpsk_map({0, 1, 0}), std::invalid_argument);
}

TEST_CASE("inverse transform DC bin gives a constant") {
    const int n = 32;
    FrequencyDomainSymbol sym;
    sym.bins.assign(n, cplx{0.0, 0.0});
    sym.bins[0] = std::sqrt(static_cast<double>(n));
    const auto td = inverse_transform(sym);
    REQUIRE(td.samples.size() == static_cast<std::size_t>(n));
    for (const auto& v : td.samples) {
        CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("inverse transform of zeros is zeros") {
    FrequencyDomainSymbol sym;
    sym.bins.assign(64, cplx{0.0, 0.0});
    for (const auto& v : inverse_transform(sym).samples) CHECK(v == cplx{0.0, 0.0});
}

TEST_CASE("forward(inverse(X)) round-trips to 1e-12 relative") {
    Rng rng(42);
    std::vector<cplx> bins(128);
    for (auto& b : bins) b = rng.complex_normal(2.0);
    const auto back = forward_transform(inverse_transform_vec(bins));
    for (std::size_t i = 0; i < bins.size(); ++i)
        CHECK(std::abs(back[i] - bins[i]) <= 1e-12 * (1.0 + std::abs(bins[i])));
}

TEST_CASE("transform rejects non-power-of-two sizes") {
    std::vector<cplx> bins(12);
    CHECK_THROWS_AS(fft_radix2(bins, false), std::invalid_argument);
}

TEST_CASE("preamble symbol repeats its halves exactly") {
    OfdmConfig cfg;
    const int half = cfg.half_len();
    for (std::uint64_t seed : {1ULL, 2ULL, 99ULL, 123456789ULL}) {
        const auto sym = build_preamble_symbol(cfg, seed);
        REQUIRE(sym.samples.size() == static_cast<std::size_t>(cfg.fft_size));
        for (int i = 0; i < half; ++i)
            CHECK(sym.samples[static_cast<std::size_t>(i)] ==
                  sym.samples[static_cast<std::size_t>(i + half)]);
    }
}

TEST_CASE("preamble symbol energy matches a unit-Es data symbol") {
    OfdmConfig cfg;
    // Parseval with unitary scaling: body energy equals the bin energy N
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const auto sym = build_preamble_symbol(cfg, seed);
        CHECK(body_energy(sym, cfg.cp_len) ==
              doctest::Approx(static_cast<double>(cfg.fft_size)).epsilon(1e-9));
    }
}

TEST_CASE("distinct seeds give distinct preambles") {
    OfdmConfig cfg;
    const auto a = build_preamble_symbol(cfg, 1);
    const auto b = build_preamble_symbol(cfg, 2);
    CHECK(a.samples != b.samples);
}

TEST_CASE("preamble CP prepended when configured") {
    OfdmConfig cfg;
    cfg.preamble_has_cp = true;
    const auto sym = build_preamble_symbol(cfg, 5);
    REQUIRE(sym.has_cp);
    REQUIRE(sym.samples.size() == static_cast<std::size_t>(cfg.fft_size + cfg.cp_len));
    for (int i = 0; i < cfg.cp_len; ++i)
        CHECK(sym.samples[static_cast<std::size_t>(i)] ==
              sym.samples[static_cast<std::size_t>(i + cfg.fft_size)]);
}

TEST_CASE("data symbol prefix equals body tail exactly") {
    OfdmConfig cfg;
    Rng rng(11);
    std::vector<cplx> payload(static_cast<std::size_t>(cfg.fft_size));
    for (auto& p : payload) p = rng.qpsk_point();
    const auto sym = build_data_symbol(cfg, payload);
    REQUIRE(sym.samples.size() == static_cast<std::size_t>(cfg.fft_size + cfg.cp_len));
    for (int i = 0; i < cfg.cp_len; ++i)
        CHECK(sym.samples[static_cast<std::size_t>(i)] ==
              sym.samples[static_cast<std::size_t>(i + cfg.fft_size)]);
}

TEST_CASE("data symbol trivial payloads") {
    OfdmConfig cfg;
    const std::vector<cplx> zeros(static_cast<std::size_t>(cfg.fft_size), cplx{0.0, 0.0});
    for (const auto& v : build_data_symbol(cfg, zeros).samples) CHECK(v == cplx{0.0, 0.0});

    std::vector<cplx> dc(static_cast<std::size_t>(cfg.fft_size), cplx{0.0, 0.0});
    dc[0] = std::sqrt(static_cast<double>(cfg.fft_size));
    for (const auto& v : build_data_symbol(cfg, dc).samples)
        CHECK(std::abs(v - cplx{1.0, 0.0}) <= 1e-12);

    CHECK_THROWS_AS(build_data_symbol(cfg, std::vector<cplx>(5)), std::invalid_argument);
}

TEST_CASE("assemble_burst matches the closed-form layout") {
    OfdmConfig cfg;  // N=128, cp=32, 16 data symbols, lead=tail=512, no preamble CP
    const auto burst = assemble_burst(cfg);
    CHECK(burst.stream.size() == 512 + 128 + 160 + 16 * 160 + 512);
    CHECK(burst.stream.size() == burst_length(cfg));
    CHECK(burst.true_sof_index == 512);
    CHECK(burst.expected_peak_index == 512 + 128);

    OfdmConfig tiny;
    tiny.num_data_symbols = 0;
    tiny.lead_noise_len = 0;
    tiny.tail_noise_len = 0;
    CHECK(assemble_burst(tiny).stream.size() == 128 + 160);

    OfdmConfig with_cp = cfg;
    with_cp.preamble_has_cp = true;
    const auto burst_cp = assemble_burst(with_cp);
    CHECK(burst_cp.expected_peak_index == 512 + 128 + 32);
    CHECK(burst_cp.stream.size() == burst_length(with_cp));
}

TEST_CASE("assemble_burst lead and tail spans are zero before the channel") {
    OfdmConfig cfg;
    const auto burst = assemble_burst(cfg);
    for (int i = 0; i < cfg.lead_noise_len; ++i)
        CHECK(burst.stream[static_cast<std::size_t>(i)] == cplx{0.0, 0.0});
    for (std::size_t i = burst.stream.size() - static_cast<std::size_t>(cfg.tail_noise_len);
         i < burst.stream.size(); ++i)
        CHECK(burst.stream[i] == cplx{0.0, 0.0});
}

TEST_CASE("config invariants rejected") {
    OfdmConfig cfg;
    cfg.fft_size = 127;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.fft_size = 128;
    cfg.cp_len = 128;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
