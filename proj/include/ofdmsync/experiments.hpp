#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ofdmsync/channel.hpp"
#include "ofdmsync/detector.hpp"

namespace ofdmsync {

// One scenario's causal metric traces plus spurious-peak bookkeeping.
struct TraceResult {
    std::vector<std::size_t> indices;  // causal stream indices, n = k + 2L
    std::vector<double> m_old;
    std::vector<double> m_new;
    std::vector<double> m_delayed_r;
    std::size_t expected_peak_index = 0;
    std::size_t burst_end = 0;       // causal index where the tail span starts
    int exclusion_halfwidth = 0;     // N_CP + D around the expected peak
    // entries outside the true-peak window: m_new >= 0.6, m_old >= 0.6 * max
    std::vector<PeakCandidate> spurious_old;
    std::vector<PeakCandidate> spurious_new;
};

struct HistogramResult {
    int trials = 0;
    std::vector<double> peak_values_old;  // metric at the expected peak, per trial
    std::vector<double> peak_values_new;
    double mean_old = 0.0, mean_new = 0.0;
    double var_old = 0.0, var_new = 0.0;  // unbiased
    bool degenerate_sample = false;       // trials < 2
    std::vector<double> bin_edges;        // 65 edges, shared by both statistics
    std::vector<double> counts_old;       // normalized: sums to 1
    std::vector<double> counts_new;
};

struct ExperimentSummary {
    std::string scenario;
    std::string config_echo;
    std::vector<std::pair<std::string, bool>> flags;
    std::map<std::string, double> stats;

    bool all_passed() const {
        for (const auto& [name, ok] : flags)
            if (!ok) return false;
        return true;
    }
};

TraceResult run_trace(const OfdmConfig& cfg,
                      const std::optional<ChannelModel>& ch,
                      const NoiseSpec& noise,
                      std::uint64_t seed);

// Independent AWGN trials; metric values read at the known expected peak
// index so the statistic's distribution is isolated from peak finding.
HistogramResult run_histogram(const OfdmConfig& cfg,
                              const NoiseSpec& noise,
                              int trials,
                              std::uint64_t base_seed);

ExperimentSummary summarize(const TraceResult& result,
                            const OfdmConfig& cfg,
                            double threshold,
                            int multipath_duration);

ExperimentSummary summarize(const HistogramResult& result);

// Property checks exercised by the `selftest` subcommand: metric
// boundedness, batch/stream equivalence, noiseless peak attainment.
std::vector<std::pair<std::string, bool>> run_selftest();

}  // namespace ofdmsync
