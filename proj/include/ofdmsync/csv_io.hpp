#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ofdmsync/experiments.hpp"

namespace ofdmsync {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully resolved run description: scenario parameters plus harness knobs.
struct RunConfig {
    OfdmConfig cfg;
    std::optional<ChannelModel> channel;
    SnrConvention convention = SnrConvention::kEbN0Qpsk;
    double level_db = 10.0;
    int trials = 2000;
    double threshold = 0.6;
    std::string output_dir = ".";
    bool emit_plot_script = true;

    NoiseSpec noise() const;
};

// Line-oriented `key = value` text, `#` comments. Unknown keys and invariant
// violations are reported with the offending line number. Values override
// the fields of `base`.
RunConfig parse_config_text(const std::string& text, RunConfig base);

RunConfig parse_config_file(const std::string& path, RunConfig base);

// "d1:re,im;d2:re,im" tap-list form used on the command line and in config
// files.
ChannelModel parse_taps(const std::string& text);

std::string format_taps(const ChannelModel& ch);

// CSV with header n,m_old,m_new,m_delayed_r, 9 significant digits, LF line
// endings; a sidecar meta.txt next to it records the resolved config.
void write_trace_csv(const TraceResult& result, const std::string& path);

// CSV with header bin_left,bin_right,count_old_norm,count_new_norm.
void write_histogram_csv(const HistogramResult& result, const std::string& path);

void write_meta(const RunConfig& run, std::uint64_t seed, const std::string& path);

// gnuplot companion scripts referencing the CSVs by relative path.
void emit_trace_plot_script(const std::string& csv_path, const std::string& out_path);
void emit_histogram_plot_script(const std::string& csv_path, const std::string& out_path);

}  // namespace ofdmsync
