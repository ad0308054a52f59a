#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ofdmsync/csv_io.hpp"

namespace fs = std::filesystem;
using namespace ofdmsync;

namespace {

struct CliValues {
    std::string config_path;
    std::string output_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::optional<int> cp;
    std::optional<int> data_symbols;
    std::optional<double> eb_n0_db;
    std::optional<double> es_n0_db;
    std::string taps;
    std::optional<int> trials;
    std::optional<double> threshold;
    bool no_plot_script = false;
};

void add_common_options(CLI::App* cmd, CliValues& v) {
    cmd->add_option("--config", v.config_path, "key = value config file");
    cmd->add_option("--output-dir", v.output_dir, "directory for CSV/meta/plot outputs");
    cmd->add_option("--seed", v.seed, "base seed");
    cmd->add_option("--n", v.n, "FFT size N (power of two)");
    cmd->add_option("--cp", v.cp, "cyclic prefix length");
    cmd->add_option("--data-symbols", v.data_symbols, "number of data symbols in the burst");
    auto* eb = cmd->add_option("--eb-n0-db", v.eb_n0_db, "Eb/N0 in dB (QPSK convention)");
    auto* es = cmd->add_option("--es-n0-db", v.es_n0_db, "Es/N0 in dB");
    eb->excludes(es);
    cmd->add_option("--taps", v.taps, "multipath taps, 'd1:re,im;d2:re,im'");
    cmd->add_option("--trials", v.trials, "Monte Carlo trial count");
    cmd->add_option("--threshold", v.threshold, "peak acceptance threshold");
    cmd->add_flag("--no-plot-script", v.no_plot_script, "skip the companion gnuplot script");
}

// defaults, then config file, then flag overrides
RunConfig resolve(const CliValues& v, RunConfig run = RunConfig{}) {
    if (!v.config_path.empty()) run = parse_config_file(v.config_path, run);
    if (v.seed) run.cfg.base_seed = *v.seed;
    if (v.n) run.cfg.fft_size = *v.n;
    if (v.cp) run.cfg.cp_len = *v.cp;
    if (v.data_symbols) run.cfg.num_data_symbols = *v.data_symbols;
    if (v.eb_n0_db) {
        run.cfg.eb_over_n0_db = *v.eb_n0_db;
        run.convention = SnrConvention::kEbN0Qpsk;
        run.level_db = *v.eb_n0_db;
    }
    if (v.es_n0_db) {
        run.cfg.es_over_n0_db = *v.es_n0_db;
        run.convention = SnrConvention::kEsN0;
        run.level_db = *v.es_n0_db;
    }
    if (!v.taps.empty()) run.channel = parse_taps(v.taps);
    if (v.trials) run.trials = *v.trials;
    if (v.threshold) run.threshold = *v.threshold;
    run.output_dir = v.output_dir;
    run.emit_plot_script = !v.no_plot_script;
    run.cfg.validate();
    if (run.trials < 1) throw ConfigError("trials must be at least 1");
    if (run.threshold < 0.0) throw ConfigError("threshold must be non-negative");
    return run;
}

void print_summary(const ExperimentSummary& summary) {
    std::cout << "scenario: " << summary.scenario << " (" << summary.config_echo << ")\n";
    for (const auto& [name, value] : summary.stats)
        std::cout << "  " << name << " = " << value << '\n';
    for (const auto& [name, ok] : summary.flags)
        std::cout << "  [" << (ok ? "PASS" : "FAIL") << "] " << name << '\n';
}

int cmd_trace(const CliValues& v) {
    const RunConfig run = resolve(v);
    const TraceResult result = run_trace(run.cfg, run.channel, run.noise(), run.cfg.base_seed);
    fs::create_directories(run.output_dir);
    const fs::path dir(run.output_dir);
    write_trace_csv(result, (dir / "trace.csv").string());
    write_meta(run, run.cfg.base_seed, (dir / "meta.txt").string());
    if (run.emit_plot_script)
        emit_trace_plot_script((dir / "trace.csv").string(), (dir / "plot_trace.gp").string());

    const ExperimentSummary summary = summarize(
        result, run.cfg, run.threshold, run.channel ? run.channel->duration() : 0);
    print_summary(summary);
    return summary.all_passed() ? 0 : 1;
}

int cmd_histogram(const CliValues& v) {
    RunConfig base;  // histogram study defaults to the Es/N0 convention
    base.convention = SnrConvention::kEsN0;
    base.level_db = base.cfg.es_over_n0_db;
    const RunConfig run = resolve(v, base);
    const HistogramResult result =
        run_histogram(run.cfg, run.noise(), run.trials, run.cfg.base_seed);
    fs::create_directories(run.output_dir);
    const fs::path dir(run.output_dir);
    write_histogram_csv(result, (dir / "histogram.csv").string());
    write_meta(run, run.cfg.base_seed, (dir / "meta.txt").string());
    if (run.emit_plot_script)
        emit_histogram_plot_script((dir / "histogram.csv").string(),
                                   (dir / "plot_histogram.gp").string());

    const ExperimentSummary summary = summarize(result);
    print_summary(summary);
    return summary.all_passed() ? 0 : 1;
}

int cmd_selftest() {
    bool all = true;
    for (const auto& [name, ok] : run_selftest()) {
        std::cout << "[" << (ok ? "PASS" : "FAIL") << "] " << name << '\n';
        all = all && ok;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Schmidl-Cox OFDM timing detector simulation harness"};
    app.require_subcommand(1);

    CliValues trace_v, hist_v;
    auto* trace = app.add_subcommand("trace", "one scenario's metric traces to CSV");
    add_common_options(trace, trace_v);
    auto* hist = app.add_subcommand("histogram", "Monte Carlo peak-statistic histograms");
    add_common_options(hist, hist_v);
    app.add_subcommand("selftest", "run built-in property checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (trace->parsed()) return cmd_trace(trace_v);
        if (hist->parsed()) return cmd_histogram(hist_v);
        return cmd_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
