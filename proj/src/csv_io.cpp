#include "ofdmsync/csv_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ofdmsync {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

[[noreturn]] void bad_line(int line, const std::string& key, const std::string& what) {
    std::ostringstream os;
    os << "config line " << line << ": key '" << key << "': " << what;
    throw ConfigError(os.str());
}

double parse_real(int line, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        bad_line(line, key, "malformed real value '" + value + "'");
    }
}

long long parse_int(int line, const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        bad_line(line, key, "malformed integer value '" + value + "'");
    }
}

bool parse_bool(int line, const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad_line(line, key, "expected true/false");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

}  // namespace

NoiseSpec RunConfig::noise() const {
    return convention == SnrConvention::kEbN0Qpsk ? NoiseSpec::from_eb_n0_qpsk(level_db)
                                                  : NoiseSpec::from_es_n0(level_db);
}

ChannelModel parse_taps(const std::string& text) {
    ChannelModel ch;
    std::istringstream ss(text);
    std::string entry;
    while (std::getline(ss, entry, ';')) {
        entry = trim(entry);
        if (entry.empty()) continue;
        int delay = 0;
        double re = 0.0, im = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream es(entry);
        if (!(es >> delay >> c1 >> re >> c2 >> im) || c1 != ':' || c2 != ',' ||
            (es >> std::ws, !es.eof()))
            throw ConfigError("malformed tap '" + entry + "'; expected d:re,im");
        ch.taps.push_back({delay, cplx{re, im}});
    }
    ch.validate();
    return ch;
}

std::string format_taps(const ChannelModel& ch) {
    std::string out;
    for (std::size_t i = 0; i < ch.taps.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(ch.taps[i].delay) + ":" + fmt9(ch.taps[i].gain.real()) + "," +
               fmt9(ch.taps[i].gain.imag());
    }
    return out;
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
    std::istringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        const std::size_t hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << "config line " << line_no << ": expected 'key = value'";
            throw ConfigError(os.str());
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "fft_size") {
            base.cfg.fft_size = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "cp_len") {
            base.cfg.cp_len = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "num_data_symbols") {
            base.cfg.num_data_symbols = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "lead_noise_len") {
            base.cfg.lead_noise_len = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "tail_noise_len") {
            base.cfg.tail_noise_len = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "preamble_has_cp") {
            base.cfg.preamble_has_cp = parse_bool(line_no, key, value);
        } else if (key == "base_seed") {
            base.cfg.base_seed = static_cast<std::uint64_t>(parse_int(line_no, key, value));
        } else if (key == "eb_n0_db") {
            base.cfg.eb_over_n0_db = parse_real(line_no, key, value);
            base.convention = SnrConvention::kEbN0Qpsk;
            base.level_db = base.cfg.eb_over_n0_db;
        } else if (key == "es_n0_db") {
            base.cfg.es_over_n0_db = parse_real(line_no, key, value);
            base.convention = SnrConvention::kEsN0;
            base.level_db = base.cfg.es_over_n0_db;
        } else if (key == "taps") {
            try {
                base.channel = parse_taps(value);
            } catch (const std::exception& e) {
                bad_line(line_no, key, e.what());
            }
        } else if (key == "trials") {
            base.trials = static_cast<int>(parse_int(line_no, key, value));
        } else if (key == "threshold") {
            base.threshold = parse_real(line_no, key, value);
        } else {
            bad_line(line_no, key, "unknown key");
        }

        try {
            base.cfg.validate();
        } catch (const std::exception& e) {
            bad_line(line_no, key, e.what());
        }
    }
    return base;
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config_text(os.str(), std::move(base));
}

void write_trace_csv(const TraceResult& result, const std::string& path) {
    auto out = open_out(path);
    out << "n,m_old,m_new,m_delayed_r\n";
    for (std::size_t i = 0; i < result.indices.size(); ++i)
        out << result.indices[i] << ',' << fmt9(result.m_old[i]) << ',' << fmt9(result.m_new[i])
            << ',' << fmt9(result.m_delayed_r[i]) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_histogram_csv(const HistogramResult& result, const std::string& path) {
    if (result.trials < 1) throw IoError("refusing to write histogram with zero trials");
    auto out = open_out(path);
    out << "bin_left,bin_right,count_old_norm,count_new_norm\n";
    for (std::size_t b = 0; b + 1 < result.bin_edges.size(); ++b)
        out << fmt9(result.bin_edges[b]) << ',' << fmt9(result.bin_edges[b + 1]) << ','
            << fmt9(result.counts_old[b]) << ',' << fmt9(result.counts_new[b]) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_meta(const RunConfig& run, std::uint64_t seed, const std::string& path) {
    auto out = open_out(path);
    out << "fft_size = " << run.cfg.fft_size << '\n'
        << "cp_len = " << run.cfg.cp_len << '\n'
        << "num_data_symbols = " << run.cfg.num_data_symbols << '\n'
        << "lead_noise_len = " << run.cfg.lead_noise_len << '\n'
        << "tail_noise_len = " << run.cfg.tail_noise_len << '\n'
        << "preamble_has_cp = " << (run.cfg.preamble_has_cp ? "true" : "false") << '\n'
        << "base_seed = " << run.cfg.base_seed << '\n'
        << "run_seed = " << seed << '\n'
        << "snr_convention = "
        << (run.convention == SnrConvention::kEbN0Qpsk ? "eb_n0_qpsk" : "es_n0") << '\n'
        << "level_db = " << fmt9(run.level_db) << '\n'
        << "sigma_sq = " << fmt9(run.noise().sigma_sq) << '\n'
        << "trials = " << run.trials << '\n'
        << "threshold = " << fmt9(run.threshold) << '\n';
    if (run.channel) out << "taps = " << format_taps(*run.channel) << '\n';
    if (!out) throw IoError("write failed for '" + path + "'");
}

void emit_trace_plot_script(const std::string& csv_path, const std::string& out_path) {
    if (!std::ifstream(csv_path)) throw IoError("missing CSV '" + csv_path + "'");
    auto out = open_out(out_path);
    out << "# gnuplot script: timing metric traces\n"
        << "set datafile separator ','\n"
        << "set key top right\n"
        << "set xlabel 'sample index n'\n"
        << "set ylabel 'metric'\n"
        << "plot '" << csv_path << "' using 1:2 with lines title 'M old', \\\n"
        << "     '" << csv_path << "' using 1:3 with lines title 'M new'\n";
    if (!out) throw IoError("write failed for '" + out_path + "'");
}

void emit_histogram_plot_script(const std::string& csv_path, const std::string& out_path) {
    if (!std::ifstream(csv_path)) throw IoError("missing CSV '" + csv_path + "'");
    auto out = open_out(out_path);
    out << "# gnuplot script: peak-statistic histograms\n"
        << "set datafile separator ','\n"
        << "set style fill solid 0.5\n"
        << "set xlabel 'metric value at expected peak'\n"
        << "set ylabel 'normalized count'\n"
        << "plot '" << csv_path << "' using (($1+$2)/2):3 with boxes title 'S-C statistic', \\\n"
        << "     '" << csv_path << "' using (($1+$2)/2):4 with boxes title 'modified statistic'\n";
    if (!out) throw IoError("write failed for '" + out_path + "'");
}

}  // namespace ofdmsync
