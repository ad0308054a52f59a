#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ofdmsync/frame.hpp"

namespace ofdmsync {

enum class IndexConvention { kNonCausal, kCausal2L };

// Per-index values of the correlation, energy, and the three metric
// variants. Entry i corresponds to window start i; under kCausal2L the
// stream index of entry i is i + 2L.
struct MetricTrace {
    int lag = 0;  // L
    IndexConvention index_convention = IndexConvention::kNonCausal;
    std::vector<cplx> p;
    std::vector<double> r;  // energy of the newer half window
    std::vector<double> m_old;
    std::vector<double> m_new;
    std::vector<double> m_delayed_r;
};

// P(n) = sum_{m<L} conj(r[n+m]) * r[n+m+L], n = 0 .. len-2L.
std::vector<cplx> sliding_correlation(const SampleVec& stream, int lag);

// R(n) = sum_{m<L} |r[n+m+L]|^2, aligned with sliding_correlation.
std::vector<double> sliding_energy(const SampleVec& stream, int lag);

// E(k) = sum_{m<L} |r[k+m]|^2 for k = 0 .. len-L, so R(n) = E(n+L) and
// R(n-L) = E(n). Feeds the metric variants that need both half-windows.
std::vector<double> window_energy(const SampleVec& stream, int lag);

// M(n) = |P(n)|^2 / R(n)^2; equal-length lists, 0 on zero denominator.
std::vector<double> metric_classic(const std::vector<cplx>& p,
                                   const std::vector<double>& r);

// M~(n) = |P(n)|^2 / (R(n) R(n-L)). `energy` is the window_energy list and
// must have p.size() + lag entries so both halves are available at every n.
std::vector<double> metric_modified(const std::vector<cplx>& p,
                                    const std::vector<double>& energy,
                                    int lag);

// M_d(n) = |P(n)|^2 / R(n-L)^2; same energy-list convention.
std::vector<double> metric_delayed_r(const std::vector<cplx>& p,
                                     const std::vector<double>& energy,
                                     int lag);

// One pass over the stream with sliding accumulators; exact-zero windows
// are tracked by nonzero counts so guarded values stay exactly 0.
MetricTrace compute_trace(const SampleVec& stream, int lag, IndexConvention convention);

// Causal O(1)-per-sample detector. After 2L samples each push returns
// M'(n) = M~(n - 2L); nothing is emitted during warm-up. Accumulators are
// rebuilt from the ring buffer every refresh_interval pushes to bound
// floating-point drift.
class StreamingDetector {
public:
    explicit StreamingDetector(int lag, std::uint64_t refresh_interval = (1ULL << 16));

    std::optional<double> push(cplx sample);

    std::uint64_t samples_seen() const { return samples_seen_; }
    int lag() const { return lag_; }
    cplx correlation_acc() const { return p_acc_; }
    double energy_new_acc() const { return r_new_acc_; }
    double energy_old_acc() const { return r_old_acc_; }

private:
    void refresh_from_buffer();

    int lag_;
    std::uint64_t refresh_interval_;
    std::vector<cplx> ring_;  // last 2L samples, ring_[t mod 2L]
    std::uint64_t samples_seen_ = 0;
    cplx p_acc_{0.0, 0.0};
    double r_new_acc_ = 0.0;
    double r_old_acc_ = 0.0;
    int nz_pair_ = 0;  // window product terms with both factors nonzero
    int nz_new_ = 0;
    int nz_old_ = 0;
};

struct PeakCandidate {
    std::size_t index = 0;
    double value = 0.0;
};

struct PeakReport {
    std::vector<PeakCandidate> candidates;
    std::optional<PeakCandidate> accepted;  // first candidate in stream order
    double threshold = 0.0;
    std::size_t search_window = 1;
};

// A candidate is >= threshold and a strict maximum over the preceding
// `window` entries, allowing ties toward larger indices (so a plateau's
// first sample wins).
PeakReport find_peak(const std::vector<double>& metric, double threshold, std::size_t window);

}  // namespace ofdmsync
