#include "ofdmsync/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ofdmsync {

namespace {

bool nonzero(const cplx& v) { return v.real() != 0.0 || v.imag() != 0.0; }

void check_stream(const SampleVec& stream, int lag) {
    if (lag <= 0) throw std::invalid_argument("lag must be positive");
    if (stream.size() < 2 * static_cast<std::size_t>(lag))
        throw std::invalid_argument("stream must hold at least 2L samples");
}

double guarded_ratio(double num, double den) {
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

std::vector<cplx> sliding_correlation(const SampleVec& stream, int lag) {
    check_stream(stream, lag);
    const std::size_t l = static_cast<std::size_t>(lag);
    const std::size_t count = stream.size() - 2 * l + 1;
    std::vector<cplx> p(count);
    cplx acc{0.0, 0.0};
    for (std::size_t m = 0; m < l; ++m) acc += std::conj(stream[m]) * stream[m + l];
    p[0] = acc;
    for (std::size_t n = 1; n < count; ++n) {
        acc += std::conj(stream[n + l - 1]) * stream[n + 2 * l - 1] -
               std::conj(stream[n - 1]) * stream[n + l - 1];
        p[n] = acc;
    }
    return p;
}

std::vector<double> sliding_energy(const SampleVec& stream, int lag) {
    check_stream(stream, lag);
    const std::size_t l = static_cast<std::size_t>(lag);
    const std::size_t count = stream.size() - 2 * l + 1;
    std::vector<double> r(count);
    double acc = 0.0;
    for (std::size_t m = 0; m < l; ++m) acc += std::norm(stream[m + l]);
    r[0] = acc;
    for (std::size_t n = 1; n < count; ++n) {
        acc += std::norm(stream[n + 2 * l - 1]) - std::norm(stream[n + l - 1]);
        r[n] = std::max(acc, 0.0);
    }
    return r;
}

std::vector<double> window_energy(const SampleVec& stream, int lag) {
    if (lag <= 0) throw std::invalid_argument("lag must be positive");
    const std::size_t l = static_cast<std::size_t>(lag);
    if (stream.size() < l) throw std::invalid_argument("stream shorter than one window");
    const std::size_t count = stream.size() - l + 1;
    std::vector<double> e(count);
    double acc = 0.0;
    for (std::size_t m = 0; m < l; ++m) acc += std::norm(stream[m]);
    e[0] = acc;
    for (std::size_t k = 1; k < count; ++k) {
        acc += std::norm(stream[k + l - 1]) - std::norm(stream[k - 1]);
        e[k] = std::max(acc, 0.0);
    }
    return e;
}

std::vector<double> metric_classic(const std::vector<cplx>& p, const std::vector<double>& r) {
    if (p.size() != r.size())
        throw std::invalid_argument("correlation and energy lists must have equal length");
    std::vector<double> m(p.size());
    for (std::size_t n = 0; n < p.size(); ++n)
        m[n] = guarded_ratio(std::norm(p[n]), r[n] * r[n]);
    return m;
}

std::vector<double> metric_modified(const std::vector<cplx>& p,
                                    const std::vector<double>& energy,
                                    int lag) {
    if (lag <= 0) throw std::invalid_argument("lag must be positive");
    if (energy.size() != p.size() + static_cast<std::size_t>(lag))
        throw std::invalid_argument("energy list must cover both half-windows (p.size() + lag entries)");
    const std::size_t l = static_cast<std::size_t>(lag);
    std::vector<double> m(p.size());
    for (std::size_t n = 0; n < p.size(); ++n)
        m[n] = guarded_ratio(std::norm(p[n]), energy[n + l] * energy[n]);
    return m;
}

std::vector<double> metric_delayed_r(const std::vector<cplx>& p,
                                     const std::vector<double>& energy,
                                     int lag) {
    if (lag <= 0) throw std::invalid_argument("lag must be positive");
    if (energy.size() != p.size() + static_cast<std::size_t>(lag))
        throw std::invalid_argument("energy list must cover both half-windows (p.size() + lag entries)");
    std::vector<double> m(p.size());
    for (std::size_t n = 0; n < p.size(); ++n)
        m[n] = guarded_ratio(std::norm(p[n]), energy[n] * energy[n]);
    return m;
}

MetricTrace compute_trace(const SampleVec& stream, int lag, IndexConvention convention) {
    check_stream(stream, lag);
    const std::size_t l = static_cast<std::size_t>(lag);
    const std::size_t count = stream.size() - 2 * l + 1;

    MetricTrace trace;
    trace.lag = lag;
    trace.index_convention = convention;
    trace.p.resize(count);
    trace.r.resize(count);
    trace.m_old.resize(count);
    trace.m_new.resize(count);
    trace.m_delayed_r.resize(count);

    cplx p_acc{0.0, 0.0};
    double e_old = 0.0, e_new = 0.0;
    int nz_pair = 0, nz_old = 0, nz_new = 0;
    for (std::size_t m = 0; m < l; ++m) {
        const cplx a = stream[m];
        const cplx b = stream[m + l];
        p_acc += std::conj(a) * b;
        e_old += std::norm(a);
        e_new += std::norm(b);
        nz_pair += (nonzero(a) && nonzero(b)) ? 1 : 0;
        nz_old += nonzero(a) ? 1 : 0;
        nz_new += nonzero(b) ? 1 : 0;
    }

    for (std::size_t k = 0;; ++k) {
        // nonzero counts are exact, so all-zero windows read as exactly 0
        // instead of accumulator residue
        const cplx p = nz_pair > 0 ? p_acc : cplx{0.0, 0.0};
        const double r_old = nz_old > 0 ? std::max(e_old, 0.0) : 0.0;
        const double r_new = nz_new > 0 ? std::max(e_new, 0.0) : 0.0;
        const double num = std::norm(p);
        trace.p[k] = p;
        trace.r[k] = r_new;
        trace.m_old[k] = guarded_ratio(num, r_new * r_new);
        trace.m_new[k] = guarded_ratio(num, r_new * r_old);
        trace.m_delayed_r[k] = guarded_ratio(num, r_old * r_old);

        if (k + 1 >= count) break;
        const cplx leaving = stream[k];
        const cplx mid = stream[k + l];
        const cplx entering = stream[k + 2 * l];
        p_acc += std::conj(mid) * entering - std::conj(leaving) * mid;
        e_old += std::norm(mid) - std::norm(leaving);
        e_new += std::norm(entering) - std::norm(mid);
        nz_pair += ((nonzero(mid) && nonzero(entering)) ? 1 : 0) -
                   ((nonzero(leaving) && nonzero(mid)) ? 1 : 0);
        nz_old += (nonzero(mid) ? 1 : 0) - (nonzero(leaving) ? 1 : 0);
        nz_new += (nonzero(entering) ? 1 : 0) - (nonzero(mid) ? 1 : 0);
    }
    return trace;
}

StreamingDetector::StreamingDetector(int lag, std::uint64_t refresh_interval)
    : lag_(lag), refresh_interval_(refresh_interval) {
    if (lag <= 0) throw std::invalid_argument("lag must be positive");
    if (refresh_interval_ == 0) refresh_interval_ = 1ULL << 16;
    ring_.assign(2 * static_cast<std::size_t>(lag), cplx{0.0, 0.0});
}

void StreamingDetector::refresh_from_buffer() {
    const std::size_t l = static_cast<std::size_t>(lag_);
    p_acc_ = cplx{0.0, 0.0};
    r_new_acc_ = 0.0;
    r_old_acc_ = 0.0;
    nz_pair_ = nz_new_ = nz_old_ = 0;
    // oldest buffered sample has age 2L; ring_[t mod 2L] cycles
    const std::uint64_t t = samples_seen_;
    for (std::size_t m = 0; m < l; ++m) {
        const cplx a = ring_[(t + m) % (2 * l)];      // age 2L - m  (old half)
        const cplx b = ring_[(t + l + m) % (2 * l)];  // age L - m   (new half)
        p_acc_ += std::conj(a) * b;
        r_old_acc_ += std::norm(a);
        r_new_acc_ += std::norm(b);
        nz_pair_ += (nonzero(a) && nonzero(b)) ? 1 : 0;
        nz_old_ += nonzero(a) ? 1 : 0;
        nz_new_ += nonzero(b) ? 1 : 0;
    }
}

std::optional<double> StreamingDetector::push(cplx sample) {
    const std::size_t l = static_cast<std::size_t>(lag_);
    const std::size_t slot = static_cast<std::size_t>(samples_seen_ % (2 * l));
    const cplx leaving = ring_[slot];                 // age 2L before this push
    const cplx mid = ring_[(slot + l) % (2 * l)];     // age L before this push

    p_acc_ += std::conj(mid) * sample - std::conj(leaving) * mid;
    r_new_acc_ += std::norm(sample) - std::norm(mid);
    r_old_acc_ += std::norm(mid) - std::norm(leaving);
    nz_pair_ += ((nonzero(mid) && nonzero(sample)) ? 1 : 0) -
                ((nonzero(leaving) && nonzero(mid)) ? 1 : 0);
    nz_new_ += (nonzero(sample) ? 1 : 0) - (nonzero(mid) ? 1 : 0);
    nz_old_ += (nonzero(mid) ? 1 : 0) - (nonzero(leaving) ? 1 : 0);

    ring_[slot] = sample;
    ++samples_seen_;

    if (samples_seen_ % refresh_interval_ == 0) refresh_from_buffer();

    if (samples_seen_ < 2 * static_cast<std::uint64_t>(lag_)) return std::nullopt;

    const cplx p = nz_pair_ > 0 ? p_acc_ : cplx{0.0, 0.0};
    const double r_old = nz_old_ > 0 ? std::max(r_old_acc_, 0.0) : 0.0;
    const double r_new = nz_new_ > 0 ? std::max(r_new_acc_, 0.0) : 0.0;
    return guarded_ratio(std::norm(p), r_old * r_new);
}

PeakReport find_peak(const std::vector<double>& metric, double threshold, std::size_t window) {
    if (metric.empty()) throw std::invalid_argument("metric list is empty");
    if (window < 1) throw std::invalid_argument("window must be at least 1");
    if (threshold < 0.0) throw std::invalid_argument("threshold must be non-negative");

    PeakReport report;
    report.threshold = threshold;
    report.search_window = window;
    for (std::size_t i = 0; i < metric.size(); ++i) {
        const double v = metric[i];
        if (v < threshold) continue;
        bool is_peak = true;
        const std::size_t lo = i >= window ? i - window : 0;
        const std::size_t hi = std::min(metric.size() - 1, i + window);
        for (std::size_t j = lo; j < i && is_peak; ++j)
            if (metric[j] >= v) is_peak = false;  // strict over earlier entries
        for (std::size_t j = i + 1; j <= hi && is_peak; ++j)
            if (metric[j] > v) is_peak = false;   // ties resolve to the smaller index
        if (is_peak) report.candidates.push_back({i, v});
    }
    if (!report.candidates.empty()) report.accepted = report.candidates.front();
    return report;
}

}  // namespace ofdmsync
