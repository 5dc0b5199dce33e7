#include "finsim/signal.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "finsim/fin.hpp"
#include "finsim/kernels.hpp"

namespace finsim {

StepMetrics step_metrics(const TimeSeries& series) {
    const auto& s = series.samples;
    if (s.size() < 20) throw std::invalid_argument("step_metrics: series too short");

    double lo, hi;
    {
        std::vector<double> tip(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) tip[i] = s[i].tip_deflection;
        kernels::minmax(tip.data(), tip.size(), &lo, &hi);
    }
    const double range = hi - lo;

    const std::size_t tail_begin = s.size() - std::max<std::size_t>(s.size() / 10, 2);
    double tlo = s[tail_begin].tip_deflection, thi = tlo, final = 0.0;
    for (std::size_t i = tail_begin; i < s.size(); ++i) {
        const double v = s[i].tip_deflection;
        tlo = std::min(tlo, v);
        thi = std::max(thi, v);
        final += v;
    }
    final /= static_cast<double>(s.size() - tail_begin);
    if (range > 0.0 && (thi - tlo) > 0.01 * range)
        throw std::runtime_error("unsettled series");

    StepMetrics m;
    const double initial = s.front().tip_deflection;
    const double delta = final - initial;
    if (delta == 0.0 && range == 0.0) return m;  // constant series

    const double dir = delta >= 0 ? 1.0 : -1.0;
    auto crossing = [&](double level) {
        for (std::size_t i = 1; i < s.size(); ++i) {
            const double a = (s[i - 1].tip_deflection - initial) * dir;
            const double b = (s[i].tip_deflection - initial) * dir;
            if (a < level && b >= level) {
                const double frac = (level - a) / (b - a);
                return s[i - 1].time + frac * (s[i].time - s[i - 1].time);
            }
        }
        return s.back().time;
    };
    const double t10 = crossing(0.1 * std::fabs(delta));
    const double t90 = crossing(0.9 * std::fabs(delta));
    m.rise_time_10_90 = t90 - t10;

    double peak_speed = 0.0, overshoot = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        overshoot = std::max(overshoot, (s[i].tip_deflection - final) * dir);
        if (i > 0 && i + 1 < s.size()) {
            const double v = (s[i + 1].tip_deflection - s[i - 1].tip_deflection) /
                             (s[i + 1].time - s[i - 1].time);
            peak_speed = std::max(peak_speed, std::fabs(v));
        }
    }
    m.overshoot = overshoot;
    m.peak_tip_speed = peak_speed;

    const double band = 0.05 * std::fabs(delta);
    std::size_t last_outside = 0;
    bool any_outside = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::fabs(s[i].tip_deflection - final) > band) {
            last_outside = i;
            any_outside = true;
        }
    }
    m.settling_time = any_outside
                          ? s[std::min(last_outside + 1, s.size() - 1)].time
                          : 0.0;
    if (m.settling_time < m.rise_time_10_90) m.settling_time = m.rise_time_10_90;
    return m;
}

AmplitudeEstimate steady_amplitude_detail(const TimeSeries& series,
                                          double drive_frequency) {
    const auto& s = series.samples;
    if (!(drive_frequency > 0))
        throw std::invalid_argument("steady_amplitude: frequency must be > 0");
    const std::size_t per_period =
        static_cast<std::size_t>(std::llround(1.0 / (drive_frequency * series.dt)));
    if (per_period == 0) throw std::invalid_argument("steady_amplitude: dt too coarse");
    const std::size_t periods = (s.size() / 2) / per_period;
    if (periods < 5)
        throw std::invalid_argument("steady_amplitude: series shorter than five "
                                    "drive periods after transient removal");
    const std::size_t len = periods * per_period;
    const std::size_t begin = s.size() - len;

    std::vector<double> tip(len);
    double mean = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        tip[i] = s[begin + i].tip_deflection;
        mean += tip[i];
    }
    mean /= static_cast<double>(len);

    AmplitudeEstimate out;
    double lo, hi;
    kernels::minmax(tip.data(), len, &lo, &hi);
    out.peak_to_peak = hi - lo;

    std::vector<double> centered(len);
    for (std::size_t i = 0; i < len; ++i) centered[i] = tip[i] - mean;
    const double step = 2.0 * M_PI * drive_frequency * series.dt;
    double sc, ss;
    kernels::demod(centered.data(), len, step, 0.0, &sc, &ss);
    const double amp = 2.0 / static_cast<double>(len) * std::hypot(sc, ss);
    out.dft_peak_to_peak = 2.0 * amp;
    const double ref = std::max(out.peak_to_peak, out.dft_peak_to_peak);
    out.consistent = ref == 0.0 ||
                     std::fabs(out.peak_to_peak - out.dft_peak_to_peak) <= 0.05 * ref;
    return out;
}

double steady_amplitude(const TimeSeries& series, double drive_frequency) {
    return steady_amplitude_detail(series, drive_frequency).peak_to_peak;
}

double cutoff_frequency(const GainCurve& curve) {
    const double threshold = 1.0 / std::sqrt(2.0);
    const auto& e = curve.entries;
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i - 1].normalized_gain >= threshold && e[i].normalized_gain < threshold) {
            const double g0 = e[i - 1].normalized_gain, g1 = e[i].normalized_gain;
            const double frac = (g0 - threshold) / (g0 - g1);
            return e[i - 1].frequency + frac * (e[i].frequency - e[i - 1].frequency);
        }
    }
    throw std::runtime_error("cutoff out of band");
}

WaveDecomposition wave_decompose(const FinField& field, double drive_frequency,
                                 double wavelength) {
    if (field.ray_count() < 3)
        throw std::invalid_argument("wave_decompose: need at least 3 rays");
    if (!(drive_frequency > 0) || !(wavelength > 0))
        throw std::invalid_argument("wave_decompose: frequency and wavelength must be > 0");

    const std::size_t frames = field.frames.size();
    const std::size_t per_period =
        static_cast<std::size_t>(std::llround(1.0 / (drive_frequency * field.dt)));
    if (per_period == 0 || frames < 5 * per_period)
        throw std::invalid_argument("wave_decompose: need at least 5 periods");
    std::size_t periods = (frames / 2) / per_period;
    if (periods == 0) periods = 1;
    const std::size_t len = periods * per_period;
    const std::size_t begin = frames - len;

    const int rays = field.ray_count();
    const double step = 2.0 * M_PI * drive_frequency * field.dt;
    std::vector<std::complex<double>> z(static_cast<std::size_t>(rays));
    std::vector<double> column(len);
    for (int r = 0; r < rays; ++r) {
        double mean = 0.0;
        for (std::size_t k = 0; k < len; ++k) {
            column[k] = field.frames[begin + k][static_cast<std::size_t>(r)];
            mean += column[k];
        }
        mean /= static_cast<double>(len);
        for (std::size_t k = 0; k < len; ++k) column[k] -= mean;
        double sc, ss;
        kernels::demod(column.data(), len, step, 0.0, &sc, &ss);
        // u(t) ~= Re(z e^{i w t}) over the window
        z[static_cast<std::size_t>(r)] =
            std::complex<double>(sc, -ss) * (2.0 / static_cast<double>(len));
    }

    const double k = 2.0 * M_PI / wavelength;
    std::complex<double> m(0.0, 0.0), p1(0.0, 0.0), p2(0.0, 0.0);
    for (int r = 0; r < rays; ++r) {
        const double kx = k * field.ray_positions[static_cast<std::size_t>(r)];
        const std::complex<double> fwd = std::polar(1.0, -kx);  // e^{-ikx}
        const std::complex<double> bwd = std::polar(1.0, +kx);
        m += std::conj(fwd) * bwd;
        p1 += std::conj(fwd) * z[static_cast<std::size_t>(r)];
        p2 += std::conj(bwd) * z[static_cast<std::size_t>(r)];
    }
    const double n = static_cast<double>(rays);
    const double det = n * n - std::norm(m);

    WaveDecomposition out;
    if (det <= 1e-9 * n * n) {
        out.degenerate = true;
        out.standing_wave_index = std::nan("");
        return out;
    }
    const std::complex<double> F = (n * p1 - m * p2) / det;
    const std::complex<double> B = (n * p2 - std::conj(m) * p1) / det;
    out.forward_amplitude = std::abs(F);
    out.backward_amplitude = std::abs(B);
    const double mx = std::max(out.forward_amplitude, out.backward_amplitude);
    const double mn = std::min(out.forward_amplitude, out.backward_amplitude);
    out.standing_wave_index = mx > 1e-15 ? mn / mx : 0.0;
    return out;
}

}  // namespace finsim
