#include "finsim/fin.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "finsim/parallel.hpp"
#include "finsim/ray_sim.hpp"
#include "finsim/signal.hpp"
#include "finsim/units.hpp"

namespace finsim {

std::vector<double> FinField::ray_series(int ray) const {
    std::vector<double> out;
    out.reserve(frames.size());
    for (const auto& f : frames) out.push_back(f[static_cast<std::size_t>(ray)]);
    return out;
}

std::string HeatmapGrid::to_csv() const {
    std::ostringstream out;
    out << "lambda_m,freq_hz,pkpk_m,swi\n";
    for (std::size_t iw = 0; iw < wavelengths.size(); ++iw) {
        for (std::size_t jf = 0; jf < frequencies.size(); ++jf) {
            out << units::format_double(wavelengths[iw]) << ','
                << units::format_double(frequencies[jf]) << ','
                << units::format_double(values[iw][jf]) << ','
                << units::format_double(flags[iw][jf]) << '\n';
        }
    }
    return out.str();
}

HeatmapGrid::Peak HeatmapGrid::peak() const {
    Peak p{0.0, 0.0, -1.0, {}};
    for (std::size_t iw = 0; iw < wavelengths.size(); ++iw)
        for (std::size_t jf = 0; jf < frequencies.size(); ++jf)
            if (std::isfinite(values[iw][jf]) && values[iw][jf] > p.value) {
                p.value = values[iw][jf];
                p.wavelength = wavelengths[iw];
                p.frequency = frequencies[jf];
            }
    for (std::size_t iw = 0; iw < wavelengths.size(); ++iw)
        for (std::size_t jf = 0; jf < frequencies.size(); ++jf)
            if (std::isfinite(values[iw][jf]) && values[iw][jf] >= 0.99 * p.value)
                p.within_one_percent.emplace_back(wavelengths[iw], frequencies[jf]);
    return p;
}

FinField simulate_fin(const FinAssemblyConfig& fin, const WavePlan& plan,
                      const EnvelopeSpec& env, double duration, double dt) {
    const double f = plan.frequency;
    if (!(f > 0)) throw std::invalid_argument("simulate_fin: frequency must be > 0");
    if (duration < 10.0 / f)
        throw std::invalid_argument("simulate_fin: duration must be >= 10/f");
    if (dt > 1.0 / (50.0 * f))
        throw std::invalid_argument("simulate_fin: dt must be <= 1/(50 f)");

    const int n = static_cast<int>(fin.ray_positions.size());
    const auto applied = apply_envelope(plan, fin.ray_positions, env);

    raysim::Coeffs coeffs = raysim::make_coeffs(fin.ray, n, fin.coupling_stiffness);
    raysim::State st;
    st.s.assign(static_cast<std::size_t>(n), 0.0);
    st.v.assign(static_cast<std::size_t>(n), 0.0);
    {
        // start every ray at its zero-drive equilibrium
        const double rest = static_deflection(0.0, fin.ray).stroke;
        for (auto& s : st.s) s = rest;
    }
    raysim::Workspace w(n);

    std::vector<double> phase(static_cast<std::size_t>(n)), scale(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        phase[static_cast<std::size_t>(i)] = applied.rays[static_cast<std::size_t>(i)].phase;
        scale[static_cast<std::size_t>(i)] = applied.rays[static_cast<std::size_t>(i)].power_scale;
    }
    auto drive = [&](double t, double* out) {
        for (int i = 0; i < n; ++i)
            out[i] = drive_current(t, plan, phase[static_cast<std::size_t>(i)],
                                   scale[static_cast<std::size_t>(i)]);
    };

    const int steps = static_cast<int>(std::llround(duration / dt));
    FinField field;
    field.ray_positions = fin.ray_positions;
    field.dt = dt;
    field.frames.reserve(static_cast<std::size_t>(steps) + 1);
    const double ratio = fin.ray.transmission_ratio;

    std::vector<double> frame(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) frame[static_cast<std::size_t>(i)] = st.s[static_cast<std::size_t>(i)] * ratio;
    field.frames.push_back(frame);

    for (int step = 1; step <= steps; ++step) {
        raysim::rk4_step(st, dt, coeffs, drive, w);
        for (int i = 0; i < n; ++i) {
            const double s = st.s[static_cast<std::size_t>(i)];
            if (!std::isfinite(s))
                throw std::runtime_error("simulate_fin: non-finite state at step " +
                                         std::to_string(step));
            frame[static_cast<std::size_t>(i)] = s * ratio;
        }
        field.frames.push_back(frame);
    }
    return field;
}

namespace {

// Steady window: trailing half of the frames trimmed to whole periods
// (minimum five periods simulated).
std::pair<std::size_t, std::size_t> steady_window(const FinField& field, double f) {
    const std::size_t n = field.frames.size();
    const double period = 1.0 / f;
    const std::size_t per_period = static_cast<std::size_t>(std::llround(period / field.dt));
    if (per_period == 0 || n < 5 * per_period)
        throw std::invalid_argument("field shorter than five drive periods");
    std::size_t periods = (n / 2) / per_period;
    if (periods == 0) periods = 1;
    const std::size_t len = periods * per_period;
    return {n - len, len};
}

}  // namespace

double steady_fin_amplitude(const FinField& field, double drive_frequency,
                            std::vector<double>* per_ray) {
    const auto [begin, len] = steady_window(field, drive_frequency);
    const int rays = field.ray_count();
    double best = 0.0;
    if (per_ray) per_ray->assign(static_cast<std::size_t>(rays), 0.0);
    std::vector<double> column(len);
    for (int r = 0; r < rays; ++r) {
        for (std::size_t k = 0; k < len; ++k)
            column[k] = field.frames[begin + k][static_cast<std::size_t>(r)];
        double lo, hi;
        kernels::minmax(column.data(), len, &lo, &hi);
        const double pkpk = hi - lo;
        if (per_ray) (*per_ray)[static_cast<std::size_t>(r)] = pkpk;
        best = std::max(best, pkpk);
    }
    return best;
}

double mean_fin_amplitude(const FinField& field, double drive_frequency) {
    const auto [begin, len] = steady_window(field, drive_frequency);
    const int rays = field.ray_count();
    double acc = 0.0;
    for (std::size_t k = 0; k < len; ++k)
        for (int r = 0; r < rays; ++r)
            acc += std::fabs(field.frames[begin + k][static_cast<std::size_t>(r)]);
    return acc / (static_cast<double>(len) * static_cast<double>(rays));
}

HeatmapGrid amplitude_heatmap(const FinAssemblyConfig& fin,
                              const std::vector<double>& wavelengths,
                              const std::vector<double>& frequencies,
                              const WavePlan& plan_template, int workers) {
    if (wavelengths.empty() || frequencies.empty())
        throw std::invalid_argument("amplitude_heatmap: empty grid axis");

    HeatmapGrid grid;
    grid.wavelengths = wavelengths;
    grid.frequencies = frequencies;
    const std::size_t nw = wavelengths.size(), nf = frequencies.size();
    grid.values.assign(nw, std::vector<double>(nf, 0.0));
    grid.flags.assign(nw, std::vector<double>(nf, 0.0));
    grid.errors.assign(nw, std::vector<std::string>(nf));

    const int cells = static_cast<int>(nw * nf);
    parallel_for(cells, workers, [&](int cell) {
        const std::size_t iw = static_cast<std::size_t>(cell) / nf;
        const std::size_t jf = static_cast<std::size_t>(cell) % nf;
        const double lambda = wavelengths[iw];
        const double f = frequencies[jf];
        try {
            WavePlan plan = plan_template;
            plan.wavelength = lambda;
            plan.frequency = f;
            const double period = 1.0 / f;
            const int spp = std::max(64, static_cast<int>(std::llround(period / 1e-3)));
            const double dt = period / spp;
            // ten periods minimum, and enough real time for transients to die
            const int periods = std::max(10, static_cast<int>(std::ceil(6.0 * f)));
            const auto env = EnvelopeSpec::uniform(static_cast<int>(fin.ray_positions.size()));
            FinField field = simulate_fin(fin, plan, env, periods * period, dt);
            grid.values[iw][jf] = steady_fin_amplitude(field, f);
            const auto dec = wave_decompose(field, f, lambda);
            grid.flags[iw][jf] = dec.degenerate ? std::nan("") : dec.standing_wave_index;
        } catch (const std::exception& ex) {
            grid.values[iw][jf] = std::nan("");
            grid.flags[iw][jf] = std::nan("");
            grid.errors[iw][jf] = ex.what();
        }
    });
    return grid;
}

std::vector<std::pair<double, double>> edge_profile(const FinField& field, double t) {
    if (field.frames.empty()) throw std::invalid_argument("edge_profile: empty field");
    if (t < 0.0 || t > field.duration() + 0.5 * field.dt)
        throw std::out_of_range("edge_profile: t outside field duration");
    const std::size_t idx = std::min(field.frames.size() - 1,
                                     static_cast<std::size_t>(std::llround(t / field.dt)));
    const auto& u = field.frames[idx];
    const auto& x = field.ray_positions;
    const std::size_t n = x.size();

    std::vector<std::pair<double, double>> out;
    out.reserve(100);
    if (n == 1) {
        for (int i = 0; i < 100; ++i) out.emplace_back(x[0], u[0]);
        return out;
    }

    // Fritsch-Carlson monotone cubic slopes
    std::vector<double> h(n - 1), d(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        d[i] = (u[i + 1] - u[i]) / h[i];
    }
    m[0] = d[0];
    m[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (d[i] == 0.0) {
            m[i] = m[i + 1] = 0.0;
            continue;
        }
        const double a = m[i] / d[i], b = m[i + 1] / d[i];
        const double s = a * a + b * b;
        if (s > 9.0) {
            const double tau = 3.0 / std::sqrt(s);
            m[i] = tau * a * d[i];
            m[i + 1] = tau * b * d[i];
        }
    }

    const double x0 = x.front(), x1 = x.back();
    std::size_t seg = 0;
    for (int i = 0; i < 100; ++i) {
        const double xi = x0 + (x1 - x0) * static_cast<double>(i) / 99.0;
        while (seg + 2 < n && xi > x[seg + 1]) ++seg;
        const double hh = h[seg];
        const double s = (xi - x[seg]) / hh;
        const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
        const double h10 = s * (1 - s) * (1 - s);
        const double h01 = s * s * (3 - 2 * s);
        const double h11 = s * s * (s - 1);
        out.emplace_back(xi, h00 * u[seg] + h10 * hh * m[seg] + h01 * u[seg + 1] +
                                 h11 * hh * m[seg + 1]);
    }
    return out;
}

}  // namespace finsim
