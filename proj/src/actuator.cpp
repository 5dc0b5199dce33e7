#include "finsim/actuator.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "finsim/ray_sim.hpp"
#include "finsim/units.hpp"

namespace finsim {

namespace raysim {

Coeffs make_coeffs(const RayModel& ray, int n, double tip_coupling) {
    Coeffs c;
    const std::size_t un = static_cast<std::size_t>(n);
    c.drive_gain.assign(un, ray.vca.force_constant);
    c.inv_two_bw2.assign(un, 1.0 / (2.0 * ray.vca.bell_width * ray.vca.bell_width));
    c.stiffness.assign(un, ray.effective_stiffness());
    c.damping_lin.assign(un, ray.effective_damping_linear());
    c.damping_quad.assign(un, ray.damping_quadratic);
    c.inv_mass.assign(un, 1.0 / ray.total_mass());
    c.bias.assign(un, ray.gravity_bias());
    const double r = ray.transmission_ratio;
    c.coupling = tip_coupling * r * r;
    c.stroke_limit = ray.vca.stroke_limit;
    return c;
}

}  // namespace raysim

std::string TimeSeries::to_csv() const {
    std::ostringstream out;
    out << "time_s,tip_m,stroke_m\n";
    for (const auto& s : samples) {
        out << units::format_double(s.time) << ','
            << units::format_double(s.tip_deflection) << ','
            << units::format_double(s.stroke) << '\n';
    }
    return out.str();
}

std::string GainCurve::to_csv() const {
    std::ostringstream out;
    out << "freq_hz,pkpk_m,gain\n";
    for (const auto& e : entries) {
        out << units::format_double(e.frequency) << ','
            << units::format_double(e.peak_to_peak) << ','
            << units::format_double(e.normalized_gain) << '\n';
    }
    return out.str();
}

double vca_force(double current, double stroke, const VcaParams& p) {
    const double limit = p.stroke_limit * (1.0 + 1e-12);
    if (std::fabs(stroke) > limit) {
        throw std::domain_error("stroke " + units::format_double(stroke) +
                                " outside travel +-" +
                                units::format_double(p.stroke_limit));
    }
    return p.force_constant * current *
           std::exp(-stroke * stroke / (2.0 * p.bell_width * p.bell_width));
}

double tip_from_stroke(double stroke, double ratio) { return ratio * stroke; }

StaticDeflection static_deflection(double current, const RayModel& ray) {
    const double limit = ray.vca.stroke_limit;
    const double k = ray.effective_stiffness();
    const double bias = ray.gravity_bias();
    auto residual = [&](double s) {
        return vca_force(current, s, ray.vca) - k * s - bias;
    };

    StaticDeflection out;
    double lo = -limit, hi = limit;
    double flo = residual(lo), fhi = residual(hi);
    if (flo == 0.0) {
        out.stroke = lo;
    } else if (fhi == 0.0) {
        out.stroke = hi;
    } else if (flo > 0.0 && fhi > 0.0) {
        // net force still pushing outward at the end of travel
        out.stroke = limit;
        out.saturated = true;
    } else if (flo < 0.0 && fhi < 0.0) {
        out.stroke = -limit;
        out.saturated = true;
    } else {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = residual(mid);
            if (std::fabs(fm) < 1e-9 || hi - lo < 1e-16) {
                lo = hi = mid;
                break;
            }
            if ((fm > 0.0) == (flo > 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        out.stroke = 0.5 * (lo + hi);
    }
    if (std::fabs(out.stroke) >= 0.99 * limit) out.saturated = true;
    out.tip = tip_from_stroke(out.stroke, ray.transmission_ratio);
    return out;
}

TimeSeries step_response(const RayModel& ray, double current, double duration,
                         double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("step_response: dt must be > 0");
    if (duration < 10.0 * dt)
        throw std::invalid_argument("step_response: duration must be >= 10*dt");

    raysim::Coeffs coeffs = raysim::make_coeffs(ray, 1, 0.0);
    raysim::State st;
    st.s = {static_deflection(-current, ray).stroke};
    st.v = {0.0};
    raysim::Workspace w(1);

    const int steps = static_cast<int>(std::llround(duration / dt));
    TimeSeries series;
    series.dt = dt;
    series.samples.reserve(static_cast<std::size_t>(steps) + 1);
    const double ratio = ray.transmission_ratio;
    series.samples.push_back({0.0, tip_from_stroke(st.s[0], ratio), st.s[0]});

    auto drive = [current](double, double* out) { out[0] = current; };
    for (int i = 1; i <= steps; ++i) {
        raysim::rk4_step(st, dt, coeffs, drive, w);
        if (!std::isfinite(st.s[0]) || !std::isfinite(st.v[0])) {
            throw std::runtime_error("step_response: non-finite state at step " +
                                     std::to_string(i));
        }
        series.samples.push_back({i * dt, tip_from_stroke(st.s[0], ratio), st.s[0]});
    }
    return series;
}

GainCurve frequency_response(const RayModel& ray, double current_amplitude,
                             const std::vector<double>& frequencies, int cycles) {
    if (cycles < 10)
        throw std::invalid_argument("frequency_response: cycles must be >= 10");
    for (double f : frequencies)
        if (!(f > 0.0))
            throw std::invalid_argument("frequency_response: frequencies must be > 0");

    const double ratio = ray.transmission_ratio;
    const double static_pkpk =
        static_deflection(current_amplitude, ray).tip -
        static_deflection(-current_amplitude, ray).tip;

    GainCurve curve;
    curve.entries.reserve(frequencies.size());
    raysim::Coeffs coeffs = raysim::make_coeffs(ray, 1, 0.0);
    const double rest = static_deflection(0.0, ray).stroke;

    for (double f : frequencies) {
        const int spp = std::max(64, static_cast<int>(std::ceil(1.0 / (f * 1e-3))));
        const double dt = 1.0 / (f * spp);
        const int total = spp * cycles;
        const int window = spp * (cycles / 2);

        raysim::State st;
        st.s = {rest};
        st.v = {0.0};
        raysim::Workspace w(1);
        const double omega = 2.0 * M_PI * f;
        auto drive = [&](double t, double* out) {
            out[0] = current_amplitude * std::sin(omega * t);
        };

        std::vector<double> tip(static_cast<std::size_t>(window));
        int wi = 0;
        for (int i = 1; i <= total; ++i) {
            raysim::rk4_step(st, dt, coeffs, drive, w);
            if (i > total - window) tip[static_cast<std::size_t>(wi++)] = st.s[0] * ratio;
        }
        double lo, hi;
        kernels::minmax(tip.data(), tip.size(), &lo, &hi);
        const double pkpk = hi - lo;
        curve.entries.push_back({f, pkpk, static_pkpk > 0 ? pkpk / static_pkpk : 0.0});
    }
    return curve;
}

double coil_power(double current_rms, double resistance) {
    return current_rms * current_rms * resistance;
}

}  // namespace finsim
