#include "finsim/hydro.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "finsim/actuator.hpp"
#include "finsim/ray_sim.hpp"
#include "finsim/units.hpp"

namespace finsim {

const double kAmplitudeMeanCorrection = 1.0;

std::string SwimResult::to_csv() const {
    std::ostringstream out;
    out << "t_s,surge_m,sway_m,heave_m,yaw_rad,vsurge_mps,vsway_mps,vheave_mps,yaw_rate_radps\n";
    for (const auto& s : trajectory) {
        out << units::format_double(s.time) << ',' << units::format_double(s.position[0])
            << ',' << units::format_double(s.position[1]) << ','
            << units::format_double(s.position[2]) << ',' << units::format_double(s.yaw)
            << ',' << units::format_double(s.velocity[0]) << ','
            << units::format_double(s.velocity[1]) << ','
            << units::format_double(s.velocity[2]) << ','
            << units::format_double(s.yaw_rate) << '\n';
    }
    return out.str();
}

std::string Metrics::to_csv() const {
    std::ostringstream out;
    out << "strouhal,specific_wavelength,electrical_power_w,a_pkpk_m,a_mean_m,"
           "strouhal_defined,sw_defined\n";
    out << units::format_double(strouhal) << ',' << units::format_double(specific_wavelength)
        << ',' << units::format_double(electrical_power) << ','
        << units::format_double(A_pkpk) << ',' << units::format_double(A_mean) << ','
        << (strouhal_defined ? 1 : 0) << ',' << (sw_defined ? 1 : 0) << '\n';
    return out.str();
}

Wrench element_wrench(double slope, double lateral_velocity,
                      const std::array<double, 3>& body_velocity,
                      const FinElement& element, const HydroModel& hydro) {
    if (!(element.width > 0) || !(element.span > 0))
        throw std::invalid_argument("element_wrench: element dimensions must be > 0");

    // deflection direction of the fin surface (zero-slope normal)
    const double sd = std::sin(element.dihedral) * element.side_sign;
    const double cd = std::cos(element.dihedral);
    // local normal tilted by the slope along the fin base
    const double norm = std::sqrt(1.0 + slope * slope);
    const std::array<double, 3> n = {-slope / norm, sd / norm, cd / norm};

    const std::array<double, 3> v_total = {body_velocity[0],
                                           body_velocity[1] + lateral_velocity * sd,
                                           body_velocity[2] + lateral_velocity * cd};
    const double v_n = v_total[0] * n[0] + v_total[1] * n[1] + v_total[2] * n[2];

    const double area = element.width * element.span;
    const double magnitude = 0.5 * hydro.water_density * hydro.normal_drag_coeff *
                             area * std::fabs(v_n) * v_n;

    Wrench w;
    w.force[0] = -magnitude * n[0] * hydro.thrust_gain;
    w.force[1] = -magnitude * n[1];
    w.force[2] = -magnitude * n[2];
    w.yaw_torque = element.x_lever * w.force[1] - element.y_lever * w.force[0];
    return w;
}

namespace {

std::vector<FinElement> fin_elements(const RobotConfig& config,
                                     const FinAssemblyConfig& fin) {
    std::vector<FinElement> out;
    const auto& x = fin.ray_positions;
    if (x.size() < 2) return out;
    const double mid = 0.5 * (x.front() + x.back());
    const int side_sign = fin.side == FinSide::left    ? 1
                          : fin.side == FinSide::right ? -1
                                                       : 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        FinElement e;
        e.width = x[i + 1] - x[i];
        e.span = fin.ray_span;
        e.x_lever = 0.5 * (x[i] + x[i + 1]) - mid;
        e.y_lever = side_sign * 0.5 * (config.body_width + fin.ray_span);
        e.dihedral = fin.dihedral;
        e.side_sign = side_sign;
        out.push_back(e);
    }
    return out;
}

}  // namespace

Wrench net_wrench(const RobotConfig& config, const std::vector<FinKinematics>& fins,
                  const RobotState& state) {
    if (fins.size() != config.fins.size())
        throw std::invalid_argument("net_wrench: kinematics do not match fins");

    Wrench total;
    for (std::size_t fi = 0; fi < config.fins.size(); ++fi) {
        const auto& fin = config.fins[fi];
        const auto& kin = fins[fi];
        const auto elements = fin_elements(config, fin);
        for (std::size_t ei = 0; ei < elements.size(); ++ei) {
            const auto& e = elements[ei];
            const double u0 = kin.tip_deflection[ei], u1 = kin.tip_deflection[ei + 1];
            const double v0 = kin.tip_velocity[ei], v1 = kin.tip_velocity[ei + 1];
            const double slope = (u1 - u0) / e.width;
            const double udot = 0.5 * (v0 + v1);
            const std::array<double, 3> v_at = {
                state.velocity[0] - state.yaw_rate * e.y_lever,
                state.velocity[1] + state.yaw_rate * e.x_lever,
                state.velocity[2]};
            const Wrench w = element_wrench(slope, udot, v_at, e, config.hydro);
            total.force[0] += w.force[0];
            total.force[1] += w.force[1];
            total.force[2] += w.force[2];
            total.yaw_torque += w.yaw_torque;
        }
    }

    const auto& h = config.hydro;
    for (int d = 0; d < 3; ++d) {
        const double v = state.velocity[static_cast<std::size_t>(d)];
        total.force[static_cast<std::size_t>(d)] -=
            0.5 * h.water_density * h.body_drag_coeff[static_cast<std::size_t>(d)] *
            h.body_reference_area[static_cast<std::size_t>(d)] * std::fabs(v) * v;
    }
    total.yaw_torque -= h.yaw_drag_coeff * std::fabs(state.yaw_rate) * state.yaw_rate;
    return total;
}

namespace {

struct BodyDeriv {
    std::array<double, 3> accel;
    double yaw_accel;
};

BodyDeriv body_deriv(const RobotConfig& config, const Wrench& w) {
    BodyDeriv d;
    for (int i = 0; i < 3; ++i) {
        const double m_eff =
            config.body_mass * (1.0 + config.hydro.added_mass_coeff[static_cast<std::size_t>(i)]);
        d.accel[static_cast<std::size_t>(i)] = w.force[static_cast<std::size_t>(i)] / m_eff;
    }
    d.yaw_accel = w.yaw_torque / config.hydro.yaw_inertia;
    return d;
}

struct FinSim {
    raysim::Coeffs coeffs;
    raysim::State state;
    raysim::Workspace work;
    std::vector<double> phase, scale;
    const WavePlan* plan;
    bool enabled;
    double ratio;

    FinSim(const FinAssemblyConfig& fin, const FinDrive& drive)
        : coeffs(raysim::make_coeffs(fin.ray, static_cast<int>(fin.ray_positions.size()),
                                     fin.coupling_stiffness)),
          work(static_cast<int>(fin.ray_positions.size())),
          plan(&drive.plan),
          enabled(drive.enabled),
          ratio(fin.ray.transmission_ratio) {
        const int n = static_cast<int>(fin.ray_positions.size());
        state.s.assign(static_cast<std::size_t>(n),
                       static_deflection(0.0, fin.ray).stroke);
        state.v.assign(static_cast<std::size_t>(n), 0.0);
        phase.resize(static_cast<std::size_t>(n));
        scale.resize(static_cast<std::size_t>(n));
        if (enabled) {
            const auto applied = apply_envelope(drive.plan, fin.ray_positions, drive.envelope);
            for (int i = 0; i < n; ++i) {
                phase[static_cast<std::size_t>(i)] = applied.rays[static_cast<std::size_t>(i)].phase;
                scale[static_cast<std::size_t>(i)] = applied.rays[static_cast<std::size_t>(i)].power_scale;
            }
        }
    }

    void currents(double t, double* out) const {
        const int n = state.n();
        if (!enabled) {
            for (int i = 0; i < n; ++i) out[i] = 0.0;
            return;
        }
        for (int i = 0; i < n; ++i)
            out[i] = drive_current(t, *plan, phase[static_cast<std::size_t>(i)],
                                   scale[static_cast<std::size_t>(i)]);
    }

    FinKinematics kinematics() const {
        FinKinematics k;
        const int n = state.n();
        k.tip_deflection.resize(static_cast<std::size_t>(n));
        k.tip_velocity.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            k.tip_deflection[static_cast<std::size_t>(i)] = state.s[static_cast<std::size_t>(i)] * ratio;
            k.tip_velocity[static_cast<std::size_t>(i)] = state.v[static_cast<std::size_t>(i)] * ratio;
        }
        return k;
    }
};

}  // namespace

SwimOutput simulate_swim(const RobotConfig& config, const std::vector<FinDrive>& drives,
                         double duration, double dt) {
    if (drives.size() != config.fins.size())
        throw std::invalid_argument("simulate_swim: one drive per fin required");
    double fmax = 0.0;
    for (const auto& d : drives)
        if (d.enabled) fmax = std::max(fmax, d.plan.frequency);
    if (fmax > 0.0 && duration < 20.0 / fmax)
        throw std::invalid_argument("simulate_swim: duration must be >= 20/f");
    if (!(dt > 0.0)) throw std::invalid_argument("simulate_swim: dt must be > 0");

    std::vector<FinSim> fins;
    fins.reserve(config.fins.size());
    for (std::size_t i = 0; i < config.fins.size(); ++i)
        fins.emplace_back(config.fins[i], drives[i]);

    const int steps = static_cast<int>(std::llround(duration / dt));
    SwimOutput out;
    out.result.trajectory.reserve(static_cast<std::size_t>(steps) + 1);
    out.fields.resize(config.fins.size());
    for (std::size_t i = 0; i < config.fins.size(); ++i) {
        out.fields[i].ray_positions = config.fins[i].ray_positions;
        out.fields[i].dt = dt;
        out.fields[i].frames.reserve(static_cast<std::size_t>(steps) + 1);
    }

    RobotState body;
    auto record = [&] {
        out.result.trajectory.push_back(body);
        for (std::size_t i = 0; i < fins.size(); ++i)
            out.fields[i].frames.push_back(fins[i].kinematics().tip_deflection);
    };
    record();

    std::vector<FinKinematics> kin(fins.size());
    for (int step = 1; step <= steps; ++step) {
        for (std::size_t i = 0; i < fins.size(); ++i) kin[i] = fins[i].kinematics();
        const Wrench w0 = net_wrench(config, kin, body);
        const BodyDeriv d0 = body_deriv(config, w0);

        // predictor for the body, then fin advance, then corrector
        RobotState mid = body;
        for (int i = 0; i < 3; ++i)
            mid.velocity[static_cast<std::size_t>(i)] += dt * d0.accel[static_cast<std::size_t>(i)];
        mid.yaw_rate += dt * d0.yaw_accel;

        for (auto& fin : fins) {
            auto drive = [&fin](double t, double* cur) { fin.currents(t, cur); };
            raysim::rk4_step(fin.state, dt, fin.coeffs, drive, fin.work);
        }

        for (std::size_t i = 0; i < fins.size(); ++i) kin[i] = fins[i].kinematics();
        const Wrench w1 = net_wrench(config, kin, mid);
        const BodyDeriv d1 = body_deriv(config, w1);

        const double cy = std::cos(body.yaw), sy = std::sin(body.yaw);
        const std::array<double, 3> vel0 = body.velocity;
        for (int i = 0; i < 3; ++i) {
            body.velocity[static_cast<std::size_t>(i)] +=
                0.5 * dt * (d0.accel[static_cast<std::size_t>(i)] + d1.accel[static_cast<std::size_t>(i)]);
        }
        body.yaw_rate += 0.5 * dt * (d0.yaw_accel + d1.yaw_accel);

        // world-frame track from body-frame velocities
        const double vx = 0.5 * (vel0[0] + body.velocity[0]);
        const double vy = 0.5 * (vel0[1] + body.velocity[1]);
        body.position[0] += dt * (cy * vx - sy * vy);
        body.position[1] += dt * (sy * vx + cy * vy);
        body.position[2] += dt * 0.5 * (vel0[2] + body.velocity[2]);
        body.yaw += dt * body.yaw_rate;
        body.time = step * dt;

        for (int i = 0; i < 3; ++i)
            if (!std::isfinite(body.velocity[static_cast<std::size_t>(i)]))
                throw std::runtime_error("simulate_swim: divergence at step " +
                                         std::to_string(step));
        record();
    }

    // steady window: trailing half
    const std::size_t n = out.result.trajectory.size();
    const std::size_t begin = n / 2;
    std::array<double, 4> mean{};
    std::array<double, 4> peak{};
    for (std::size_t i = begin; i < n; ++i) {
        const auto& s = out.result.trajectory[i];
        const double v[4] = {s.velocity[0], s.velocity[1], s.velocity[2], s.yaw_rate};
        for (int d = 0; d < 4; ++d) {
            mean[static_cast<std::size_t>(d)] += v[d];
            peak[static_cast<std::size_t>(d)] =
                std::max(peak[static_cast<std::size_t>(d)], std::fabs(v[d]));
        }
    }
    for (int d = 0; d < 4; ++d)
        mean[static_cast<std::size_t>(d)] /= static_cast<double>(n - begin);
    out.result.mean_velocity = mean;
    out.result.peak_velocity = peak;
    return out;
}

double strouhal(double frequency, double a_pkpk, double speed) {
    if (!(speed > 0)) throw std::invalid_argument("strouhal: speed must be > 0");
    return frequency * a_pkpk / speed;
}

double specific_wavelength(double wavelength, double a_mean) {
    if (!(a_mean > 0)) throw std::invalid_argument("specific_wavelength: A_mean must be > 0");
    return wavelength / a_mean;
}

double robot_electrical_power(const RobotConfig& config,
                              const std::vector<FinDrive>& drives) {
    double coil_sum = 0.0;
    for (std::size_t fi = 0; fi < config.fins.size(); ++fi) {
        if (fi >= drives.size() || !drives[fi].enabled) continue;
        const auto& fin = config.fins[fi];
        const auto& d = drives[fi];
        const double duty_factor =
            d.plan.waveform == Waveform::sine ? 0.5 : d.plan.duty;
        for (const auto& p : d.envelope.per_ray_power) {
            const double amp = d.plan.current_amplitude;  // per-ray I^2 scales by power
            coil_sum += p.value() * duty_factor * amp * amp * fin.ray.vca.coil_resistance;
        }
    }
    return coil_sum * config.drive_limits.driver_overhead;
}

Metrics swim_metrics(const SwimOutput& out, const RobotConfig& config,
                     const std::vector<FinDrive>& drives) {
    Metrics m;
    double f = 0.0, lambda = 0.0;
    for (const auto& d : drives)
        if (d.enabled) {
            f = std::max(f, d.plan.frequency);
            lambda = std::max(lambda, d.plan.wavelength);
        }

    double a_pkpk = 0.0, a_mean = 0.0;
    int fields = 0;
    for (const auto& field : out.fields) {
        if (field.frames.empty() || f <= 0.0) continue;
        a_pkpk = std::max(a_pkpk, steady_fin_amplitude(field, f));
        a_mean += mean_fin_amplitude(field, f);
        ++fields;
    }
    if (fields > 0) a_mean /= fields;
    m.A_pkpk = a_pkpk;
    m.A_mean = a_mean * kAmplitudeMeanCorrection;

    const double surge = std::fabs(out.result.mean_velocity[0]);
    if (surge > 1e-9 && a_pkpk > 0.0 && f > 0.0) {
        m.strouhal = strouhal(f, a_pkpk, surge);
        m.strouhal_defined = true;
    }
    if (m.A_mean > 1e-9 && lambda > 0.0) {
        m.specific_wavelength = specific_wavelength(lambda, m.A_mean);
        m.sw_defined = true;
    }
    m.electrical_power = robot_electrical_power(config, drives);
    return m;
}

RobotConfig mirrored(const RobotConfig& config) {
    RobotConfig out = config;
    for (auto& fin : out.fins) {
        if (fin.side == FinSide::left)
            fin.side = FinSide::right;
        else if (fin.side == FinSide::right)
            fin.side = FinSide::left;
    }
    return out;
}

}  // namespace finsim
