#pragma once

#include <string>
#include <vector>

#include "finsim/config.hpp"

namespace finsim {

struct RayState {
    double stroke = 0.0;           // m, coil position within +-stroke_limit
    double stroke_velocity = 0.0;  // m/s
    double time = 0.0;             // s
};

struct TimeSeries {
    struct Sample {
        double time;            // s
        double tip_deflection;  // m
        double stroke;          // m
    };
    double dt = 0.0;
    std::vector<Sample> samples;

    std::string to_csv() const;  // time_s,tip_m,stroke_m
};

struct GainCurve {
    struct Entry {
        double frequency;        // Hz
        double peak_to_peak;     // m, tip
        double normalized_gain;  // relative to static peak-to-peak
    };
    std::vector<Entry> entries;

    std::string to_csv() const;  // freq_hz,pkpk_m,gain
};

struct StaticDeflection {
    double tip = 0.0;     // m, signed
    double stroke = 0.0;  // m, signed
    bool saturated = false;
};

// F = force_constant * current * exp(-stroke^2 / (2 bell_width^2)).
// Throws std::domain_error when |stroke| exceeds the travel.
double vca_force(double current, double stroke, const VcaParams& p);

// Small-deflection kinematic map, tip = ratio * stroke.
double tip_from_stroke(double stroke, double ratio);

// Equilibrium tip deflection at a hold current: bisection on the stroke
// force balance to |residual| < 1 uN, clamped to the travel when no
// interior root exists. `saturated` also flags equilibria within 1% of
// the travel limit.
StaticDeflection static_deflection(double current, const RayModel& ray);

// Constant-current step from the equilibrium at -current (the bench
// protocol: pulled to maximum pull deflection, then pushed). Fixed-step
// RK4 with hard clamping at the travel limits.
TimeSeries step_response(const RayModel& ray, double current, double duration,
                         double dt);

// Sinusoidal drive at each frequency; steady-state peak-to-peak tip
// amplitude over the trailing cycles/2 periods, normalised by the static
// peak-to-peak at the same current amplitude.
GainCurve frequency_response(const RayModel& ray, double current_amplitude,
                             const std::vector<double>& frequencies, int cycles);

// Per-coil electrical power, P = I_rms^2 * R.
double coil_power(double current_rms, double resistance);

}  // namespace finsim
