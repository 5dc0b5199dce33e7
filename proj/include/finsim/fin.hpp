#pragma once

#include <string>
#include <vector>

#include "finsim/config.hpp"
#include "finsim/gait.hpp"

namespace finsim {

// Space-time record of the fin edge: frames[t][ray] is the tip deflection.
// ray_positions ascend from the posterior end of the fin base toward the
// head, matching the sign convention of the travelling-wave phases.
struct FinField {
    std::vector<double> ray_positions;
    double dt = 0.0;
    std::vector<std::vector<double>> frames;

    int ray_count() const { return static_cast<int>(ray_positions.size()); }
    double duration() const { return frames.empty() ? 0.0 : dt * static_cast<double>(frames.size() - 1); }
    std::vector<double> ray_series(int ray) const;
};

struct HeatmapGrid {
    std::vector<double> wavelengths;  // m
    std::vector<double> frequencies;  // Hz
    // indexed [wavelength][frequency]
    std::vector<std::vector<double>> values;  // peak-to-peak amplitude, m
    std::vector<std::vector<double>> flags;   // standing-wave index
    std::vector<std::vector<std::string>> errors;  // per-cell error notes

    std::string to_csv() const;  // lambda_m,freq_hz,pkpk_m,swi
    struct Peak {
        double wavelength, frequency, value;
        std::vector<std::pair<double, double>> within_one_percent;
    };
    Peak peak() const;
};

// Integrates the membrane-coupled rays of one fin under a gait plan.
// Nearest-neighbour coupling in tip coordinates, free ends, same RK4 and
// clamping rules as the single ray. Requires duration >= 10/f and
// dt <= 1/(50 f).
FinField simulate_fin(const FinAssemblyConfig& fin, const WavePlan& plan,
                      const EnvelopeSpec& env, double duration, double dt);

// Max-over-rays steady peak-to-peak amplitude for the steady window (last
// half, whole periods) of a field, plus per-ray values.
double steady_fin_amplitude(const FinField& field, double drive_frequency,
                            std::vector<double>* per_ray = nullptr);

// Mean over rays of the time-mean |deflection| in the steady window.
double mean_fin_amplitude(const FinField& field, double drive_frequency);

// One simulate_fin per (wavelength, frequency) cell; cells are independent
// and may run on several workers, output identical regardless of order.
// Per-cell failures are recorded in-cell and the sweep continues.
HeatmapGrid amplitude_heatmap(const FinAssemblyConfig& fin,
                              const std::vector<double>& wavelengths,
                              const std::vector<double>& frequencies,
                              const WavePlan& plan_template, int workers);

// Monotone cubic interpolation through the ray tips at the frame nearest t;
// 100 evenly spaced samples of (position, deflection).
std::vector<std::pair<double, double>> edge_profile(const FinField& field, double t);

}  // namespace finsim
