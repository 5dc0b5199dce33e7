#pragma once

#include <array>
#include <string>
#include <vector>

#include "finsim/config.hpp"
#include "finsim/fin.hpp"
#include "finsim/gait.hpp"

namespace finsim {

struct RobotState {
    std::array<double, 3> position{};  // world frame: surge track, sway track, heave
    double yaw = 0.0;                  // rad
    std::array<double, 3> velocity{};  // body frame: surge, sway, heave
    double yaw_rate = 0.0;             // rad/s
    double time = 0.0;
};

struct Wrench {
    std::array<double, 3> force{};  // body frame, N
    double yaw_torque = 0.0;        // N*m
};

struct SwimResult {
    std::vector<RobotState> trajectory;
    std::array<double, 4> mean_velocity{};  // steady window, body frame + yaw rate
    std::array<double, 4> peak_velocity{};  // max magnitude within the window

    std::string to_csv() const;  // t_s,surge_m,sway_m,heave_m,yaw_rad,vx,vy,vz,yaw_rate
};

struct Metrics {
    double strouhal = 0.0;
    double specific_wavelength = 0.0;
    double electrical_power = 0.0;  // W
    double A_pkpk = 0.0;            // m, max steady fin peak-to-peak
    double A_mean = 0.0;            // m, time-space mean amplitude
    bool strouhal_defined = false;
    bool sw_defined = false;

    std::string to_csv() const;
};

// Exposed constant applied to the time-mean |deflection| when forming
// A_mean (1.0 = plain rectified mean).
extern const double kAmplitudeMeanCorrection;

struct FinElement {
    double width = 0.0;     // m, chord along the fin base
    double span = 0.0;      // m, outward
    double x_lever = 0.0;   // m, body-frame x of element centre
    double y_lever = 0.0;   // m, body-frame y of element centre
    double dihedral = 0.0;  // rad
    int side_sign = 0;      // +1 left, -1 right, 0 radial
};

// Resistive-force closure for one fin element. `lateral_velocity` is the
// deflection rate of the element; `body_velocity` must already include the
// yaw-induced velocity at the element. Quadratic in the normal relative
// velocity, odd under its sign flip; the surge component is scaled by
// hydro.thrust_gain.
Wrench element_wrench(double slope, double lateral_velocity,
                      const std::array<double, 3>& body_velocity,
                      const FinElement& element, const HydroModel& hydro);

// Per-fin instantaneous tip deflections and rates, aligned with
// fin.ray_positions.
struct FinKinematics {
    std::vector<double> tip_deflection;
    std::vector<double> tip_velocity;
};

// Sum of element wrenches over all inter-ray segments of all fins, minus
// quadratic body drag per DOF and yaw drag.
Wrench net_wrench(const RobotConfig& config, const std::vector<FinKinematics>& fins,
                  const RobotState& state);

struct FinDrive {
    WavePlan plan;
    EnvelopeSpec envelope;
    bool enabled = true;
};

struct SwimOutput {
    SwimResult result;
    std::vector<FinField> fields;  // one per fin
};

// Co-integrates the fin dynamics with the 4-DOF rigid body
// (m (1+Ca) dv = F per translational DOF, I_z dr = tau_z). Buoyancy is
// exactly neutral. duration must be >= 20/f.
SwimOutput simulate_swim(const RobotConfig& config, const std::vector<FinDrive>& drives,
                         double duration, double dt);

// St = f*A/U. U must be > 0; A = 0 gives 0.
double strouhal(double frequency, double a_pkpk, double speed);

// SW = lambda / A_mean. A_mean must be > 0.
double specific_wavelength(double wavelength, double a_mean);

// Electrical power for a gait: per-coil I_rms^2 R summed over rays, scaled
// by the driver overhead.
double robot_electrical_power(const RobotConfig& config,
                              const std::vector<FinDrive>& drives);

Metrics swim_metrics(const SwimOutput& out, const RobotConfig& config,
                     const std::vector<FinDrive>& drives);

// Mirrored robot: fins swapped left/right. Mirror of a trajectory negates
// sway and yaw.
RobotConfig mirrored(const RobotConfig& config);

}  // namespace finsim
