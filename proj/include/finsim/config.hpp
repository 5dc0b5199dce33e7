#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace finsim {

// All stored quantities are base SI. Config documents may carry unit
// suffixes (mm, mA, mg, Hz); conversion happens at parse time.

struct VcaParams {
    double force_constant = 0.0;   // N/A at stroke centre
    double stroke_limit = 0.0;     // m, half travel
    double bell_width = 0.0;       // m, Gaussian falloff scale along stroke
    double coil_resistance = 0.0;  // ohm
    double coil_inductance = 0.0;  // H (not used by the dynamics; L/R ~ 40 us)
};

struct RayModel {
    VcaParams vca;
    double transmission_ratio = 1.0;       // tip deflection per coil stroke
    double effective_mass = 0.0;           // kg, stroke coordinate, incl. added mass
    double stiffness = 0.0;                // N/m, stroke coordinate
    double damping_linear = 0.0;           // N*s/m
    double damping_quadratic = 0.0;        // N*s^2/m^2
    double load_mass = 0.0;                // kg, tip load referred through the transmission
    double membrane_stiffness_factor = 1.0;
    double membrane_damping_factor = 1.0;

    double total_mass() const { return effective_mass + load_mass; }
    double effective_stiffness() const { return stiffness * membrane_stiffness_factor; }
    double effective_damping_linear() const { return damping_linear * membrane_damping_factor; }
    // Constant stroke-coordinate force from a tip load hanging on the tendon.
    double gravity_bias() const;
};

// Scales an attached tip mass (kg at the tip) into the stroke coordinate.
double referred_tip_mass(double tip_mass, double transmission_ratio);
// Returns a copy of the ray carrying the given physical tip load.
RayModel with_tip_load(const RayModel& ray, double tip_mass);
// Returns a copy with the membrane multipliers folded in (factors reset to 1).
RayModel embedded(const RayModel& ray);

enum class FinSide { left, right, radial };
std::string to_string(FinSide side);
FinSide fin_side_from_string(const std::string& s);

struct FinAssemblyConfig {
    std::vector<double> ray_positions;  // m along the fin base, strictly increasing
    double fin_length = 0.0;            // m
    double ray_span = 0.033;            // m, outward length of a ray (element span)
    double dihedral = 0.0;              // rad, fin plane tilt below horizontal
    double coupling_stiffness = 0.0;    // N/m between adjacent ray tips
    RayModel ray;
    FinSide side = FinSide::left;

    double ray_spacing() const;  // uniform spacing, or mean spacing
};

struct HydroModel {
    double water_density = 1000.0;
    double normal_drag_coeff = 0.0;               // fin element, normal direction
    std::array<double, 3> body_drag_coeff{};      // surge, sway, heave
    std::array<double, 3> body_reference_area{};  // m^2 per DOF
    std::array<double, 3> added_mass_coeff{};
    double yaw_drag_coeff = 0.0;  // N*m*s^2
    double yaw_inertia = 0.0;     // kg*m^2
    double thrust_gain = 1.0;
};

struct DriveLimits {
    double max_current = 0.0;       // A
    double supply_resistance = 0.0; // ohm
    double driver_overhead = 1.0;   // electrical overhead factor >= 1
};

struct RobotConfig {
    std::string name;
    double body_length = 0.0;  // m
    double body_width = 0.0;   // m
    double body_mass = 0.0;    // kg
    std::vector<FinAssemblyConfig> fins;
    HydroModel hydro;
    DriveLimits drive_limits;

    int total_rays() const;
};

struct ValidationError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ValidationError(std::vector<std::string> v);
};

// Empty iff every invariant holds; each violation names field and rule.
std::vector<std::string> validate(const RobotConfig& config);

// Parses the key-value document format or its JSON flavour, fills missing
// fields from the single-ray preset, validates. Throws doc::ParseError or
// ValidationError.
RobotConfig load_robot_config(const std::string& text);

std::string serialize_config(const RobotConfig& config);       // key-value doc
std::string serialize_config_json(const RobotConfig& config);  // JSON flavour

// single-ray | cuttlebot | tuna | jellyfish, with calibrated parameters
// baked in. Throws std::invalid_argument for unknown names.
RobotConfig preset(const std::string& name);

bool config_equal(const RobotConfig& a, const RobotConfig& b);

}  // namespace finsim
