#include "finsim/config.hpp"

#include <cmath>
#include <sstream>

#include "finsim/document.hpp"
#include "finsim/units.hpp"

namespace finsim {

namespace {
constexpr double kGravity = 9.80665;
}

double RayModel::gravity_bias() const {
    return load_mass * kGravity / transmission_ratio;
}

double referred_tip_mass(double tip_mass, double transmission_ratio) {
    return tip_mass * transmission_ratio * transmission_ratio;
}

RayModel with_tip_load(const RayModel& ray, double tip_mass) {
    RayModel out = ray;
    out.load_mass = referred_tip_mass(tip_mass, ray.transmission_ratio);
    return out;
}

RayModel embedded(const RayModel& ray) {
    RayModel out = ray;
    out.stiffness = ray.effective_stiffness();
    out.damping_linear = ray.effective_damping_linear();
    out.membrane_stiffness_factor = 1.0;
    out.membrane_damping_factor = 1.0;
    return out;
}

std::string to_string(FinSide side) {
    switch (side) {
        case FinSide::left: return "left";
        case FinSide::right: return "right";
        case FinSide::radial: return "radial";
    }
    return "left";
}

FinSide fin_side_from_string(const std::string& s) {
    if (s == "left") return FinSide::left;
    if (s == "right") return FinSide::right;
    if (s == "radial") return FinSide::radial;
    throw std::invalid_argument("unknown fin side '" + s + "'");
}

double FinAssemblyConfig::ray_spacing() const {
    if (ray_positions.size() < 2) return 0.0;
    return (ray_positions.back() - ray_positions.front()) /
           static_cast<double>(ray_positions.size() - 1);
}

int RobotConfig::total_rays() const {
    int n = 0;
    for (const auto& fin : fins) n += static_cast<int>(fin.ray_positions.size());
    return n;
}

ValidationError::ValidationError(std::vector<std::string> v)
    : std::runtime_error([&v] {
          std::string msg = "config validation failed:";
          for (const auto& s : v) msg += "\n  - " + s;
          return msg;
      }()),
      violations(std::move(v)) {}

std::vector<std::string> validate(const RobotConfig& config) {
    std::vector<std::string> out;
    auto require = [&out](bool ok, const std::string& msg) {
        if (!ok) out.push_back(msg);
    };

    require(config.body_length > 0, "body_length must be > 0");
    require(config.body_width > 0, "body_width must be > 0");
    require(config.body_mass > 0, "body_mass must be > 0");
    require(!config.fins.empty(), "no fins defined");
    require(config.drive_limits.max_current > 0, "drive_limits.max_current must be > 0");
    require(config.drive_limits.driver_overhead >= 1.0,
            "drive_limits.driver_overhead must be >= 1");

    const auto& h = config.hydro;
    require(h.water_density > 0, "hydro.water_density must be > 0");
    require(h.normal_drag_coeff >= 0, "hydro.normal_drag_coeff must be >= 0");
    for (int i = 0; i < 3; ++i) {
        require(h.body_drag_coeff[i] >= 0, "hydro.body_drag_coeff must be >= 0");
        require(h.body_reference_area[i] >= 0, "hydro.body_reference_area must be >= 0");
        require(h.added_mass_coeff[i] >= 0, "hydro.added_mass_coeff must be >= 0");
    }
    require(h.yaw_drag_coeff >= 0, "hydro.yaw_drag_coeff must be >= 0");
    require(h.yaw_inertia > 0, "hydro.yaw_inertia must be > 0");
    require(h.thrust_gain >= 0, "hydro.thrust_gain must be >= 0");

    int fin_index = 0;
    for (const auto& fin : config.fins) {
        const std::string tag = "fin[" + std::to_string(fin_index++) + "].";
        require(!fin.ray_positions.empty(), tag + "must have at least one ray");
        require(fin.fin_length > 0, tag + "fin_length must be > 0");
        require(fin.ray_span > 0, tag + "ray_span must be > 0");
        require(fin.coupling_stiffness >= 0, tag + "coupling_stiffness must be >= 0");
        for (std::size_t i = 0; i < fin.ray_positions.size(); ++i) {
            const double x = fin.ray_positions[i];
            if (x < 0 || x > fin.fin_length) {
                require(false, tag + "ray position " + units::format_double(x) +
                                   " outside [0, fin_length]");
            }
            if (i > 0 && !(fin.ray_positions[i] > fin.ray_positions[i - 1])) {
                require(false, tag + "positions not increasing");
                break;
            }
        }
        const auto& r = fin.ray;
        require(r.transmission_ratio > 0, tag + "ray.transmission_ratio must be > 0");
        require(r.effective_mass > 0, tag + "ray.effective_mass must be > 0");
        require(r.stiffness >= 0, tag + "ray.stiffness must be >= 0");
        require(r.damping_linear >= 0, tag + "ray.damping_linear must be >= 0");
        require(r.damping_quadratic >= 0, tag + "ray.damping_quadratic must be >= 0");
        require(r.load_mass >= 0, tag + "ray.load_mass must be >= 0");
        require(r.membrane_stiffness_factor >= 1, tag + "ray.membrane_stiffness_factor must be >= 1");
        require(r.membrane_damping_factor >= 1, tag + "ray.membrane_damping_factor must be >= 1");
        require(r.vca.force_constant > 0, tag + "ray.vca.force_constant must be > 0");
        require(r.vca.stroke_limit > 0, tag + "ray.vca.stroke_limit must be > 0");
        require(r.vca.bell_width > 0, tag + "ray.vca.bell_width must be > 0");
        require(r.vca.coil_resistance > 0, tag + "ray.vca.coil_resistance must be > 0");
    }
    return out;
}

namespace {

void bind_vca(const doc::Node& n, VcaParams& v) {
    v.force_constant = n.quantity_or("force_constant", v.force_constant);
    v.stroke_limit = n.quantity_or("stroke_limit", v.stroke_limit);
    v.bell_width = n.quantity_or("bell_width", v.bell_width);
    v.coil_resistance = n.quantity_or("coil_resistance", v.coil_resistance);
    v.coil_inductance = n.quantity_or("coil_inductance", v.coil_inductance);
}

void bind_ray(const doc::Node& n, RayModel& r) {
    r.transmission_ratio = n.quantity_or("transmission_ratio", r.transmission_ratio);
    r.effective_mass = n.quantity_or("effective_mass", r.effective_mass);
    r.stiffness = n.quantity_or("stiffness", r.stiffness);
    r.damping_linear = n.quantity_or("damping_linear", r.damping_linear);
    r.damping_quadratic = n.quantity_or("damping_quadratic", r.damping_quadratic);
    r.load_mass = n.quantity_or("load_mass", r.load_mass);
    if (n.has("tip_load_mass"))
        r.load_mass = referred_tip_mass(n.quantity("tip_load_mass"), r.transmission_ratio);
    r.membrane_stiffness_factor = n.quantity_or("membrane_stiffness_factor", r.membrane_stiffness_factor);
    r.membrane_damping_factor = n.quantity_or("membrane_damping_factor", r.membrane_damping_factor);
    if (const doc::Node* v = n.child("vca")) bind_vca(*v, r.vca);
}

void bind_triplet(const doc::Node& n, const std::string& key, std::array<double, 3>& out) {
    if (!n.has(key)) return;
    auto vals = n.quantity_list(key);
    if (vals.size() == 1) {
        out.fill(vals[0]);
    } else if (vals.size() == 3) {
        out = {vals[0], vals[1], vals[2]};
    } else {
        throw doc::ParseError(n.line, "field '" + key + "' wants 1 or 3 values");
    }
}

void bind_hydro(const doc::Node& n, HydroModel& h) {
    h.water_density = n.quantity_or("water_density", h.water_density);
    h.normal_drag_coeff = n.quantity_or("normal_drag_coeff", h.normal_drag_coeff);
    bind_triplet(n, "body_drag_coeff", h.body_drag_coeff);
    bind_triplet(n, "body_reference_area", h.body_reference_area);
    bind_triplet(n, "added_mass_coeff", h.added_mass_coeff);
    h.yaw_drag_coeff = n.quantity_or("yaw_drag_coeff", h.yaw_drag_coeff);
    h.yaw_inertia = n.quantity_or("yaw_inertia", h.yaw_inertia);
    h.thrust_gain = n.quantity_or("thrust_gain", h.thrust_gain);
}

void bind_fin(const doc::Node& n, FinAssemblyConfig& f) {
    if (n.has("ray_positions")) f.ray_positions = n.quantity_list("ray_positions");
    f.fin_length = n.quantity_or("fin_length", f.fin_length);
    f.ray_span = n.quantity_or("ray_span", f.ray_span);
    f.dihedral = n.quantity_or("dihedral", f.dihedral);
    f.coupling_stiffness = n.quantity_or("coupling_stiffness", f.coupling_stiffness);
    if (n.has("side")) f.side = fin_side_from_string(n.text("side"));
    if (const doc::Node* r = n.child("ray")) bind_ray(*r, f.ray);
}

doc::Node vca_node(const VcaParams& v) {
    doc::Node n;
    n.name = "vca";
    n.set_quantity("force_constant", v.force_constant);
    n.set_quantity("stroke_limit", v.stroke_limit);
    n.set_quantity("bell_width", v.bell_width);
    n.set_quantity("coil_resistance", v.coil_resistance);
    n.set_quantity("coil_inductance", v.coil_inductance);
    return n;
}

doc::Node ray_node(const RayModel& r) {
    doc::Node n;
    n.name = "ray";
    n.set_quantity("transmission_ratio", r.transmission_ratio);
    n.set_quantity("effective_mass", r.effective_mass);
    n.set_quantity("stiffness", r.stiffness);
    n.set_quantity("damping_linear", r.damping_linear);
    n.set_quantity("damping_quadratic", r.damping_quadratic);
    n.set_quantity("load_mass", r.load_mass);
    n.set_quantity("membrane_stiffness_factor", r.membrane_stiffness_factor);
    n.set_quantity("membrane_damping_factor", r.membrane_damping_factor);
    n.children.push_back(vca_node(r.vca));
    return n;
}

std::string join_quantities(const std::vector<double>& vals) {
    std::string out;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out += ", ";
        out += units::format_double(vals[i]);
    }
    return out;
}

doc::Node config_node(const RobotConfig& c) {
    doc::Node root;
    root.set("name", c.name);
    root.set_quantity("body_length", c.body_length);
    root.set_quantity("body_width", c.body_width);
    root.set_quantity("body_mass", c.body_mass);

    doc::Node& dl = root.add_child("drive_limits");
    dl.set_quantity("max_current", c.drive_limits.max_current);
    dl.set_quantity("supply_resistance", c.drive_limits.supply_resistance);
    dl.set_quantity("driver_overhead", c.drive_limits.driver_overhead);

    doc::Node& h = root.add_child("hydro");
    h.set_quantity("water_density", c.hydro.water_density);
    h.set_quantity("normal_drag_coeff", c.hydro.normal_drag_coeff);
    h.set("body_drag_coeff", join_quantities({c.hydro.body_drag_coeff.begin(), c.hydro.body_drag_coeff.end()}));
    h.set("body_reference_area", join_quantities({c.hydro.body_reference_area.begin(), c.hydro.body_reference_area.end()}));
    h.set("added_mass_coeff", join_quantities({c.hydro.added_mass_coeff.begin(), c.hydro.added_mass_coeff.end()}));
    h.set_quantity("yaw_drag_coeff", c.hydro.yaw_drag_coeff);
    h.set_quantity("yaw_inertia", c.hydro.yaw_inertia);
    h.set_quantity("thrust_gain", c.hydro.thrust_gain);

    for (const auto& fin : c.fins) {
        doc::Node& f = root.add_child("fin");
        f.set("side", to_string(fin.side));
        f.set_quantity("fin_length", fin.fin_length);
        f.set_quantity("ray_span", fin.ray_span);
        f.set_quantity("dihedral", fin.dihedral);
        f.set("ray_positions", join_quantities(fin.ray_positions));
        f.set_quantity("coupling_stiffness", fin.coupling_stiffness);
        f.children.push_back(ray_node(fin.ray));
    }
    return root;
}

}  // namespace

RobotConfig load_robot_config(const std::string& text) {
    const doc::Node root = doc::parse(text);
    const RobotConfig defaults = preset("single-ray");

    RobotConfig c;
    c.name = root.text_or("name", "unnamed");
    c.body_length = root.quantity_or("body_length", defaults.body_length);
    c.body_width = root.quantity_or("body_width", defaults.body_width);
    c.body_mass = root.quantity_or("body_mass", defaults.body_mass);
    c.hydro = defaults.hydro;
    c.drive_limits = defaults.drive_limits;

    if (const doc::Node* dl = root.child("drive_limits")) {
        c.drive_limits.max_current = dl->quantity_or("max_current", c.drive_limits.max_current);
        c.drive_limits.supply_resistance = dl->quantity_or("supply_resistance", c.drive_limits.supply_resistance);
        c.drive_limits.driver_overhead = dl->quantity_or("driver_overhead", c.drive_limits.driver_overhead);
    }
    if (const doc::Node* h = root.child("hydro")) bind_hydro(*h, c.hydro);

    for (const doc::Node* fn : root.all("fin")) {
        FinAssemblyConfig fin = defaults.fins.front();
        bind_fin(*fn, fin);
        c.fins.push_back(std::move(fin));
    }

    auto violations = validate(c);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    return c;
}

std::string serialize_config(const RobotConfig& config) {
    return doc::render(config_node(config));
}

std::string serialize_config_json(const RobotConfig& config) {
    return doc::render_json(config_node(config));
}

bool config_equal(const RobotConfig& a, const RobotConfig& b) {
    return serialize_config(a) == serialize_config(b);
}

}  // namespace finsim
