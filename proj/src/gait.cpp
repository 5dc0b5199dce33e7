#include "finsim/gait.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "finsim/units.hpp"

namespace finsim {

Fraction::Fraction(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Fraction Fraction::parse(const std::string& text) {
    std::string s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.empty()) throw std::invalid_argument("empty fraction");

    bool percent = false;
    if (s.back() == '%') {
        percent = true;
        s.pop_back();
    }
    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::int64_t n = std::stoll(s.substr(0, slash));
        const std::int64_t d = std::stoll(s.substr(slash + 1));
        Fraction f(n, d);
        return percent ? Fraction(f.num, f.den * 100) : f;
    }
    // decimal: shift the point into an integer numerator
    std::int64_t num = 0, den = 1;
    bool neg = false, seen_digit = false, after_point = false;
    for (char c : s) {
        if (c == '-' && !seen_digit && !after_point && num == 0 && !neg) {
            neg = true;
        } else if (c == '.') {
            if (after_point) throw std::invalid_argument("bad fraction '" + text + "'");
            after_point = true;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
            num = num * 10 + (c - '0');
            if (after_point) den *= 10;
            if (den > 1000000000000LL)
                throw std::invalid_argument("fraction too precise '" + text + "'");
        } else {
            throw std::invalid_argument("bad fraction '" + text + "'");
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad fraction '" + text + "'");
    if (neg) num = -num;
    if (percent) den *= 100;
    return Fraction(num, den);
}

Fraction Fraction::operator+(const Fraction& o) const {
    return Fraction(num * o.den + o.num * den, den * o.den);
}

Fraction Fraction::operator/(std::int64_t d) const { return Fraction(num, den * d); }

std::string Fraction::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

EnvelopeSpec EnvelopeSpec::uniform(int rays, const Fraction& level) {
    EnvelopeSpec env;
    env.per_ray_power.assign(static_cast<std::size_t>(rays), level);
    return env;
}

std::vector<double> ray_phases(const std::vector<double>& positions,
                               double wavelength, WaveDirection) {
    if (!(wavelength > 0)) throw std::invalid_argument("ray_phases: wavelength must be > 0");
    const double k = 2.0 * M_PI / wavelength;
    std::vector<double> phases;
    phases.reserve(positions.size());
    for (double x : positions) {
        double p = std::fmod(k * x, 2.0 * M_PI);
        if (p < 0) p += 2.0 * M_PI;
        phases.push_back(p);
    }
    return phases;
}

double drive_current(double t, const WavePlan& plan, double phase,
                     double power_scale, PowerSemantics semantics) {
    const double scale = semantics == PowerSemantics::power
                             ? std::sqrt(power_scale)
                             : power_scale;
    const double omega = 2.0 * M_PI * plan.frequency;
    const double sgn = plan.direction == WaveDirection::forward ? -1.0 : 1.0;
    const double arg = phase + sgn * omega * t + plan.global_phase;
    if (plan.waveform == Waveform::sine) {
        return scale * plan.current_amplitude * std::sin(arg);
    }
    // square: active stroke for the duty fraction of each cycle, coil off on
    // the return stroke (the fin returns on its spring)
    double cyc = std::fmod(arg / (2.0 * M_PI), 1.0);
    if (cyc < 0) cyc += 1.0;
    if (cyc >= plan.duty) return 0.0;
    const double level = plan.polarity == SquarePolarity::pull ? -1.0 : 1.0;
    return level * scale * plan.current_amplitude;
}

NyquistCheck nyquist_check(double ray_spacing, double wavelength) {
    if (!(ray_spacing > 0) || !(wavelength > 0))
        throw std::invalid_argument("nyquist_check: spacing and wavelength must be > 0");
    NyquistCheck out;
    if (ray_spacing > wavelength / 2.0) {
        out.ok = false;
        out.warning = "ray spacing " + units::format_double(ray_spacing) +
                      " m exceeds lambda/2 = " + units::format_double(wavelength / 2.0) +
                      " m; expect a standing wave";
    }
    return out;
}

EnvelopeApplication apply_envelope(const WavePlan& plan,
                                   const std::vector<double>& positions,
                                   const EnvelopeSpec& env,
                                   PowerSemantics semantics) {
    if (env.per_ray_power.size() != positions.size())
        throw std::invalid_argument("apply_envelope: envelope length " +
                                    std::to_string(env.per_ray_power.size()) +
                                    " does not match ray count " +
                                    std::to_string(positions.size()));
    EnvelopeApplication out;
    auto phases = ray_phases(positions, plan.wavelength, plan.direction);
    Fraction total(0, 1);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const Fraction& p = env.per_ray_power[i];
        if (p.value() < 0.0 || p.value() > 1.0)
            throw std::invalid_argument("apply_envelope: per-ray power outside [0,1]");
        total = total + p;
        RayDrive d;
        d.phase = phases[i];
        d.power_scale = p.value();
        d.current_scale = semantics == PowerSemantics::power ? std::sqrt(p.value())
                                                             : p.value();
        out.rays.push_back(d);
    }
    out.total_power_fraction = total / static_cast<std::int64_t>(positions.size());
    return out;
}

std::vector<QuantizedSample> quantize_drive(const WavePlan& plan,
                                            const QuantizationSpec& q,
                                            double duration) {
    if (q.table_size < 16) throw std::invalid_argument("quantize_drive: table_size < 16");
    if (q.pwm_bits < 4) throw std::invalid_argument("quantize_drive: pwm_bits < 4");
    if (!(q.update_rate > 2.0 * plan.frequency))
        throw std::invalid_argument("quantize_drive: update_rate must exceed 2f");

    // the firmware's lookup table
    std::vector<double> table(static_cast<std::size_t>(q.table_size));
    for (int i = 0; i < q.table_size; ++i)
        table[static_cast<std::size_t>(i)] = std::sin(2.0 * M_PI * i / q.table_size);

    const double levels = static_cast<double>((1 << q.pwm_bits) - 1);
    const double dt = 1.0 / q.update_rate;
    const int n = static_cast<int>(std::floor(duration * q.update_rate)) + 1;
    const double omega = 2.0 * M_PI * plan.frequency;
    const double sgn = plan.direction == WaveDirection::forward ? -1.0 : 1.0;

    std::vector<QuantizedSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double t = i * dt;
        double frac = std::fmod((sgn * omega * t + plan.global_phase) / (2.0 * M_PI), 1.0);
        if (frac < 0) frac += 1.0;
        int idx = static_cast<int>(std::lround(frac * q.table_size)) % q.table_size;
        double ideal = plan.current_amplitude == 0.0 ? 0.0 : table[static_cast<std::size_t>(idx)];
        double duty = std::round(std::fabs(ideal) * levels) / levels;
        out.push_back({t, std::copysign(duty, ideal)});
    }
    return out;
}

std::string to_string(WaveDirection d) {
    return d == WaveDirection::forward ? "forward" : "backward";
}
std::string to_string(Waveform w) { return w == Waveform::sine ? "sine" : "square"; }

WaveDirection wave_direction_from_string(const std::string& s) {
    if (s == "forward") return WaveDirection::forward;
    if (s == "backward") return WaveDirection::backward;
    throw std::invalid_argument("unknown direction '" + s + "'");
}

Waveform waveform_from_string(const std::string& s) {
    if (s == "sine") return Waveform::sine;
    if (s == "square") return Waveform::square;
    throw std::invalid_argument("unknown waveform '" + s + "'");
}

}  // namespace finsim
