#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace finsim {

// Exact fraction for the power-envelope bookkeeping; per-ray power levels
// are given as decimals ("0.2") or percentages ("20%") and their mean must
// come out exact.
struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Fraction() = default;
    Fraction(std::int64_t n, std::int64_t d);
    static Fraction parse(const std::string& text);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    Fraction operator+(const Fraction& o) const;
    Fraction operator/(std::int64_t d) const;
    bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
    std::string str() const;
};

enum class WaveDirection { forward, backward };  // forward = sin(kx - wt)
enum class Waveform { sine, square };
enum class SquarePolarity { pull, push };  // active-stroke current sign
enum class PowerSemantics { power, current };  // how per-ray "% power" scales I

struct WavePlan {
    double current_amplitude = 0.0;  // A, sets A_max(I)
    double wavelength = 0.0;         // m
    double frequency = 0.0;          // Hz
    WaveDirection direction = WaveDirection::backward;
    Waveform waveform = Waveform::sine;
    double duty = 0.5;               // square waveform only, in (0,1)
    SquarePolarity polarity = SquarePolarity::pull;
    double global_phase = 0.0;       // rad
};

struct EnvelopeSpec {
    std::vector<Fraction> per_ray_power;  // front to back, in [0,1]

    static EnvelopeSpec uniform(int rays, const Fraction& level = Fraction(1, 1));
};

struct QuantizationSpec {
    int table_size = 256;
    int pwm_bits = 8;
    double update_rate = 0.0;  // Hz, must exceed 2 f
};

struct RayDrive {
    double phase = 0.0;        // rad
    double power_scale = 1.0;  // fraction of electrical power
    double current_scale = 1.0;
};

struct EnvelopeApplication {
    std::vector<RayDrive> rays;
    Fraction total_power_fraction;
};

struct NyquistCheck {
    bool ok = true;
    std::string warning;  // set when ray spacing exceeds lambda/2
};

struct QuantizedSample {
    double time;
    double duty_signed;  // in [-1, 1]; sign encodes H-bridge direction
};

// phi_i = k x_i wrapped into [0, 2pi).
std::vector<double> ray_phases(const std::vector<double>& positions,
                               double wavelength, WaveDirection direction);

// Coil current for one ray at time t. Sine: sqrt(power)*A*sin(phase +- wt
// + global). Square: current held at the active level for the duty
// fraction of the cycle, zero otherwise (passive return stroke).
double drive_current(double t, const WavePlan& plan, double phase,
                     double power_scale,
                     PowerSemantics semantics = PowerSemantics::power);

NyquistCheck nyquist_check(double ray_spacing, double wavelength);

// Per-ray phases and scales plus the exact total power fraction.
EnvelopeApplication apply_envelope(const WavePlan& plan,
                                   const std::vector<double>& positions,
                                   const EnvelopeSpec& env,
                                   PowerSemantics semantics = PowerSemantics::power);

// Firmware-faithful drive: nearest-entry sine lookup, then uniform
// quantisation of the magnitude to pwm_bits.
std::vector<QuantizedSample> quantize_drive(const WavePlan& plan,
                                            const QuantizationSpec& q,
                                            double duration);

std::string to_string(WaveDirection d);
std::string to_string(Waveform w);
WaveDirection wave_direction_from_string(const std::string& s);
Waveform waveform_from_string(const std::string& s);

}  // namespace finsim
