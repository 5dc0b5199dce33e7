#pragma once

#include <vector>

#include "finsim/actuator.hpp"

namespace finsim {

struct FinField;  // fin.hpp

struct StepMetrics {
    double rise_time_10_90 = 0.0;  // s
    double overshoot = 0.0;        // m, beyond final value
    double settling_time = 0.0;    // s, into the +-5% band
    double peak_tip_speed = 0.0;   // m/s
};

struct WaveDecomposition {
    double forward_amplitude = 0.0;
    double backward_amplitude = 0.0;
    double standing_wave_index = 0.0;  // min/max of the two, in [0,1]
    bool degenerate = false;           // collinear basis, index undefined
};

struct AmplitudeEstimate {
    double peak_to_peak = 0.0;      // from the extrema of the window
    double dft_peak_to_peak = 0.0;  // 2 |single-frequency Fourier component|
    bool consistent = false;        // the two agree within 5%
};

// Rise/overshoot/settling/peak-speed of a step series. The series must
// reach steady state (last 10% of samples vary by < 1% of the range);
// otherwise throws "unsettled series".
StepMetrics step_metrics(const TimeSeries& series);

// Steady-state peak-to-peak over the trailing half of the series, trimmed
// to whole drive periods (at least five periods required), with the
// Fourier-component cross-check reported alongside.
AmplitudeEstimate steady_amplitude_detail(const TimeSeries& series,
                                          double drive_frequency);
double steady_amplitude(const TimeSeries& series, double drive_frequency);

// First downward crossing of 1/sqrt(2), linearly interpolated. Throws
// "cutoff out of band" when the curve never crosses.
double cutoff_frequency(const GainCurve& curve);

// Demodulates each ray at the drive frequency and fits counter-propagating
// complex amplitudes F e^{-ikx} + B e^{+ikx} by least squares.
WaveDecomposition wave_decompose(const FinField& field, double drive_frequency,
                                 double wavelength);

}  // namespace finsim
