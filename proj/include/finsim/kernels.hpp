#pragma once

#include <cstddef>
#include <string>

namespace finsim::kernels {

enum class Backend { scalar, avx2 };

// Per-ray coefficient arrays for the lumped ray ODE, all of length n.
// Everything is expressed in the stroke coordinate:
//   a_i = inv_mass_i * ( drive_gain_i * I_i * exp(-s_i^2 * inv_two_bw2_i)
//                        - stiffness_i * s_i
//                        - damping_lin_i * v_i - damping_quad_i * v_i|v_i|
//                        - bias_force_i
//                        + coupling * (s_{i-1} - s_i) + coupling * (s_{i+1} - s_i) )
// Missing neighbours at the fin ends contribute nothing.
struct RayParams {
    const double* drive_gain;
    const double* inv_two_bw2;
    const double* stiffness;
    const double* damping_lin;
    const double* damping_quad;
    const double* inv_mass;
    const double* bias_force;
    double coupling = 0.0;
};

struct Ops {
    void (*ray_accel)(int n, const double* stroke, const double* vel,
                      const double* current, const RayParams& p, double* accel);
    // Sums of x[k]*cos(phase0 + k*step) and x[k]*sin(phase0 + k*step).
    void (*demod)(const double* x, std::size_t n, double step, double phase0,
                  double* sum_cos, double* sum_sin);
    void (*minmax)(const double* x, std::size_t n, double* lo, double* hi);
};

// Active backend. Selected once at startup: AVX2 when the CPU supports it,
// overridable with FINSIM_KERNELS=scalar|avx2.
Backend active();
bool supported(Backend b);
// Returns false (and leaves the selection unchanged) if b is not supported.
bool set_backend(Backend b);
std::string backend_name(Backend b);

const Ops& ops();
const Ops& ops_for(Backend b);  // for equivalence testing

inline void ray_accel(int n, const double* s, const double* v, const double* i,
                      const RayParams& p, double* a) {
    ops().ray_accel(n, s, v, i, p, a);
}
inline void demod(const double* x, std::size_t n, double step, double phase0,
                  double* sc, double* ss) {
    ops().demod(x, n, step, phase0, sc, ss);
}
inline void minmax(const double* x, std::size_t n, double* lo, double* hi) {
    ops().minmax(x, n, lo, hi);
}

}  // namespace finsim::kernels
