#include "finsim/kernels.hpp"

#include <cmath>
#include <limits>

// Reference kernels. Plain loops, libm math; the SIMD variants are checked
// against these in tests/test_kernels.cpp.

namespace finsim::kernels {

namespace {

void ray_accel_scalar(int n, const double* s, const double* v,
                      const double* current, const RayParams& p, double* a) {
    for (int i = 0; i < n; ++i) {
        const double drive = p.drive_gain[i] * current[i] *
                             std::exp(-s[i] * s[i] * p.inv_two_bw2[i]);
        double f = drive - p.stiffness[i] * s[i] - p.damping_lin[i] * v[i] -
                   p.damping_quad[i] * v[i] * std::fabs(v[i]) - p.bias_force[i];
        if (p.coupling != 0.0) {
            if (i > 0) f += p.coupling * (s[i - 1] - s[i]);
            if (i < n - 1) f += p.coupling * (s[i + 1] - s[i]);
        }
        a[i] = f * p.inv_mass[i];
    }
}

void demod_scalar(const double* x, std::size_t n, double step, double phase0,
                  double* sum_cos, double* sum_sin) {
    double sc = 0.0, ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double ph = phase0 + step * static_cast<double>(k);
        sc += x[k] * std::cos(ph);
        ss += x[k] * std::sin(ph);
    }
    *sum_cos = sc;
    *sum_sin = ss;
}

void minmax_scalar(const double* x, std::size_t n, double* lo, double* hi) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        if (x[k] < mn) mn = x[k];
        if (x[k] > mx) mx = x[k];
    }
    *lo = mn;
    *hi = mx;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{ray_accel_scalar, demod_scalar, minmax_scalar};
    return ops;
}

}  // namespace finsim::kernels
