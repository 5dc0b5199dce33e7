#pragma once

#include <vector>

#include "finsim/config.hpp"
#include "finsim/kernels.hpp"

namespace finsim::raysim {

// Stroke-coordinate coefficients for a batch of identical rays. Coupling is
// given in tip coordinates (N/m between adjacent tips) and referred to the
// stroke coordinate through the transmission ratio squared.
struct Coeffs {
    std::vector<double> drive_gain, inv_two_bw2, stiffness, damping_lin,
        damping_quad, inv_mass, bias;
    double coupling = 0.0;
    double stroke_limit = 0.0;

    kernels::RayParams params() const {
        kernels::RayParams p;
        p.drive_gain = drive_gain.data();
        p.inv_two_bw2 = inv_two_bw2.data();
        p.stiffness = stiffness.data();
        p.damping_lin = damping_lin.data();
        p.damping_quad = damping_quad.data();
        p.inv_mass = inv_mass.data();
        p.bias_force = bias.data();
        p.coupling = coupling;
        return p;
    }
};

Coeffs make_coeffs(const RayModel& ray, int n, double tip_coupling);

struct State {
    std::vector<double> s, v;
    double t = 0.0;
    int n() const { return static_cast<int>(s.size()); }
};

struct Workspace {
    std::vector<double> cur, st, a1, a2, a3, a4, v2, v3, v4;
    explicit Workspace(int n)
        : cur(n), st(n), a1(n), a2(n), a3(n), a4(n), v2(n), v3(n), v4(n) {}
};

// Hard travel limit: clamp position, zero outward velocity.
inline void clamp_travel(State& st, double limit) {
    for (int i = 0; i < st.n(); ++i) {
        if (st.s[i] > limit) {
            st.s[i] = limit;
            if (st.v[i] > 0) st.v[i] = 0;
        } else if (st.s[i] < -limit) {
            st.s[i] = -limit;
            if (st.v[i] < 0) st.v[i] = 0;
        }
    }
}

// One fixed-step RK4 step; drive(t, out_currents) supplies per-ray coil
// currents and must be valid at t, t+dt/2 and t+dt (random access in time).
template <typename DriveFn>
void rk4_step(State& state, double dt, const Coeffs& c, DriveFn&& drive,
              Workspace& w) {
    const int n = state.n();
    const auto p = c.params();
    const double half = 0.5 * dt;
    double* s = state.s.data();
    double* v = state.v.data();

    drive(state.t, w.cur.data());
    kernels::ray_accel(n, s, v, w.cur.data(), p, w.a1.data());

    drive(state.t + half, w.cur.data());
    for (int i = 0; i < n; ++i) {
        w.st[i] = s[i] + half * v[i];
        w.v2[i] = v[i] + half * w.a1[i];
    }
    kernels::ray_accel(n, w.st.data(), w.v2.data(), w.cur.data(), p, w.a2.data());

    for (int i = 0; i < n; ++i) {
        w.st[i] = s[i] + half * w.v2[i];
        w.v3[i] = v[i] + half * w.a2[i];
    }
    kernels::ray_accel(n, w.st.data(), w.v3.data(), w.cur.data(), p, w.a3.data());

    drive(state.t + dt, w.cur.data());
    for (int i = 0; i < n; ++i) {
        w.st[i] = s[i] + dt * w.v3[i];
        w.v4[i] = v[i] + dt * w.a3[i];
    }
    kernels::ray_accel(n, w.st.data(), w.v4.data(), w.cur.data(), p, w.a4.data());

    const double sixth = dt / 6.0;
    for (int i = 0; i < n; ++i) {
        s[i] += sixth * (v[i] + 2.0 * w.v2[i] + 2.0 * w.v3[i] + w.v4[i]);
        v[i] += sixth * (w.a1[i] + 2.0 * w.a2[i] + 2.0 * w.a3[i] + w.a4[i]);
    }
    state.t += dt;
    clamp_travel(state, c.stroke_limit);
}

}  // namespace finsim::raysim
