#include "finsim/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

// AVX2+FMA variants. Only referenced through the dispatch table after a
// runtime cpuid check, so this TU may be compiled with -mavx2 -mfma.

namespace finsim::kernels {

namespace {

// exp(x) for four doubles, Cephes-style rational approximation after
// range reduction x = n*ln2 + r, |r| <= 0.5*ln2. Accurate to ~2 ulp over
// the range used by the force law (x in [-40, 0]).
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d max_x = _mm256_set1_pd(708.0);
    const __m256d min_x = _mm256_set1_pd(-708.0);

    x = _mm256_min_pd(_mm256_max_pd(x, min_x), max_x);

    __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);
    __m256d rr = _mm256_mul_pd(r, r);

    const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
    const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
    const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
    const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
    const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
    const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
    const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

    __m256d px = _mm256_fmadd_pd(p0, rr, p1);
    px = _mm256_fmadd_pd(px, rr, p2);
    px = _mm256_mul_pd(px, r);
    __m256d qx = _mm256_fmadd_pd(q0, rr, q1);
    qx = _mm256_fmadd_pd(qx, rr, q2);
    qx = _mm256_fmadd_pd(qx, rr, q3);

    __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
    e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));

    // scale by 2^n through the exponent field
    __m128i ni = _mm256_cvtpd_epi32(n);
    __m256i nl = _mm256_cvtepi32_epi64(ni);
    nl = _mm256_slli_epi64(_mm256_add_epi64(nl, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(e, _mm256_castsi256_pd(nl));
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void ray_accel_avx2(int n, const double* s, const double* v,
                    const double* current, const RayParams& p, double* a) {
    // Ghost cells equal to the edge stroke make the boundary coupling
    // terms vanish without branches.
    double padded[2 + 64];
    const double* sp;
    std::vector<double> heap;
    if (p.coupling != 0.0) {
        double* dst = padded + 1;
        if (n > 64) {
            heap.resize(static_cast<std::size_t>(n) + 2);
            dst = heap.data() + 1;
        }
        std::memcpy(dst, s, sizeof(double) * static_cast<std::size_t>(n));
        dst[-1] = s[0];
        dst[n] = s[n - 1];
        sp = dst;
    } else {
        sp = s;
    }

    const __m256d couple = _mm256_set1_pd(p.coupling);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d si = _mm256_loadu_pd(s + i);
        __m256d vi = _mm256_loadu_pd(v + i);
        __m256d gauss = exp_pd(_mm256_mul_pd(
            _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(si, si)),
            _mm256_loadu_pd(p.inv_two_bw2 + i)));
        __m256d drive = _mm256_mul_pd(
            _mm256_mul_pd(_mm256_loadu_pd(p.drive_gain + i),
                          _mm256_loadu_pd(current + i)),
            gauss);
        __m256d f = _mm256_fnmadd_pd(_mm256_loadu_pd(p.stiffness + i), si, drive);
        f = _mm256_fnmadd_pd(_mm256_loadu_pd(p.damping_lin + i), vi, f);
        __m256d vabs = _mm256_andnot_pd(_mm256_set1_pd(-0.0), vi);
        f = _mm256_fnmadd_pd(_mm256_loadu_pd(p.damping_quad + i),
                             _mm256_mul_pd(vi, vabs), f);
        f = _mm256_sub_pd(f, _mm256_loadu_pd(p.bias_force + i));
        if (p.coupling != 0.0) {
            __m256d left = _mm256_loadu_pd(sp + i - 1);
            __m256d right = _mm256_loadu_pd(sp + i + 1);
            __m256d lap = _mm256_add_pd(_mm256_sub_pd(left, si),
                                        _mm256_sub_pd(right, si));
            f = _mm256_fmadd_pd(couple, lap, f);
        }
        _mm256_storeu_pd(a + i, _mm256_mul_pd(f, _mm256_loadu_pd(p.inv_mass + i)));
    }
    for (; i < n; ++i) {
        double gauss[4], xs[4] = {-s[i] * s[i] * p.inv_two_bw2[i], 0, 0, 0};
        _mm256_storeu_pd(gauss, exp_pd(_mm256_loadu_pd(xs)));
        double f = p.drive_gain[i] * current[i] * gauss[0] -
                   p.stiffness[i] * s[i] - p.damping_lin[i] * v[i] -
                   p.damping_quad[i] * v[i] * std::fabs(v[i]) - p.bias_force[i];
        if (p.coupling != 0.0)
            f += p.coupling * ((sp[i - 1] - s[i]) + (sp[i + 1] - s[i]));
        a[i] = f * p.inv_mass[i];
    }
}

void demod_avx2(const double* x, std::size_t n, double step, double phase0,
                double* sum_cos, double* sum_sin) {
    // Four-lane phasor rotation, re-synchronised from libm every block to
    // bound recurrence drift.
    constexpr std::size_t kResync = 2048;  // vector iterations per resync
    __m256d acc_c = _mm256_setzero_pd();
    __m256d acc_s = _mm256_setzero_pd();
    const double c4 = std::cos(4.0 * step), s4 = std::sin(4.0 * step);
    const __m256d rc = _mm256_set1_pd(c4), rs = _mm256_set1_pd(s4);

    std::size_t k = 0;
    while (k + 4 <= n) {
        const double base = phase0 + step * static_cast<double>(k);
        double ac[4], as[4];
        for (int l = 0; l < 4; ++l) {
            ac[l] = std::cos(base + step * l);
            as[l] = std::sin(base + step * l);
        }
        __m256d pc = _mm256_loadu_pd(ac);
        __m256d ps = _mm256_loadu_pd(as);
        std::size_t block = 0;
        for (; block < kResync && k + 4 <= n; ++block, k += 4) {
            __m256d xv = _mm256_loadu_pd(x + k);
            acc_c = _mm256_fmadd_pd(xv, pc, acc_c);
            acc_s = _mm256_fmadd_pd(xv, ps, acc_s);
            __m256d nc = _mm256_fmsub_pd(pc, rc, _mm256_mul_pd(ps, rs));
            __m256d ns = _mm256_fmadd_pd(ps, rc, _mm256_mul_pd(pc, rs));
            pc = nc;
            ps = ns;
        }
    }
    double sc = hsum(acc_c), ss = hsum(acc_s);
    for (; k < n; ++k) {
        const double ph = phase0 + step * static_cast<double>(k);
        sc += x[k] * std::cos(ph);
        ss += x[k] * std::sin(ph);
    }
    *sum_cos = sc;
    *sum_sin = ss;
}

void minmax_avx2(const double* x, std::size_t n, double* lo, double* hi) {
    const double inf = std::numeric_limits<double>::infinity();
    __m256d vmn = _mm256_set1_pd(inf);
    __m256d vmx = _mm256_set1_pd(-inf);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d xv = _mm256_loadu_pd(x + k);
        vmn = _mm256_min_pd(vmn, xv);
        vmx = _mm256_max_pd(vmx, xv);
    }
    double mn[4], mx[4];
    _mm256_storeu_pd(mn, vmn);
    _mm256_storeu_pd(mx, vmx);
    double rmn = std::min(std::min(mn[0], mn[1]), std::min(mn[2], mn[3]));
    double rmx = std::max(std::max(mx[0], mx[1]), std::max(mx[2], mx[3]));
    for (; k < n; ++k) {
        rmn = std::min(rmn, x[k]);
        rmx = std::max(rmx, x[k]);
    }
    *lo = rmn;
    *hi = rmx;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{ray_accel_avx2, demod_avx2, minmax_avx2};
    return ops;
}

}  // namespace finsim::kernels
