#include "finsim/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace finsim::kernels {

const Ops& scalar_ops();
#if FINSIM_HAVE_AVX2_TU
const Ops& avx2_ops();
#endif

namespace {

bool cpu_has_avx2() {
#if FINSIM_HAVE_AVX2_TU && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend() {
    Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("FINSIM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) b = Backend::avx2;
    }
    return b;
}

std::atomic<Backend>& current() {
    static std::atomic<Backend> b{initial_backend()};
    return b;
}

}  // namespace

Backend active() { return current().load(std::memory_order_relaxed); }

bool supported(Backend b) {
    return b == Backend::scalar || (b == Backend::avx2 && cpu_has_avx2());
}

bool set_backend(Backend b) {
    if (!supported(b)) return false;
    current().store(b, std::memory_order_relaxed);
    return true;
}

std::string backend_name(Backend b) {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

const Ops& ops_for(Backend b) {
#if FINSIM_HAVE_AVX2_TU
    if (b == Backend::avx2) return avx2_ops();
#else
    (void)b;
#endif
    return scalar_ops();
}

const Ops& ops() { return ops_for(active()); }

}  // namespace finsim::kernels
