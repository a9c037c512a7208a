#include "zq/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace zq {

namespace {

// Plans are created once under the lock and only executed afterwards, with
// the new-array interface, which FFTW documents as thread-safe.
// FFTW_ESTIMATE keeps plan choice, and therefore rounding, reproducible.
struct PlanCache {
    std::mutex m;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans;

    fftw_plan get(std::size_t n0, std::size_t n1, int sign) {
        std::lock_guard<std::mutex> lk(m);
        auto key = std::make_tuple(n0, n1, sign);
        auto it = plans.find(key);
        if (it != plans.end()) return it->second;
        std::size_t total = n0 * (n1 ? n1 : 1);
        fftw_complex* buf = fftw_alloc_complex(total);
        unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan p = n1 ? fftw_plan_dft_2d(int(n0), int(n1), buf, buf, sign, flags)
                         : fftw_plan_dft_1d(int(n0), buf, buf, sign, flags);
        fftw_free(buf);
        plans.emplace(key, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

} // namespace

void fft(std::vector<cplx>& a, int sign) {
    if (a.empty()) return;
    fftw_plan p = cache().get(a.size(), 0, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* d = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(p, d, d);
}

void fft2(std::vector<cplx>& a, std::size_t n0, std::size_t n1, int sign) {
    fftw_plan p = cache().get(n0, n1, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* d = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(p, d, d);
}

std::size_t fft_good_size(std::size_t n) {
    for (std::size_t m = n;; ++m) {
        std::size_t r = m;
        for (std::size_t p : {2, 3, 5, 7})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

} // namespace zq
