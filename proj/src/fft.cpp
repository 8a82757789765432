#include "awt/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace awt {

namespace {

std::mutex plan_mutex;
std::map<std::pair<std::size_t, int>, fftw_plan> plan_cache;

fftw_plan get_plan(std::size_t n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    // FFTW_UNALIGNED lets the plan run on any std::vector buffer.
    std::vector<cplx> scratch(n);
    fftw_plan p = fftw_plan_dft_1d(
        static_cast<int>(n), reinterpret_cast<fftw_complex*>(scratch.data()),
        reinterpret_cast<fftw_complex*>(scratch.data()),
        sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_cache.emplace(key, p);
    return p;
}

}  // namespace

void fft_inplace(std::vector<cplx>& data, int sign) {
    if (data.empty()) return;
    fftw_plan p = get_plan(data.size(), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace awt
