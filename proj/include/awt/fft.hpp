#pragma once

#include <vector>

#include "awt/common.hpp"

namespace awt {

// In-place complex DFT, FFTW backend. sign = -1 forward (e^{-i..}),
// +1 inverse (unnormalized; caller divides by n). Plan creation is
// serialized internally; execution is safe from multiple threads.
void fft_inplace(std::vector<cplx>& data, int sign);

inline std::vector<cplx> fft(std::vector<cplx> data) {
    fft_inplace(data, -1);
    return data;
}

inline std::vector<cplx> ifft_unnormalized(std::vector<cplx> data) {
    fft_inplace(data, +1);
    return data;
}

}  // namespace awt
