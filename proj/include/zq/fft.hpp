#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zq {

using cplx = std::complex<double>;

// Unnormalized in-place transforms; sign -1 is forward (e^{-i...}).
void fft(std::vector<cplx>& a, int sign);
// Row-major n0 x n1 array.
void fft2(std::vector<cplx>& a, std::size_t n0, std::size_t n1, int sign);

// Smallest m >= n with no prime factor above 7.
std::size_t fft_good_size(std::size_t n);

} // namespace zq
