#pragma once

#include <complex>
#include <vector>

namespace ofdmsync {

// In-place radix-2 transform with unitary scaling (1/sqrt(N) in both
// directions). Size must be a power of two.
void fft_radix2(std::vector<std::complex<double>>& x, bool inverse);

std::vector<std::complex<double>> forward_transform(std::vector<std::complex<double>> bins);
std::vector<std::complex<double>> inverse_transform_vec(std::vector<std::complex<double>> bins);

}  // namespace ofdmsync
