#ifndef FRACCOV_FFT_HPP
#define FRACCOV_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fraccov {

constexpr bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

// In-place iterative radix-2 FFT, forward convention X_k = sum_t x_t e^{-2pi i t k / n}.
// Size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse = false);

// Direct O(n^2) DFT for arbitrary sizes, same convention as fft_inplace.
std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x);

// DFT of a real series, dispatching to the radix-2 path when possible.
std::vector<std::complex<double>> dft_real(std::span<const double> x);

} // namespace fraccov

#endif
