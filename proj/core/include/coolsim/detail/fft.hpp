// detail/fft.hpp — minimal iterative radix-2 FFT used for the Toeplitz
// (stationary-kernel) reductions in the moment assembly.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace coolsim::detail {

inline std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

// in-place FFT; invert = true applies the unscaled inverse transform
inline void fft_radix2(std::vector<std::complex<double>>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * 3.141592653589793238462643383279502884 /
                           static_cast<double>(len) * (invert ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (invert)
        for (auto& x : a) x /= static_cast<double>(n);
}

// linear autocorrelation c[d] = sum_k conj(x[k]) x[k+d], d = 0..x.size()-1
inline std::vector<std::complex<double>> autocorrelation(
    const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {};
    std::vector<std::complex<double>> buf(next_pow2(2 * n));
    std::copy(x.begin(), x.end(), buf.begin());
    fft_radix2(buf, false);
    for (auto& z : buf) z = z * std::conj(z);
    fft_radix2(buf, true);
    buf.resize(n);
    return buf;
}

}  // namespace coolsim::detail
