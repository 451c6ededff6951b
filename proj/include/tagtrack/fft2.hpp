#pragma once

#include <Eigen/Dense>
#include <complex>

namespace tagtrack {

// 2D DFT helpers on small dense grids. Forward is unnormalized
// (X(k) = sum x(n) e^{-i2πkn/N}); inverse applies the 1/(H·W) factor, so
// ifft2(fft2(x)) == x. Plans are cached per thread.
Eigen::ArrayXXcd fft2(const Eigen::ArrayXXd& spatial);
Eigen::ArrayXXcd fft2(const Eigen::ArrayXXcd& spatial);
Eigen::ArrayXXcd ifft2(const Eigen::ArrayXXcd& spectrum);

// Inverse transform of a conjugate-symmetric spectrum; returns the real part.
Eigen::ArrayXXd ifft2_real(const Eigen::ArrayXXcd& spectrum);

// Circular cross-correlation r(n) = sum_m a(m) b(m+n), both real. O(N^2);
// reference implementation for tests and small oracles.
Eigen::ArrayXXd circular_cross_correlation(const Eigen::ArrayXXd& a, const Eigen::ArrayXXd& b);

}  // namespace tagtrack
