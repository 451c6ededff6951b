#include "tagtrack/fft2.hpp"

#include <unsupported/Eigen/FFT>

namespace tagtrack {

namespace {

Eigen::FFT<double>& plan_cache() {
    thread_local Eigen::FFT<double> fft;
    return fft;
}

using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1>;

Eigen::ArrayXXcd transform2(const Eigen::ArrayXXcd& in, bool inverse) {
    auto& fft = plan_cache();
    const Eigen::Index rows = in.rows();
    const Eigen::Index cols = in.cols();
    Eigen::ArrayXXcd out(rows, cols);
    CVec buf_in(rows), buf_out(rows);
    for (Eigen::Index c = 0; c < cols; ++c) {
        buf_in = in.col(c).matrix();
        if (inverse)
            fft.inv(buf_out, buf_in);
        else
            fft.fwd(buf_out, buf_in);
        out.col(c) = buf_out.array();
    }
    CVec row_in(cols), row_out(cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        row_in = out.row(r).matrix().transpose();
        if (inverse)
            fft.inv(row_out, row_in);
        else
            fft.fwd(row_out, row_in);
        out.row(r) = row_out.array().transpose();
    }
    return out;
}

}  // namespace

Eigen::ArrayXXcd fft2(const Eigen::ArrayXXd& spatial) {
    return transform2(spatial.cast<std::complex<double>>(), false);
}

Eigen::ArrayXXcd fft2(const Eigen::ArrayXXcd& spatial) { return transform2(spatial, false); }

Eigen::ArrayXXcd ifft2(const Eigen::ArrayXXcd& spectrum) { return transform2(spectrum, true); }

Eigen::ArrayXXd ifft2_real(const Eigen::ArrayXXcd& spectrum) { return ifft2(spectrum).real(); }

Eigen::ArrayXXd circular_cross_correlation(const Eigen::ArrayXXd& a, const Eigen::ArrayXXd& b) {
    const Eigen::Index rows = a.rows();
    const Eigen::Index cols = a.cols();
    Eigen::ArrayXXd r = Eigen::ArrayXXd::Zero(rows, cols);
    for (Eigen::Index dy = 0; dy < rows; ++dy)
        for (Eigen::Index dx = 0; dx < cols; ++dx) {
            double acc = 0.0;
            for (Eigen::Index y = 0; y < rows; ++y)
                for (Eigen::Index x = 0; x < cols; ++x)
                    acc += a(y, x) * b((y + dy) % rows, (x + dx) % cols);
            r(dy, dx) = acc;
        }
    return r;
}

}  // namespace tagtrack
