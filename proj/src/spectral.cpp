#include "spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace norbrack::detail {

namespace {

int wavenumber(Eigen::Index k, Eigen::Index n) { return static_cast<int>(k <= n / 2 ? k : k - n); }

} // namespace

Eigen::VectorXd precondition_product_rule(const Eigen::VectorXd& u, double floor)
{
    const Eigen::Index n = u.size();
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    Eigen::FFT<double> fft;
    std::vector<double> in(u.data(), u.data() + n);
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, in);
    for (Eigen::Index k = 0; k < n; ++k) {
        const int j = wavenumber(k, n);
        const double factor = (6.0 + 8.0 * std::cos(j * h) - 2.0 * std::cos(2.0 * j * h)) / 12.0;
        auto& c = spec[static_cast<std::size_t>(k)];
        if (std::abs(factor) < floor)
            c = 0.0;
        else
            c /= factor;
    }
    std::vector<double> out;
    fft.inv(out, spec);
    return Eigen::Map<Eigen::VectorXd>(out.data(), n);
}

Eigen::VectorXd invert_deriv_theta(const Eigen::VectorXd& rhs)
{
    const Eigen::Index n = rhs.size();
    const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
    Eigen::FFT<double> fft;
    std::vector<double> in(rhs.data(), rhs.data() + n);
    std::vector<std::complex<double>> spec;
    fft.fwd(spec, in);
    for (Eigen::Index k = 0; k < n; ++k) {
        const int j = wavenumber(k, n);
        // symbol of the five-point stencil: i (8 sin(jh) - sin(2jh)) / (6h)
        const double symbol = (8.0 * std::sin(j * h) - std::sin(2.0 * j * h)) / (6.0 * h);
        auto& c = spec[static_cast<std::size_t>(k)];
        if (j == 0 || 2 * std::abs(j) == n || std::abs(symbol) < 1e-300)
            c = 0.0;
        else
            c /= std::complex<double>(0.0, symbol);
    }
    std::vector<double> out;
    fft.inv(out, spec);
    return Eigen::Map<Eigen::VectorXd>(out.data(), n);
}

} // namespace norbrack::detail
