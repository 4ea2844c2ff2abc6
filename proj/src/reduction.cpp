#include "egps/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace egps {

namespace {

using Fn = std::function<double(double)>;

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const Fn& f, double a, double b, double fa, double fm,
                     double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double fl = f(0.5 * (a + m));
    const double fr = f(0.5 * (m + b));
    const double left = simpson(a, m, fa, fl, fm);
    const double right = simpson(m, b, fm, fr, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_step(f, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

// Adaptive Simpson run per panel of a coarse subdivision, with a tolerance
// relative to a coarse estimate of the integral. The panelling keeps sharply
// localized integrands from being mistaken for zero by the first recursion
// levels.
double integrate(const Fn& f, double a, double b) {
    const int panels = 64;
    const double h = (b - a) / panels;
    double coarse = f(a) + f(b);
    for (int i = 1; i < panels; ++i) coarse += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    coarse *= h / 3.0;
    const double tol = std::max(std::abs(coarse), 1e-300) * 1e-12 / panels;

    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        const double x1 = (i + 1 == panels) ? b : a + (i + 1) * h;
        const double f0 = f(x0);
        const double f1 = f(x1);
        const double fm = f(0.5 * (x0 + x1));
        total += adaptive_step(f, x0, x1, f0, fm, f1, simpson(x0, x1, f0, fm, f1),
                               tol, 24);
    }
    return total;
}

std::array<double, 3> harmonic_gammas(const Potential& pot) {
    if (std::holds_alternative<ZeroPotential>(pot)) return {0.0, 0.0, 0.0};
    if (const auto* h = std::get_if<HarmonicPotential>(&pot)) return h->gamma;
    throw std::invalid_argument(
        "reduce_dimension: transverse reduction needs a zero or harmonic potential");
}

}  // namespace

ReducedModel reduce_dimension(const ModelParams& m, double sigma,
                              TransverseCase tcase) {
    if (m.dimension != 3) {
        throw std::invalid_argument("reduce_dimension: model must be three-dimensional");
    }
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("reduce_dimension: transverse width must be positive");
    }
    const auto gamma = harmonic_gammas(m.potential);
    const double s2 = sigma * sigma;
    const double cut = 14.0 * sigma;  // integrands decay at least like exp(-z^2/s^2)

    ReducedModel out;
    if (tcase == TransverseCase::Disk) {
        // psi(z) = (pi s^2)^{-1/4} exp(-z^2 / 2 s^2); all integrands even in z
        const double amp = std::pow(std::numbers::pi * s2, -0.25);
        auto psi = [&](double z) { return amp * std::exp(-z * z / (2.0 * s2)); };
        const double q4 = 2.0 * integrate([&](double z) { const double p = psi(z); return p * p * p * p; }, 0.0, cut);
        const double q5 = 2.0 * integrate([&](double z) { const double p = psi(z); return p * p * p * p * p; }, 0.0, cut);
        const double z2 = 2.0 * integrate([&](double z) { const double p = psi(z); return z * z * p * p; }, 0.0, cut);
        const double kin = 2.0 * integrate([&](double z) {
            const double dp = -(z / s2) * psi(z);
            return dp * dp;
        }, 0.0, cut);
        out.beta_reduced = m.beta * q4;
        out.lambda_reduced = m.lambda * q5;
        out.phase_constant = gamma[2] * gamma[2] * z2 + kin;
        out.target_dimension = 2;
        return out;
    }

    // Cigar: psi(rho) = (pi s^2)^{-1/2} exp(-rho^2 / 2 s^2) on the (y,z)
    // plane, integrated against the 2 pi rho measure.
    const double amp = 1.0 / (std::sqrt(std::numbers::pi) * sigma);
    auto psi = [&](double r) { return amp * std::exp(-r * r / (2.0 * s2)); };
    const double twopi = 2.0 * std::numbers::pi;
    const double q4 = integrate([&](double r) { const double p = psi(r); return twopi * r * p * p * p * p; }, 0.0, cut);
    const double q5 = integrate([&](double r) { const double p = psi(r); return twopi * r * p * p * p * p * p; }, 0.0, cut);
    // int y^2 |psi|^2 = int z^2 |psi|^2 = (1/2) int rho^2 |psi|^2
    const double m2 = 0.5 * integrate([&](double r) { const double p = psi(r); return twopi * r * r * r * p * p; }, 0.0, cut);
    const double kin = integrate([&](double r) {
        const double dp = -(r / s2) * psi(r);
        return twopi * r * dp * dp;
    }, 0.0, cut);
    out.beta_reduced = m.beta * q4;
    out.lambda_reduced = m.lambda * q5;
    out.phase_constant = (gamma[1] * gamma[1] + gamma[2] * gamma[2]) * m2 + kin;
    out.target_dimension = 1;
    return out;
}

}  // namespace egps
