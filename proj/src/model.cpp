#include "egps/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace egps {

namespace {
constexpr double four_pi = 4.0 * std::numbers::pi;
}

NondimCoefficients nondimensionalize(const PhysicalParams& p) {
    if (!(p.mass > 0.0) || !(p.scattering_length > 0.0) ||
        !(p.particle_number > 0.0) || !(p.length_scale > 0.0) ||
        !(p.lhy_constant > 0.0) || !(p.norm_constant > 0.0)) {
        throw std::invalid_argument(
            "nondimensionalize: all physical parameters must be positive");
    }
    const double c = p.norm_constant;
    const double ratio = p.scattering_length / p.length_scale;
    NondimCoefficients out;
    out.beta = four_pi * p.particle_number * p.scattering_length /
               (c * c * p.length_scale);
    out.lambda = four_pi * p.lhy_constant *
                 std::pow(p.particle_number, 1.5) / (c * c * c) *
                 std::pow(ratio, 2.5);
    return out;
}

double evaluate_potential(const Potential& v, std::span<const double> point) {
    if (point.empty() || point.size() > 3) {
        throw std::invalid_argument("evaluate_potential: point must be 1-, 2- or 3-dimensional");
    }
    struct Visitor {
        std::span<const double> x;
        double operator()(const ZeroPotential&) const { return 0.0; }
        double operator()(const HarmonicPotential& h) const {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                s += h.gamma[i] * h.gamma[i] * x[i] * x[i];
            }
            return 0.5 * s;
        }
        double operator()(const OpticalLatticePotential& l) const {
            double s = 0.0;
            for (double xi : x) s += std::cos(l.wavenumber * xi);
            return l.amplitude * s;
        }
        double operator()(const RadialPowerPotential& rp) const {
            double r2 = 0.0;
            for (double xi : x) r2 += xi * xi;
            return rp.coefficient * std::pow(std::sqrt(r2), rp.exponent);
        }
        double operator()(const TabulatedPotential&) const {
            throw std::invalid_argument(
                "evaluate_potential: tabulated potential has no pointwise form");
        }
    };
    return std::visit(Visitor{point}, v);
}

ModelParams::ModelParams(int d, double beta_, double lambda_, double mass_,
                         Potential pot)
    : dimension(d), beta(beta_), lambda(lambda_), mass(mass_),
      potential(std::move(pot)) {
    if (d < 1 || d > 3) throw std::invalid_argument("ModelParams: dimension must be 1, 2 or 3");
    if (!(lambda >= 0.0)) throw std::invalid_argument("ModelParams: lambda must be >= 0");
    if (!(mass > 0.0)) throw std::invalid_argument("ModelParams: mass c must be > 0");
}

}  // namespace egps
