#pragma once

#include <array>
#include <span>
#include <variant>
#include <vector>

// Problem definition for the dimensionless extended Gross-Pitaevskii model
//
//   i dpsi/dt = -1/2 Lap psi + V psi + beta |psi|^2 psi + lambda |psi|^3 psi,
//   ||psi||_2 = c,
//
// in d = 1, 2, or 3 space dimensions. Ground states are real and can be
// chosen nonnegative, so fields are stored as real arrays.

namespace egps {

// Physical inputs of the dimensional model. All quantities SI where they
// have units; hbar is an internal constant.
struct PhysicalParams {
    double mass = 0.0;               // atomic mass m [kg]
    double scattering_length = 0.0;  // a_s [m]
    double particle_number = 0.0;    // N
    double length_scale = 0.0;       // x_s [m]
    double lhy_constant = 0.0;       // C_L, dimensionless
    double norm_constant = 0.0;      // c, dimensionless

    static constexpr double hbar = 1.054571817e-34;  // [J s]
};

struct NondimCoefficients {
    double beta = 0.0;
    double lambda = 0.0;
};

// beta = 4 pi N a_s / (c^2 x_s),
// lambda = 4 pi C_L (N^{3/2} / c^3) (a_s / x_s)^{5/2}.
// Throws std::invalid_argument if any input is not strictly positive.
NondimCoefficients nondimensionalize(const PhysicalParams& p);

struct ZeroPotential {};

// V(x) = 1/2 sum_i gamma_i^2 x_i^2. Unused trailing gammas are ignored in
// lower dimensions.
struct HarmonicPotential {
    std::array<double, 3> gamma{0.0, 0.0, 0.0};
};

// V(x) = V0 * sum_i cos(k x_i)
struct OpticalLatticePotential {
    double amplitude = 0.0;   // V0
    double wavenumber = 0.0;  // k
};

// V(x) = coefficient * |x|^exponent
struct RadialPowerPotential {
    double coefficient = 0.0;
    double exponent = 2.0;
};

// Values sampled at the grid nodes of the field the potential is used with;
// no interpolation, a size mismatch is an error.
struct TabulatedPotential {
    std::vector<double> values;
};

using Potential = std::variant<ZeroPotential, HarmonicPotential,
                               OpticalLatticePotential, RadialPowerPotential,
                               TabulatedPotential>;

// Pointwise evaluation; point.size() is the space dimension. Tabulated
// potentials have no pointwise form and throw.
double evaluate_potential(const Potential& v, std::span<const double> point);

// Dimensionless problem definition.
struct ModelParams {
    int dimension = 3;
    double beta = 0.0;
    double lambda = 0.0;  // >= 0
    double mass = 1.0;    // c > 0
    Potential potential = ZeroPotential{};

    ModelParams() = default;
    ModelParams(int d, double beta_, double lambda_, double mass_,
                Potential pot = ZeroPotential{});
};

}  // namespace egps
