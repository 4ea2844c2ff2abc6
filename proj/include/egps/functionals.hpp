#pragma once

#include <span>

#include "egps/grid.hpp"
#include "egps/model.hpp"

namespace egps {

// Quadrature components of the energy and chemical potential, all taken with
// the grid's native rule so that discrete identities between E and mu hold
// exactly:
//   kinetic   = 1/2 int |grad phi|^2   (first differences, matching weights)
//   potential = int V |phi|^2
//   quartic   = int |phi|^4
//   quintic   = int |phi|^5
//   mass_sq   = int |phi|^2
struct EnergyTerms {
    double kinetic = 0.0;
    double potential = 0.0;
    double quartic = 0.0;
    double quintic = 0.0;
    double mass_sq = 0.0;
};

// Workhorses over raw values with a presampled potential; the gradient part
// is the summation-by-parts companion of the discrete Laplacian of the
// corresponding solver, including its ghost conditions.
EnergyTerms radial_energy_terms(const RadialGrid& g, std::span<const double> phi,
                                std::span<const double> V);
EnergyTerms tensor_energy_terms(const TensorGrid& g, std::span<const double> phi,
                                std::span<const double> V);

double radial_norm(const RadialGrid& g, std::span<const double> phi);
double tensor_norm(const TensorGrid& g, std::span<const double> phi);

EnergyTerms energy_terms(const Field& f, const ModelParams& m);

// E = kinetic + potential + (beta/2) quartic + (2 lambda/5) quintic
double energy(const Field& f, const ModelParams& m);

// mu = (kinetic + potential + beta quartic + lambda quintic) / c^2.
// Requires ||f||_2 = c within 1e-8 relative.
double chemical_potential(const Field& f, const ModelParams& m);

// Discrete L2 norm under the grid's native rule.
double mass_norm(const Field& f);

double energy_from_terms(const EnergyTerms& t, const ModelParams& m);
double chemical_potential_from_terms(const EnergyTerms& t, const ModelParams& m);

}  // namespace egps
