#pragma once

#include "egps/model.hpp"

namespace egps {

enum class TransverseCase { Disk, Cigar };

// Coefficients of the effective lower-dimensional model obtained by freezing
// the strongly confined directions into a Gaussian profile of width sigma.
struct ReducedModel {
    double beta_reduced = 0.0;    // beta * int |psi_perp|^4
    double lambda_reduced = 0.0;  // lambda * int |psi_perp|^5
    double phase_constant = 0.0;  // trap + gradient moments of psi_perp
    int target_dimension = 2;     // 2 for Disk, 1 for Cigar
};

// Disk: psi_3(z) = (pi sigma^2)^{-1/4} exp(-z^2 / 2 sigma^2), reduce to 2D.
// Cigar: isotropic 2D Gaussian of width sigma in (y,z), reduce to 1D.
// The model must be three-dimensional with a zero or harmonic potential;
// the profile moments are evaluated by adaptive quadrature (relative error
// well below 1e-8).
ReducedModel reduce_dimension(const ModelParams& m, double sigma,
                              TransverseCase tcase);

}  // namespace egps
