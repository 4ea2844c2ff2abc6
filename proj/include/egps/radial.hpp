#pragma once

#include <span>
#include <vector>

#include "egps/grid.hpp"
#include "egps/model.hpp"

namespace egps::radial {

// Weighted radial Laplacian at the midpoints,
//
//   delta2 phi_{j+1/2} = [ r_{j+1}^{d-1} phi_{j+3/2}
//                          - (r_{j+1}^{d-1} + r_j^{d-1}) phi_{j+1/2}
//                          + r_j^{d-1} phi_{j-1/2} ] / (dr^2 r_{j+1/2}^{d-1}),
//
// with ghost values phi_{-1/2} = phi_{1/2} and phi_{M+1/2} = 0.
std::vector<double> laplacian_apply(const RadialGrid& g, std::span<const double> phi);
Field laplacian_apply(const Field& f);

// One tridiagonal row per midpoint; sub[0] and super[M-1] are zero (the
// Neumann ghost is folded into the main diagonal, the Dirichlet ghost drops
// the last coupling).
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> super;
    std::vector<double> rhs;

    std::size_t size() const { return diag.size(); }
};

// Implicit-explicit step operator for the normalized gradient flow. The
// left-hand side carries
//   1/tau - 1/2 delta2 + V + lambda |phi|^3 + beta^+ |phi|^2 - (mu)^-
// and the right-hand side
//   (1/tau + (mu)^+ - beta^- |phi|^2) phi,
// which reproduces the sign-dependent implicit/explicit placement of the
// cubic and multiplier terms. Under lambda >= 0, V >= 0, phi >= 0 the matrix
// is an M-matrix and the right-hand side is nonnegative.
TridiagonalSystem assemble_implicit_system(const RadialGrid& g,
                                           std::span<const double> phi,
                                           std::span<const double> V,
                                           const ModelParams& m, double tau,
                                           double mu);
TridiagonalSystem assemble_implicit_system(const Field& f, const ModelParams& m,
                                           double tau, double mu);

// Thomas algorithm. Throws on a vanishing pivot or a normwise backward
// error above 1e-12 (neither can occur for the diagonally dominant systems
// produced by the assembly). On systems whose rows are not much larger than
// the right-hand side this implies ||Ax - b||_inf / ||b||_inf < 1e-12.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys);

// Applies the tridiagonal matrix (for residual checks and tests).
std::vector<double> tridiagonal_apply(const TridiagonalSystem& sys,
                                      std::span<const double> x);

// Discrete L2 norm sqrt(omega(d) dr sum |phi_{j+1/2}|^2 r_{j+1/2}^{d-1}),
// omega = 2, 2 pi, 4 pi for d = 1, 2, 3.
double norm(const RadialGrid& g, std::span<const double> phi);

}  // namespace egps::radial
