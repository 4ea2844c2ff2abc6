#pragma once

#include <array>
#include <span>
#include <vector>

#include "egps/grid.hpp"
#include "egps/model.hpp"

namespace egps::tensor {

// Second-order central differences per axis with homogeneous Dirichlet
// boundary (values outside the node set are zero).
std::vector<double> laplacian_apply(const TensorGrid& g, std::span<const double> phi);
Field laplacian_apply(const Field& f);

// Symmetric (2d+1)-point stencil operator: a per-node diagonal plus one
// constant off-diagonal coefficient per axis.
struct StencilOperator {
    TensorGrid grid;
    std::vector<double> diag;
    std::array<double, 3> axis_coeff{0.0, 0.0, 0.0};
};

void apply(const StencilOperator& op, std::span<const double> x,
           std::span<double> y);

// IMEX step system with the same sign-split placement as the radial
// assembly. nonnegativity_guaranteed records whether the M-matrix
// hypotheses (lambda >= 0, V >= 0, phi >= 0) held at assembly.
struct StepSystem {
    StencilOperator op;
    std::vector<double> rhs;
    bool nonnegativity_guaranteed = false;
};

StepSystem assemble_step_operator(const TensorGrid& g, std::span<const double> phi,
                                  std::span<const double> V, const ModelParams& m,
                                  double tau, double mu);
StepSystem assemble_step_operator(const Field& f, const ModelParams& m,
                                  double tau, double mu);

struct PcgResult {
    std::vector<double> solution;
    long iterations = 0;
    double relative_residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients, started from D^-1 b so the
// result depends only on the system. Throws if the relative residual does
// not reach rel_tol within max_iterations.
PcgResult solve_step(const StencilOperator& op, std::span<const double> rhs,
                     double rel_tol = 1e-10, long max_iterations = 50000);

// Same, but when the step system carries the M-matrix guarantee the exact
// solution is componentwise nonnegative and the solver's sign-level roundoff
// is stripped.
PcgResult solve_step(const StepSystem& sys, double rel_tol = 1e-10,
                     long max_iterations = 50000);

double norm(const TensorGrid& g, std::span<const double> phi);

}  // namespace egps::tensor
