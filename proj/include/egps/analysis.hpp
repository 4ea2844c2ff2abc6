#pragma once

#include <optional>
#include <string>
#include <vector>

#include "egps/flow.hpp"
#include "egps/grid.hpp"
#include "egps/model.hpp"

namespace egps::analysis {

// Fraction of the total mass carried by the region where the density
// rho = |phi|^2 stays within a factor theta of its maximum,
//   eta_theta = int_{rho >= theta max rho} rho / int rho,
// with inclusive membership and the field's native quadrature.
double eta_indicator(const Field& f, double theta);

// Flat-top ansatz phi ~ a 1_D with a |D|^{1/2} = c and the kinetic energy
// neglected: minimizing (beta/2) c a^2 + (2 lambda/5) c a^3 over a.
struct FlatTopEstimate {
    double plateau_value = 0.0;   // a = -5 beta / (6 lambda)
    double approx_energy = 0.0;   // E_app^min = (beta c / 6) (5 beta / 6 lambda)^2
    double support_volume = 0.0;  // |D| = (c / a)^2
};

// Requires beta < 0 and lambda > 0 (the ansatz is meaningless otherwise).
FlatTopEstimate flat_top_estimate(const ModelParams& m);

struct ComparisonReport {
    double e_a = 0.0;  // |phi_g(0) - a| / |phi_g(0)|
    double e_E = 0.0;  // |E(phi_g) - E_app^min| / |E(phi_g)|
    double computed_peak = 0.0;
    double computed_energy = 0.0;
};

// Requires a converged ground-state result; the peak is read at the grid
// point of maximum |phi|.
ComparisonReport compare_to_flat_top(const flow::GroundStateResult& result,
                                     const FlatTopEstimate& est);

enum class Regime { NoGroundState, SolitonLike, DropletLike, Error };

std::string regime_name(Regime r);

struct PhaseDiagramCell {
    double beta = 0.0;
    double lambda = 0.0;
    std::optional<double> eta;  // empty iff no ground state was found
    Regime regime = Regime::Error;
    long iterations = 0;
    bool converged = false;
    bool near_threshold = false;  // |eta - threshold| < 0.02
    std::string error;
};

struct SweepRequest {
    double beta_min = -25.0;
    double beta_max = -1.0;
    int beta_count = 8;
    double lambda_min = 0.002;
    double lambda_max = 1.0;
    int lambda_count = 8;
    double theta = 0.99;
    double eta_threshold = 0.62;
    double mass = 1.0;
    RadialGrid grid{3, 1.0, 1024};
    flow::SolverConfig config;
    double initial_width = 0.25;
    int workers = 1;
};

// Runs the radial d = 3 solver over the (beta, lambda) grid and classifies
// every cell. Rows of fixed beta run sequentially so cells warm-start from
// their lambda neighbour; rows are distributed over the worker pool. The
// returned cells are sorted by (beta, lambda) and independent of the worker
// count. Per-cell failures land in the cell's error slot, never abort the
// sweep.
std::vector<PhaseDiagramCell> phase_sweep(const SweepRequest& req);

}  // namespace egps::analysis
