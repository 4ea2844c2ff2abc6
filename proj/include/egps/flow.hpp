#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "egps/functionals.hpp"
#include "egps/grid.hpp"
#include "egps/model.hpp"

namespace egps::flow {

enum class StopMetric { MaxDiff, L2Diff };

// Classifier for runs where the constrained infimum is not attained: the
// iterates delocalize instead of settling. Fires when the peak density has
// decreased strictly for `window` consecutive iterations and sits below
// peak_decay_threshold times its initial value. A classification, not a
// proof.
struct SpreadDetection {
    int window = 200;
    double peak_decay_threshold = 0.5;
};

struct SolverConfig {
    double time_step = 1e-2;
    double stop_tolerance = 1e-10;
    StopMetric stop_metric = StopMetric::MaxDiff;
    long max_iterations = 100000;
    SpreadDetection spread;
    double linear_tolerance = 1e-10;
    long linear_max_iterations = 50000;
};

// Per-iterate snapshot of the normalized flow.
struct IterationState {
    Field field;
    double mu = 0.0;
    double energy = 0.0;
    double diff_metric = 0.0;
    long iteration = 0;
};

enum class Classification { GroundState, SpreadingNoGroundState, MaxIterations };

struct Diagnostics {
    double residual = 0.0;            // ||H phi - mu phi|| / ||mu phi|| when converged
    double boundary_peak_ratio = 0.0; // outermost |phi| over the peak
    double max_energy_increase = 0.0; // worst relative uphill step after iteration 5
    double max_mass_deviation = 0.0;  // worst |  ||phi|| - c | / c over all iterates
    long linear_iterations = 0;       // total inner linear-solver iterations
    double wall_seconds = 0.0;
};

struct GroundStateResult {
    Field field;
    double energy = 0.0;
    double chemical_potential = 0.0;
    double peak_value = 0.0;
    std::array<double, 3> peak_location{0.0, 0.0, 0.0};
    long iterations = 0;
    bool converged = false;
    Classification classification = Classification::MaxIterations;
    Diagnostics diagnostics;
};

// Discretization backend: everything the flow needs from a spatial scheme.
// Implementations are pure functions of their arguments, so identical runs
// are bitwise identical.
class Discretization {
public:
    virtual ~Discretization() = default;

    virtual const GridDescriptor& grid() const = 0;
    virtual std::size_t node_count() const = 0;
    virtual double norm(std::span<const double> phi) const = 0;
    virtual EnergyTerms terms(std::span<const double> phi) const = 0;

    // Solves the IMEX system for the intermediate (unnormalized) state.
    virtual std::vector<double> implicit_step(std::span<const double> phi,
                                              double tau, double mu,
                                              long& linear_iterations) const = 0;

    // -1/2 Lap phi + V phi + beta |phi|^2 phi + lambda |phi|^3 phi
    virtual std::vector<double> apply_hamiltonian(std::span<const double> phi) const = 0;

    // |phi| at the outermost node(s), for the truncation diagnostic.
    virtual double boundary_value(std::span<const double> phi) const = 0;
};

std::unique_ptr<Discretization> make_discretization(const ModelParams& m,
                                                    const GridDescriptor& grid,
                                                    const SolverConfig& config);

// Gaussian of the given width, centred on the grid (the origin for radial
// grids, the box centre for tensor grids), normalized to mass c.
Field default_initial_gaussian(const GridDescriptor& grid, double mass,
                               double width);

// One normalized-gradient-flow iteration: multiplier from the energy
// quadrature, IMEX solve, projection back to the mass sphere.
IterationState gradient_flow_step(const IterationState& state,
                                  const ModelParams& m, const SolverConfig& config,
                                  const Discretization& disc,
                                  long* linear_iterations = nullptr,
                                  double* mass_deviation = nullptr);

IterationState make_initial_state(const Field& initial, const ModelParams& m,
                                  const Discretization& disc);

// Drives the flow until the stopping metric falls below tolerance, the
// spread classifier fires, or the iteration cap is hit. Never throws for a
// hit cap; linear-solver failures propagate.
GroundStateResult run_to_convergence(const Field& initial, const ModelParams& m,
                                     const SolverConfig& config,
                                     const Discretization& disc);

// Convenience: builds the backend for the field's grid and runs.
GroundStateResult solve_ground_state(const Field& initial, const ModelParams& m,
                                     const SolverConfig& config);

}  // namespace egps::flow
