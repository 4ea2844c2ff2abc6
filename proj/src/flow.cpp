#include "egps/flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "egps/radial.hpp"
#include "egps/tensor.hpp"

namespace egps::flow {

namespace {

class RadialDiscretization final : public Discretization {
public:
    RadialDiscretization(const ModelParams& m, const RadialGrid& g)
        : model_(m), grid_(g), descriptor_(g), V_(sample_potential(descriptor_, m.potential)) {}

    const GridDescriptor& grid() const override { return descriptor_; }
    std::size_t node_count() const override { return grid_.node_count(); }

    double norm(std::span<const double> phi) const override {
        return radial_norm(grid_, phi);
    }

    EnergyTerms terms(std::span<const double> phi) const override {
        return radial_energy_terms(grid_, phi, V_);
    }

    std::vector<double> implicit_step(std::span<const double> phi, double tau,
                                      double mu, long& linear_iterations) const override {
        const auto sys = radial::assemble_implicit_system(grid_, phi, V_, model_, tau, mu);
        ++linear_iterations;  // one direct solve
        return radial::solve_tridiagonal(sys);
    }

    std::vector<double> apply_hamiltonian(std::span<const double> phi) const override {
        std::vector<double> out = radial::laplacian_apply(grid_, phi);
        for (std::size_t j = 0; j < out.size(); ++j) {
            const double p = phi[j];
            const double p2 = p * p;
            out[j] = -0.5 * out[j] + (V_[j] + model_.beta * p2 +
                                      model_.lambda * p2 * std::abs(p)) * p;
        }
        return out;
    }

    double boundary_value(std::span<const double> phi) const override {
        return std::abs(phi.back());
    }

private:
    ModelParams model_;
    RadialGrid grid_;
    GridDescriptor descriptor_;
    std::vector<double> V_;
};

class TensorDiscretization final : public Discretization {
public:
    TensorDiscretization(const ModelParams& m, const TensorGrid& g,
                         const SolverConfig& cfg)
        : model_(m), grid_(g), descriptor_(g),
          V_(sample_potential(descriptor_, m.potential)),
          linear_tolerance_(cfg.linear_tolerance),
          linear_max_iterations_(cfg.linear_max_iterations) {}

    const GridDescriptor& grid() const override { return descriptor_; }
    std::size_t node_count() const override { return grid_.node_count(); }

    double norm(std::span<const double> phi) const override {
        return tensor_norm(grid_, phi);
    }

    EnergyTerms terms(std::span<const double> phi) const override {
        return tensor_energy_terms(grid_, phi, V_);
    }

    std::vector<double> implicit_step(std::span<const double> phi, double tau,
                                      double mu, long& linear_iterations) const override {
        const auto sys = tensor::assemble_step_operator(grid_, phi, V_, model_, tau, mu);
        auto res = tensor::solve_step(sys, linear_tolerance_, linear_max_iterations_);
        linear_iterations += res.iterations;
        return std::move(res.solution);
    }

    std::vector<double> apply_hamiltonian(std::span<const double> phi) const override {
        std::vector<double> out = tensor::laplacian_apply(grid_, phi);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double p = phi[i];
            const double p2 = p * p;
            out[i] = -0.5 * out[i] + (V_[i] + model_.beta * p2 +
                                      model_.lambda * p2 * std::abs(p)) * p;
        }
        return out;
    }

    double boundary_value(std::span<const double> phi) const override {
        double worst = 0.0;
        const std::size_t n = grid_.node_count();
        for (std::size_t i = 0; i < n; ++i) {
            const auto ijk = grid_.unpack(i);
            bool edge = false;
            for (int a = 0; a < grid_.dimension; ++a) {
                edge = edge || ijk[a] == 0 || ijk[a] == grid_.nodes[a] - 1;
            }
            if (edge) worst = std::max(worst, std::abs(phi[i]));
        }
        return worst;
    }

private:
    ModelParams model_;
    TensorGrid grid_;
    GridDescriptor descriptor_;
    std::vector<double> V_;
    double linear_tolerance_;
    long linear_max_iterations_;
};

void validate_config(const SolverConfig& cfg) {
    if (!(cfg.time_step > 0.0)) throw std::invalid_argument("SolverConfig: time step must be positive");
    if (!(cfg.stop_tolerance > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be positive");
    if (cfg.max_iterations < 1) throw std::invalid_argument("SolverConfig: need at least one iteration");
    if (cfg.spread.window < 10) throw std::invalid_argument("SolverConfig: spread window must be >= 10");
}

double peak_density(std::span<const double> phi) {
    double m = 0.0;
    for (double p : phi) m = std::max(m, p * p);
    return m;
}

}  // namespace

std::unique_ptr<Discretization> make_discretization(const ModelParams& m,
                                                    const GridDescriptor& grid,
                                                    const SolverConfig& config) {
    if (grid_dimension(grid) != m.dimension) {
        throw std::invalid_argument("make_discretization: grid and model dimensions differ");
    }
    if (const auto* rg = std::get_if<RadialGrid>(&grid)) {
        return std::make_unique<RadialDiscretization>(m, *rg);
    }
    return std::make_unique<TensorDiscretization>(m, std::get<TensorGrid>(grid), config);
}

Field default_initial_gaussian(const GridDescriptor& grid, double mass,
                               double width) {
    if (!(width > 0.0)) throw std::invalid_argument("default_initial_gaussian: width must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("default_initial_gaussian: mass must be positive");
    const std::size_t n = grid_node_count(grid);
    std::vector<double> vals(n);
    const double inv2w2 = 1.0 / (2.0 * width * width);
    if (const auto* rg = std::get_if<RadialGrid>(&grid)) {
        for (std::size_t j = 0; j < n; ++j) {
            const double r = rg->midpoint(static_cast<int>(j));
            vals[j] = std::exp(-r * r * inv2w2);
        }
    } else {
        const auto& tg = std::get<TensorGrid>(grid);
        std::array<double, 3> centre{0.0, 0.0, 0.0};
        for (int a = 0; a < tg.dimension; ++a) centre[a] = 0.5 * (tg.lo[a] + tg.hi[a]);
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = node_coordinates(grid, i);
            double r2 = 0.0;
            for (int a = 0; a < tg.dimension; ++a) {
                r2 += (x[a] - centre[a]) * (x[a] - centre[a]);
            }
            vals[i] = std::exp(-r2 * inv2w2);
        }
    }
    Field f(grid, std::move(vals));
    const double nrm = mass_norm(f);
    if (!(nrm > 0.0)) throw std::runtime_error("default_initial_gaussian: width too small for the grid");
    const double s = mass / nrm;
    for (double& v : f.values) v *= s;
    return f;
}

IterationState make_initial_state(const Field& initial, const ModelParams& m,
                                  const Discretization& disc) {
    if (initial.values.size() != disc.node_count()) {
        throw std::invalid_argument("make_initial_state: field does not match the discretization");
    }
    IterationState s;
    const double nrm = disc.norm(initial.values);
    if (!(nrm > 0.0)) throw std::invalid_argument("make_initial_state: initial field has no mass");
    std::vector<double> vals = initial.values;
    const double scale = m.mass / nrm;
    for (double& v : vals) v *= scale;
    s.field = Field(disc.grid(), std::move(vals));
    const EnergyTerms t = disc.terms(s.field.values);
    s.mu = chemical_potential_from_terms(t, m);
    s.energy = energy_from_terms(t, m);
    s.diff_metric = std::numeric_limits<double>::infinity();
    s.iteration = 0;
    return s;
}

IterationState gradient_flow_step(const IterationState& state,
                                  const ModelParams& m, const SolverConfig& config,
                                  const Discretization& disc,
                                  long* linear_iterations, double* mass_deviation) {
    long lin = 0;
    std::vector<double> next =
        disc.implicit_step(state.field.values, config.time_step, state.mu, lin);
    if (linear_iterations) *linear_iterations += lin;

    const double nrm = disc.norm(next);
    if (!std::isfinite(nrm) || !(nrm > 0.0)) {
        throw std::runtime_error("gradient_flow_step: intermediate state lost its mass");
    }
    const double scale = m.mass / nrm;
    for (double& v : next) v *= scale;

    double diff = 0.0;
    if (config.stop_metric == StopMetric::MaxDiff) {
        for (std::size_t i = 0; i < next.size(); ++i) {
            diff = std::max(diff, std::abs(next[i] - state.field.values[i]));
        }
    } else {
        std::vector<double> delta(next.size());
        for (std::size_t i = 0; i < next.size(); ++i) {
            delta[i] = next[i] - state.field.values[i];
        }
        diff = disc.norm(delta);
    }

    const EnergyTerms t = disc.terms(next);
    if (mass_deviation) {
        *mass_deviation = std::abs(std::sqrt(t.mass_sq) - m.mass) / m.mass;
    }

    IterationState out;
    out.field = Field(disc.grid(), std::move(next));
    out.mu = chemical_potential_from_terms(t, m);
    out.energy = energy_from_terms(t, m);
    out.diff_metric = diff;
    out.iteration = state.iteration + 1;
    return out;
}

GroundStateResult run_to_convergence(const Field& initial, const ModelParams& m,
                                     const SolverConfig& config,
                                     const Discretization& disc) {
    validate_config(config);
    const auto t0 = std::chrono::steady_clock::now();

    IterationState state = make_initial_state(initial, m, disc);
    const double initial_peak = peak_density(state.field.values);
    double prev_peak = initial_peak;
    int decay_streak = 0;

    GroundStateResult res;
    res.classification = Classification::MaxIterations;

    while (true) {
        const double prev_energy = state.energy;
        double mass_dev = 0.0;
        state = gradient_flow_step(state, m, config, disc,
                                   &res.diagnostics.linear_iterations, &mass_dev);
        res.diagnostics.max_mass_deviation =
            std::max(res.diagnostics.max_mass_deviation, mass_dev);
        if (state.iteration > 5) {
            const double rise = (state.energy - prev_energy) /
                                std::max(1.0, std::abs(prev_energy));
            res.diagnostics.max_energy_increase =
                std::max(res.diagnostics.max_energy_increase, rise);
        }

        const double peak = peak_density(state.field.values);
        decay_streak = (peak < prev_peak) ? decay_streak + 1 : 0;
        prev_peak = peak;
        if (decay_streak >= config.spread.window &&
            peak < config.spread.peak_decay_threshold * initial_peak) {
            res.classification = Classification::SpreadingNoGroundState;
            break;
        }
        if (state.diff_metric < config.stop_tolerance) {
            res.classification = Classification::GroundState;
            res.converged = true;
            break;
        }
        if (state.iteration >= config.max_iterations) {
            res.classification = Classification::MaxIterations;
            break;
        }
    }

    res.energy = state.energy;
    res.chemical_potential = state.mu;
    res.iterations = state.iteration;

    std::size_t peak_idx = 0;
    double peak_abs = 0.0;
    for (std::size_t i = 0; i < state.field.values.size(); ++i) {
        const double a = std::abs(state.field.values[i]);
        if (a > peak_abs) {
            peak_abs = a;
            peak_idx = i;
        }
    }
    res.peak_value = peak_abs;
    res.peak_location = node_coordinates(state.field.grid, peak_idx);
    res.diagnostics.boundary_peak_ratio =
        peak_abs > 0.0 ? disc.boundary_value(state.field.values) / peak_abs : 0.0;

    if (res.converged) {
        const std::vector<double> H = disc.apply_hamiltonian(state.field.values);
        std::vector<double> resid(H.size());
        for (std::size_t i = 0; i < H.size(); ++i) {
            resid[i] = H[i] - state.mu * state.field.values[i];
        }
        const double denom = std::abs(state.mu) * m.mass;
        res.diagnostics.residual = denom > 0.0 ? disc.norm(resid) / denom : 0.0;
    }

    res.field = std::move(state.field);
    res.diagnostics.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

GroundStateResult solve_ground_state(const Field& initial, const ModelParams& m,
                                     const SolverConfig& config) {
    const auto disc = make_discretization(m, initial.grid, config);
    return run_to_convergence(initial, m, config, *disc);
}

}  // namespace egps::flow
