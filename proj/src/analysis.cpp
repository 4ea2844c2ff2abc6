#include "egps/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "egps/functionals.hpp"

namespace egps::analysis {

double eta_indicator(const Field& f, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("eta_indicator: theta must lie in (0, 1)");
    }
    const std::vector<double> w = quadrature_weights(f.grid);
    double rho_max = 0.0;
    for (double p : f.values) rho_max = std::max(rho_max, p * p);
    if (!(rho_max > 0.0)) {
        throw std::invalid_argument("eta_indicator: field has no mass");
    }
    const double cut = theta * rho_max;
    double inside = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double rho = f.values[i] * f.values[i];
        const double m = w[i] * rho;
        total += m;
        if (rho >= cut) inside += m;
    }
    return inside / total;
}

FlatTopEstimate flat_top_estimate(const ModelParams& m) {
    if (!(m.beta < 0.0) || !(m.lambda > 0.0)) {
        throw std::invalid_argument(
            "flat_top_estimate: requires beta < 0 and lambda > 0");
    }
    FlatTopEstimate est;
    est.plateau_value = -5.0 * m.beta / (6.0 * m.lambda);
    est.approx_energy =
        (m.beta * m.mass / 6.0) * est.plateau_value * est.plateau_value;
    const double ratio = m.mass / est.plateau_value;
    est.support_volume = ratio * ratio;
    return est;
}

ComparisonReport compare_to_flat_top(const flow::GroundStateResult& result,
                                     const FlatTopEstimate& est) {
    if (result.classification != flow::Classification::GroundState) {
        throw std::invalid_argument(
            "compare_to_flat_top: result is not a converged ground state");
    }
    ComparisonReport rep;
    rep.computed_peak = result.peak_value;
    rep.computed_energy = result.energy;
    rep.e_a = std::abs(result.peak_value - est.plateau_value) /
              std::abs(result.peak_value);
    rep.e_E = std::abs(result.energy - est.approx_energy) /
              std::abs(result.energy);
    return rep;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::NoGroundState: return "NoGroundState";
        case Regime::SolitonLike: return "SolitonLike";
        case Regime::DropletLike: return "DropletLike";
        default: return "error";
    }
}

namespace {

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        out[i] = lo + (hi - lo) * i / (count - 1);
    }
    return out;
}

// One row of cells at fixed beta, walked from the largest lambda down so
// each cell can warm-start from its already-converged neighbour.
void sweep_row(const SweepRequest& req, double beta,
               const std::vector<double>& lambdas,
               std::vector<PhaseDiagramCell>& row) {
    const GridDescriptor grid = req.grid;
    Field guess = flow::default_initial_gaussian(grid, req.mass, req.initial_width);
    std::optional<Field> warm;

    for (std::size_t k = lambdas.size(); k-- > 0;) {
        const double lambda = lambdas[k];
        PhaseDiagramCell cell;
        cell.beta = beta;
        cell.lambda = lambda;
        try {
            const ModelParams m(3, beta, lambda, req.mass, ZeroPotential{});
            const auto disc = flow::make_discretization(m, grid, req.config);
            const Field& start = warm ? *warm : guess;
            const auto result = flow::run_to_convergence(start, m, req.config, *disc);
            cell.iterations = result.iterations;
            cell.converged = result.converged;
            switch (result.classification) {
                case flow::Classification::GroundState: {
                    const double eta = eta_indicator(result.field, req.theta);
                    cell.eta = eta;
                    cell.regime = eta >= req.eta_threshold ? Regime::DropletLike
                                                           : Regime::SolitonLike;
                    cell.near_threshold = std::abs(eta - req.eta_threshold) < 0.02;
                    warm = result.field;
                    break;
                }
                case flow::Classification::SpreadingNoGroundState:
                    cell.regime = Regime::NoGroundState;
                    warm.reset();
                    break;
                case flow::Classification::MaxIterations:
                    cell.regime = Regime::Error;
                    cell.error = "did not converge within the iteration cap";
                    warm.reset();
                    break;
            }
        } catch (const std::exception& e) {
            cell.regime = Regime::Error;
            cell.error = e.what();
            warm.reset();
        }
        row[k] = std::move(cell);
    }
}

}  // namespace

std::vector<PhaseDiagramCell> phase_sweep(const SweepRequest& req) {
    if (req.beta_count < 1 || req.lambda_count < 1) {
        throw std::invalid_argument("phase_sweep: need at least one cell per axis");
    }
    if (!(req.beta_max < 0.0) || !(req.lambda_min > 0.0)) {
        throw std::invalid_argument("phase_sweep: ranges must satisfy beta < 0 and lambda > 0");
    }
    const std::vector<double> betas = linspace(req.beta_min, req.beta_max, req.beta_count);
    const std::vector<double> lambdas =
        linspace(req.lambda_min, req.lambda_max, req.lambda_count);

    std::vector<std::vector<PhaseDiagramCell>> rows(betas.size());
    for (auto& row : rows) row.resize(lambdas.size());

    const int workers = std::max(1, std::min<int>(req.workers, static_cast<int>(betas.size())));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= betas.size()) break;
            sweep_row(req, betas[i], lambdas, rows[i]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::vector<PhaseDiagramCell> cells;
    cells.reserve(betas.size() * lambdas.size());
    for (auto& row : rows) {
        for (auto& cell : row) cells.push_back(std::move(cell));
    }
    std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) {
        return a.beta != b.beta ? a.beta < b.beta : a.lambda < b.lambda;
    });
    return cells;
}

}  // namespace egps::analysis
