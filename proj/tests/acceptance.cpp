// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Heavy runs reuse one registry so the cross-cutting
// invariants (mass, mu-E identity, energy descent) are checked on every
// field the suite produced.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "egps/analysis.hpp"
#include "egps/flow.hpp"
#include "egps/functionals.hpp"
#include "egps/grid.hpp"
#include "egps/model.hpp"
#include "egps/radial.hpp"
#include "egps/tensor.hpp"

using namespace egps;

namespace {

constexpr double pi = std::numbers::pi;

struct RunEntry {
    std::string label;
    ModelParams model;
    flow::GroundStateResult result;
    bool table_run = false;
};

std::vector<RunEntry> registry;

struct Criterion {
    std::string name;
    bool pass = false;
    std::string detail;
};

flow::GroundStateResult run_radial(const std::string& label, const ModelParams& m,
                                   const RadialGrid& g, double width, double tol,
                                   long max_iter, bool table_run = false) {
    flow::SolverConfig cfg;
    cfg.time_step = 1e-2;
    cfg.stop_tolerance = tol;
    cfg.stop_metric = flow::StopMetric::MaxDiff;
    cfg.max_iterations = max_iter;
    const auto disc = flow::make_discretization(m, GridDescriptor(g), cfg);
    const Field init = flow::default_initial_gaussian(GridDescriptor(g), m.mass, width);
    auto res = flow::run_to_convergence(init, m, cfg, *disc);
    registry.push_back({label, m, res, table_run});
    return res;
}

flow::GroundStateResult run_tensor(const std::string& label, const ModelParams& m,
                                   const TensorGrid& g, double width, double tol,
                                   long max_iter) {
    flow::SolverConfig cfg;
    cfg.time_step = 1e-2;
    cfg.stop_tolerance = tol;
    cfg.stop_metric = flow::StopMetric::L2Diff;
    cfg.max_iterations = max_iter;
    const auto disc = flow::make_discretization(m, GridDescriptor(g), cfg);
    const Field init = flow::default_initial_gaussian(GridDescriptor(g), m.mass, width);
    auto res = flow::run_to_convergence(init, m, cfg, *disc);
    registry.push_back({label, m, res, false});
    return res;
}

// Smallest power-of-two cell count that resolves the flat-top healing length
// xi = 1/sqrt(2 |mu_app|) with dr <= xi/2 (the paper's Table 1/2 states were
// computed "on a sufficiently fine mesh").
int resolved_cells(double beta, double lambda, double R) {
    const double a = -5.0 * beta / (6.0 * lambda);
    const double mu = beta * a * a / 6.0;
    const double xi = 1.0 / std::sqrt(2.0 * std::abs(mu));
    int M = 2048;
    while (M * 0.5 * xi < R && M < (1 << 18)) M *= 2;
    return M;
}

struct TableRow {
    double value;  // beta or lambda
    double peak, energy, e_a, e_E;
};

std::string table_criterion(const std::string& tag, bool vary_beta,
                            const std::vector<TableRow>& rows, bool& pass) {
    std::ostringstream detail;
    pass = true;
    double prev_ea = 1e300, prev_eE = 1e300;
    for (const auto& row : rows) {
        const double beta = vary_beta ? row.value : -10.0;
        const double lambda = vary_beta ? 0.1 : row.value;
        const int M = resolved_cells(beta, lambda, 1.0);
        ModelParams m(3, beta, lambda, 1.0, ZeroPotential{});
        RadialGrid g(3, 1.0, M);
        const auto res = run_radial(tag + (vary_beta ? " beta=" : " lambda=") +
                                        std::to_string(row.value),
                                    m, g, 0.25, 1e-10, 400000, true);
        if (!res.converged) {
            pass = false;
            detail << " [" << row.value << ": did not converge]";
            continue;
        }
        const auto est = analysis::flat_top_estimate(m);
        const auto rep = analysis::compare_to_flat_top(res, est);
        const double dpeak = std::abs(res.peak_value / row.peak - 1.0);
        const double dE = std::abs(res.energy / row.energy - 1.0);
        const double dea = std::abs(rep.e_a / row.e_a - 1.0);
        const double deE = std::abs(rep.e_E / row.e_E - 1.0);
        const bool ok = dpeak <= 0.02 && dE <= 0.02 && dea <= 0.20 && deE <= 0.20 &&
                        rep.e_a < prev_ea && rep.e_E < prev_eE;
        pass = pass && ok;
        prev_ea = rep.e_a;
        prev_eE = rep.e_E;
        char buf[160];
        std::snprintf(buf, sizeof(buf), " [%g: M=%d peak %.4g (%+.2f%%) E %.4g (%+.2f%%) e_a %.3g e_E %.3g%s]",
                      row.value, M, res.peak_value, 100 * dpeak, res.energy, 100 * dE,
                      rep.e_a, rep.e_E, ok ? "" : " FAIL");
        detail << buf;
    }
    return detail.str();
}

double interp_radial(const RadialGrid& g, const std::vector<double>& v, double r) {
    const double t = r / g.spacing() - 0.5;
    const int k = std::max(0, std::min(g.cells - 2, static_cast<int>(std::floor(t))));
    const double w = t - k;
    return (1.0 - w) * v[k] + w * v[k + 1];
}

// Max density over a window around a lattice site, and the density valley
// between the two best-occupied adjacent sites.
double lattice_valley(const TensorGrid& g, const std::vector<double>& v) {
    const int n = g.nodes[0];
    const double sites[4] = {-0.6, -0.2, 0.2, 0.6};
    auto node_near = [&](double x) {
        const int i = static_cast<int>(std::lround((x - g.lo[0]) / g.spacing(0) - 1.0));
        return std::max(0, std::min(n - 1, i));
    };
    auto density = [&](int ix, int iy) {
        const double p = v[static_cast<std::size_t>(iy) * n + ix];
        return p * p;
    };
    auto occupancy = [&](double sx, double sy) {
        const int cx = node_near(sx), cy = node_near(sy);
        const int w = std::max(1, static_cast<int>(0.1 / g.spacing(0)));
        double best = 0.0;
        for (int iy = std::max(0, cy - w); iy <= std::min(n - 1, cy + w); ++iy) {
            for (int ix = std::max(0, cx - w); ix <= std::min(n - 1, cx + w); ++ix) {
                best = std::max(best, density(ix, iy));
            }
        }
        return best;
    };
    double best_pair = -1.0, valley = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int axis = 0; axis < 2; ++axis) {
                const int a2 = a + (axis == 0 ? 1 : 0);
                const int b2 = b + (axis == 1 ? 1 : 0);
                if (a2 >= 4 || b2 >= 4) continue;
                const double score =
                    std::min(occupancy(sites[a], sites[b]), occupancy(sites[a2], sites[b2]));
                if (score <= best_pair) continue;
                best_pair = score;
                double mind = 1e300;
                if (axis == 0) {
                    const int iy = node_near(sites[b]);
                    for (int ix = node_near(sites[a]); ix <= node_near(sites[a2]); ++ix) {
                        mind = std::min(mind, density(ix, iy));
                    }
                } else {
                    const int ix = node_near(sites[a]);
                    for (int iy = node_near(sites[b]); iy <= node_near(sites[b2]); ++iy) {
                        mind = std::min(mind, density(ix, iy));
                    }
                }
                valley = mind;
            }
        }
    }
    return valley;
}

}  // namespace

int main() {
    std::vector<Criterion> out;
    const auto suite_start = std::chrono::steady_clock::now();

    // --- 1. Table 1 reproduction ---------------------------------------
    {
        Criterion c{"Table 1 reproduction (lambda=0.1, beta ladder)"};
        const std::vector<TableRow> rows = {
            {-10.0, 8.81e1, -7.76e3, 5.42e-2, 4.92e-1},
            {-50.0, 4.23e2, -1.34e6, 1.58e-2, 8.47e-2},
            {-100.0, 8.41e2, -1.11e7, 9.04e-3, 4.42e-2},
            {-250.0, 2.09e3, -1.77e8, 4.26e-3, 1.97e-2},
            {-500.0, 4.18e3, -1.43e9, 2.41e-3, 1.12e-2},
        };
        c.detail = table_criterion("T1", true, rows, c.pass);

        // radial mesh-convergence invariant on the first row
        RadialGrid g1(3, 1.0, 1024);
        ModelParams m1(3, -10.0, 0.1, 1.0, ZeroPotential{});
        const auto coarse = run_radial("T1 mesh-check M=1024", m1, g1, 0.25, 1e-10, 400000);
        const double fine_peak = registry.front().result.peak_value;
        const double change = std::abs(coarse.peak_value - fine_peak) / fine_peak;
        c.pass = c.pass && change < 0.005;
        c.detail += " [peak change 1024->2048: " + std::to_string(change) + "]";
        out.push_back(c);
    }

    // --- 2. Table 2 reproduction ---------------------------------------
    {
        Criterion c{"Table 2 reproduction (beta=-10, lambda ladder)"};
        const std::vector<TableRow> rows = {
            {0.1, 8.81e1, -7.76e3, 5.42e-2, 4.92e-1},
            {0.02, 4.31e2, -2.36e5, 3.38e-2, 2.24e-1},
            {0.01, 8.57e2, -9.92e5, 2.73e-2, 1.66e-1},
            {0.004, 2.13e3, -6.49e6, 2.04e-2, 1.15e-1},
            {0.002, 4.24e3, -2.66e7, 1.64e-2, 8.84e-2},
        };
        c.detail = table_criterion("T2", false, rows, c.pass);
        out.push_back(c);
    }

    // --- 3. Linear-limit oracle -----------------------------------------
    {
        Criterion c{"Linear limit: 1d harmonic oscillator E = mu = 1/2"};
        ModelParams m(1, 0.0, 0.0, 1.0, HarmonicPotential{{1.0, 0.0, 0.0}});
        RadialGrid g(1, 16.0, 2048);
        const auto res = run_radial("oscillator", m, g, 4.0, 1e-10, 100000);
        const double dE = std::abs(res.energy - 0.5);
        const double dmu = std::abs(res.chemical_potential - 0.5);
        c.pass = res.converged && dE < 1e-3 && dmu < 1e-3;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "E=%.6f mu=%.6f (|dE|=%.2e, |dmu|=%.2e)",
                      res.energy, res.chemical_potential, dE, dmu);
        c.detail = buf;
        out.push_back(c);
    }

    // --- 4. Nonnegativity property --------------------------------------
    {
        Criterion c{"Nonnegativity preservation over randomized instances"};
        std::mt19937 rng(20260811);
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        int instances = 0;
        long violations = 0;
        double worst_mass_dev = 0.0;
        for (int trial = 0; trial < 70; ++trial) {
            RadialGrid g(3, 1.0, 64);
            TabulatedPotential tab;
            tab.values.resize(64);
            for (double& v : tab.values) v = 10.0 * dist(rng);
            ModelParams m(3, 60.0 * dist(rng) - 30.0, 2.0 * dist(rng), 1.0, tab);
            flow::SolverConfig cfg;
            cfg.stop_tolerance = 1e-14;
            cfg.max_iterations = 30;
            std::vector<double> start(64);
            if (trial % 2 == 0) {
                for (double& v : start) v = dist(rng);
            } else {
                for (int j = 0; j < 64; ++j) {
                    const double r = g.midpoint(j);
                    start[j] = std::exp(-r * r / (2.0 * 0.0625));
                }
            }
            const auto disc = flow::make_discretization(m, GridDescriptor(g), cfg);
            auto state = flow::make_initial_state(Field(GridDescriptor(g), start), m, *disc);
            for (int it = 0; it < 25; ++it) {
                double mass_dev = 0.0;
                state = flow::gradient_flow_step(state, m, cfg, *disc, nullptr, &mass_dev);
                worst_mass_dev = std::max(worst_mass_dev, mass_dev);
                for (double v : state.field.values) {
                    if (v < 0.0) ++violations;
                }
            }
            ++instances;
        }
        for (int trial = 0; trial < 35; ++trial) {
            TensorGrid g(2, {-1, -1, 0}, {1, 1, 0}, {12, 12, 1});
            TabulatedPotential tab;
            tab.values.resize(g.node_count());
            for (double& v : tab.values) v = 10.0 * dist(rng);
            ModelParams m(2, 60.0 * dist(rng) - 30.0, 2.0 * dist(rng), 1.0, tab);
            flow::SolverConfig cfg;
            cfg.stop_metric = flow::StopMetric::L2Diff;
            cfg.stop_tolerance = 1e-14;
            cfg.max_iterations = 30;
            std::vector<double> start(g.node_count());
            for (double& v : start) v = dist(rng);
            const auto disc = flow::make_discretization(m, GridDescriptor(g), cfg);
            auto state = flow::make_initial_state(Field(GridDescriptor(g), start), m, *disc);
            for (int it = 0; it < 25; ++it) {
                double mass_dev = 0.0;
                state = flow::gradient_flow_step(state, m, cfg, *disc, nullptr, &mass_dev);
                worst_mass_dev = std::max(worst_mass_dev, mass_dev);
                for (double v : state.field.values) {
                    if (v < 0.0) ++violations;
                }
            }
            ++instances;
        }
        c.pass = instances >= 100 && violations == 0 && worst_mass_dev <= 1e-12;
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "%d instances x 25 iterates, %ld negative components, mass dev %.2e",
                      instances, violations, worst_mass_dev);
        c.detail = buf;
        out.push_back(c);
    }

    // --- 8. No-ground-state classification (run before 5-7 so the run is
    //        part of the registry) --------------------------------------
    {
        Criterion c{"Spreading classification for beta=+1 free space"};
        ModelParams m(3, 1.0, 0.1, 1.0, ZeroPotential{});
        RadialGrid g(3, 8.0, 2048);
        const auto res = run_radial("spreading beta=+1", m, g, 2.0, 1e-10, 100000);
        c.pass = res.classification == flow::Classification::SpreadingNoGroundState &&
                 res.iterations <= 100000;
        c.detail = "classified after " + std::to_string(res.iterations) + " iterations";
        out.push_back(c);
    }

    // --- 9. Radial/grid cross-validation at n = 256^2 -------------------
    {
        Criterion c{"2d cross-validation: tensor 256^2 vs radial d=2"};
        ModelParams m(2, -10.0, 0.1, 20.0, ZeroPotential{});
        RadialGrid gref(2, 1.0, 4096);
        const auto ref = run_radial("2d radial reference", m, gref, 0.25, 1e-10, 400000);

        TensorGrid gt(2, {-1, -1, 0}, {1, 1, 0}, {256, 256, 1});
        const auto res = run_tensor("2d tensor droplet", m, gt, 0.25, 1e-6, 200000);

        double worst = 0.0, worst_r = 0.0, worst_core = 0.0, worst_tail = 0.0;
        const double a_flat = 250.0 / 3.0;
        const double r0 = m.mass / a_flat / std::sqrt(pi);       // flat-top radius
        const double xi = 1.0 / std::sqrt(2.0 * (std::abs(m.beta) * a_flat * a_flat / 6.0));
        for (int iy = 0; iy < 256; ++iy) {
            for (int ix = 0; ix < 256; ++ix) {
                const double x = gt.coordinate(0, ix), y = gt.coordinate(1, iy);
                const double r = std::sqrt(x * x + y * y);
                if (r > 0.95) continue;
                const double err = std::abs(res.field.values[(std::size_t)iy * 256 + ix] -
                                            interp_radial(gref, ref.field.values, r));
                if (err > worst) {
                    worst = err;
                    worst_r = r;
                }
                if (r < r0 - 6 * xi) worst_core = std::max(worst_core, err);
                if (r > r0 + 6 * xi) worst_tail = std::max(worst_tail, err);
            }
        }
        const double rel = worst / ref.peak_value;
        c.pass = res.converged && ref.converged && rel <= 0.01 &&
                 res.diagnostics.wall_seconds < 600.0;
        char buf[240];
        std::snprintf(buf, sizeof(buf),
                      "rel Linf %.3f at r=%.3f (interface ring: xi/h=%.2f); plateau %.2e, "
                      "tail %.2e of peak; wall %.0fs",
                      rel, worst_r, xi / gt.spacing(0), worst_core / ref.peak_value,
                      worst_tail / ref.peak_value, res.diagnostics.wall_seconds);
        c.detail = buf;
        out.push_back(c);
    }

    // --- 10. Phase-diagram smoke ----------------------------------------
    {
        Criterion c{"Phase diagram: three regimes and the eta threshold"};
        analysis::SweepRequest req;
        req.beta_min = -25.0;
        req.beta_max = -1.0;
        req.beta_count = 8;
        req.lambda_min = 0.002;
        req.lambda_max = 1.0;
        req.lambda_count = 8;
        req.grid = RadialGrid(3, 2.0, 2048);
        req.config.stop_tolerance = 1e-10;
        req.config.max_iterations = 100000;
        req.workers = 2;
        const auto cells = analysis::phase_sweep(req);
        int ng = 0, sol = 0, drop = 0, err = 0;
        for (const auto& cell : cells) {
            switch (cell.regime) {
                case analysis::Regime::NoGroundState: ++ng; break;
                case analysis::Regime::SolitonLike: ++sol; break;
                case analysis::Regime::DropletLike: ++drop; break;
                default: ++err; break;
            }
        }

        ModelParams md(3, -20.0, 0.002, 1.0, ZeroPotential{});
        RadialGrid gd(3, 1.0, resolved_cells(-20.0, 0.002, 1.0));
        const auto deep = run_radial("deep droplet point", md, gd, 0.25, 1e-10, 400000);
        const double eta_deep =
            deep.converged ? analysis::eta_indicator(deep.field, 0.99) : -1.0;

        ModelParams ms(3, -20.0, 0.1, 1.0, ZeroPotential{});
        RadialGrid gs(3, 1.0, 4096);
        const auto soli = run_radial("soliton point", ms, gs, 0.25, 1e-10, 400000);
        const double eta_soli =
            soli.converged ? analysis::eta_indicator(soli.field, 0.99) : -1.0;

        c.pass = ng > 0 && sol > 0 && drop > 0 && err == 0 && eta_deep > 0.62 &&
                 eta_soli >= 0.0 && eta_soli < 0.62;
        char buf[200];
        std::snprintf(buf, sizeof(buf),
                      "8x8 sweep: %d no-ground-state, %d soliton, %d droplet, %d error; "
                      "eta(-20,0.002)=%.3f > 0.62 > eta(-20,0.1)=%.3f",
                      ng, sol, drop, err, eta_deep, eta_soli);
        c.detail = buf;
        out.push_back(c);
    }

    // --- 11. Optical lattice localization --------------------------------
    {
        Criterion c{"Optical lattice: inter-peak density drops as V0 grows"};
        double valleys[2] = {0.0, 0.0};
        double walls[2] = {0.0, 0.0};
        int k = 0;
        for (double V0 : {1e3, 3e3}) {
            TensorGrid g(2, {-1, -1, 0}, {1, 1, 0}, {192, 192, 1});
            ModelParams m(2, -10.0, 0.1, 20.0, OpticalLatticePotential{V0, 5.0 * pi});
            const auto res = run_tensor("lattice V0=" + std::to_string(V0), m, g, 0.25,
                                        1e-6, 200000);
            valleys[k] = res.converged ? lattice_valley(g, res.field.values) : -1.0;
            walls[k] = res.diagnostics.wall_seconds;
            ++k;
        }
        c.pass = valleys[0] > 0.0 && valleys[1] >= 0.0 && valleys[1] < valleys[0];
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "valley density %.3e (V0=1e3) -> %.3e (V0=3e3); wall %.0fs+%.0fs",
                      valleys[0], valleys[1], walls[0], walls[1]);
        c.detail = buf;
        out.push_back(c);
    }

    // --- 12. Operator convergence orders ---------------------------------
    {
        Criterion c{"Second-order convergence of both discrete operators"};
        auto radial_err = [](int M) {
            RadialGrid g(3, 8.0, M);
            std::vector<double> phi(M);
            for (int j = 0; j < M; ++j) {
                const double r = g.midpoint(j);
                phi[j] = std::exp(-r * r);
            }
            const auto lap = radial::laplacian_apply(g, phi);
            double worst = 0.0;
            for (int j = 0; j < M; ++j) {
                const double r = g.midpoint(j);
                if (r < 0.5 || r > 4.0) continue;
                worst = std::max(worst,
                                 std::abs(lap[j] - (4.0 * r * r - 6.0) * std::exp(-r * r)));
            }
            return worst;
        };
        auto tensor_err = [](int n) {
            TensorGrid g(2, {0, 0, 0}, {1, 1, 0}, {n, n, 1});
            std::vector<double> phi(g.node_count());
            for (std::size_t i = 0; i < phi.size(); ++i) {
                const auto x = node_coordinates(GridDescriptor(g), i);
                phi[i] = std::sin(pi * x[0]) * std::sin(pi * x[1]);
            }
            const auto lap = tensor::laplacian_apply(g, phi);
            double worst = 0.0;
            for (std::size_t i = 0; i < phi.size(); ++i) {
                worst = std::max(worst, std::abs(lap[i] + 2.0 * pi * pi * phi[i]));
            }
            return worst;
        };
        const double or1 = std::log2(radial_err(256) / radial_err(512));
        const double or2 = std::log2(tensor_err(64) / tensor_err(128));
        c.pass = or1 >= 1.7 && or1 <= 2.3 && or2 >= 1.7 && or2 <= 2.3;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "radial order %.3f, tensor order %.3f (within [1.7, 2.3])",
                      or1, or2);
        c.detail = buf;
        out.push_back(c);
    }

    // --- note: anisotropic trap (covers the 3d figures) ------------------
    {
        Criterion c{"Anisotropic trap: rms width along z under 1/10 of x"};
        TensorGrid g(3, {-6, -6, -0.5}, {6, 6, 0.5}, {64, 64, 32});
        ModelParams m(3, 50.0, 0.1, 1.0, HarmonicPotential{{1.0, 1.0, 100.0}});
        const auto res = run_tensor("anisotropic trap", m, g, 2.0, 1e-6, 200000);
        double sx = 0.0, sz = 0.0, tot = 0.0;
        const auto w = quadrature_weights(GridDescriptor(g));
        for (std::size_t i = 0; i < res.field.values.size(); ++i) {
            const auto x = node_coordinates(GridDescriptor(g), i);
            const double rho = res.field.values[i] * res.field.values[i] * w[i];
            sx += x[0] * x[0] * rho;
            sz += x[2] * x[2] * rho;
            tot += rho;
        }
        const double ratio = std::sqrt(sz / sx);
        c.pass = res.converged && ratio < 0.1;
        char buf[120];
        std::snprintf(buf, sizeof(buf), "rms_z/rms_x = %.4f (wall %.0fs)", ratio,
                      res.diagnostics.wall_seconds);
        c.detail = buf;
        out.push_back(c);
    }

    // --- 5. Mass invariant over every run above --------------------------
    {
        Criterion c{"Mass invariant across the suite"};
        double worst = 0.0;
        std::string where;
        for (const auto& e : registry) {
            if (e.result.diagnostics.max_mass_deviation > worst) {
                worst = e.result.diagnostics.max_mass_deviation;
                where = e.label;
            }
        }
        c.pass = worst < 1e-12;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "worst |(norm - c)|/c = %.2e (%s)", worst,
                      where.c_str());
        c.detail = buf;
        out.push_back(c);
    }

    // --- 6. mu-E identity on every converged result -----------------------
    {
        Criterion c{"mu-E identity on every converged result"};
        double worst = 0.0;
        std::string where;
        int checked = 0;
        for (const auto& e : registry) {
            if (!e.result.converged) continue;
            const EnergyTerms t = energy_terms(e.result.field, e.model);
            const double mu = chemical_potential_from_terms(t, e.model);
            const double E = energy_from_terms(t, e.model);
            const double lhs = mu * e.model.mass * e.model.mass - E;
            const double rhs = 0.5 * e.model.beta * t.quartic + 0.6 * e.model.lambda * t.quintic;
            const double rel = std::abs(lhs - rhs) /
                               std::max({1.0, std::abs(lhs), std::abs(rhs)});
            ++checked;
            if (rel > worst) {
                worst = rel;
                where = e.label;
            }
        }
        c.pass = checked > 0 && worst <= 1e-10;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d results, worst relative defect %.2e (%s)",
                      checked, worst, where.c_str());
        c.detail = buf;
        out.push_back(c);
    }

    // --- 7. Energy descent on the Table 1/2 runs --------------------------
    {
        Criterion c{"Empirical energy descent after iteration 5 (Table runs)"};
        double worst = -1e300;
        std::string where;
        int checked = 0;
        for (const auto& e : registry) {
            if (!e.table_run) continue;
            ++checked;
            if (e.result.diagnostics.max_energy_increase > worst) {
                worst = e.result.diagnostics.max_energy_increase;
                where = e.label;
            }
        }
        c.pass = checked == 10 && worst <= 1e-8;
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%d runs, worst relative increase %.2e (%s)",
                      checked, worst, where.c_str());
        c.detail = buf;
        out.push_back(c);
    }

    // ---------------------------------------------------------------------
    // report, with criteria printed in spec order
    const int order[] = {0, 1, 2, 3, 10, 11, 12, 4, 5, 6, 7, 8};
    const char* numbers[] = {" 1", " 2", " 3", " 4", " 5", " 6",
                             " 7", " 8", " 9", "10", "11", "12"};
    int passed = 0;
    for (int i = 0; i < 12; ++i) {
        const Criterion& c = out[order[i]];
        std::printf("[%s/12] %s  %s — %s\n", numbers[i], c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.detail.c_str());
        if (c.pass) ++passed;
    }
    const Criterion& note = out[9];
    std::printf("[note ] %s  %s — %s\n", note.pass ? "PASS" : "FAIL", note.name.c_str(),
                note.detail.c_str());
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_start).count();
    std::printf("SUMMARY: %d/12 criteria passed, note %s, %.0fs total\n", passed,
                note.pass ? "passed" : "failed", wall);
    return (passed == 12 && note.pass) ? 0 : 1;
}
