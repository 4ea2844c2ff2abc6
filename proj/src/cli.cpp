#include "egps/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "egps/analysis.hpp"
#include "egps/flow.hpp"
#include "egps/functionals.hpp"
#include "egps/io.hpp"
#include "egps/model.hpp"
#include "egps/reduction.hpp"

namespace egps::cli {

namespace {

using KV = std::map<std::string, io::ConfigValue>;

double to_double(const std::string& s, const std::string& ctx) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(ctx + ": expected a number, got '" + s + "'");
    }
    if (used != s.size()) throw std::runtime_error(ctx + ": expected a number, got '" + s + "'");
    return v;
}

long to_long(const std::string& s, const std::string& ctx) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw std::runtime_error(ctx + ": expected an integer, got '" + s + "'");
    }
    if (used != s.size()) throw std::runtime_error(ctx + ": expected an integer, got '" + s + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

void assign(double& t, const std::string& v, const std::string& ctx) { t = to_double(v, ctx); }
void assign(int& t, const std::string& v, const std::string& ctx) { t = static_cast<int>(to_long(v, ctx)); }
void assign(long& t, const std::string& v, const std::string& ctx) { t = to_long(v, ctx); }
void assign(std::string& t, const std::string& v, const std::string&) { t = v; }
void assign(bool& t, const std::string& v, const std::string& ctx) {
    if (v == "true" || v == "1") t = true;
    else if (v == "false" || v == "0") t = false;
    else throw std::runtime_error(ctx + ": expected true/false, got '" + v + "'");
}
void assign(std::vector<double>& t, const std::string& v, const std::string& ctx) {
    t.clear();
    for (const auto& item : split_list(v)) t.push_back(to_double(item, ctx));
}
void assign(std::vector<int>& t, const std::string& v, const std::string& ctx) {
    t.clear();
    for (const auto& item : split_list(v)) t.push_back(static_cast<int>(to_long(item, ctx)));
}

// Applies config-file values to options the command line did not set;
// flags > file > defaults.
class ConfigBinder {
public:
    ConfigBinder(CLI::App* sub, std::string path) : sub_(sub), path_(std::move(path)) {
        if (!path_.empty()) kv_ = io::load_key_values(path_);
    }

    template <typename T>
    void bind(const std::string& key, T& target) {
        known_.insert(key);
        const auto it = kv_.find(key);
        if (it == kv_.end()) return;
        if (sub_->count("--" + key) > 0) return;  // flag wins
        assign(target, it->second.value, path_ + ":" + std::to_string(it->second.line));
    }

    void finish() const {
        for (const auto& [key, val] : kv_) {
            if (!known_.contains(key)) {
                throw std::runtime_error(path_ + ":" + std::to_string(val.line) +
                                         ": unknown key '" + key + "'");
            }
        }
    }

private:
    CLI::App* sub_;
    std::string path_;
    KV kv_;
    std::set<std::string> known_;
};

int env_thread_cap() {
    if (const char* env = std::getenv("EGPS_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<int>(v);
        } catch (const std::exception&) {
        }
    }
    return 0;
}

struct SolveOptions {
    int dim = 3;
    bool radial = false;
    double beta = 0.0;
    double lambda = 0.0;
    double mass = 1.0;
    double R = 1.0;
    int M = 2048;
    double L = 0.0;  // 0 = automatic
    std::vector<int> n;
    std::vector<double> lo, hi;
    double tau = 1e-2;
    double tol = 0.0;  // 0 = per-solver default
    std::string metric;
    long max_iter = 100000;
    std::vector<double> harmonic;
    double lattice_v0 = 0.0;
    double lattice_k = 5.0 * std::numbers::pi;
    std::vector<double> rpower;
    double width = 0.0;  // 0 = 0.25 * domain half-width
    double theta = 0.99;
    int spread_window = 200;
    double spread_decay = 0.5;
    double lin_tol = 1e-10;
    long lin_maxit = 50000;
    std::string out_path, dump_path, from_record, config_path;
};

Potential build_potential(const SolveOptions& o) {
    int chosen = 0;
    chosen += !o.harmonic.empty();
    chosen += o.lattice_v0 != 0.0;
    chosen += !o.rpower.empty();
    if (chosen > 1) throw std::runtime_error("choose at most one potential");
    if (!o.harmonic.empty()) {
        HarmonicPotential h;
        if (o.harmonic.size() == 1) {
            for (int a = 0; a < o.dim; ++a) h.gamma[a] = o.harmonic[0];
        } else if (o.harmonic.size() == static_cast<std::size_t>(o.dim)) {
            for (int a = 0; a < o.dim; ++a) h.gamma[a] = o.harmonic[a];
        } else {
            throw std::runtime_error("--harmonic needs 1 or dim values");
        }
        return h;
    }
    if (o.lattice_v0 != 0.0) return OpticalLatticePotential{o.lattice_v0, o.lattice_k};
    if (!o.rpower.empty()) {
        if (o.rpower.size() != 2) throw std::runtime_error("--rpower needs 'coefficient,exponent'");
        return RadialPowerPotential{o.rpower[0], o.rpower[1]};
    }
    return ZeroPotential{};
}

GridDescriptor build_grid(const SolveOptions& o, const Potential& pot) {
    if (o.radial) return RadialGrid(o.dim, o.R, o.M);

    std::array<double, 3> lo{0, 0, 0}, hi{0, 0, 0};
    if (!o.lo.empty() || !o.hi.empty()) {
        if (o.lo.size() != static_cast<std::size_t>(o.dim) ||
            o.hi.size() != static_cast<std::size_t>(o.dim)) {
            throw std::runtime_error("--lo/--hi need one value per dimension");
        }
        for (int a = 0; a < o.dim; ++a) {
            lo[a] = o.lo[a];
            hi[a] = o.hi[a];
        }
    } else {
        double L = o.L;
        if (L == 0.0) {
            L = 1.0;
            // a harmonic trap sets its own length scale; widen the default
            // box so the Dirichlet wall does not squeeze the trap mode
            if (const auto* h = std::get_if<HarmonicPotential>(&pot)) {
                double gmin = 0.0;
                for (int a = 0; a < o.dim; ++a) {
                    if (h->gamma[a] > 0.0) {
                        gmin = gmin == 0.0 ? h->gamma[a] : std::min(gmin, h->gamma[a]);
                    }
                }
                if (gmin > 0.0) L = std::max(1.0, 8.0 / std::sqrt(gmin));
            }
        }
        for (int a = 0; a < o.dim; ++a) {
            lo[a] = -L;
            hi[a] = L;
        }
    }

    std::array<int, 3> n{1, 1, 1};
    if (o.n.empty()) {
        const int defaults[3] = {2048, 256, 64};
        for (int a = 0; a < o.dim; ++a) n[a] = defaults[o.dim - 1];
    } else if (o.n.size() == 1) {
        for (int a = 0; a < o.dim; ++a) n[a] = o.n[0];
    } else if (o.n.size() == static_cast<std::size_t>(o.dim)) {
        for (int a = 0; a < o.dim; ++a) n[a] = o.n[a];
    } else {
        throw std::runtime_error("--n needs 1 or dim values");
    }
    return TensorGrid(o.dim, lo, hi, n);
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
    ModelParams model;
    GridDescriptor grid;
    flow::SolverConfig cfg;
    double width = o.width;
    double theta = o.theta;

    if (!o.from_record.empty()) {
        const io::RunRecord rec = io::load_run_record(o.from_record);
        model = rec.model;
        grid = rec.grid;
        cfg = rec.config;
        width = rec.initial_width;
        theta = rec.theta;
    } else {
        const Potential pot = build_potential(o);
        grid = build_grid(o, pot);
        model = ModelParams(o.dim, o.beta, o.lambda, o.mass, pot);
        cfg.time_step = o.tau;
        const bool is_radial = std::holds_alternative<RadialGrid>(grid);
        cfg.stop_tolerance = o.tol != 0.0 ? o.tol : (is_radial ? 1e-10 : 1e-6);
        if (o.metric.empty()) {
            cfg.stop_metric = is_radial ? flow::StopMetric::MaxDiff : flow::StopMetric::L2Diff;
        } else if (o.metric == "max") {
            cfg.stop_metric = flow::StopMetric::MaxDiff;
        } else if (o.metric == "l2") {
            cfg.stop_metric = flow::StopMetric::L2Diff;
        } else {
            throw std::runtime_error("--metric must be 'max' or 'l2'");
        }
        cfg.max_iterations = o.max_iter;
        cfg.spread.window = o.spread_window;
        cfg.spread.peak_decay_threshold = o.spread_decay;
        cfg.linear_tolerance = o.lin_tol;
        cfg.linear_max_iterations = o.lin_maxit;
        if (width == 0.0) {
            if (const auto* rg = std::get_if<RadialGrid>(&grid)) {
                width = 0.25 * rg->outer_radius;
            } else {
                const auto& tg = std::get<TensorGrid>(grid);
                double half = tg.hi[0] - tg.lo[0];
                for (int a = 1; a < tg.dimension; ++a) {
                    half = std::min(half, tg.hi[a] - tg.lo[a]);
                }
                width = 0.25 * 0.5 * half;
            }
        }
    }

    const Field initial = flow::default_initial_gaussian(grid, model.mass, width);
    const auto disc = flow::make_discretization(model, grid, cfg);
    const flow::GroundStateResult result = flow::run_to_convergence(initial, model, cfg, *disc);

    io::RunRecord rec;
    rec.model = model;
    rec.grid = grid;
    rec.config = cfg;
    rec.initial_width = width;
    rec.theta = theta;
    io::RunRecord::Result rr;
    rr.classification = io::classification_name(result.classification);
    rr.converged = result.converged;
    rr.iterations = result.iterations;
    rr.energy = result.energy;
    rr.chemical_potential = result.chemical_potential;
    rr.peak_value = result.peak_value;
    rr.peak_location = result.peak_location;
    if (result.converged) rr.eta = analysis::eta_indicator(result.field, theta);
    rr.residual = result.diagnostics.residual;
    rr.boundary_peak_ratio = result.diagnostics.boundary_peak_ratio;
    rr.max_energy_increase = result.diagnostics.max_energy_increase;
    rr.max_mass_deviation = result.diagnostics.max_mass_deviation;
    rr.linear_iterations = result.diagnostics.linear_iterations;
    rr.wall_seconds = result.diagnostics.wall_seconds;
    rec.result = rr;

    err << "classification=" << rr.classification << " iterations=" << rr.iterations
        << " energy=" << io::format_full(rr.energy)
        << " mu=" << io::format_full(rr.chemical_potential)
        << " peak=" << io::format_full(rr.peak_value);
    if (rr.eta) err << " eta=" << io::format_full(*rr.eta);
    err << " wall=" << rr.wall_seconds << "s\n";
    if (result.converged && result.diagnostics.boundary_peak_ratio > 1e-6) {
        err << "warning: solution at the domain edge is "
            << io::format_full(result.diagnostics.boundary_peak_ratio)
            << " of the peak; the truncation radius looks too tight\n";
    }

    if (o.out_path.empty()) {
        out << io::serialize_run_record(rec);
    } else {
        io::write_run_record(o.out_path, rec);
    }
    if (!o.dump_path.empty()) {
        io::write_field_dump(o.dump_path, result.field, model.mass);
    }

    switch (result.classification) {
        case flow::Classification::GroundState: return 0;
        case flow::Classification::SpreadingNoGroundState: return 2;
        default: return 3;
    }
}

struct SweepOptions {
    double beta_min = -25.0, beta_max = -1.0;
    int beta_count = 8;
    double lambda_min = 0.002, lambda_max = 1.0;
    int lambda_count = 8;
    double theta = 0.99, threshold = 0.62;
    double mass = 1.0;
    double R = 1.0;
    int M = 1024;
    double tau = 1e-2, tol = 1e-10;
    long max_iter = 100000;
    double width = 0.25;
    int workers = 0;  // 0 = hardware
    std::string out_path, config_path;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    analysis::SweepRequest req;
    req.beta_min = o.beta_min;
    req.beta_max = o.beta_max;
    req.beta_count = o.beta_count;
    req.lambda_min = o.lambda_min;
    req.lambda_max = o.lambda_max;
    req.lambda_count = o.lambda_count;
    req.theta = o.theta;
    req.eta_threshold = o.threshold;
    req.mass = o.mass;
    req.grid = RadialGrid(3, o.R, o.M);
    req.config.time_step = o.tau;
    req.config.stop_tolerance = o.tol;
    req.config.stop_metric = flow::StopMetric::MaxDiff;
    req.config.max_iterations = o.max_iter;
    req.initial_width = o.width;

    int workers = o.workers > 0 ? o.workers
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const int cap = env_thread_cap(); cap > 0) workers = std::min(workers, cap);
    req.workers = workers;

    const auto cells = analysis::phase_sweep(req);
    if (o.out_path.empty()) {
        io::write_sweep_csv(out, cells, req.theta, req.eta_threshold);
    } else {
        std::ofstream f(o.out_path);
        if (!f) throw std::runtime_error("cannot write '" + o.out_path + "'");
        io::write_sweep_csv(f, cells, req.theta, req.eta_threshold);
    }
    long errors = 0;
    for (const auto& c : cells) {
        if (c.regime == analysis::Regime::Error) ++errors;
    }
    if (errors > 0) err << errors << " cell(s) failed; see the regime column\n";
    return 0;
}

struct FlattopOptions {
    double beta = 0.0, lambda = 0.0, mass = 1.0;
    std::string compare, config_path;
};

int cmd_flattop(const FlattopOptions& o, std::ostream& out, std::ostream&) {
    const ModelParams m(3, o.beta, o.lambda, o.mass, ZeroPotential{});
    const auto est = analysis::flat_top_estimate(m);
    out << "a=" << io::format_full(est.plateau_value) << "\n";
    out << "E_app_min=" << io::format_full(est.approx_energy) << "\n";
    out << "support_volume=" << io::format_full(est.support_volume) << "\n";
    if (!o.compare.empty()) {
        const io::RunRecord rec = io::load_run_record(o.compare);
        if (!rec.result || rec.result->classification != "GroundState") {
            throw std::runtime_error("--compare: record does not hold a ground state");
        }
        const double peak = rec.result->peak_value;
        const double energy = rec.result->energy;
        out << "e_a=" << io::format_full(std::abs(peak - est.plateau_value) / std::abs(peak)) << "\n";
        out << "e_E=" << io::format_full(std::abs(energy - est.approx_energy) / std::abs(energy)) << "\n";
    }
    return 0;
}

struct NondimOptions {
    double m = 0.0, as = 0.0, N = 0.0, xs = 0.0, CL = 0.0, c = 1.0;
    std::string config_path;
};

int cmd_nondim(const NondimOptions& o, std::ostream& out, std::ostream&) {
    PhysicalParams p;
    p.mass = o.m;
    p.scattering_length = o.as;
    p.particle_number = o.N;
    p.length_scale = o.xs;
    p.lhy_constant = o.CL;
    p.norm_constant = o.c;
    const auto coeff = nondimensionalize(p);
    out << "beta=" << io::format_full(coeff.beta) << "\n";
    out << "lambda=" << io::format_full(coeff.lambda) << "\n";
    return 0;
}

struct ReduceOptions {
    double beta = 0.0, lambda = 0.0, mass = 1.0, sigma = 1.0;
    std::vector<double> gamma{0.0, 0.0, 0.0};
    std::string tcase = "disk";
    std::string config_path;
};

int cmd_reduce(const ReduceOptions& o, std::ostream& out, std::ostream&) {
    Potential pot = ZeroPotential{};
    if (o.gamma.size() != 3) throw std::runtime_error("--gamma needs three values");
    if (o.gamma[0] != 0.0 || o.gamma[1] != 0.0 || o.gamma[2] != 0.0) {
        HarmonicPotential h;
        for (int a = 0; a < 3; ++a) h.gamma[a] = o.gamma[a];
        pot = h;
    }
    const ModelParams m(3, o.beta, o.lambda, o.mass, pot);
    TransverseCase tc;
    if (o.tcase == "disk") tc = TransverseCase::Disk;
    else if (o.tcase == "cigar") tc = TransverseCase::Cigar;
    else throw std::runtime_error("--case must be 'disk' or 'cigar'");
    const auto red = reduce_dimension(m, o.sigma, tc);
    out << "beta_reduced=" << io::format_full(red.beta_reduced) << "\n";
    out << "lambda_reduced=" << io::format_full(red.lambda_reduced) << "\n";
    out << "phase_constant=" << io::format_full(red.phase_constant) << "\n";
    out << "target_dimension=" << red.target_dimension << "\n";
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ground states of the extended Gross-Pitaevskii equation"};
    app.name("egps");
    app.require_subcommand(1);

    SolveOptions so;
    CLI::App* solve = app.add_subcommand("solve", "Compute one ground state");
    solve->add_option("--dim", so.dim, "Space dimension (1, 2 or 3)");
    solve->add_flag("--radial", so.radial, "Use the symmetric radial solver");
    solve->add_option("--beta", so.beta, "Cubic interaction coefficient");
    solve->add_option("--lambda", so.lambda, "LHY coefficient (>= 0)");
    solve->add_option("--c", so.mass, "Mass constraint ||phi||_2 = c");
    solve->add_option("--R", so.R, "Radial truncation radius");
    solve->add_option("--M", so.M, "Radial cell count");
    solve->add_option("--L", so.L, "Tensor box half-width (box [-L, L]^d)");
    solve->add_option("--n", so.n, "Tensor interior nodes per axis")->delimiter(',');
    solve->add_option("--lo", so.lo, "Tensor box lower corner")->delimiter(',');
    solve->add_option("--hi", so.hi, "Tensor box upper corner")->delimiter(',');
    solve->add_option("--tau", so.tau, "Gradient-flow time step");
    solve->add_option("--tol", so.tol, "Stopping tolerance");
    solve->add_option("--metric", so.metric, "Stopping metric: max or l2");
    solve->add_option("--max-iter", so.max_iter, "Iteration cap");
    solve->add_option("--harmonic", so.harmonic, "Harmonic trap gammas (1 or dim values)")->delimiter(',');
    solve->add_option("--lattice-v0", so.lattice_v0, "Optical lattice amplitude V0");
    solve->add_option("--lattice-k", so.lattice_k, "Optical lattice wavenumber (default 5 pi)");
    solve->add_option("--rpower", so.rpower, "Radial power potential 'coefficient,exponent'")->delimiter(',');
    solve->add_option("--width", so.width, "Initial Gaussian width");
    solve->add_option("--theta", so.theta, "Density fraction for the eta indicator");
    solve->add_option("--spread-window", so.spread_window, "Spread classifier window");
    solve->add_option("--spread-decay", so.spread_decay, "Spread classifier peak decay threshold");
    solve->add_option("--linear-tol", so.lin_tol, "Inner linear solve tolerance");
    solve->add_option("--linear-max-iter", so.lin_maxit, "Inner linear solve iteration cap");
    solve->add_option("--out", so.out_path, "Write the run record to this file");
    solve->add_option("--dump-field", so.dump_path, "Write the converged field as CSV");
    solve->add_option("--from-record", so.from_record, "Reproduce a previous run record");
    solve->add_option("--config", so.config_path, "Key = value configuration file");

    SweepOptions wo;
    CLI::App* sweep = app.add_subcommand("sweep", "Phase-diagram sweep over (beta, lambda)");
    sweep->add_option("--beta-min", wo.beta_min, "Smallest beta");
    sweep->add_option("--beta-max", wo.beta_max, "Largest beta (must stay < 0)");
    sweep->add_option("--beta-count", wo.beta_count, "Cells along beta");
    sweep->add_option("--lambda-min", wo.lambda_min, "Smallest lambda (> 0)");
    sweep->add_option("--lambda-max", wo.lambda_max, "Largest lambda");
    sweep->add_option("--lambda-count", wo.lambda_count, "Cells along lambda");
    sweep->add_option("--theta", wo.theta, "Density fraction for eta");
    sweep->add_option("--eta-threshold", wo.threshold, "Droplet/soliton eta threshold");
    sweep->add_option("--c", wo.mass, "Mass constraint");
    sweep->add_option("--R", wo.R, "Radial truncation radius");
    sweep->add_option("--M", wo.M, "Radial cell count");
    sweep->add_option("--tau", wo.tau, "Gradient-flow time step");
    sweep->add_option("--tol", wo.tol, "Stopping tolerance");
    sweep->add_option("--max-iter", wo.max_iter, "Iteration cap per cell");
    sweep->add_option("--width", wo.width, "Initial Gaussian width");
    sweep->add_option("--workers", wo.workers, "Worker threads (0 = hardware)");
    sweep->add_option("--out", wo.out_path, "Write the CSV to this file");
    sweep->add_option("--config", wo.config_path, "Key = value configuration file");

    FlattopOptions fo;
    CLI::App* flattop = app.add_subcommand("flattop", "Flat-top droplet estimate");
    flattop->add_option("--beta", fo.beta, "Cubic coefficient (< 0)");
    flattop->add_option("--lambda", fo.lambda, "LHY coefficient (> 0)");
    flattop->add_option("--c", fo.mass, "Mass constraint");
    flattop->add_option("--compare", fo.compare, "Run record to compare against");
    flattop->add_option("--config", fo.config_path, "Key = value configuration file");

    NondimOptions no;
    CLI::App* nondim = app.add_subcommand("nondim", "Dimensionless coefficients from physical parameters");
    nondim->add_option("--m", no.m, "Atomic mass [kg]");
    nondim->add_option("--as", no.as, "Scattering length [m]");
    nondim->add_option("--N", no.N, "Particle number");
    nondim->add_option("--xs", no.xs, "Length scale [m]");
    nondim->add_option("--CL", no.CL, "LHY constant C_L");
    nondim->add_option("--c", no.c, "Norm constant c");
    nondim->add_option("--config", no.config_path, "Key = value configuration file");

    ReduceOptions ro;
    CLI::App* reduce = app.add_subcommand("reduce", "Disk/cigar dimensional reduction");
    reduce->add_option("--beta", ro.beta, "3D cubic coefficient");
    reduce->add_option("--lambda", ro.lambda, "3D LHY coefficient");
    reduce->add_option("--c", ro.mass, "Mass constraint");
    reduce->add_option("--gamma", ro.gamma, "Trap gammas 'gx,gy,gz'")->delimiter(',');
    reduce->add_option("--sigma", ro.sigma, "Transverse Gaussian width");
    reduce->add_option("--case", ro.tcase, "disk or cigar");
    reduce->add_option("--config", ro.config_path, "Key = value configuration file");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("egps");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(solve)) {
            ConfigBinder cb(solve, so.config_path);
            cb.bind("dim", so.dim);
            cb.bind("radial", so.radial);
            cb.bind("beta", so.beta);
            cb.bind("lambda", so.lambda);
            cb.bind("c", so.mass);
            cb.bind("R", so.R);
            cb.bind("M", so.M);
            cb.bind("L", so.L);
            cb.bind("n", so.n);
            cb.bind("lo", so.lo);
            cb.bind("hi", so.hi);
            cb.bind("tau", so.tau);
            cb.bind("tol", so.tol);
            cb.bind("metric", so.metric);
            cb.bind("max-iter", so.max_iter);
            cb.bind("harmonic", so.harmonic);
            cb.bind("lattice-v0", so.lattice_v0);
            cb.bind("lattice-k", so.lattice_k);
            cb.bind("rpower", so.rpower);
            cb.bind("width", so.width);
            cb.bind("theta", so.theta);
            cb.bind("spread-window", so.spread_window);
            cb.bind("spread-decay", so.spread_decay);
            cb.bind("linear-tol", so.lin_tol);
            cb.bind("linear-max-iter", so.lin_maxit);
            cb.bind("out", so.out_path);
            cb.bind("dump-field", so.dump_path);
            cb.bind("from-record", so.from_record);
            cb.finish();
            return cmd_solve(so, out, err);
        }
        if (app.got_subcommand(sweep)) {
            ConfigBinder cb(sweep, wo.config_path);
            cb.bind("beta-min", wo.beta_min);
            cb.bind("beta-max", wo.beta_max);
            cb.bind("beta-count", wo.beta_count);
            cb.bind("lambda-min", wo.lambda_min);
            cb.bind("lambda-max", wo.lambda_max);
            cb.bind("lambda-count", wo.lambda_count);
            cb.bind("theta", wo.theta);
            cb.bind("eta-threshold", wo.threshold);
            cb.bind("c", wo.mass);
            cb.bind("R", wo.R);
            cb.bind("M", wo.M);
            cb.bind("tau", wo.tau);
            cb.bind("tol", wo.tol);
            cb.bind("max-iter", wo.max_iter);
            cb.bind("width", wo.width);
            cb.bind("workers", wo.workers);
            cb.bind("out", wo.out_path);
            cb.finish();
            return cmd_sweep(wo, out, err);
        }
        if (app.got_subcommand(flattop)) {
            ConfigBinder cb(flattop, fo.config_path);
            cb.bind("beta", fo.beta);
            cb.bind("lambda", fo.lambda);
            cb.bind("c", fo.mass);
            cb.bind("compare", fo.compare);
            cb.finish();
            return cmd_flattop(fo, out, err);
        }
        if (app.got_subcommand(nondim)) {
            ConfigBinder cb(nondim, no.config_path);
            cb.bind("m", no.m);
            cb.bind("as", no.as);
            cb.bind("N", no.N);
            cb.bind("xs", no.xs);
            cb.bind("CL", no.CL);
            cb.bind("c", no.c);
            cb.finish();
            return cmd_nondim(no, out, err);
        }
        ConfigBinder cb(reduce, ro.config_path);
        cb.bind("beta", ro.beta);
        cb.bind("lambda", ro.lambda);
        cb.bind("c", ro.mass);
        cb.bind("gamma", ro.gamma);
        cb.bind("sigma", ro.sigma);
        cb.bind("case", ro.tcase);
        cb.finish();
        return cmd_reduce(ro, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace egps::cli
