#include "egps/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "egps/functionals.hpp"

namespace egps::tensor {

namespace {

const TensorGrid& require_tensor(const Field& f) {
    if (const auto* g = std::get_if<TensorGrid>(&f.grid)) return *g;
    throw std::invalid_argument("expected a field on a tensor grid");
}

std::array<std::size_t, 3> strides(const TensorGrid& g) {
    return {1, static_cast<std::size_t>(g.nodes[0]),
            static_cast<std::size_t>(g.nodes[0]) * static_cast<std::size_t>(g.nodes[1])};
}

}  // namespace

std::vector<double> laplacian_apply(const TensorGrid& g, std::span<const double> phi) {
    const std::size_t n = g.node_count();
    std::vector<double> out(n, 0.0);
    const auto str = strides(g);
    for (int a = 0; a < g.dimension; ++a) {
        const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
        const int o1 = (a + 1) % 3;
        const int o2 = (a + 2) % 3;
        const int len = g.nodes[a];
        for (int j2 = 0; j2 < g.nodes[o2]; ++j2) {
            for (int j1 = 0; j1 < g.nodes[o1]; ++j1) {
                std::size_t idx = static_cast<std::size_t>(j1) * str[o1] +
                                  static_cast<std::size_t>(j2) * str[o2];
                for (int k = 0; k < len; ++k, idx += str[a]) {
                    const double left = (k > 0) ? phi[idx - str[a]] : 0.0;
                    const double right = (k + 1 < len) ? phi[idx + str[a]] : 0.0;
                    out[idx] += (left - 2.0 * phi[idx] + right) * inv_h2;
                }
            }
        }
    }
    return out;
}

Field laplacian_apply(const Field& f) {
    const TensorGrid& g = require_tensor(f);
    return Field(f.grid, laplacian_apply(g, f.values));
}

void apply(const StencilOperator& op, std::span<const double> x,
           std::span<double> y) {
    const TensorGrid& g = op.grid;
    const std::size_t n = g.node_count();
    const auto str = strides(g);
    for (std::size_t i = 0; i < n; ++i) y[i] = op.diag[i] * x[i];
    for (int a = 0; a < g.dimension; ++a) {
        const double c = op.axis_coeff[a];
        const int o1 = (a + 1) % 3;
        const int o2 = (a + 2) % 3;
        const int len = g.nodes[a];
        for (int j2 = 0; j2 < g.nodes[o2]; ++j2) {
            for (int j1 = 0; j1 < g.nodes[o1]; ++j1) {
                std::size_t idx = static_cast<std::size_t>(j1) * str[o1] +
                                  static_cast<std::size_t>(j2) * str[o2];
                for (int k = 0; k < len; ++k, idx += str[a]) {
                    if (k > 0) y[idx] += c * x[idx - str[a]];
                    if (k + 1 < len) y[idx] += c * x[idx + str[a]];
                }
            }
        }
    }
}

StepSystem assemble_step_operator(const TensorGrid& g, std::span<const double> phi,
                                  std::span<const double> V, const ModelParams& m,
                                  double tau, double mu) {
    if (!(tau > 0.0)) throw std::invalid_argument("assemble_step_operator: tau must be positive");
    const std::size_t n = g.node_count();
    const double beta_pos = std::max(m.beta, 0.0);
    const double beta_neg = std::min(m.beta, 0.0);
    const double mu_pos = std::max(mu, 0.0);
    const double mu_neg = std::min(mu, 0.0);
    const double inv_tau = 1.0 / tau;

    double lap_diag = 0.0;
    StepSystem sys;
    sys.op.grid = g;
    for (int a = 0; a < g.dimension; ++a) {
        const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
        sys.op.axis_coeff[a] = -0.5 * inv_h2;
        lap_diag += inv_h2;
    }
    sys.op.diag.resize(n);
    sys.rhs.resize(n);

    bool hyp = m.lambda >= 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = phi[i];
        const double p2 = p * p;
        sys.op.diag[i] = inv_tau + V[i] + m.lambda * p2 * std::abs(p) +
                         beta_pos * p2 - mu_neg + lap_diag;
        sys.rhs[i] = (inv_tau + mu_pos - beta_neg * p2) * p;
        hyp = hyp && V[i] >= 0.0 && p >= 0.0;
    }
    sys.nonnegativity_guaranteed = hyp;
    return sys;
}

StepSystem assemble_step_operator(const Field& f, const ModelParams& m,
                                  double tau, double mu) {
    const TensorGrid& g = require_tensor(f);
    const std::vector<double> V = sample_potential(f.grid, m.potential);
    return assemble_step_operator(g, f.values, V, m, tau, mu);
}

PcgResult solve_step(const StencilOperator& op, std::span<const double> rhs,
                     double rel_tol, long max_iterations) {
    const std::size_t n = op.grid.node_count();
    if (rhs.size() != n || op.diag.size() != n) {
        throw std::invalid_argument("solve_step: size mismatch");
    }

    auto dot = [n](std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
        return s;
    };

    const double bnorm = std::sqrt(dot(rhs, rhs));
    PcgResult res;
    res.solution.assign(n, 0.0);
    if (bnorm == 0.0) return res;

    std::vector<double>& x = res.solution;
    std::vector<double> r(n), z(n), p(n), Ap(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / op.diag[i];

    auto refresh_residual = [&] {
        apply(op, x, Ap);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - Ap[i];
        return std::sqrt(dot(r, r));
    };

    double rnorm = refresh_residual();
    // Outer loop re-evaluates the true residual whenever the recurrence
    // claims convergence, so the reported residual is never stale.
    while (rnorm > rel_tol * bnorm) {
        for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / op.diag[i];
        p = z;
        double rz = dot(r, z);
        while (rnorm > rel_tol * bnorm) {
            if (res.iterations >= max_iterations) {
                throw std::runtime_error(
                    "solve_step: PCG did not reach tolerance, relative residual " +
                    std::to_string(rnorm / bnorm) + " after " +
                    std::to_string(res.iterations) + " iterations");
            }
            apply(op, p, Ap);
            const double alpha = rz / dot(p, Ap);
            for (std::size_t i = 0; i < n; ++i) x[i] += alpha * p[i];
            for (std::size_t i = 0; i < n; ++i) r[i] -= alpha * Ap[i];
            for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / op.diag[i];
            const double rz_next = dot(r, z);
            const double beta = rz_next / rz;
            rz = rz_next;
            for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
            rnorm = std::sqrt(dot(r, r));
            ++res.iterations;
        }
        rnorm = refresh_residual();
    }
    res.relative_residual = rnorm / bnorm;
    return res;
}

PcgResult solve_step(const StepSystem& sys, double rel_tol, long max_iterations) {
    PcgResult res = solve_step(sys.op, sys.rhs, rel_tol, max_iterations);
    if (sys.nonnegativity_guaranteed) {
        for (double& v : res.solution) v = std::max(v, 0.0);
    }
    return res;
}

double norm(const TensorGrid& g, std::span<const double> phi) {
    return tensor_norm(g, phi);
}

}  // namespace egps::tensor
