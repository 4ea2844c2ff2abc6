#include "egps/functionals.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace egps {

namespace {

double radial_prefactor(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        default: return 4.0 * std::numbers::pi;
    }
}

double rpow(double r, int d) {
    if (d == 1) return 1.0;
    if (d == 2) return r;
    return r * r;
}

}  // namespace

EnergyTerms radial_energy_terms(const RadialGrid& g, std::span<const double> phi,
                                std::span<const double> V) {
    const int M = g.cells;
    const double dr = g.spacing();
    const double pref = radial_prefactor(g.dimension);

    EnergyTerms t;
    for (int j = 0; j < M; ++j) {
        const double w = pref * dr * rpow(g.midpoint(j), g.dimension);
        const double p = phi[j];
        const double p2 = p * p;
        const double p2abs = p2 * std::abs(p);
        t.mass_sq += w * p2;
        t.potential += w * V[j] * p2;
        t.quartic += w * p2 * p2;
        t.quintic += w * p2 * p2abs;
    }
    // 1/2 <-(1/2)delta phi, phi>_w telescopes to node-centred differences;
    // the j = 0 flux vanishes by the Neumann ghost and r = R uses the
    // Dirichlet ghost.
    double kin = 0.0;
    for (int k = 1; k <= M; ++k) {
        const double up = (k < M) ? phi[k] : 0.0;
        const double diff = up - phi[k - 1];
        kin += rpow(g.node(k), g.dimension) * diff * diff;
    }
    t.kinetic = 0.5 * pref * kin / dr;
    return t;
}

EnergyTerms tensor_energy_terms(const TensorGrid& g, std::span<const double> phi,
                                std::span<const double> V) {
    const int d = g.dimension;
    double vol = 1.0;
    for (int a = 0; a < d; ++a) vol *= g.spacing(a);

    EnergyTerms t;
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
        const double p = phi[i];
        const double p2 = p * p;
        const double p2abs = p2 * std::abs(p);
        t.mass_sq += p2;
        t.potential += V[i] * p2;
        t.quartic += p2 * p2;
        t.quintic += p2 * p2abs;
    }
    t.mass_sq *= vol;
    t.potential *= vol;
    t.quartic *= vol;
    t.quintic *= vol;

    // Edge differences per axis including the two boundary edges of every
    // grid line, so the sum equals <-(1/2)Lap_h phi, phi>.
    const std::size_t stride[3] = {
        1, static_cast<std::size_t>(g.nodes[0]),
        static_cast<std::size_t>(g.nodes[0]) * static_cast<std::size_t>(g.nodes[1])};
    double kin = 0.0;
    for (int a = 0; a < d; ++a) {
        const int o1 = (a + 1) % 3;
        const int o2 = (a + 2) % 3;
        const int len = g.nodes[a];
        double acc = 0.0;
        for (int j2 = 0; j2 < g.nodes[o2]; ++j2) {
            for (int j1 = 0; j1 < g.nodes[o1]; ++j1) {
                std::size_t idx = static_cast<std::size_t>(j1) * stride[o1] +
                                  static_cast<std::size_t>(j2) * stride[o2];
                double prev = 0.0;
                for (int k = 0; k < len; ++k, idx += stride[a]) {
                    const double v = phi[idx];
                    const double diff = v - prev;
                    acc += diff * diff;
                    prev = v;
                }
                acc += prev * prev;
            }
        }
        kin += acc / (g.spacing(a) * g.spacing(a));
    }
    t.kinetic = 0.5 * vol * kin;
    return t;
}

double radial_norm(const RadialGrid& g, std::span<const double> phi) {
    const double dr = g.spacing();
    const double pref = radial_prefactor(g.dimension);
    double s = 0.0;
    for (int j = 0; j < g.cells; ++j) {
        s += phi[j] * phi[j] * rpow(g.midpoint(j), g.dimension);
    }
    return std::sqrt(pref * dr * s);
}

double tensor_norm(const TensorGrid& g, std::span<const double> phi) {
    double vol = 1.0;
    for (int a = 0; a < g.dimension; ++a) vol *= g.spacing(a);
    double s = 0.0;
    for (double p : phi) s += p * p;
    return std::sqrt(vol * s);
}

EnergyTerms energy_terms(const Field& f, const ModelParams& m) {
    if (grid_dimension(f.grid) != m.dimension) {
        throw std::invalid_argument("energy_terms: field and model dimensions differ");
    }
    const std::vector<double> V = sample_potential(f.grid, m.potential);
    if (const auto* rg = std::get_if<RadialGrid>(&f.grid)) {
        return radial_energy_terms(*rg, f.values, V);
    }
    return tensor_energy_terms(std::get<TensorGrid>(f.grid), f.values, V);
}

double energy_from_terms(const EnergyTerms& t, const ModelParams& m) {
    return t.kinetic + t.potential + 0.5 * m.beta * t.quartic +
           0.4 * m.lambda * t.quintic;
}

double chemical_potential_from_terms(const EnergyTerms& t, const ModelParams& m) {
    return (t.kinetic + t.potential + m.beta * t.quartic + m.lambda * t.quintic) /
           (m.mass * m.mass);
}

double energy(const Field& f, const ModelParams& m) {
    return energy_from_terms(energy_terms(f, m), m);
}

double chemical_potential(const Field& f, const ModelParams& m) {
    const EnergyTerms t = energy_terms(f, m);
    const double nrm = std::sqrt(t.mass_sq);
    if (std::abs(nrm - m.mass) > 1e-8 * m.mass) {
        throw std::invalid_argument("chemical_potential: field is not normalized to c");
    }
    return chemical_potential_from_terms(t, m);
}

double mass_norm(const Field& f) {
    if (const auto* rg = std::get_if<RadialGrid>(&f.grid)) {
        return radial_norm(*rg, f.values);
    }
    return tensor_norm(std::get<TensorGrid>(f.grid), f.values);
}

}  // namespace egps
