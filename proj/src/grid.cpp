#include "egps/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace egps {

namespace {

double radial_weight_prefactor(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * std::numbers::pi;
        default: return 4.0 * std::numbers::pi;
    }
}

double rpow(double r, int d) {
    // r^{d-1}; d = 1 gives 1 including at r = 0.
    if (d == 1) return 1.0;
    if (d == 2) return r;
    return r * r;
}

}  // namespace

RadialGrid::RadialGrid(int d, double R, int M)
    : dimension(d), outer_radius(R), cells(M) {
    if (d < 1 || d > 3) throw std::invalid_argument("RadialGrid: dimension must be 1, 2 or 3");
    if (!(R > 0.0)) throw std::invalid_argument("RadialGrid: outer radius must be positive");
    if (M < 8) throw std::invalid_argument("RadialGrid: need at least 8 cells");
}

TensorGrid::TensorGrid(int d, std::array<double, 3> lo_,
                       std::array<double, 3> hi_, std::array<int, 3> nodes_)
    : dimension(d), lo(lo_), hi(hi_), nodes(nodes_) {
    if (d < 1 || d > 3) throw std::invalid_argument("TensorGrid: dimension must be 1, 2 or 3");
    for (int a = 0; a < d; ++a) {
        if (!(hi[a] > lo[a])) throw std::invalid_argument("TensorGrid: need hi > lo on every axis");
        if (nodes[a] < 8) throw std::invalid_argument("TensorGrid: need at least 8 nodes per axis");
    }
    for (int a = d; a < 3; ++a) nodes[a] = 1;
}

std::size_t TensorGrid::node_count() const {
    std::size_t n = 1;
    for (int a = 0; a < dimension; ++a) n *= static_cast<std::size_t>(nodes[a]);
    return n;
}

std::array<int, 3> TensorGrid::unpack(std::size_t idx) const {
    std::array<int, 3> out{0, 0, 0};
    out[0] = static_cast<int>(idx % nodes[0]);
    if (dimension > 1) out[1] = static_cast<int>((idx / nodes[0]) % nodes[1]);
    if (dimension > 2) out[2] = static_cast<int>(idx / (static_cast<std::size_t>(nodes[0]) * nodes[1]));
    return out;
}

int grid_dimension(const GridDescriptor& g) {
    return std::visit([](const auto& gr) { return gr.dimension; }, g);
}

std::size_t grid_node_count(const GridDescriptor& g) {
    return std::visit([](const auto& gr) { return gr.node_count(); }, g);
}

std::vector<double> quadrature_weights(const GridDescriptor& g) {
    if (const auto* rg = std::get_if<RadialGrid>(&g)) {
        const double pref = radial_weight_prefactor(rg->dimension) * rg->spacing();
        std::vector<double> w(rg->node_count());
        for (int j = 0; j < rg->cells; ++j) {
            w[j] = pref * rpow(rg->midpoint(j), rg->dimension);
        }
        return w;
    }
    const auto& tg = std::get<TensorGrid>(g);
    double vol = 1.0;
    for (int a = 0; a < tg.dimension; ++a) vol *= tg.spacing(a);
    return std::vector<double>(tg.node_count(), vol);
}

std::array<double, 3> node_coordinates(const GridDescriptor& g, std::size_t idx) {
    if (const auto* rg = std::get_if<RadialGrid>(&g)) {
        return {rg->midpoint(static_cast<int>(idx)), 0.0, 0.0};
    }
    const auto& tg = std::get<TensorGrid>(g);
    const auto ijk = tg.unpack(idx);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < tg.dimension; ++a) x[a] = tg.coordinate(a, ijk[a]);
    return x;
}

std::vector<double> sample_potential(const GridDescriptor& g, const Potential& v) {
    const std::size_t n = grid_node_count(g);
    if (const auto* tab = std::get_if<TabulatedPotential>(&v)) {
        if (tab->values.size() != n) {
            throw std::invalid_argument("sample_potential: tabulated values do not match the grid");
        }
        return tab->values;
    }
    std::vector<double> out(n);
    if (const auto* rg = std::get_if<RadialGrid>(&g)) {
        const int d = rg->dimension;
        if (const auto* h = std::get_if<HarmonicPotential>(&v)) {
            for (int a = 1; a < d; ++a) {
                if (h->gamma[a] != h->gamma[0]) {
                    throw std::invalid_argument(
                        "sample_potential: anisotropic harmonic potential is not radially symmetric");
                }
            }
            const double g2 = h->gamma[0] * h->gamma[0];
            for (int j = 0; j < rg->cells; ++j) {
                const double r = rg->midpoint(j);
                out[j] = 0.5 * g2 * r * r;
            }
            return out;
        }
        if (std::holds_alternative<OpticalLatticePotential>(v)) {
            throw std::invalid_argument(
                "sample_potential: optical lattice potential is not radially symmetric");
        }
        for (int j = 0; j < rg->cells; ++j) {
            const double r = rg->midpoint(j);
            out[j] = evaluate_potential(v, std::span<const double>(&r, 1));
        }
        return out;
    }
    const auto& tg = std::get<TensorGrid>(g);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = node_coordinates(g, i);
        out[i] = evaluate_potential(
            v, std::span<const double>(x.data(), static_cast<std::size_t>(tg.dimension)));
    }
    return out;
}

Field::Field(GridDescriptor g, std::vector<double> vals)
    : grid(std::move(g)), values(std::move(vals)) {
    if (values.size() != grid_node_count(grid)) {
        throw std::invalid_argument("Field: value count does not match the grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("Field: values must be finite");
    }
}

}  // namespace egps
