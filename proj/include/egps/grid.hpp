#pragma once

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include "egps/model.hpp"

namespace egps {

// Midpoint grid on [0, R] for the symmetric reduction of the d-dimensional
// problem. Unknowns live at r_{j+1/2} = (j+1/2) dr, j = 0..M-1, with a
// Neumann ghost at r = 0 and a Dirichlet ghost at r = R.
struct RadialGrid {
    int dimension = 3;
    double outer_radius = 1.0;  // R
    int cells = 0;              // M

    RadialGrid() = default;
    RadialGrid(int d, double R, int M);

    double spacing() const { return outer_radius / cells; }
    double node(int j) const { return j * spacing(); }
    double midpoint(int j) const { return (j + 0.5) * spacing(); }
    std::size_t node_count() const { return static_cast<std::size_t>(cells); }
};

// Uniform tensor grid of interior nodes on a box; the homogeneous Dirichlet
// boundary is excluded. Linear index runs x fastest.
struct TensorGrid {
    int dimension = 2;
    std::array<double, 3> lo{-1.0, -1.0, -1.0};
    std::array<double, 3> hi{1.0, 1.0, 1.0};
    std::array<int, 3> nodes{0, 0, 0};  // interior nodes per axis

    TensorGrid() = default;
    TensorGrid(int d, std::array<double, 3> lo_, std::array<double, 3> hi_,
               std::array<int, 3> nodes_);

    double spacing(int axis) const {
        return (hi[axis] - lo[axis]) / (nodes[axis] + 1);
    }
    double coordinate(int axis, int i) const {
        return lo[axis] + (i + 1) * spacing(axis);
    }
    std::size_t node_count() const;
    // Decompose a linear index into per-axis indices.
    std::array<int, 3> unpack(std::size_t idx) const;
};

using GridDescriptor = std::variant<RadialGrid, TensorGrid>;

int grid_dimension(const GridDescriptor& g);
std::size_t grid_node_count(const GridDescriptor& g);

// Quadrature weight of each node under the grid's native rule: midpoint
// weights omega(d) dr r^{d-1} on radial grids, the uniform cell volume on
// tensor grids.
std::vector<double> quadrature_weights(const GridDescriptor& g);

// Coordinates of node idx (radial grids report the midpoint radius).
std::array<double, 3> node_coordinates(const GridDescriptor& g, std::size_t idx);

// Potential values at every grid node. Tabulated potentials must match the
// node count exactly; potentials that are not symmetric about the origin are
// rejected on radial grids.
std::vector<double> sample_potential(const GridDescriptor& g, const Potential& v);

// Discrete wavefunction: one real value per grid node.
struct Field {
    GridDescriptor grid;
    std::vector<double> values;

    Field() = default;
    Field(GridDescriptor g, std::vector<double> vals);
};

}  // namespace egps
