#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "egps/functionals.hpp"
#include "egps/grid.hpp"
#include "egps/model.hpp"
#include "egps/reduction.hpp"

using namespace egps;

namespace {

constexpr double pi = std::numbers::pi;

// Test-only direct evaluation of the 1D tensor quadrature, kept independent
// of the library path.
double oracle_mu_1d(const TensorGrid& g, const std::vector<double>& phi,
                    const std::vector<double>& V, const ModelParams& m) {
    const double h = (g.hi[0] - g.lo[0]) / (g.nodes[0] + 1);
    const int n = g.nodes[0];
    long double kin = 0.0L, pot = 0.0L, q4 = 0.0L, q5 = 0.0L, mass = 0.0L;
    for (int i = 0; i <= n; ++i) {
        const long double left = (i > 0) ? phi[i - 1] : 0.0L;
        const long double right = (i < n) ? phi[i] : 0.0L;
        const long double d = (right - left) / h;
        kin += 0.5L * d * d * h;
    }
    for (int i = 0; i < n; ++i) {
        const long double p = phi[i];
        mass += p * p * h;
        pot += V[i] * p * p * h;
        q4 += p * p * p * p * h;
        q5 += p * p * p * p * std::abs(p) * h;
    }
    return static_cast<double>(
        (kin + pot + m.beta * q4 + m.lambda * q5) / (mass));
}

Field normalized_oscillator_gaussian(int n) {
    // exact normalized oscillator mode pi^{-1/4} exp(-x^2/2) sampled on
    // [-16, 16]
    TensorGrid g(1, {-16.0, 0, 0}, {16.0, 0, 0}, {n, 1, 1});
    std::vector<double> vals(g.node_count());
    for (int i = 0; i < n; ++i) {
        const double x = g.coordinate(0, i);
        vals[i] = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
    }
    return Field(g, std::move(vals));
}

}  // namespace

TEST_CASE("nondimensionalize on cancelling inputs") {
    PhysicalParams p;
    p.mass = 1.0;
    p.scattering_length = 1.0;
    p.particle_number = 1.0;
    p.length_scale = 4.0 * pi;
    p.lhy_constant = 1.0;
    p.norm_constant = 1.0;
    CHECK(nondimensionalize(p).beta == doctest::Approx(1.0).epsilon(1e-14));

    p.length_scale = 1.0;
    p.lhy_constant = 1.0 / (4.0 * pi);
    CHECK(nondimensionalize(p).lambda == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("nondimensionalize against extended-precision formula evaluation") {
    PhysicalParams p;
    p.mass = 3.8e-26;
    p.scattering_length = 5e-9;
    p.particle_number = 100.0;
    p.length_scale = 1e-6;
    p.lhy_constant = 64.0 / (15.0 * std::sqrt(pi));
    p.norm_constant = 1.0;
    const auto c = nondimensionalize(p);

    const long double beta_ref = 4.0L * pi * 100.0L * 5e-9L / 1e-6L;
    const long double lambda_ref = 4.0L * pi * (64.0L / (15.0L * sqrtl(pi))) *
                                   powl(100.0L, 1.5L) * powl(5e-9L / 1e-6L, 2.5L);
    CHECK(c.beta == doctest::Approx(static_cast<double>(beta_ref)).epsilon(1e-14));
    CHECK(c.lambda == doctest::Approx(static_cast<double>(lambda_ref)).epsilon(1e-14));
}

TEST_CASE("nondimensionalize rejects nonpositive inputs") {
    PhysicalParams p;
    p.mass = 1.0;
    p.scattering_length = 1.0;
    p.particle_number = 1.0;
    p.length_scale = 1.0;
    p.lhy_constant = 1.0;
    p.norm_constant = 0.0;
    CHECK_THROWS_AS(nondimensionalize(p), std::invalid_argument);
}

TEST_CASE("potential evaluation") {
    HarmonicPotential iso{{1.0, 1.0, 1.0}};
    const double origin[3] = {0.0, 0.0, 0.0};
    CHECK(evaluate_potential(iso, std::span<const double>(origin, 3)) == 0.0);

    HarmonicPotential aniso{{1.0, 0.0, 0.0}};
    const double pt[3] = {2.0, 5.0, 7.0};
    CHECK(evaluate_potential(aniso, std::span<const double>(pt, 3)) == doctest::Approx(2.0));

    OpticalLatticePotential lat{1e3, 5.0 * pi};
    const double pt2[2] = {0.2, 0.2};
    CHECK(evaluate_potential(lat, std::span<const double>(pt2, 2)) ==
          doctest::Approx(-2000.0).epsilon(1e-12));

    CHECK_THROWS_AS(evaluate_potential(TabulatedPotential{}, std::span<const double>(pt2, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(evaluate_potential(iso, std::span<const double>(pt, 0)),
                    std::invalid_argument);
}

TEST_CASE("energy vanishes for the zero field") {
    RadialGrid g(3, 1.0, 32);
    Field f(g, std::vector<double>(32, 0.0));
    ModelParams m(3, -10.0, 0.1, 1.0, ZeroPotential{});
    CHECK(energy(f, m) == 0.0);
}

TEST_CASE("oscillator Gaussian has E = mu = 1/2") {
    const Field f = normalized_oscillator_gaussian(2048);
    ModelParams m(1, 0.0, 0.0, 1.0, HarmonicPotential{{1.0, 0.0, 0.0}});
    CHECK(energy(f, m) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(chemical_potential(f, m) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("chemical potential rejects unnormalized fields") {
    Field f = normalized_oscillator_gaussian(256);
    for (double& v : f.values) v *= 1.5;
    ModelParams m(1, 0.0, 0.0, 1.0, ZeroPotential{});
    CHECK_THROWS_AS(chemical_potential(f, m), std::invalid_argument);
}

TEST_CASE("flat field bookkeeping: non-gradient part of mu is beta a^2 + lambda a^3") {
    // phi = a on the whole interior; the quartic and quintic quadratures use
    // a^2 |D| = c^2 so the identity is exact up to rounding.
    TensorGrid g(1, {-1.0, 0, 0}, {1.0, 0, 0}, {64, 1, 1});
    const double a = 1.7;
    Field f(g, std::vector<double>(64, a));
    ModelParams m(1, -3.0, 0.25, 1.0, ZeroPotential{});
    const EnergyTerms t = energy_terms(f, m);
    const double c2 = t.mass_sq;
    const double mu_nograd = (m.beta * t.quartic + m.lambda * t.quintic) / c2;
    const double expected = m.beta * a * a + m.lambda * a * a * a;
    CHECK(mu_nograd == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("chemical potential matches a direct-summation oracle") {
    TensorGrid g(1, {-2.0, 0, 0}, {3.0, 0, 0}, {64, 1, 1});
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> vals(64);
    for (double& v : vals) v = dist(rng);

    std::vector<double> V(64);
    for (int i = 0; i < 64; ++i) {
        const double x = g.coordinate(0, i);
        V[i] = 0.5 * x * x;
    }

    Field f(g, vals);
    const double nrm = mass_norm(f);
    ModelParams m(1, -2.5, 0.7, nrm, HarmonicPotential{{1.0, 0, 0}});
    const double mu = chemical_potential(f, m);
    const double mu_oracle = oracle_mu_1d(g, vals, V, m);
    CHECK(mu == doctest::Approx(mu_oracle).epsilon(1e-12));
}

TEST_CASE("mu-E identity holds discretely") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);

    auto check_identity = [&](Field f, const ModelParams& m) {
        const double nrm = mass_norm(f);
        for (double& v : f.values) v *= m.mass / nrm;
        const EnergyTerms t = energy_terms(f, m);
        const double mu = chemical_potential_from_terms(t, m);
        const double E = energy_from_terms(t, m);
        const double lhs = mu * m.mass * m.mass - E;
        const double rhs = 0.5 * m.beta * t.quartic + 0.6 * m.lambda * t.quintic;
        CHECK(std::abs(lhs - rhs) <=
              1e-10 * std::max({1.0, std::abs(lhs), std::abs(rhs)}));
    };

    RadialGrid rg(3, 1.0, 256);
    std::vector<double> rv(256);
    for (double& v : rv) v = dist(rng);
    check_identity(Field(rg, rv), ModelParams(3, -10.0, 0.1, 1.0, ZeroPotential{}));

    TensorGrid tg(2, {-1, -1, 0}, {1, 1, 0}, {24, 24, 1});
    std::vector<double> tv(tg.node_count());
    for (double& v : tv) v = dist(rng);
    check_identity(Field(tg, tv), ModelParams(2, 4.0, 2.0, 3.0, ZeroPotential{}));
}

TEST_CASE("energy terms scale exactly under s phi, c -> s c for s = 2, 1/2") {
    RadialGrid g(3, 1.0, 128);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> vals(128);
    for (double& v : vals) v = dist(rng);
    Field f(g, vals);
    ModelParams m(3, -5.0, 0.3, 1.0, RadialPowerPotential{2.0, 2.0});
    const EnergyTerms t = energy_terms(f, m);

    for (double s : {2.0, 0.5}) {
        std::vector<double> scaled(vals);
        for (double& v : scaled) v *= s;
        const EnergyTerms ts = energy_terms(Field(g, scaled), m);
        // powers of two scale without rounding
        CHECK(ts.kinetic == s * s * t.kinetic);
        CHECK(ts.potential == s * s * t.potential);
        CHECK(ts.quartic == s * s * s * s * t.quartic);
        CHECK(ts.quintic == s * s * s * s * s * t.quintic);
        CHECK(ts.mass_sq == s * s * t.mass_sq);
    }
}

TEST_CASE("normalization lands on the mass sphere") {
    RadialGrid g(2, 2.0, 200);
    std::vector<double> vals(200);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    for (double& v : vals) v = dist(rng);
    Field f(g, vals);
    const double c = 4.0;
    const double s = c / mass_norm(f);
    for (double& v : f.values) v *= s;
    CHECK(std::abs(mass_norm(f) - c) <= 1e-12 * c);
}

TEST_CASE("field invariants") {
    RadialGrid g(3, 1.0, 16);
    CHECK_THROWS_AS(Field(g, std::vector<double>(15, 0.0)), std::invalid_argument);
    std::vector<double> bad(16, 0.0);
    bad[3] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Field(g, bad), std::invalid_argument);
}

TEST_CASE("model parameter invariants") {
    CHECK_THROWS_AS(ModelParams(0, 0, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(3, 0, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ModelParams(3, 0, 0, 0), std::invalid_argument);
}

TEST_CASE("tabulated potentials must match the grid") {
    RadialGrid g(3, 1.0, 16);
    TabulatedPotential tab;
    tab.values.assign(8, 1.0);
    CHECK_THROWS_AS(sample_potential(GridDescriptor(g), Potential(tab)),
                    std::invalid_argument);
    tab.values.assign(16, 1.0);
    CHECK(sample_potential(GridDescriptor(g), Potential(tab)).size() == 16);
}

TEST_CASE("disk reduction matches Gaussian closed forms at sigma = 1") {
    ModelParams m(3, -4.0, 0.5, 1.0, HarmonicPotential{{0.1, 0.1, 40.0}});
    const auto red = reduce_dimension(m, 1.0, TransverseCase::Disk);
    CHECK(red.target_dimension == 2);
    CHECK(red.beta_reduced ==
          doctest::Approx(m.beta / std::sqrt(2.0 * pi)).epsilon(1e-10));
    // int |psi|^5 dz = (pi)^{-5/4} sqrt(2 pi / 5) for sigma = 1
    const double q5 = std::pow(pi, -1.25) * std::sqrt(2.0 * pi / 5.0);
    CHECK(red.lambda_reduced == doctest::Approx(m.lambda * q5).epsilon(1e-10));
    // C = gamma_z^2 <z^2> + ||psi'||^2 = gamma_z^2 / 2 + 1/2
    CHECK(red.phase_constant ==
          doctest::Approx(40.0 * 40.0 * 0.5 + 0.5).epsilon(1e-10));
}

TEST_CASE("cigar reduction matches Gaussian closed forms") {
    const double sigma = 0.7;
    ModelParams m(3, -4.0, 0.5, 1.0, HarmonicPotential{{0.0, 3.0, 5.0}});
    const auto red = reduce_dimension(m, sigma, TransverseCase::Cigar);
    CHECK(red.target_dimension == 1);
    const double s2 = sigma * sigma;
    CHECK(red.beta_reduced == doctest::Approx(m.beta / (2.0 * pi * s2)).epsilon(1e-10));
    CHECK(red.lambda_reduced ==
          doctest::Approx(m.lambda * 0.4 * std::pow(pi * s2, -1.5)).epsilon(1e-10));
    // C = (gamma_y^2 + gamma_z^2) sigma^2 / 2 + 1 / sigma^2
    CHECK(red.phase_constant ==
          doctest::Approx((9.0 + 25.0) * s2 * 0.5 + 1.0 / s2).epsilon(1e-10));
}

TEST_CASE("reduction coefficients vanish monotonically as sigma grows") {
    ModelParams m(3, -4.0, 0.5, 1.0, ZeroPotential{});
    double prev_beta = -std::numeric_limits<double>::infinity();
    double prev_lambda = std::numeric_limits<double>::infinity();
    for (double sigma : {1.0, 2.0, 4.0, 8.0, 16.0}) {
        const auto red = reduce_dimension(m, sigma, TransverseCase::Disk);
        CHECK(red.beta_reduced < 0.0);    // sign of beta
        CHECK(red.lambda_reduced > 0.0);  // sign of lambda
        CHECK(red.beta_reduced > prev_beta);
        CHECK(red.lambda_reduced < prev_lambda);
        prev_beta = red.beta_reduced;
        prev_lambda = red.lambda_reduced;
    }
}

TEST_CASE("reduction rejects bad inputs") {
    ModelParams m3(3, -1.0, 0.5, 1.0, ZeroPotential{});
    CHECK_THROWS_AS(reduce_dimension(m3, 0.0, TransverseCase::Disk), std::invalid_argument);
    ModelParams m2(2, -1.0, 0.5, 1.0, ZeroPotential{});
    CHECK_THROWS_AS(reduce_dimension(m2, 1.0, TransverseCase::Disk), std::invalid_argument);
    ModelParams mlat(3, -1.0, 0.5, 1.0, OpticalLatticePotential{10.0, pi});
    CHECK_THROWS_AS(reduce_dimension(mlat, 1.0, TransverseCase::Cigar), std::invalid_argument);
}
