#include <doctest.h>

#include <cmath>
#include <vector>

#include "dskg/nonlinearity.hpp"
#include "dskg/propagator.hpp"
#include "dskg/spectral.hpp"

using namespace dskg;

namespace {

Field gaussian(const Grid& g, double amp, double width) {
    Field f = Field::zeros(g);
    for (int i = 0; i < g.N; ++i) {
        const double x = i * g.dx() - g.L / 2.0;
        f.samples[std::size_t(i)] = amp * std::exp(-x * x / (2 * width * width));
    }
    return f;
}

Field cosine_mode(const Grid& g, int k, double amp) {
    Field f = Field::zeros(g);
    for (int i = 0; i < g.N; ++i)
        f.samples[std::size_t(i)] = amp * std::cos(2.0 * M_PI * k * i / g.N);
    return f;
}

double l2_distance(const Field& a, const Field& b) {
    Field d = a;
    for (std::size_t i = 0; i < d.samples.size(); ++i) d.samples[i] -= b.samples[i];
    return l2_norm(d);
}

std::vector<double> uniform_grid(double T, std::size_t m) {
    std::vector<double> t(m + 1);
    for (std::size_t i = 0; i <= m; ++i) t[i] = T * double(i) / double(m);
    return t;
}

}  // namespace

TEST_SUITE("propagator") {

TEST_CASE("free flow is the identity at t = 0") {
    Grid g{1, 16, 5.0};
    PhysicalParams p;
    const Field u0 = gaussian(g, 1.0, 0.8), u1 = cosine_mode(g, 2, 0.3);
    const StateSnapshot s = apply_free(0.0, u0, u1, p, 2.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(s.u.samples[i] == u0.samples[i]);
        CHECK(s.ut.samples[i] == u1.samples[i]);
    }
}

TEST_CASE("single-mode closed form at H = 0") {
    Grid g{1, 32, 5.0};
    PhysicalParams p;
    p.c = 1.5;
    p.H = 0.0;
    const double Q = 2.0;
    const int k = 3;
    const Field u0 = cosine_mode(g, k, 1.0);
    const Field zero = Field::zeros(g);
    const double xi2 = std::pow(2.0 * M_PI * k / g.L, 2);
    const double om = p.c * std::sqrt(xi2 + Q);
    const double t = 1.0;
    const StateSnapshot s = apply_free(t, u0, zero, p, Q);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(s.u.samples[i] ==
              doctest::Approx(std::cos(om * t) * u0.samples[i]).epsilon(1e-10));
    const StateSnapshot sv = apply_free(t, zero, u0, p, Q);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(sv.u.samples[i] ==
              doctest::Approx(std::sin(om * t) / om * u0.samples[i]).epsilon(1e-10));
}

TEST_CASE("free flow agrees with linear direct stepping at H = 1") {
    Grid g{1, 64, 20.0};
    PhysicalParams p;
    p.H = 1.0;
    p.lambda = 0.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 1.0, 1.0);
    const Field u1 = Field::zeros(g);
    const StateSnapshot mild = apply_free(1.0, u0, u1, p, d.Q);
    const Trajectory direct =
        direct_solve(u0, u1, 1.0, 1.0 / 2048, Equation::shifted_cubic, p, d, 2048);
    CHECK(l2_distance(mild.u, direct.snapshots.back().u) <= 1e-8);
}

TEST_CASE("Duhamel closed form for a constant single-mode forcing") {
    Grid g{1, 32, 5.0};
    PhysicalParams p;
    p.c = 1.2;
    p.H = 0.0;
    const double Q = 1.0;
    const int k = 2;
    const std::size_t steps = 200;
    const double T = 1.0;
    const ModeTable table(g, uniform_grid(T, steps), p, Q);
    const Field hmode = cosine_mode(g, k, 1.0);
    std::vector<SpectralField> forcing(steps + 1, transform(hmode));
    const double xi2 = std::pow(2.0 * M_PI * k / g.L, 2);
    const double om = p.c * std::sqrt(xi2 + Q);
    const Field got = duhamel_apply(table, g, steps, forcing, p.c);
    const double factor = -p.c * p.c * (1.0 - std::cos(om * T)) / (om * om);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(got.samples[i] ==
              doctest::Approx(factor * hmode.samples[i]).epsilon(1e-8));
}

TEST_CASE("Duhamel of zero forcing is zero") {
    Grid g{1, 16, 4.0};
    PhysicalParams p;
    const ModeTable table(g, uniform_grid(1.0, 8), p, 1.0);
    std::vector<SpectralField> forcing(9, SpectralField::zeros(g));
    const Field got = duhamel_apply(table, g, 8, forcing, p.c);
    for (double v : got.samples) CHECK(v == 0.0);
}

TEST_CASE("Picard with lambda = 0 converges immediately to the free flow") {
    Grid g{1, 32, 10.0};
    PhysicalParams p;
    p.H = 0.2;
    p.lambda = 0.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 0.5, 1.0);
    const Field u1 = Field::zeros(g);
    const PicardResult pr = picard_solve(u0, u1, 1.0, 16, p, d);
    CHECK(pr.converged);
    CHECK(pr.iterations == 1);
    const StateSnapshot free = apply_free(1.0, u0, u1, p, d.Q);
    CHECK(l2_distance(pr.trajectory.snapshots.back().u, free.u) <= 1e-12);
}

TEST_CASE("Picard agrees with direct stepping on small data") {
    Grid g{1, 64, 20.0};
    PhysicalParams p;
    p.H = 0.3;
    p.lambda = 1.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 0.01, 1.0);
    const Field u1 = Field::zeros(g);
    const PicardResult pr = picard_solve(u0, u1, 1.0, 64, p, d);
    CHECK(pr.converged);
    for (double r : pr.contraction_ratios) CHECK(r <= 0.5);
    const Trajectory direct =
        direct_solve(u0, u1, 1.0, 1.0 / 1024, Equation::shifted_cubic, p, d, 1024);
    CHECK(l2_distance(pr.trajectory.snapshots.back().u,
                      direct.snapshots.back().u) <= 1e-6);
}

TEST_CASE("Picard reports non-contraction on large data") {
    Grid g{1, 32, 10.0};
    PhysicalParams p;
    p.H = 0.1;
    p.lambda = 1.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 50.0, 1.0);
    const Field u1 = Field::zeros(g);
    const PicardResult pr = picard_solve(u0, u1, 1.0, 32, p, d, 1e-10, 8);
    CHECK(!pr.converged);
    bool expanding = false;
    for (double r : pr.contraction_ratios) expanding = expanding || r > 1.0;
    CHECK(expanding);
}

TEST_CASE("vacuum is a fixed point of the unshifted flow") {
    Grid g{1, 16, 5.0};
    PhysicalParams p;
    p.H = 0.4;
    p.lambda = 2.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    Field phi0 = Field::zeros(g);
    for (double& v : phi0.samples) v = *d.r0;
    const Field phi1 = Field::zeros(g);
    const Trajectory traj =
        direct_solve(phi0, phi1, 1.0, 1e-2, Equation::unshifted, p, d, 10);
    for (const StateSnapshot& s : traj.snapshots) {
        for (double v : s.u.samples)
            CHECK(v == doctest::Approx(*d.r0).epsilon(1e-12));
        for (double v : s.ut.samples) CHECK(std::abs(v) < 1e-12);
    }
}

TEST_CASE("stability bound enforcement") {
    Grid g{1, 64, 10.0};
    PhysicalParams p;
    p.H = 0.0;
    p.lambda = 0.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    const double bound = stability_dt_bound(g, 1.0, p, d.Q);
    CHECK(bound > 0.0);
    const Field u0 = gaussian(g, 0.1, 1.0);
    const Field u1 = Field::zeros(g);
    CHECK_THROWS(direct_solve(u0, u1, 1.0, bound * 4.0, Equation::shifted_cubic,
                              p, d));
}

TEST_CASE("divergence is reported, not thrown") {
    Grid g{1, 16, 10.0};
    PhysicalParams p;
    p.H = 0.1;
    p.mass = 1.0;
    p.mass_squared_sign = -1;
    p.lambda = 1.0;
    p.p = 2.0;
    const DerivedConstants d = derive_constants(p);
    Field u0 = Field::zeros(g);
    for (double& v : u0.samples) v = 10.0;
    Field u1 = Field::zeros(g);
    for (double& v : u1.samples) v = 10.0;
    const Trajectory traj = direct_solve(u0, u1, 40.0, 1e-2,
                                         Equation::gauge_variant_blowup, p, d, 10,
                                         /*enforce_stability_bound=*/false);
    CHECK(traj.diverged_at.has_value());
    CHECK(*traj.diverged_at > 0.0);
}

TEST_CASE("Richardson order of the time stepper") {
    Grid g{1, 32, 20.0};
    PhysicalParams p;
    p.H = 0.2;
    p.lambda = 1.0;
    p.mass = 1.0;
    const DerivedConstants d = derive_constants(p);
    const Field u0 = gaussian(g, 0.2, 1.5);
    const Field u1 = Field::zeros(g);
    auto solve_at = [&](double dt) {
        return direct_solve(u0, u1, 0.5, dt, Equation::shifted_cubic, p, d,
                            std::size_t(std::llround(0.5 / dt)))
            .snapshots.back()
            .u;
    };
    const Field a = solve_at(1.0 / 64), b = solve_at(1.0 / 128),
                c = solve_at(1.0 / 256);
    const double e1 = l2_distance(a, b), e2 = l2_distance(b, c);
    CHECK(e1 / e2 == doctest::Approx(16.0).epsilon(0.1));
}

}  // TEST_SUITE
