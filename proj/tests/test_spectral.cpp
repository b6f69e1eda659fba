#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qns/field_gen.hpp"
#include "qns/oracle.hpp"
#include "qns/spectral.hpp"
#include "test_util.hpp"

using namespace qns;
using namespace qns::test;

namespace {

ScalarField single_mode(const Grid& g, std::array<int, 3> k, double amp = 1.0,
                        double phase = 0.0) {
    FieldSpec spec;
    spec.kind = FieldKind::single_mode;
    spec.mode = k;
    spec.amplitude = amp;
    spec.phase = phase;
    return generate_scalar(g, spec);
}

}  // namespace

TEST_CASE("heat semigroup basics") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 7);

    SUBCASE("t = 0 is the identity") { CHECK(max_abs_diff(heat_semigroup(f, 0.0), f) == 0.0); }

    SUBCASE("constants are fixed points") {
        ScalarField c = constant_field(g, 3.25);
        CHECK(max_abs_diff(heat_semigroup(c, 0.37), c) < 1e-14);
    }

    SUBCASE("mean is preserved exactly") {
        CHECK(heat_semigroup(f, 0.05).mean() == doctest::Approx(f.mean()).epsilon(1e-14));
    }

    SUBCASE("negative time rejected") { CHECK_THROWS_AS(heat_semigroup(f, -1.0), std::invalid_argument); }

    SUBCASE("semigroup law") {
        double scale = f.max_abs();
        for (auto [s, t] : {std::pair{0.01, 0.02}, {0.3, 0.7}, {0.0, 1.0}}) {
            ScalarField a = heat_semigroup(heat_semigroup(f, s), t);
            ScalarField b = heat_semigroup(f, s + t);
            CHECK(max_abs_diff(a, b) <= 1e-12 * scale);
        }
    }

    SUBCASE("discrete max principle") {
        for (double t : {1e-4, 1e-2, 0.5, 1.0})
            CHECK(heat_semigroup(f, t).max_abs() <= f.max_abs() * (1.0 + 1e-10));
    }
}

TEST_CASE("heat semigroup matches direct periodic convolution oracle") {
    Grid g = Grid::square(32);
    ScalarField f = bump_field(g);
    double t = 0.01 * g.box() * g.box();
    ScalarField fast = heat_semigroup(f, t);
    ScalarField slow = oracle::direct_heat_convolution(f, t, 3);
    CHECK(rel_l2_error(fast, slow) <= 1e-8);
}

TEST_CASE("poisson semigroup") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 11);

    SUBCASE("t = 0 identity") { CHECK(max_abs_diff(poisson_semigroup(f, 0.0), f) == 0.0); }

    SUBCASE("semigroup law") {
        ScalarField a = poisson_semigroup(poisson_semigroup(f, 0.03), 0.05);
        ScalarField b = poisson_semigroup(f, 0.08);
        CHECK(max_abs_diff(a, b) <= 1e-12 * f.max_abs());
    }

    SUBCASE("single mode is an eigenfunction") {
        std::array<int, 3> k{2, -1, 0};
        ScalarField m = single_mode(g, k, 1.0, 0.4);
        double t = 0.07;
        double xi = 2.0 * std::numbers::pi / g.box() * std::sqrt(4.0 + 1.0);
        CHECK(max_abs_diff(poisson_semigroup(m, t), m * std::exp(-t * xi)) < 1e-13);
    }

    SUBCASE("negative time rejected") {
        CHECK_THROWS_AS(poisson_semigroup(f, -0.1), std::invalid_argument);
    }
}

TEST_CASE("fractional laplacian") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 13);

    SUBCASE("beta = 0 acts as identity") {
        CHECK(max_abs_diff(fractional_laplacian(f, 0.0), f) < 1e-13 * f.max_abs());
    }

    SUBCASE("inverse pair on mean-zero fields") {
        ScalarField f0 = f - constant_field(g, f.mean());
        ScalarField round = fractional_laplacian(fractional_laplacian(f0, -0.5), 0.5);
        CHECK(max_abs_diff(round, f0) <= 1e-12 * f0.max_abs());
    }

    SUBCASE("single mode at beta = 2 equals minus laplacian") {
        ScalarField m = single_mode(g, {3, 1, 0});
        double xi2 = std::pow(2.0 * std::numbers::pi / g.box(), 2) * 10.0;
        CHECK(max_abs_diff(fractional_laplacian(m, 2.0), m * xi2) < 1e-13 * xi2);
        CHECK(max_abs_diff(fractional_laplacian(m, 2.0), laplacian(m) * -1.0) < 1e-12);
    }

    SUBCASE("negative power demands zero mean") {
        ScalarField shifted = f + constant_field(g, 1.0);
        CHECK_THROWS_AS(fractional_laplacian(shifted, -1.0), std::invalid_argument);
    }
}

TEST_CASE("riesz transforms") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 17);

    SUBCASE("sum of squares is minus identity on mean-zero fields") {
        ScalarField sum(g);
        for (int j = 0; j < 2; ++j) sum = sum + riesz_transform(riesz_transform(f, j), j);
        ScalarField f0 = f - constant_field(g, f.mean());
        CHECK(max_abs_diff(sum, f0 * -1.0) <= 1e-12 * f.max_abs());
    }

    SUBCASE("constants map to zero") {
        CHECK(riesz_transform(constant_field(g, 2.0), 0).max_abs() < 1e-15);
    }

    SUBCASE("single mode matches the symbol") {
        // R_0 cos(k.x + p) = -(k_0/|k|) sin(k.x + p) = (k_0/|k|) cos(k.x + p + pi/2)
        std::array<int, 3> k{2, 1, 0};
        ScalarField m = single_mode(g, k, 1.0, 0.25);
        ScalarField shifted = single_mode(g, k, 2.0 / std::sqrt(5.0), 0.25 + std::numbers::pi / 2);
        CHECK(max_abs_diff(riesz_transform(m, 0), shifted) < 1e-13);
    }
}

TEST_CASE("derivatives and exact identities") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 19);

    SUBCASE("derivative of a constant vanishes") {
        CHECK(derivative(constant_field(g, 5.0), 1).max_abs() < 1e-15);
    }

    SUBCASE("divergence of gradient is the laplacian") {
        CHECK(max_abs_diff(divergence(gradient(f)), laplacian(f)) <=
              1e-12 * laplacian(f).max_abs());
    }

    SUBCASE("closed form: d/dx sin(2 pi x / L)") {
        double c = 2.0 * std::numbers::pi / g.box();
        ScalarField s = single_mode(g, {1, 0, 0}, 1.0, -std::numbers::pi / 2);  // sin
        ScalarField expect = single_mode(g, {1, 0, 0}, c, 0.0);                 // c cos
        CHECK(max_abs_diff(derivative(s, 0), expect) < 1e-12);
    }
}

TEST_CASE("leray projection") {
    Grid g = Grid::square(32);

    SUBCASE("annihilates gradients") {
        ScalarField phi = random_field(g, 23);
        phi = phi - constant_field(g, phi.mean());
        VectorField grad = gradient(phi);
        CHECK(leray_project(grad).max_abs() <= 1e-12 * grad.max_abs());
    }

    SUBCASE("idempotent") {
        std::vector<ScalarField> comps{random_field(g, 29), random_field(g, 31)};
        VectorField u(comps);
        VectorField pu = leray_project(u);
        CHECK(max_abs_diff(leray_project(pu), pu) <= 1e-12 * pu.max_abs());
    }

    SUBCASE("projected fields are divergence-free") {
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
            std::vector<ScalarField> comps{random_field(g, 100 + seed),
                                           random_field(g, 200 + seed)};
            VectorField pu = leray_project(VectorField(comps));
            CHECK(pu.divergence_free());
            CHECK(pu.divergence_defect() <= 1e-10);
        }
    }
}

TEST_CASE("tent convolutions") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 37);

    SUBCASE("zero-mean kernels kill constants") {
        ScalarField c = constant_field(g, 4.0);
        for (TentChoice choice : {TentChoice::poisson_dt, TentChoice::poisson_grad,
                                  TentChoice::heat_dt, TentChoice::heat_grad})
            for (const auto& comp : tent_convolution(c, choice, 0.1))
                CHECK(comp.max_abs() < 1e-14);
    }

    SUBCASE("choice 2a on a single mode matches the closed-form symbol") {
        std::array<int, 3> k{1, 2, 0};
        ScalarField m = single_mode(g, k, 1.0, 0.15);
        double t = 0.05;
        double xi2 = std::pow(2.0 * std::numbers::pi / g.box(), 2) * 5.0;
        double sym = -2.0 * t * t * xi2 * std::exp(-t * t * xi2);
        auto out = tent_convolution(m, TentChoice::heat_dt, t);
        REQUIRE(out.size() == 1);
        CHECK(max_abs_diff(out[0], m * sym) < 1e-13);
    }

    SUBCASE("choice 1b equals t d_j of the poisson flow") {
        double t = 0.08;
        auto out = tent_convolution(f, TentChoice::poisson_grad, t);
        REQUIRE(out.size() == 2);
        for (int j = 0; j < 2; ++j) {
            ScalarField direct = derivative(poisson_semigroup(f, t), j) * t;
            CHECK(max_abs_diff(out[j], direct) <= 1e-10 * f.max_abs());
        }
    }

    SUBCASE("nonpositive dilation rejected") {
        CHECK_THROWS_AS(tent_convolution(f, TentChoice::heat_dt, 0.0), std::invalid_argument);
    }
}

TEST_CASE("multiplier operators commute") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 41);
    double scale = f.max_abs();

    ScalarField a = riesz_transform(heat_semigroup(f, 0.02), 0);
    ScalarField b = heat_semigroup(riesz_transform(f, 0), 0.02);
    CHECK(max_abs_diff(a, b) <= 1e-12 * scale);

    ScalarField c = poisson_semigroup(fractional_laplacian(f, 1.0), 0.1);
    ScalarField d = fractional_laplacian(poisson_semigroup(f, 0.1), 1.0);
    CHECK(max_abs_diff(c, d) <= 1e-12 * scale);

    ScalarField e = derivative(heat_semigroup(f, 0.4), 1);
    ScalarField h = heat_semigroup(derivative(f, 1), 0.4);
    CHECK(max_abs_diff(e, h) <= 1e-12 * derivative(f, 1).max_abs());
}

TEST_CASE("lazy representations stay consistent") {
    Grid g = Grid::square(32);
    ScalarField f = random_field(g, 43);
    f.values();
    f.fourier();
    CHECK(f.representation_error() <= 1e-12);
    ScalarField h = heat_semigroup(f, 0.01);
    h.values();
    CHECK(h.representation_error() <= 1e-12);
}

TEST_CASE("3d operators smoke test") {
    Grid g = Grid::cube(24);
    ScalarField f = random_field(g, 47);

    ScalarField a = heat_semigroup(heat_semigroup(f, 0.01), 0.02);
    CHECK(max_abs_diff(a, heat_semigroup(f, 0.03)) <= 1e-12 * f.max_abs());

    ScalarField sum(g);
    for (int j = 0; j < 3; ++j) sum = sum + riesz_transform(riesz_transform(f, j), j);
    ScalarField f0 = f - constant_field(g, f.mean());
    CHECK(max_abs_diff(sum, f0 * -1.0) <= 1e-12 * f.max_abs());

    VectorField u = random_div_free_field(g, 5);
    CHECK(u.divergence_defect() <= 1e-10);
    CHECK(max_abs_diff(leray_project(u), u) <= 1e-12 * u.max_abs());
}
