#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "skewifs/fiber.hpp"

using namespace skewifs;

TEST_CASE("f0 boundary identities") {
    for (const SystemParams& p :
         {SystemParams::default_validated(), SystemParams::contracting_lift()}) {
        CHECK(std::fabs(p.f0.eval(0.0)) < 1e-12);
        CHECK(std::fabs(p.f0.eval(1.0) - 1.0) < 1e-9);
        CHECK(p.f0.deriv(0.0) == doctest::Approx(p.beta0).epsilon(1e-12));
        CHECK(p.f0.deriv(1.0) == doctest::Approx(p.lambda0).epsilon(1e-9));
    }
}

TEST_CASE("f0 derivative matches a finite difference") {
    SystemParams p = SystemParams::default_validated();
    const double h = 1e-6;
    for (int i = 1; i < 100; ++i) {
        double x = 0.01 + 0.98 * i / 100.0;
        double fd = (p.f0.eval(x + h) - p.f0.eval(x - h)) / (2 * h);
        CHECK(std::fabs(fd - p.f0.deriv(x)) < 1e-7);
    }
}

TEST_CASE("f0 monotone, derivative strictly decreasing within bounds") {
    SystemParams p = SystemParams::default_validated();
    double prev_v = p.f0.eval(0.0), prev_d = p.f0.deriv(0.0);
    for (int i = 1; i <= 2000; ++i) {
        double x = i / 2000.0;
        double v = p.f0.eval(x), d = p.f0.deriv(x);
        CHECK(v > prev_v);
        CHECK(d < prev_d);
        CHECK(d >= p.lambda0 - 1e-12);
        CHECK(d <= p.beta0 + 1e-12);
        prev_v = v;
        prev_d = d;
    }
}

TEST_CASE("f1 is the affine orientation-reversing leg") {
    SystemParams p = SystemParams::default_validated();
    CHECK(p.f1.eval(0.0) == p.gamma);
    CHECK(p.f1.eval(1.0) == 0.0);
    CHECK(p.f1.eval(p.p1()) == doctest::Approx(p.p1()).epsilon(1e-15));
    CHECK(p.f1.deriv(0.5) == -p.gamma);
    CHECK(p.f1.image_lo() == 0.0);
    CHECK(p.f1.image_hi() == p.gamma);
}

TEST_CASE("f2 fixed-point structure") {
    SystemParams p = SystemParams::default_validated();
    CHECK(std::fabs(p.f2.eval(0.0)) < 1e-15);
    CHECK(p.f2.deriv(0.0) == doctest::Approx(p.beta2).epsilon(1e-12));
    CHECK(p.f2.eval(p.p2) == doctest::Approx(p.p2).epsilon(1e-12));
    CHECK(std::fabs(p.f2.deriv(p.p2)) < 1.0);
    CHECK(p.f2.eval(1.0) < 1.0);
    const double h = 1e-6;
    for (int i = 1; i < 50; ++i) {
        double x = 0.01 + 0.98 * i / 50.0;
        double fd = (p.f2.eval(x + h) - p.f2.eval(x - h)) / (2 * h);
        CHECK(std::fabs(fd - p.f2.deriv(x)) < 1e-7);
    }
}

TEST_CASE("invert is a right inverse of eval on 1000 random points") {
    SystemParams p = SystemParams::default_validated();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double x = uni(rng);
        for (const FiberMap* f : {&p.f0, &p.f1, &p.f2}) {
            double y = f->eval(x);
            CHECK(std::fabs(f->invert(y) - x) < 1e-12);
        }
    }
}

TEST_CASE("domain and range guards") {
    SystemParams p = SystemParams::default_validated();
    CHECK_THROWS_AS(p.f0.eval(1.5), std::domain_error);
    CHECK_THROWS_AS(p.f0.eval(-0.1), std::domain_error);
    CHECK_NOTHROW(p.f0.eval(1.0 + 1e-13));  // clamped, inside the slack
    CHECK_THROWS_AS(p.f1.invert(p.gamma + 0.01), std::range_error);
    CHECK_THROWS_AS(p.f2.invert(p.f2.eval(1.0) + 0.01), std::range_error);
}

TEST_CASE("SystemParams::make rejects ill-formed bundles") {
    CHECK_THROWS(SystemParams::make(1.1, 0.9, 0.8, 1.1, 0.5, 0.002));  // gamma < lambda0
    CHECK_THROWS(SystemParams::make(1.1, 0.75, 0.95, 1.1, 0.5, 1.5)); // delta out of (0,1)
}

TEST_CASE("presets have the advertised shapes") {
    SystemParams d = SystemParams::default_validated();
    CHECK(d.beta0 == d.beta2);
    CHECK(d.beta02_minus() == d.beta0);
    CHECK(d.beta02_plus() == d.beta0);
    SystemParams c = SystemParams::contracting_lift();
    CHECK(c.gamma * c.beta02_plus() * c.beta02_plus() < 1.0);
    CHECK(d.gamma * d.beta02_plus() * d.beta02_plus() > 1.0);
}
