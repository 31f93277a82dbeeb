#include <catch_amalgamated.hpp>

#include <random>

#include "rmt/numerics.hpp"

using namespace rmt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
}  // namespace

TEST_CASE("cgamma values and errors", "[numerics]") {
    CHECK(std::abs(cgamma(1.0) - 1.0) < 1e-15);
    CHECK(std::abs(cgamma(0.5) - std::sqrt(pi)) < 1e-14);
    // Duplication formula oracle: Gamma(1/2)^2 = pi.
    CHECK(std::abs(cgamma(0.5) * cgamma(0.5) - pi) < 1e-13);
    // Values frozen from mpmath at 30 digits.
    CHECK(rel(cgamma({0.3, 0.4}), {0.911561527804585833, -1.36719335758541862}) < 1e-13);
    CHECK(rel(cgamma({-3.7, 2.2}), {-0.000611908720383720447, 0.000346636306490024128}) < 1e-12);
    CHECK(rel(cgamma({12.5, -7.0}), {9079151.27128930888, 17479525.0324850301}) < 1e-12);
    CHECK_THROWS_AS(cgamma(0.0), PoleError);
    CHECK_THROWS_AS(cgamma(-3.0), PoleError);
    CHECK_THROWS_AS(cgamma(cplx(200.0, 1.0)), OverflowError);
    CHECK(crgamma(-2.0) == 0.0);
}

TEST_CASE("gamma reflection residual on a grid", "[numerics]") {
    int n = 0;
    for (int i = 0; i < 10; ++i)
        for (int k = 0; k < 10; ++k) {
            const cplx z(-5.0 + 10.0 * (i + 0.37) / 10.0, -5.0 + 10.0 * (k + 0.5) / 10.0);
            const cplx r = cgamma(z) * cgamma(1.0 - z) * std::sin(pi * z) / pi;
            CHECK(std::abs(r - 1.0) < 1e-12);
            ++n;
        }
    CHECK(n == 100);
}

TEST_CASE("hyp2f1 closed forms", "[numerics]") {
    CHECK(hyp2f1(0.3, 0.7, 1.2, 0.0) == cplx(1.0));
    CHECK(std::abs(hyp2f1(1.0, 1.0, 2.0, -1.0) - std::log(2.0)) < 1e-13);
    // Gauss summation oracle.
    const cplx g = cgamma(1.7) * cgamma(1.2) / (cgamma(1.5) * cgamma(1.4));
    CHECK(rel(hyp2f1(0.2, 0.3, 1.7, 1.0), g) < 1e-13);
    // arctan closed form: 2F1(1/2,1;3/2;-x^2) = atan(x)/x
    const double x = std::sqrt(40.0);
    CHECK(rel(hyp2f1(0.5, 1.0, 1.5, -40.0), std::atan(x) / x) < 1e-12);
    // Frozen from mpmath.
    CHECK(rel(hyp2f1({0.3, 0.2}, 1.1, 2.5, -3.0), {0.785760667858216461, -0.116819175923883747}) < 1e-11);
    CHECK(rel(hyp2f1({0.75, 0.4}, {0.25, -0.4}, 1.5, -std::pow(std::sinh(2.0), 2)),
              {0.376956630259473401, 0.247424690922354703}) < 1e-11);
    CHECK(rel(hyp2f1({0.2, 1.0}, 0.3, 1.7, 0.9), {0.951746591260699879, 0.220847692947304884}) < 1e-11);
    // Terminating series.
    CHECK(rel(hyp2f1(-2.0, 1.5, 0.5, -3.0), 1.0 + 2.0 * (-2.0 * 1.5 / 0.5) * -3.0 / 2.0 +
                                                (-2.0 * -1.0 * 1.5 * 2.5) / (0.5 * 1.5 * 2.0) * 9.0) < 1e-14);
    CHECK_THROWS_AS(hyp2f1(0.5, 0.5, -1.0, 0.3), PoleError);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly", "[numerics]") {
    const GaussLegendre g(16);
    double s = 0.0;
    for (std::size_t k = 0; k < g.x.size(); ++k) s += g.w[k] * std::pow(g.x[k], 30);
    CHECK_THAT(s, WithinRel(2.0 / 31.0, 1e-14));
    CHECK_THAT(integrate([](double t) { return std::exp(t); }, 0.0, 1.0), WithinRel(std::exp(1.0) - 1.0, 1e-15));
}

TEST_CASE("line_integral examples", "[numerics]") {
    QuadratureConfig cfg;
    cfg.L = 8.0;
    // e^{lambda^2} = e^{-y^2} on the imaginary axis, dlambda = i dy.
    const cplx g = line_integral([](const CVec& l) { return std::exp(l[0] * l[0]); }, {0.0}, cfg);
    CHECK(std::abs(g - I * std::sqrt(pi)) < 1e-12);
    CHECK(line_integral([](const CVec&) { return cplx(0.0); }, {0.0}, cfg) == cplx(0.0));

    // Classical contour at x = 1, closed form of the alternating geometric series.
    const QuadratureConfig c2;
    auto f = [](const CVec& l) { return -pi / std::sin(pi * l[0]) * std::exp(-l[0]) / (2.0 * pi * I); };
    const cplx v = line_integral(f, {-0.5}, c2);
    CHECK(std::abs(v - 1.0 / (1.0 + std::exp(-1.0))) < 1e-12);

    // Cauchy independence.
    const cplx v2 = line_integral(f, {-0.2}, c2);
    const cplx v8 = line_integral(f, {-0.8}, c2);
    CHECK(std::abs(v - v2) < 1e-10);
    CHECK(std::abs(v2 - v8) < 1e-10);

    // Two-dimensional product.
    const cplx p = line_integral([](const CVec& l) { return std::exp(l[0] * l[0] + 2.0 * l[1] * l[1]); }, {0.0, 0.0},
                                 cfg);
    CHECK(std::abs(p - (I * std::sqrt(pi)) * (I * std::sqrt(pi / 2.0))) < 1e-12);
}

TEST_CASE("line_integral decay certificate", "[numerics]") {
    QuadratureConfig cfg;
    cfg.L = 14.0;
    DecayCertificate cert{pi, 0.0, 1.0};
    auto f = [](const CVec& l) { return 0.5 / std::sin(pi * (l[0] + 0.5)); };
    CHECK_NOTHROW(line_integral(f, {0.0}, cfg, &cert));
    // Integrand growing faster than the majorant.
    auto g = [](const CVec& l) { return std::exp(-0.2 * l[0] * l[0]); };
    CHECK_THROWS_AS(line_integral(g, {0.0}, cfg, &cert), CertificateError);
    // Tail bound above target.
    cfg.L = 2.0;
    CHECK_THROWS_AS(line_integral(f, {0.0}, cfg, &cert), CertificateError);
}

TEST_CASE("residue_at examples", "[numerics]") {
    CHECK(std::abs(residue_at([](cplx z) { return 1.0 / z; }, 0.0, 0.5) - 1.0) < 1e-14);
    CHECK(std::abs(residue_at([](cplx z) { return 1.0 / std::sin(pi * z); }, 1.0, 0.4) + 1.0 / pi) < 1e-13);
    const cplx r = residue_at([](cplx z) { return 0.5 * I * z * z / std::sin(pi * (z - 1.0)); }, 1.0, 0.4);
    CHECK(std::abs(r - I / (2.0 * pi)) < 1e-13);
    // Radius catches the neighbouring pole at z = 2.
    CHECK_THROWS_AS(residue_at([](cplx z) { return 1.0 / std::sin(pi * z); }, 1.0, 1.5), PoleError);
}
