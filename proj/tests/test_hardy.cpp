#include <catch_amalgamated.hpp>

#include "rmt/catalog.hpp"
#include "rmt/hardy.hpp"

using namespace rmt;

TEST_CASE("exp certificate is an equality", "[hardy]") {
    const auto a = hardy_exp(1.0, 1);
    const auto rep = check_certificate(a, nullptr, 10000, 5);
    CHECK(rep.violations == 0);
    CHECK(rep.max_ratio == Catch::Approx(1.0).epsilon(1e-12));
    const auto H3 = build_catalog_space("H3");
    CHECK(check_certificate(a, &H3, 10000, 6).pass());
    const auto A2 = build_catalog_space("A2C");
    CHECK(check_certificate(hardy_exp(1.0, 2), &A2, 10000, 7).pass());
}

TEST_CASE("reciprocal gamma certificate", "[hardy]") {
    const auto a = hardy_rgamma(1);
    CHECK(a.cert.A == 1.7);
    const auto rep = check_certificate(a, nullptr, 10000, 8);
    CHECK(rep.violations == 0);
    CHECK(rep.max_ratio > 0.3);
    const auto A2 = build_catalog_space("A2C");
    CHECK(check_certificate(hardy_rgamma(2, 1.0, &A2), &A2, 10000, 9).pass());
}

TEST_CASE("sin(pi lambda) violates every certificate with A < pi", "[hardy]") {
    const auto rep = check_certificate(hardy_sin(3.0), nullptr, 2000, 10);
    CHECK(rep.violations > 0);
    CHECK_THROWS_AS(certify(hardy_sin(3.0)), CertificateError);
    HardyFunction bad = hardy_sin(3.0);
    bad.cert.A = 3.5;
    CHECK_THROWS_AS(check_certificate(bad, nullptr, 10, 1), DomainError);
}

TEST_CASE("Laplace transform of a box", "[hardy]") {
    const auto a = hardy_box(1);
    const double exact = std::exp(-1.0) - std::exp(-2.0);
    CHECK(std::abs(a({1.0}) - 0.2325441579348883) < 1e-13);
    CHECK(std::abs(a({1.0}) - exact) < 1e-14);
    const cplx z(0.3, 4.0);
    CHECK(std::abs(a({z}) - (std::exp(-z) - std::exp(-2.0 * z)) / z) < 1e-12);
    CHECK(check_certificate(a, nullptr, 10000, 11).pass());
    // Entire: finite at 0 with value 1.
    CHECK(std::abs(a({0.0}) - 1.0) < 1e-14);
    const auto z0 = laplace_hardy([](const RVec&) { return 0.0; }, 1.0, 2.0);
    CHECK(z0({cplx(0.2, 3.0)}) == cplx(0.0));
    CHECK_THROWS_AS(laplace_hardy([](const RVec&) { return 1.0; }, 2.0, 1.0), DomainError);
    // Rank two product.
    const auto b2 = hardy_box(2);
    CHECK(std::abs(b2({1.0, 1.0}) - exact * exact) < 1e-13);
}

TEST_CASE("validation gate", "[hardy]") {
    CHECK_THROWS_AS(require_validated(hardy_exp()), CertificateError);
    CHECK_NOTHROW(require_validated(certify(hardy_exp())));
}
