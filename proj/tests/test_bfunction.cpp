#include <catch_amalgamated.hpp>

#include <random>

#include "rmt/bfunction.hpp"
#include "rmt/catalog.hpp"

using namespace rmt;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }
}  // namespace

TEST_CASE("H3: b is (i/2)/sin(pi lambda)", "[bfunction]") {
    const BFunction b(build_catalog_space("H3"));
    CHECK(std::abs(b.b_eval({0.5}) - 0.5 * I) < 1e-15);
    const cplx z(0.31, -0.77);
    CHECK(rel(b.b_eval({z}), 0.5 * I / std::sin(pi * z)) < 1e-14);
    CHECK(rel(b.b_explicit({z}), b.b_eval({z})) < 1e-14);
    CHECK(std::abs(b.K_b() + 0.5 * I) < 1e-14);
    CHECK(std::abs(b.K_b_prime() - 0.5 * I) < 1e-14);
    CHECK_THROWS_AS(b.b_eval({2.0}), PoleError);
}

TEST_CASE("printed K_b differs by (prod C_beta)^2", "[bfunction]") {
    for (const auto& n : catalog_names()) {
        const BFunction b(build_catalog_space(n));
        double prodC = 1.0;
        for (const auto& f : b.cfun().factors()) prodC *= f.C;
        CHECK(rel(b.K_b_printed(), b.K_b() * prodC * prodC) < 1e-13);
    }
}

TEST_CASE("complex case: b = +-(i/2)^l prod 1/sin(pi lambda_j)", "[bfunction]") {
    // K'_b = (i/2)^l (-1)^{|Sigma_*^+| + l}; the sign is fixed by the residue identity.
    for (const auto& n : {"H3", "A2C", "B2C", "A3C"}) {
        const BFunction b(build_catalog_space(n));
        const int l = b.datum().rank;
        const int s = static_cast<int>(b.datum().unmult.size());
        const cplx expect = std::pow(0.5 * I, l) * double((s + l) % 2 == 0 ? 1 : -1);
        INFO(n);
        CHECK(std::abs(b.K_b_prime() - expect) < 1e-13);
    }
}

TEST_CASE("H2: explicit form with a single sine", "[bfunction]") {
    const BFunction b(build_catalog_space("H2"));
    const cplx z(0.2, 0.4);
    CHECK(rel(b.b_eval({z}), b.K_b_prime() / std::sin(pi * z)) < 1e-14);
    CHECK(std::abs(std::abs(b.K_b_prime()) - std::abs(b.K_b())) < 1e-15);
    const BFunction d(build_catalog_space("CH2"));
    CHECK(rel(d.b_eval({z}), d.K_b_prime() / std::cos(pi * z)) < 1e-14);
}

TEST_CASE("b paths agree after sign resolution", "[bfunction]") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> re(-1.7, 1.7), im(-2.5, 2.5);
    for (const auto& n : catalog_names()) {
        const BFunction b(build_catalog_space(n));
        CHECK(b.sign_residual() < 1e-12);
        double worst = 0.0;
        int done = 0;
        while (done < 200) {
            SpectralPoint lam(b.datum().rank);
            for (auto& x : lam) x = cplx(re(rng), im(rng));
            if (b.b_is_pole(lam, 1e-3)) continue;
            worst = std::max(worst, rel(b.b_eval(lam), b.b_explicit(lam)));
            ++done;
        }
        INFO(n);
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("b/(cc) matches b times the density", "[bfunction]") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> re(-1.7, 1.7), im(-2.0, 2.0);
    for (const auto& n : catalog_names()) {
        const BFunction b(build_catalog_space(n));
        int done = 0;
        double worst = 0.0;
        while (done < 50) {
            SpectralPoint lam(b.datum().rank);
            for (auto& x : lam) x = cplx(re(rng), im(rng));
            if (b.b_is_pole(lam, 1e-3) || b.bcc_is_pole(lam, 1e-3)) continue;
            try {
                worst = std::max(worst, rel(b.b_over_cc(lam), b.b_eval(lam) * b.cfun().density_factored(lam)));
                ++done;
            } catch (const Error&) {
            }
        }
        INFO(n);
        CHECK(worst < 1e-9);
    }
}

TEST_CASE("b_over_cc examples", "[bfunction]") {
    const BFunction h3(build_catalog_space("H3"));
    for (double t : {0.0, 0.5, 2.0}) {
        const cplx l(0.0, t);
        const cplx expect = t == 0.0 ? cplx(0.5 * I * 0.0) : 0.5 * I * l * l / std::sin(pi * (l - 1.0));
        CHECK(std::abs(h3.b_over_cc({l}) - expect) < 1e-14);
    }
    // Removable point at lambda = 0: (i/2) lambda^2 / sin(pi(lambda - 1)) -> 0 linearly.
    CHECK(std::abs(h3.b_over_cc({1e-9})) < 1e-9);
    const BFunction h2(build_catalog_space("H2"));
    CHECK(std::abs(h2.b_over_cc({0.0})) == 0.0);
    for (int mu = 0; mu < 3; ++mu) {
        CHECK_THROWS_AS(h3.b_over_cc({mu + 1.0}), PoleError);
        CHECK_THROWS_AS(h2.b_over_cc({mu + 0.5}), PoleError);
    }
    // Finite on T'_1, continuous across the cancelled sine zeros.
    const BFunction ch3(build_catalog_space("CH3"));
    const cplx a = ch3.b_over_cc({0.5 + 1e-7}), b = ch3.b_over_cc({0.5 - 1e-7});
    CHECK(std::abs(a - b) < 1e-6);
    CHECK(is_finite(ch3.b_over_cc({0.5})));
}

TEST_CASE("residue identity", "[bfunction]") {
    // Hand value i/(2 pi) at H3, mu = 0.
    const BFunction h3(build_catalog_space("H3"));
    const cplx r0 = residue_at([&](cplx z) { return h3.b_over_cc({z}); }, 1.0, 0.25);
    CHECK(std::abs(r0 - I / (2.0 * pi)) < 1e-13);
    for (const auto& n : {"H2", "H3", "H4", "CH2", "CH3", "HH2", "A2C", "A2R", "B2C", "BC2"}) {
        const BFunction b(build_catalog_space(n));
        for (const auto& mu : dominant_weights(b.datum().rank, 3)) {
            INFO(n << " height " << mu.height());
            CHECK(std::abs(b.residue_check(mu) - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("pole predicate matches observed blowups", "[bfunction]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-1.0, 1.0);
    for (const auto& n : catalog_names()) {
        const BFunction b(build_catalog_space(n));
        const auto& R = b.datum();
        int mismatches = 0;
        for (int s = 0; s < 200; ++s) {
            SpectralPoint lam(R.rank);
            for (auto& x : lam) x = cplx(re(rng), im(rng));
            // Snap one coordinate onto its sine or cosine singular line.
            const int j = s % R.rank;
            const auto& u = *std::find_if(R.unmult.begin(), R.unmult.end(),
                                          [&](const UnmultRoot& v) { return v.simple_index == j; });
            const double off = u.mult_case() == MultCase::d ? 0.5 : 0.0;
            lam[j] = std::round(lam[j].real() - off) + off;
            const bool predicted = b.b_is_pole(lam);
            bool blew = false;
            try {
                (void)b.b_eval(lam);
            } catch (const PoleError&) {
                blew = true;
            }
            if (predicted != blew) ++mismatches;
            // Nearby points are finite but large.
            SpectralPoint near = lam;
            near[j] += 1e-7;
            if (!b.b_is_pole(near, 1e-9) && std::abs(b.b_eval(near)) < 1e3) ++mismatches;
        }
        INFO(n);
        CHECK(mismatches == 0);
    }
}

TEST_CASE("a_tilde symmetry and reality", "[bfunction]") {
    const BFunction h3(build_catalog_space("H3"));
    const auto a = certify(hardy_exp(1.0, 1));
    // b is odd, so a~(it) = -i sin(t)/sinh(pi t): purely imaginary, not real.
    for (double t : {0.3, 1.0, 2.5}) {
        const cplx v = h3.a_tilde(a, {cplx(0.0, t)});
        CHECK(std::abs(v.real()) < 1e-13 * std::abs(v));
        CHECK(rel(v, -I * std::sin(t) / std::sinh(pi * t)) < 1e-12);
        CHECK(std::abs(h3.a_tilde(a, {cplx(0.0, -t)}) - v) < 1e-13);
    }
    // Closed form for a = e^{-lambda}: -i sinh(lambda)/sin(pi lambda), limit -i/pi at 0.
    const cplx z(0.2, 0.7);
    CHECK(rel(h3.a_tilde(a, {z}), -I * std::sinh(z) / std::sin(pi * z)) < 1e-13);
    CHECK(std::abs(h3.a_tilde(a, {0.0}) + I / pi) < 1e-9);
    CHECK_THROWS_AS(h3.a_tilde(a, {1.2}), DomainError);
    const BFunction a2(build_catalog_space("A2C"));
    const auto e2 = certify(hardy_exp(1.0, 2));
    const SpectralPoint lam{{0.1, 0.4}, {-0.05, -0.9}};
    const cplx v = a2.a_tilde(e2, lam);
    for (std::size_t w = 0; w < a2.datum().order_W(); ++w) CHECK(rel(a2.a_tilde(e2, a2.datum().apply(int(w), lam)), v) < 1e-12);
    // Singular point (lambda_1 = lambda_2 line, wall of a reflection) is removable.
    const cplx s = a2.a_tilde(e2, {cplx(0.0, 0.5), cplx(0.0, -0.5)});
    CHECK(is_finite(s));
    const cplx s2 = a2.a_tilde(e2, {cplx(1e-3, 0.5), cplx(0.0, -0.5)});
    CHECK(std::abs(s - s2) < 1e-2 * std::abs(s));
}

TEST_CASE("a_tilde decay exponent uses c1, not c2", "[bfunction]") {
    // |a~| (1 + |lambda|)^{-s} e^{pi c |Im lambda|} along a ray: bounded for
    // c = c1, unbounded for c = c2 once the rank is two.
    for (const auto& n : {"A2C", "B2C"}) {
        const BFunction b(build_catalog_space(n));
        const auto& R = b.datum();
        const auto a = certify(hardy_exp(1.0, 2), &R);
        auto ratio = [&](double t, double c) {
            const SpectralPoint l{cplx(0.1, t), cplx(0.05, 0.3 * t)};
            const double v = std::abs(b.a_tilde(a, l)) / std::pow(1.0 + R.norm(l), double(R.unmult.size()));
            return v * std::exp(pi * c * R.norm(RVec{t, 0.3 * t}));
        };
        INFO(n);
        CHECK(ratio(8.0, R.rho.c1) < ratio(2.0, R.rho.c1));
        CHECK(ratio(8.0, R.rho.c2) > 1e6 * ratio(2.0, R.rho.c2));
    }
}

TEST_CASE("Pi b is holomorphic and decays on T_{Sigma,m,0.05}", "[bfunction]") {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> u01(-1.0, 1.0), im(-6.0, 6.0);
    for (const auto& n : catalog_names()) {
        const BFunction b(build_catalog_space(n));
        const auto& R = b.datum();
        const int s = static_cast<int>(R.unmult.size());
        auto sample = [&](bool& ok) {
            SpectralPoint lam(R.rank);
            for (auto& x : lam) x = cplx(u01(rng), im(rng));
            ok = R.in_tube(lam, Tube::T_Sigma_m_eta, 0.05) && !b.b_is_pole(lam, 1e-6);
            return lam;
        };
        auto scaled = [&](const SpectralPoint& lam) {
            double sy = 0.0;
            for (const auto& x : lam) sy += std::abs(x.imag());
            return std::abs(b.Pi(lam) * b.b_eval(lam)) / (std::pow(1.0 + R.norm(lam), s) * std::exp(-pi * sy));
        };
        double C = 0.0;
        for (int k = 0; k < 200;) {
            bool ok;
            const auto lam = sample(ok);
            if (!ok) continue;
            C = std::max(C, scaled(lam));
            ++k;
        }
        C *= 2.0;
        int violations = 0;
        for (int k = 0; k < 200;) {
            bool ok;
            const auto lam = sample(ok);
            if (!ok) continue;
            const double v = scaled(lam);
            if (!std::isfinite(v) || v > C) ++violations;
            ++k;
        }
        INFO(n);
        CHECK(violations == 0);
    }
}

TEST_CASE("gamma threshold", "[bfunction]") {
    CHECK(BFunction(build_catalog_space("H3")).gamma_threshold(1.0) == Catch::Approx(1.0));
    CHECK(BFunction(build_catalog_space("H4")).gamma_threshold(1.0) == Catch::Approx(2.0 / 3.0));
    CHECK(BFunction(build_catalog_space("CH2")).gamma_threshold(1.0) == Catch::Approx(0.5));
    CHECK(BFunction(build_catalog_space("H2")).gamma_threshold(0.4) == Catch::Approx(0.4));
}
