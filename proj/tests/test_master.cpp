#include <catch_amalgamated.hpp>

#include "rmt/catalog.hpp"
#include "rmt/master.hpp"

using namespace rmt;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// g(x) = sum_{n>=1} (-1)^{n-1} n x^n
double g(double x) { return x / ((1.0 + x) * (1.0 + x)); }

// H3 with a = e^{-lambda}: phi_lambda(t) = sinh(lambda t)/(lambda sinh t) collapses the series.
double h3_closed(double t) {
    if (t == 0.0) {
        const double q = std::exp(-1.0);
        return q * (1.0 - q) / std::pow(1.0 + q, 3);
    }
    return (g(std::exp(t - 1.0)) - g(std::exp(-t - 1.0))) / (2.0 * std::sinh(t));
}

HardyFunction exp1(const RootDatum* R = nullptr, int rank = 1) { return certify(hardy_exp(1.0, rank), R); }
}  // namespace

// ---------------------------------------------------------------------------
// classical

TEST_CASE("classical series closed forms", "[master][classical]") {
    const auto a = exp1();
    CHECK(std::abs(classical_series(a, 1.0) - 1.0 / (1.0 + std::exp(-1.0))) < 1e-13);
    const auto r = certify(hardy_rgamma());
    CHECK(std::abs(classical_series(r, 2.0) - std::exp(-2.0)) < 1e-13);
    CHECK(std::abs(classical_series(a, 1e-9) - a({0.0})) < 1e-8);
    CHECK_THROWS_AS(classical_series(a, 3.0), DomainError);
}

TEST_CASE("classical contour extends past e^P", "[master][classical]") {
    const auto a = exp1();
    CHECK(std::abs(classical_contour(a, 1.0, -0.5) - 1.0 / (1.0 + std::exp(-1.0))) < 1e-12);
    CHECK(std::abs(classical_contour(a, 10.0, -0.5) - 1.0 / (1.0 + 10.0 * std::exp(-1.0))) < 1e-12);
    CHECK(std::abs(classical_contour(a, 10.0, -0.2) - classical_contour(a, 10.0, -0.8)) < 1e-9);
    CHECK_THROWS_AS(classical_contour(a, 1.0, 0.3), DomainError);
}

TEST_CASE("classical contour to the right of 0 misses the k = 0 residue", "[master][classical]") {
    const auto a = exp1();
    const double x = 0.5, lx = std::log(x);
    const Integrand F = [&](const CVec& l) { return -pi / std::sin(pi * l[0]) * a(l) * std::exp(l[0] * lx); };
    const cplx right = line_integral(F, {0.5}, QuadratureConfig{}) / (2.0 * pi * I);
    CHECK(std::abs(right - (1.0 / (1.0 + x * std::exp(-1.0)) - 1.0)) < 1e-12);
}

TEST_CASE("classical interpolation against Mellin oracles", "[master][classical]") {
    // int x^{-lambda-1}(1/(1+x/e) - 1) dx = -pi e^{-lambda}/sin(pi lambda)
    const auto a = exp1();
    const auto v = classical_interpolate(a, 0.3);
    CHECK(std::abs(v.lhs - (-pi * std::exp(-0.3) / std::sin(0.3 * pi))) < 1e-8);
    CHECK(std::abs(v.rhs - v.rhs_gamma) < 1e-12);
    // int x^{-lambda-1}(e^{-x} - 1) dx = Gamma(-lambda) for 0 < lambda < 1
    const auto r = certify(hardy_rgamma());
    CHECK(std::abs(classical_interpolate(r, 0.4).lhs - std::tgamma(-0.4)) < 1e-8);
    CHECK(std::abs(classical_interpolate(a, 0.5).rhs - (-pi * std::exp(-0.5))) < 1e-14);
    CHECK_THROWS_AS(classical_interpolate(a, 1.2), DomainError);
}

// ---------------------------------------------------------------------------
// series and contour

TEST_CASE("H3 series at the origin", "[master][series]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto a = exp1(&S.datum());
    const auto r = series_f_ex(S, a, {0.0});
    const double q = std::exp(-1.0);
    CHECK(std::abs(r.value - q * (1.0 - q) / std::pow(1.0 + q, 3)) < 1e-10);
    CHECK(r.tail_bound < 0.5e-10);
}

TEST_CASE("H3 series and contour match the closed form", "[master][series][contour]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto a = exp1(&S.datum());
    for (double t : {0.1, 0.3, 0.5}) CHECK(std::abs(series_f(S, a, {t}) - h3_closed(t)) < 1e-10);
    for (double t : {0.0, 0.5, 2.0, 5.0}) CHECK(std::abs(contour_f(S, a, {t}, {0.0}) - h3_closed(t)) < 1e-12);
}

TEST_CASE("series of a Hardy function vanishing on the lattice is 0", "[master][series]") {
    const MasterSpace S(build_catalog_space("H2"));
    const auto z = certify(laplace_hardy([](const RVec&) { return 0.0; }, 1.0, 2.0, 1, 8, &S.datum()), &S.datum());
    CHECK(series_f(S, z, {0.2}) == 0.0);
}

TEST_CASE("series and contour agree on rank-one spaces", "[master][series][contour]") {
    for (const auto& n : {"H2", "CH2", "H4", "HH2"}) {
        const MasterSpace S(build_catalog_space(n));
        const auto a = exp1(&S.datum());
        for (double t : {0.0, 0.25, 0.5}) {
            INFO(n << " t=" << t);
            CHECK(std::abs(series_f(S, a, {t}) - contour_f(S, a, {t}, {0.0})) < 1e-9);
        }
    }
}

TEST_CASE("A2C series and contour against the SL(3) double sum", "[master][series][contour]") {
    const MasterSpace S(build_catalog_space("A2C"));
    const auto a = exp1(&S.datum(), 2);
    double oracle = 0.0;
    for (int m1 = 0; m1 < 80; ++m1)
        for (int m2 = 0; m2 < 80; ++m2) {
            const double d = 0.5 * (m1 + 1) * (m2 + 1) * (m1 + m2 + 2);
            oracle += ((m1 + m2) % 2 == 0 ? 1.0 : -1.0) * d * d * std::exp(-(m1 + m2 + 2.0));
        }
    CHECK(std::abs(series_f(S, a, {0.0, 0.0}) - oracle) < 1e-10);
    QuadratureConfig q;
    q.nodes_per_axis = 448;
    q.tail_bound_target = 1e-8;
    CHECK(std::abs(contour_f(S, a, {0.0, 0.0}, {0.0, 0.0}, q) - oracle) < 1e-8);
    const RVec H{0.1, 0.05};
    CHECK(std::abs(series_f(S, a, H) - contour_f(S, a, H, {0.0, 0.0}, q)) < 1e-8);
}

TEST_CASE("contour is independent of the base point", "[master][contour]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto a = exp1(&S.datum());
    const double s = S.strip_scale(1.0);
    const cplx v0 = contour_f(S, a, {0.3}, {0.0});
    CHECK(std::abs(contour_f(S, a, {0.3}, {0.4 * s}) - v0) < 1e-10);
    CHECK(std::abs(contour_f(S, a, {0.3}, {-0.4 * s}) - v0) < 1e-10);
    CHECK(std::abs(contour_f_unsym(S, a, {0.3}, {0.0}) - v0) < 1e-12);
}

TEST_CASE("series and contour preconditions", "[master][series][contour]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto a = exp1(&S.datum());
    CHECK_THROWS_AS(series_f(S, a, {1.5}), DomainError);
    CHECK_THROWS_AS(contour_f(S, a, {0.1}, {3.0}), DomainError);
    auto raw = hardy_exp(1.0);
    CHECK_THROWS_AS(series_f(S, raw, {0.1}), CertificateError);
    SeriesConfig tight;
    tight.max_height = 5;
    CHECK_THROWS_AS(series_f(S, a, {0.5}, tight), CertificateError);
    const MasterSpace S3(build_catalog_space("A3C"));
    CHECK_THROWS_AS(contour_f(S3, exp1(&S3.datum(), 3), {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}), DomainError);
}

// ---------------------------------------------------------------------------
// interpolation

TEST_CASE("radial profile of H3 matches the closed form", "[master][interpolation]") {
    const MasterSpace S(build_catalog_space("H3"));
    const RadialTransform RT(S, exp1(&S.datum()));
    for (double t : {0.5, 1.0, 3.0, 10.0}) CHECK(rel(RT.f_at(t), h3_closed(t)) < 1e-9);
    CHECK(RT.join_residual() < 1e-12);
    CHECK(std::abs(RT.decay_rate() - 2.0) < 1e-6);
}

TEST_CASE("interpolation identity in rank one", "[master][interpolation]") {
    for (const auto& n : {"H3", "H2"}) {
        const MasterSpace S(build_catalog_space(n));
        const auto a = exp1(&S.datum());
        RadialTransform RT(S, a);
        const double hw = RT.half_width();
        RT.calibrate(0.37 * hw);
        for (cplx lam : {cplx(0.3 * hw, 0.0), cplx(-0.5 * hw, 1.3), cplx(0.1 * hw, 2.7)}) {
            const auto v = RT.interpolate(lam);
            INFO(n << " " << lam);
            CHECK(rel(v.lhs, v.rhs) < 1e-8);
            CHECK(rel(RT.lhs(-lam), v.lhs) < 1e-12);
        }
        CHECK(rel(I * RT.kappa() * RT.l2_radial(), RT.l2_spectral()) < 1e-8);
    }
}

TEST_CASE("one calibration constant serves every Hardy function", "[master][interpolation]") {
    const MasterSpace S(build_catalog_space("H3"));
    RadialTransform RT(S, exp1(&S.datum()));
    const cplx k = RT.calibrate(0.37);
    const auto box = certify(hardy_box(1, &S.datum()), &S.datum());
    RadialTransform RB(S, box);
    RB.set_kappa(k);
    const auto v = RB.interpolate(cplx(0.2, 0.8));
    CHECK(rel(v.lhs, v.rhs) < 1e-7);
}

TEST_CASE("calibration constant is the same on H2 and H3", "[master][interpolation]") {
    cplx k[2];
    int i = 0;
    for (const auto& n : {"H2", "H3"}) {
        const MasterSpace S(build_catalog_space(n));
        RadialTransform RT(S, exp1(&S.datum()));
        k[i++] = RT.calibrate(0.37 * RT.half_width());
    }
    CHECK(rel(k[0], k[1]) < 1e-9);
}

TEST_CASE("radial transform rejects points outside the tube", "[master][interpolation]") {
    const MasterSpace S(build_catalog_space("H3"));
    RadialTransform RT(S, exp1(&S.datum()));
    RT.calibrate(0.37);
    CHECK_THROWS_AS(RT.interpolate(1.5), DomainError);
    const MasterSpace A(build_catalog_space("A2C"));
    CHECK_THROWS_AS(RadialTransform(A, exp1(&A.datum(), 2)), DomainError);
}

// ---------------------------------------------------------------------------
// gamma variants

TEST_CASE("A B = a b and the F-series equals the f-series", "[master][gamma]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto a = exp1(&S.datum());
    for (cplx l : {cplx(0.3, 0.2), cplx(1.7, -1.1), cplx(-0.4, 2.5)}) {
        const cplx ab = a({l}) * S.bfun().b_eval({l});
        CHECK(rel(gamma_A(S, a, {l}) * gamma_B(S, {l}), ab) < 1e-12);
        CHECK(rel(tilde_A(S, a, {l}) * tilde_B(S, {l}), ab) < 1e-12);
    }
    CHECK_THROWS_AS(gamma_A(S, a, {-1.0}), PoleError);
    CHECK(std::abs(F_series_ex(S, a, {0.3}).value - series_f(S, a, {0.3})) < 1e-12);
}

TEST_CASE("tilde series", "[master][gamma]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto ac = certify(hardy_exp_cos(S.datum()), &S.datum());
    for (const auto& mu : dominant_weights(1, 9))
        if (mu.mu[0] % 2 != 0) CHECK(tilde_coefficient(S, ac, mu) == 0.0);
    const cplx f = series_f(S, ac, {0.3});
    CHECK(std::abs(F_tilde_series_ex(S, ac, {0.3}).value - f) < 1e-12);
    // Without (-1)^{|nu|} the even-weight series is a different function.
    CHECK(std::abs(F_tilde_series_ex(S, ac, {0.3}, {}, true).value - f) > 0.1);
}

// ---------------------------------------------------------------------------
// reductive

TEST_CASE("torus x H3 factorizes", "[master][reductive]") {
    const ReductiveSpace RS(1, build_catalog_space("H3"));
    const auto& S = RS.semisimple();
    const auto a0 = exp1(), a1 = exp1(&S.datum());
    const auto a = product_hardy(a0, a1);
    REQUIRE(a.validated);
    const cplx js = reductive_series_ex(RS, a, {0.8}, {0.2}).value;
    CHECK(std::abs(js - classical_series(a0, 0.8) * series_f(S, a1, {0.2})) < 1e-10);
    CHECK(std::abs(reductive_contour_ex(RS, a, {0.8}, {0.2}, {-0.5, 0.0}).value - js) < 1e-9);
    CHECK_THROWS_AS(reductive_contour_ex(RS, a, {0.8}, {0.2}, {0.5, 0.0}), DomainError);
    const SpectralPoint lam{cplx(0.4, 0.1), cplx(0.2, 0.7)};
    CHECK(rel(RS.a_tilde(a, lam), RS.b0({lam[0]}) * a0({lam[0]}) * S.bfun().a_tilde(a1, {lam[1]})) < 1e-12);
    // b^0 dlambda^0 is the classical weight (1/2 pi i)(-pi/sin)
    CHECK(rel(2.0 * pi * I * RS.b0({0.3}), -pi / std::sin(0.3 * pi)) < 1e-14);
}

TEST_CASE("d(mu) = d(mu') from the joint residue", "[master][reductive]") {
    const ReductiveSpace RS(1, build_catalog_space("H3"));
    for (const auto& mu : dominant_weights(2, 3)) {
        const cplx d = RS.d_from_residue(mu);
        const double k = mu.mu[1] + 1.0;
        CHECK(std::abs(d - k * k) < 1e-8);
    }
}

// ---------------------------------------------------------------------------
// contour iteration

TEST_CASE("rectangle sums reproduce the partial series", "[master][iteration]") {
    const MasterSpace S(build_catalog_space("H3"));
    const auto it = contour_iteration(S, exp1(&S.datum()), 0.2);
    for (const auto& st : it.steps) CHECK(std::abs(st.rectangle - st.partial_sum) < 1e-12);
    CHECK(it.monotone);
    CHECK(std::abs(it.slope / it.predicted - 1.0) < 0.2);
}

// ---------------------------------------------------------------------------
// reports

TEST_CASE("report pass semantics and serialization", "[master][report]") {
    VerificationReport r;
    r.space = "H3";
    r.hardy = "exp";
    r.add("b.check", "p,1", 1.0, 1.0 + 1e-9, 1e-8);
    r.add("a.check", "p2", 2.0, 1.0, 0.5, true);
    CHECK(r.failures() == 1);
    CHECK_FALSE(r.pass());
    VerificationReport o;
    o.add_bool("c.check", "q", true);
    r.merge(o);
    CHECK(r.records.front().check == "a.check");
    const auto csv = r.to_csv();
    CHECK(csv.rfind(VerificationReport::csv_header() + "\n", 0) == 0);
    CHECK(csv.find("\"p,1\"") != std::string::npos);
    const auto txt = r.to_text();
    CHECK(txt.rfind(std::string("# ") + report_schema, 0) == 0);
    CHECK(txt.find("summary: 3 checks, 1 failed") != std::string::npos);
    r.add_error("d.check", "x", "boom");
    CHECK(r.failures() == 2);
}

TEST_CASE("verify_classical passes and is deterministic", "[master][report]") {
    const auto a = parse_hardy("exp:P=1", 1);
    const auto r1 = verify_classical(a), r2 = verify_classical(a);
    CHECK(r1.pass());
    CHECK(r1.to_csv() == r2.to_csv());
}

TEST_CASE("hardy spec parsing", "[master][report]") {
    CHECK(parse_hardy("exp:P=2", 1).cert.P == 2.0);
    CHECK(parse_hardy("rgamma", 1).validated);
    CHECK_THROWS_AS(parse_hardy("cosh", 1), DomainError);
    CHECK_THROWS_AS(parse_hardy("exp:P=x", 1), DomainError);
    CHECK_THROWS_AS(parse_hardy("exp:Q=1", 1), DomainError);
    CHECK_THROWS_AS(parse_hardy("sin", 1), CertificateError);
}
