#include <catch_amalgamated.hpp>

#include <random>

#include "rmt/catalog.hpp"

using namespace rmt;

TEST_CASE("catalog spaces: rho and structure", "[root_system]") {
    const auto H2 = build_catalog_space("H2");
    CHECK(H2.rho.rho[0] == Catch::Approx(0.5).margin(1e-15));
    const auto H3 = build_catalog_space("H3");
    CHECK(H3.rho.rho[0] == Catch::Approx(1.0).margin(1e-15));
    CHECK(H3.order_W() == 2);
    const auto CH2 = build_catalog_space("CH2");
    REQUIRE(CH2.unmult.size() == 1);
    CHECK(CH2.unmult[0].rho_tilde == Catch::Approx(1.0).margin(1e-15));
    CHECK(CH2.positive_roots.size() == 2);
    CHECK_THROWS_AS(build_catalog_space("nope"), DomainError);
}

TEST_CASE("catalog covers all four multiplicity cases", "[root_system]") {
    std::set<char> cases;
    for (const auto& n : catalog_names())
        for (const auto& u : build_catalog_space(n).unmult) cases.insert(case_letter(u.mult_case()));
    CHECK(cases == std::set<char>{'a', 'b', 'c', 'd'});
}

TEST_CASE("build_root_system examples", "[root_system]") {
    const auto A2 = build_root_system("A", 2, {{"m", 2}});
    CHECK(A2.order_W() == 6);
    CHECK(A2.unmult.size() == 3);
    const auto BC1 = build_root_system("BC", 1, {{"short", 2}, {"long", 1}});
    CHECK(BC1.positive_roots.size() == 2);
    CHECK(BC1.unmult.size() == 1);
    CHECK(BC1.unmult[0].m_half == 2);
    CHECK_THROWS_AS(build_root_system("A", 1, {{"m", 2}, {"half", 3}}), ParityError);
    CHECK_THROWS_AS(build_root_system("BC", 1, {{"short", 3}, {"long", 1}}), ParityError);
    CHECK_THROWS_AS(build_root_system("BC", 1, {{"short", 2}, {"long", 2}}), ParityError);
    CHECK_THROWS_AS(build_root_system("E", 6, {{"m", 1}}), DomainError);
    CHECK_THROWS_AS(build_root_system("A", 2, {{"short", 1}}), DomainError);
    // Per-root form: not constant on root lengths.
    CHECK_THROWS_AS(build_root_system_per_root("A", 2, {1, 2, 1}), DomainError);
    CHECK(build_root_system_per_root("A", 2, {2, 2, 2}).order_W() == 6);
}

TEST_CASE("Weyl group orders and longest element", "[root_system]") {
    const std::vector<std::tuple<std::string, int, std::map<std::string, int>, std::size_t>> cases = {
        {"A", 3, {{"m", 1}}, 24},
        {"B", 2, {{"short", 1}, {"long", 1}}, 8},
        {"C", 3, {{"short", 1}, {"long", 1}}, 48},
        {"BC", 2, {{"short", 2}, {"medium", 2}, {"long", 1}}, 8},
        {"D", 4, {{"m", 1}}, 192},
        {"G2", 2, {{"short", 1}, {"long", 1}}, 12},
    };
    for (const auto& [f, l, m, order] : cases) {
        const auto R = build_root_system(f, l, m);
        CHECK(R.order_W() == order);
        const RVec r = R.apply(R.w0, R.rho.rho);
        for (int j = 0; j < l; ++j) CHECK(std::abs(r[j] + R.rho.rho[j]) < 1e-12);
    }
}

TEST_CASE("omega basis duality and rho_j", "[root_system]") {
    for (const auto& n : catalog_names()) {
        const auto R = build_catalog_space(n);
        for (int j = 0; j < R.rank; ++j) {
            SpectralPoint w(R.rank, 0.0);
            w[j] = 1.0;
            for (int k = 0; k < R.rank; ++k)
                CHECK(std::abs(R.lambda_sub(w, R.beta[k]) - (j == k ? 1.0 : 0.0)) < 1e-12);
        }
        for (const auto& u : R.unmult) {
            if (u.simple_index >= 0) CHECK(std::abs(R.rho.rho[u.simple_index] - u.rho_tilde) < 1e-12);
        }
    }
}

TEST_CASE("lambda_sub examples", "[root_system]") {
    const auto A2 = build_catalog_space("A2C");
    RVec b12 = detail::add(A2.beta[0], A2.beta[1]);
    CHECK(std::abs(A2.lambda_sub(A2.rho_point(), b12) - 2.0) < 1e-12);
    const auto BC2 = build_catalog_space("BC2");
    const SpectralPoint lam{{0.3, -0.2}, {1.1, 0.4}};
    for (const auto& a : BC2.positive_roots) {
        RVec h = a;
        for (double& x : h) x *= 0.5;
        CHECK(std::abs(BC2.lambda_sub(lam, h) - 2.0 * BC2.lambda_sub(lam, a)) < 1e-12);
    }
    CHECK_THROWS_AS(A2.lambda_sub(lam, RVec(3, 0.0)), DomainError);
}

TEST_CASE("weyl_orbit examples", "[root_system]") {
    const auto H3 = build_catalog_space("H3");
    CHECK(H3.weyl_orbit({0.0}).size() == 1);
    const auto o = H3.weyl_orbit({0.7});
    REQUIRE(o.size() == 2);
    CHECK(std::abs(o[0][0] + o[1][0]) < 1e-15);
    const auto A2 = build_catalog_space("A2C");
    CHECK(A2.weyl_orbit(A2.rho_point()).size() == 6);
    CHECK(A2.weyl_orbit({1.0, 0.0}).size() == 3);
}

TEST_CASE("dominant_weights ordering", "[root_system]") {
    auto d1 = dominant_weights(1, 3);
    REQUIRE(d1.size() == 4);
    for (int k = 0; k < 4; ++k) CHECK(d1[k].mu == std::vector<int>{k});
    auto d2 = dominant_weights(2, 1);
    REQUIRE(d2.size() == 3);
    CHECK(d2[0].mu == std::vector<int>{0, 0});
    CHECK(d2[1].mu == std::vector<int>{1, 0});
    CHECK(d2[2].mu == std::vector<int>{0, 1});
    CHECK(dominant_weights(2, 2).size() == 6);
    CHECK(dominant_weights(3, 4).size() == 35);
    CHECK(dominant_weights(2, -1).empty());
}

TEST_CASE("tube membership examples", "[root_system]") {
    const auto H3 = build_catalog_space("H3");
    CHECK(H3.in_tube({0.5}, Tube::T_delta, 1.0));
    CHECK_FALSE(H3.in_tube({1.2}, Tube::T_delta, 1.0));
    CHECK_FALSE(H3.in_tube({1.0}, Tube::T_delta, 1.0));
    CHECK_THROWS_AS(H3.in_tube({0.0}, Tube::T_delta, 1.5), DomainError);
    CHECK_THROWS_AS(H3.in_tube({0.0}, Tube::T_Sigma_m_eta, 0.5), DomainError);
    // T_{Sigma,m}: |Re lambda_beta| < 1 for case (a), 1/2 for case (d).
    CHECK(H3.in_tube({0.9}, Tube::T_Sigma_m, 0.0));
    const auto CH2 = build_catalog_space("CH2");
    CHECK_FALSE(CH2.in_tube({0.6}, Tube::T_Sigma_m, 0.0));
    CHECK(CH2.in_tube({0.4}, Tube::T_Sigma_m, 0.0));
    CHECK_FALSE(CH2.in_tube({0.4}, Tube::T_Sigma_m_eta, 0.2));
}

TEST_CASE("tube domains: W-intersections and w0 form", "[root_system]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    for (const auto& n : catalog_names()) {
        const auto R = build_catalog_space(n);
        for (double delta : {0.3, 1.0}) {
            int mismatches = 0;
            for (int s = 0; s < 2000; ++s) {
                SpectralPoint lam(R.rank);
                for (auto& x : lam) x = cplx(U(rng), U(rng));
                const bool t = R.in_tube(lam, Tube::T_delta, delta);
                bool all2 = true, all1 = true;
                for (std::size_t w = 0; w < R.order_W(); ++w) {
                    const auto wl = R.apply(static_cast<int>(w), lam);
                    all2 = all2 && R.in_tube(wl, Tube::T_dprime, delta);
                    all1 = all1 && R.in_tube(wl, Tube::T_prime, delta);
                }
                const bool tp = R.in_tube(lam, Tube::T_prime, delta);
                const bool w0form = R.in_tube(lam, Tube::T_dprime, delta) &&
                                    R.in_tube(R.apply(R.w0, lam), Tube::T_dprime, delta);
                if (t != all2 || t != all1 || tp != w0form) ++mismatches;
            }
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("norm equivalence constants", "[root_system]") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (const auto& n : catalog_names()) {
        const auto R = build_catalog_space(n);
        for (int s = 0; s < 1000; ++s) {
            RVec lam(R.rank);
            double l1 = 0.0;
            for (auto& x : lam) {
                x = U(rng);
                l1 += std::abs(x);
            }
            const double nr = R.norm(lam);
            CHECK(R.rho.c1 * nr <= l1 * (1 + 1e-12));
            CHECK(l1 <= R.rho.c2 * nr * (1 + 1e-12));
        }
    }
}
