#pragma once

/**
 * @file hardy.hpp
 * @brief Hardy-class functions H(A, P, delta) with carried certificates.
 *
 * A function enters the verification harness only after certify() has
 * sampled its domain and found no violation of
 * |a(lambda)| <= C prod_j exp(-P Re lambda_j + A |Im lambda_j|).
 */

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rmt/numerics.hpp"
#include "rmt/root_system.hpp"

namespace rmt {

struct HardyCertificate {
    double A = 0.0;      ///< growth rate in Im lambda, must be < pi
    double P = 1.0;      ///< decay rate in Re lambda, must be > 0
    double delta = 1.0;  ///< width of the shifted half-space H(delta)
    double C = 1.0;
};

struct HardyFunction {
    std::string id;
    std::function<cplx(const SpectralPoint&)> eval;
    HardyCertificate cert;
    int rank = 1;
    bool validated = false;

    cplx operator()(const SpectralPoint& lam) const { return eval(lam); }

    /// C prod_j exp(-P Re lambda_j + A |Im lambda_j|).
    [[nodiscard]] double majorant(const SpectralPoint& lam) const {
        double s = 0.0;
        for (const auto& x : lam) s += -cert.P * x.real() + cert.A * std::abs(x.imag());
        return cert.C * std::exp(s);
    }
};

/**
 * @brief Domain H(delta) of a Hardy function.
 *
 * With a root datum: Re lambda_beta > -delta rho_tilde_beta for every
 * unmultipliable beta. Without one (classical and torus factors):
 * Re lambda_j > -delta for every coordinate.
 */
inline bool in_hardy_domain(const SpectralPoint& lam, double delta, const RootDatum* R) {
    if (R) return R->in_tube(lam, Tube::H_delta, delta);
    for (const auto& x : lam)
        if (!(x.real() > -delta)) return false;
    return true;
}

struct CertificateReport {
    int samples = 0;
    int violations = 0;
    double max_ratio = 0.0;
    [[nodiscard]] bool pass() const { return violations == 0; }
};

namespace detail {

/// Lower edge of the sampled real part of coordinate j.
inline double hardy_lower(int j, double delta, const RootDatum* R) {
    return R ? -delta * R->rho.rho[j] : -delta;
}

}  // namespace detail

/**
 * @brief Samples H(delta) and compares |a| with the certificate majorant.
 *
 * Real parts are drawn from (-delta rho_j, 4], imaginary parts from
 * [-10, 10]; points outside H(delta) are redrawn. Deterministic in seed.
 *
 * @throws DomainError if the evaluator fails inside the claimed domain.
 */
inline CertificateReport check_certificate(const HardyFunction& a, const RootDatum* R, int n_samples,
                                           std::uint64_t seed) {
    if (n_samples < 1) throw DomainError("check_certificate: need at least one sample");
    const auto& c = a.cert;
    if (!(c.A < pi) || !(c.P > 0.0) || !(c.delta > 0.0 && c.delta <= 1.0) || !(c.C > 0.0))
        throw DomainError("check_certificate: certificate constants out of range");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0), im(-10.0, 10.0);
    CertificateReport rep;
    SpectralPoint lam(a.rank);
    while (rep.samples < n_samples) {
        for (int j = 0; j < a.rank; ++j) {
            const double lo = detail::hardy_lower(j, c.delta, R);
            // (lo, 4]
            lam[j] = cplx(4.0 - (4.0 - lo) * u01(rng), im(rng));
        }
        if (!in_hardy_domain(lam, c.delta, R)) continue;
        ++rep.samples;
        cplx v;
        try {
            v = a(lam);
        } catch (const Error& e) {
            throw DomainError("check_certificate: evaluator failed inside H(delta): " + std::string(e.what()));
        }
        if (!is_finite(v)) throw DomainError("check_certificate: non-finite value inside H(delta)");
        const double r = std::abs(v) / a.majorant(lam);
        rep.max_ratio = std::max(rep.max_ratio, r);
        if (r > 1.0 + 1e-12) ++rep.violations;
    }
    return rep;
}

/**
 * @brief Returns a validated copy of a, or throws CertificateError.
 */
inline HardyFunction certify(HardyFunction a, const RootDatum* R = nullptr, int n_samples = 2000,
                             std::uint64_t seed = 1) {
    const auto rep = check_certificate(a, R, n_samples, seed);
    if (!rep.pass())
        throw CertificateError("certificate of '" + a.id + "' violated at " + std::to_string(rep.violations) +
                               " of " + std::to_string(rep.samples) + " samples");
    a.validated = true;
    return a;
}

inline void require_validated(const HardyFunction& a) {
    if (!a.validated) throw CertificateError("Hardy function '" + a.id + "' has no validated certificate");
}

/**
 * @brief Fits the constant C on a deterministic grid covering the closure of
 *        the sampled region, with a safety factor.
 */
inline double fit_constant(const HardyFunction& a, const RootDatum* R, int per_axis = 41, double margin = 1.25) {
    HardyFunction u = a;
    u.cert.C = 1.0;
    const int l = a.rank;
    std::vector<int> idx(l, 0);
    double best = 0.0;
    const int n = per_axis * per_axis;
    SpectralPoint lam(l);
    // Re on [lo, 4] including the edge, Im on [-10, 10]; l <= 2 at desk scale.
    long total = 1;
    for (int j = 0; j < l; ++j) total *= n;
    if (total > 5000000) throw DomainError("fit_constant: grid too large");
    for (long k = 0; k < total; ++k) {
        long r = k;
        for (int j = 0; j < l; ++j) {
            const int q = static_cast<int>(r % n);
            r /= n;
            const int ir = q % per_axis, ii = q / per_axis;
            const double lo = detail::hardy_lower(j, a.cert.delta, R);
            lam[j] = cplx(lo + (4.0 - lo) * ir / (per_axis - 1), -10.0 + 20.0 * ii / (per_axis - 1));
        }
        const cplx v = a(lam);
        if (!is_finite(v)) continue;
        best = std::max(best, std::abs(v) / u.majorant(lam));
    }
    return margin * std::max(best, 1e-300);
}

// ---------------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------------

/// prod_j exp(-P lambda_j); certificate (0, P, 1, 1) is an equality.
inline HardyFunction hardy_exp(double P = 1.0, int rank = 1) {
    HardyFunction a;
    a.id = "exp:P=" + std::to_string(P);
    a.rank = rank;
    a.cert = {0.0, P, 1.0, 1.0};
    a.eval = [P](const SpectralPoint& l) {
        cplx s = 0.0;
        for (const auto& x : l) s += x;
        return std::exp(-P * s);
    };
    return a;
}

/// prod_j 1/Gamma(lambda_j + 1) with A = 1.7 > pi/2 and a fitted constant.
inline HardyFunction hardy_rgamma(int rank = 1, double P = 1.0, const RootDatum* R = nullptr) {
    HardyFunction a;
    a.id = "rgamma";
    a.rank = rank;
    a.cert = {1.7, P, 1.0, 1.0};
    a.eval = [](const SpectralPoint& l) {
        cplx s = 1.0;
        for (const auto& x : l) s *= crgamma(x + 1.0);
        return s;
    };
    a.cert.C = fit_constant(a, R);
    return a;
}

/// sin(pi lambda_1): grows like e^{pi |Im lambda|}, so no certificate with A < pi holds.
inline HardyFunction hardy_sin(double A = 3.0, double P = 1.0) {
    HardyFunction a;
    a.id = "sin";
    a.rank = 1;
    a.cert = {A, P, 1.0, 1.0};
    a.eval = [](const SpectralPoint& l) { return std::sin(pi * l[0]); };
    return a;
}

/**
 * @brief Laplace transform lambda -> int_{[P,Rr]^l} h(x) exp(-sum lambda_j x_j) dx.
 *
 * Tensor Gauss-Legendre quadrature with the given panels per axis. The
 * result is entire with |Lh(lambda)| <= C e^{-P sum Re lambda_j} on H(delta),
 * so A = 0; C is fitted.
 */
inline HardyFunction laplace_hardy(std::function<double(const RVec&)> h, double P, double Rr, int rank = 1,
                                   int panels = 8, const RootDatum* R = nullptr, const std::string& id = "laplace") {
    if (!(P > 0.0 && P < Rr)) throw DomainError("laplace_hardy: need 0 < P < R");
    RVec x, w;
    composite_rule(P, Rr, panels, x, w);
    const std::size_t n = x.size();
    std::size_t total = 1;
    for (int j = 0; j < rank; ++j) total *= n;
    // Weighted samples; the kernel factors as prod_j e^{-lambda_j x_j}, so one
    // row of exponentials per axis suffices.
    std::vector<double> hv(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t r = k;
        RVec pt(rank);
        double ww = 1.0;
        for (int j = 0; j < rank; ++j) {
            pt[j] = x[r % n];
            ww *= w[r % n];
            r /= n;
        }
        hv[k] = ww * h(pt);
    }
    HardyFunction a;
    a.id = id;
    a.rank = rank;
    a.cert = {0.0, P, 1.0, 1.0};
    a.eval = [hv, x, rank](const SpectralPoint& l) {
        const std::size_t n = x.size();
        std::vector<cplx> E(rank * n);
        for (int j = 0; j < rank; ++j)
            for (std::size_t i = 0; i < n; ++i) E[j * n + i] = std::exp(-l[j] * x[i]);
        // Contract axis 0 (the fastest index) first, then the next.
        std::vector<cplx> cur(hv.size() / n);
        for (std::size_t m = 0; m < cur.size(); ++m) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += hv[m * n + i] * E[i];
            cur[m] = acc;
        }
        for (int j = 1; j < rank; ++j) {
            std::vector<cplx> next(cur.size() / n);
            for (std::size_t m = 0; m < next.size(); ++m) {
                cplx acc = 0.0;
                for (std::size_t i = 0; i < n; ++i) acc += cur[m * n + i] * E[j * n + i];
                next[m] = acc;
            }
            cur.swap(next);
        }
        return cur[0];
    };
    bool zero = true;
    for (double v : hv) zero = zero && v == 0.0;
    a.cert.C = zero ? 1.0 : fit_constant(a, R, 21);
    return a;
}

/// Indicator of [1, 2]^l; closed form prod_j (e^{-lambda_j} - e^{-2 lambda_j})/lambda_j.
inline HardyFunction hardy_box(int rank = 1, const RootDatum* R = nullptr) {
    return laplace_hardy([](const RVec&) { return 1.0; }, 1.0, 2.0, rank, 8, R, "box");
}

}  // namespace rmt
