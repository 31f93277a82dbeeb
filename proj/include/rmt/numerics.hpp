#pragma once

/**
 * @file numerics.hpp
 * @brief Complex gamma, Gauss hypergeometric function, vertical-line
 *        quadrature and numerical residues.
 */

#include <array>
#include <climits>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmt {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;
using RVec = std::vector<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : Error {
    using Error::Error;
};
struct DomainError : Error {
    using Error::Error;
};
struct OverflowError : Error {
    using Error::Error;
};
struct ConvergenceError : Error {
    using Error::Error;
};
struct CertificateError : Error {
    using Error::Error;
};

[[nodiscard]] inline bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Throws instead of letting NaN or Inf travel into a comparison.
inline cplx checked(cplx z, const char* where) {
    if (!is_finite(z)) throw DomainError(std::string("non-finite value in ") + where);
    return z;
}

/// True when z lies within tol of a nonpositive integer.
[[nodiscard]] inline bool near_nonpositive_integer(cplx z, double tol = 1e-14) {
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z - cplx(r, 0.0)) <= tol * std::max(1.0, std::abs(r));
}

// ---------------------------------------------------------------------------
// Gamma function
// ---------------------------------------------------------------------------

namespace detail {

// Lanczos approximation, g = 7, n = 9.
inline constexpr double lanczos_g = 7.0;
inline constexpr std::array<double, 9> lanczos_c = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

/// log Gamma(z) for Re z >= 1/2.
inline cplx lgamma_right(cplx z) {
    z -= 1.0;
    cplx x = lanczos_c[0];
    for (std::size_t k = 1; k < lanczos_c.size(); ++k) x += lanczos_c[k] / (z + double(k));
    const cplx t = z + lanczos_g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// log(sin(pi z)) up to a multiple of 2 pi i, stable for large |Im z|.
inline cplx log_sin_pi(cplx z) {
    const double y = z.imag();
    if (std::abs(y) < 15.0) return std::log(std::sin(pi * z));
    if (y > 0) return -I * pi * z - std::log(-2.0 * I) + std::log(1.0 - std::exp(2.0 * I * pi * z));
    return I * pi * z - std::log(2.0 * I) + std::log(1.0 - std::exp(-2.0 * I * pi * z));
}

}  // namespace detail

/**
 * @brief log Gamma(z), defined up to a multiple of 2 pi i.
 * @throws PoleError at nonpositive integers.
 */
[[nodiscard]] inline cplx clgamma(cplx z) {
    if (near_nonpositive_integer(z, 0.0)) throw PoleError("gamma pole at nonpositive integer");
    if (z.real() >= 0.5) return detail::lgamma_right(z);
    return std::log(pi) - detail::log_sin_pi(z) - detail::lgamma_right(1.0 - z);
}

/**
 * @brief Gamma(z) for complex z.
 * @throws PoleError at nonpositive integers, OverflowError beyond double range.
 */
[[nodiscard]] inline cplx cgamma(cplx z) {
    if (z.imag() == 0.0 && z.real() > 0.0 && z.real() < 171.0) return std::tgamma(z.real());
    if (z.real() < 0.5 && std::abs(z.imag()) < 15.0) {
        if (near_nonpositive_integer(z, 0.0)) throw PoleError("gamma pole at nonpositive integer");
        const cplx s = std::sin(pi * z);
        const cplx lg = detail::lgamma_right(1.0 - z);
        if (lg.real() < -700.0) throw OverflowError("gamma overflow");
        return pi / (s * std::exp(lg));
    }
    const cplx lg = clgamma(z);
    if (lg.real() > 709.0) throw OverflowError("gamma overflow");
    return std::exp(lg);
}

/// 1/Gamma(z); entire, exactly zero at nonpositive integers.
[[nodiscard]] inline cplx crgamma(cplx z) {
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real())) return 0.0;
    if (z.real() >= 0.5) {
        const cplx lg = detail::lgamma_right(z);
        if (lg.real() < -709.0) throw OverflowError("reciprocal gamma overflow");
        return std::exp(-lg);
    }
    const cplx lg = detail::lgamma_right(1.0 - z);
    if (std::abs(z.imag()) < 15.0) return std::sin(pi * z) * std::exp(lg) / pi;
    const cplx l = detail::log_sin_pi(z) + lg - std::log(pi);
    if (l.real() > 709.0) throw OverflowError("reciprocal gamma overflow");
    return std::exp(l);
}

// ---------------------------------------------------------------------------
// Gauss hypergeometric function
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_nonpositive_int(cplx a, long& n) {
    if (a.imag() != 0.0) return false;
    const double r = std::round(a.real());
    if (r > 0.0 || std::abs(a.real() - r) > 1e-13) return false;
    n = static_cast<long>(-r);
    return true;
}

inline bool near_integer(cplx z, double tol) {
    return std::abs(z.imag()) < tol && std::abs(z.real() - std::round(z.real())) < tol;
}

/// Maclaurin series; accepted for |z| < 1.
inline cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z, long max_terms) {
    cplx term = 1.0, sum = 1.0;
    int small = 0;
    for (long n = 0; n < max_terms; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
    }
    throw ConvergenceError("hyp2f1 series did not converge");
}

/// Connection formula around z = 1, given w = 1 - z; requires c - a - b away from integers.
inline cplx hyp2f1_one_minus(cplx a, cplx b, cplx c, cplx w, long max_terms) {
    const cplx s = c - a - b;
    const cplx t1 = cgamma(c) * cgamma(s) * crgamma(c - a) * crgamma(c - b);
    const cplx t2 = cgamma(c) * cgamma(-s) * crgamma(a) * crgamma(b);
    cplx r = 0.0;
    if (t1 != 0.0) r += t1 * hyp2f1_series(a, b, 1.0 - s, w, max_terms);
    if (t2 != 0.0) r += t2 * std::pow(w, s) * hyp2f1_series(c - a, c - b, 1.0 + s, w, max_terms);
    return r;
}

}  // namespace detail

/**
 * @brief Gauss hypergeometric function 2F1(a,b;c;z).
 *
 * Regions: |z| <= 0.8 direct series; real-axis z < 0 via the Pfaff map
 * z -> z/(z-1); |1-z| small via the z -> 1-z connection formula when
 * c-a-b is not an integer; z = 1 by Gauss summation; otherwise the
 * direct series is tried up to max_terms for |z| < 1.
 *
 * @throws PoleError if c is a nonpositive integer, ConvergenceError outside
 *         the supported region.
 */
[[nodiscard]] inline cplx hyp2f1(cplx a, cplx b, cplx c, cplx z, long max_terms = 200000) {
    long na = -1, nb = -1, nc = -1;
    const bool ta = detail::is_nonpositive_int(a, na);
    const bool tb = detail::is_nonpositive_int(b, nb);
    if (detail::is_nonpositive_int(c, nc)) {
        const long nt = std::min(ta ? na : LONG_MAX, tb ? nb : LONG_MAX);
        if (nt > nc) throw PoleError("hyp2f1: c is a nonpositive integer");
    }
    if (z == 0.0) return 1.0;
    if (ta || tb) {
        const long n = std::min(ta ? na : LONG_MAX, tb ? nb : LONG_MAX);
        cplx term = 1.0, sum = 1.0;
        for (long k = 0; k < n; ++k) {
            term *= (a + double(k)) * (b + double(k)) / ((c + double(k)) * double(k + 1)) * z;
            sum += term;
        }
        return sum;
    }
    if (z == 1.0) {
        if ((c - a - b).real() <= 0.0) throw ConvergenceError("hyp2f1: divergent at z = 1");
        return cgamma(c) * cgamma(c - a - b) * crgamma(c - a) * crgamma(c - b);
    }
    if (std::abs(z) <= 0.8) return detail::hyp2f1_series(a, b, c, z, max_terms);
    if (z.real() < 0.5) {
        const cplx w = z / (z - 1.0);
        const cplx pref = std::pow(1.0 - z, -a);
        if (std::abs(w) <= 0.8) return pref * detail::hyp2f1_series(a, c - b, c, w, max_terms);
        if (!detail::near_integer(b - a, 1e-6) && std::abs(1.0 - w) <= 0.8)
            return pref * detail::hyp2f1_one_minus(a, c - b, c, 1.0 / (1.0 - z), max_terms);
        if (std::abs(w) < 1.0) return pref * detail::hyp2f1_series(a, c - b, c, w, max_terms);
    }
    if (!detail::near_integer(c - a - b, 1e-6) && std::abs(1.0 - z) <= 0.8)
        return detail::hyp2f1_one_minus(a, b, c, 1.0 - z, max_terms);
    if (std::abs(z) < 1.0) return detail::hyp2f1_series(a, b, c, z, max_terms);
    throw ConvergenceError("hyp2f1: argument outside supported region");
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    RVec x, w;
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = 0.0;
                for (int k = 1; k <= n; ++k) {
                    const double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
                }
                dp = n * (z * p0 - p1) / (z * z - 1.0);
                const double dz = p0 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = -z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

inline const GaussLegendre& gauss16() {
    static const GaussLegendre g(16);
    return g;
}

/// Composite 16-point Gauss-Legendre rule on [a, b] with the given panel count.
inline void composite_rule(double a, double b, int panels, RVec& nodes, RVec& weights) {
    const auto& g = gauss16();
    nodes.clear();
    weights.clear();
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (std::size_t k = 0; k < g.x.size(); ++k) {
            nodes.push_back(mid + 0.5 * h * g.x[k]);
            weights.push_back(0.5 * h * g.w[k]);
        }
    }
}

/// Real integral of a real or complex function over [a, b].
template <class F>
auto integrate(F&& f, double a, double b, int panels = 8) {
    RVec x, w;
    composite_rule(a, b, panels, x, w);
    decltype(f(a)) s{};
    for (std::size_t k = 0; k < x.size(); ++k) s += w[k] * f(x[k]);
    return s;
}

/**
 * @brief Truncation settings for integrals over products of vertical lines.
 *
 * Each axis covers Im lambda_j in [-L, L] with ceil(nodes_per_axis / 16)
 * Gauss-Legendre panels.
 */
struct QuadratureConfig {
    double L = 14.0;
    int nodes_per_axis = 896;
    double tail_bound_target = 1e-12;
};

/**
 * @brief Majorant |f| <= C prod_j (1+|y_j|)^M e^{-rate |y_j|} on the lines.
 *
 * Used to bound the truncated tail before a quadrature result is accepted.
 */
struct DecayCertificate {
    double rate = pi;
    double degree = 0.0;
    double constant = 1.0;

    [[nodiscard]] double majorant1(double y) const {
        return std::pow(1.0 + std::abs(y), degree) * std::exp(-rate * std::abs(y));
    }
    /// 2 * int_L^inf (1+y)^M e^{-rate y} dy
    [[nodiscard]] double tail1(double L) const {
        const double span = std::max(40.0 / rate, 10.0);
        return 2.0 * integrate([&](double y) { return majorant1(y); }, L, L + span, 32);
    }
    [[nodiscard]] double full1() const { return tail1(0.0); }
    /// Bound on the part of the l-fold integral lying outside the box [-L, L]^l.
    [[nodiscard]] double tail_bound(double L, std::size_t l) const {
        const double t = tail1(L), f = full1();
        return constant * double(l) * t * std::pow(f, double(l) - 1.0);
    }
};

using Integrand = std::function<cplx(const CVec&)>;

/**
 * @brief Integral over sigma + i R^l with dlambda_j = i dy_j.
 *
 * Iterated 1-D composite Gauss-Legendre quadrature, lambda_1 innermost.
 * With a certificate, the tail bound must stay below the target and the
 * integrand sampled on the truncation boundary must respect the majorant.
 *
 * @throws CertificateError on a tail-bound or boundary-sample violation.
 */
inline cplx line_integral(const Integrand& f, const RVec& sigma, const QuadratureConfig& cfg,
                          const DecayCertificate* cert = nullptr) {
    const std::size_t l = sigma.size();
    if (l == 0) return f({});
    if (cfg.L <= 0.0 || cfg.nodes_per_axis < 16) throw DomainError("line_integral: invalid quadrature config");
    if (cert) {
        const double tb = cert->tail_bound(cfg.L, l);
        if (!(tb <= cfg.tail_bound_target))
            throw CertificateError("line_integral: tail bound " + std::to_string(tb) + " exceeds target");
        CVec p(l);
        for (std::size_t j = 0; j < l; ++j) {
            for (double s : {-1.0, 1.0}) {
                for (std::size_t k = 0; k < l; ++k) p[k] = cplx(sigma[k], k == j ? s * cfg.L : 0.37 * cfg.L);
                double maj = cert->constant;
                for (std::size_t k = 0; k < l; ++k) maj *= cert->majorant1(p[k].imag());
                const double v = std::abs(f(p));
                if (!std::isfinite(v) || v > maj * (1.0 + 1e-9))
                    throw CertificateError("line_integral: integrand exceeds majorant on the truncation boundary");
            }
        }
    }
    const int panels = (cfg.nodes_per_axis + 15) / 16;
    RVec y, w;
    composite_rule(-cfg.L, cfg.L, panels, y, w);
    const std::size_t n = y.size();
    std::vector<std::size_t> idx(l, 0);
    CVec p(l);
    // Partial sums per level give the iterated inner-to-outer order.
    CVec acc(l + 1, 0.0);
    while (true) {
        for (std::size_t k = 0; k < l; ++k) p[k] = cplx(sigma[k], y[idx[k]]);
        acc[0] = f(p);
        std::size_t lev = 0;
        // Fold finished levels upward.
        while (true) {
            acc[lev + 1] += w[idx[lev]] * acc[lev];
            acc[lev] = 0.0;
            if (++idx[lev] < n) break;
            idx[lev] = 0;
            ++lev;
            if (lev == l) {
                cplx r = acc[l];
                for (std::size_t k = 0; k < l; ++k) r *= I;
                return checked(r, "line_integral");
            }
        }
    }
}

/**
 * @brief Residue (1/2 pi i) \oint f over a circle, trapezoid rule.
 *
 * Computed at radius and radius/2; disagreement beyond tol signals another
 * pole inside the larger circle.
 */
template <class F>
cplx residue_at(F&& f, cplx z0, double radius, int nodes = 128, double tol = 1e-10) {
    auto ring = [&](double r) {
        cplx s = 0.0;
        for (int k = 0; k < nodes; ++k) {
            const cplx e = std::polar(1.0, 2.0 * pi * (k + 0.5) / nodes);
            s += f(z0 + r * e) * r * e;
        }
        return s / double(nodes);
    };
    const cplx r1 = ring(radius), r2 = ring(0.5 * radius);
    if (!is_finite(r1) || !is_finite(r2)) throw DomainError("residue_at: non-finite integrand");
    if (std::abs(r1 - r2) > tol * std::max(1.0, std::abs(r2)))
        throw PoleError("residue_at: another singularity inside the contour");
    return r2;
}

}  // namespace rmt
