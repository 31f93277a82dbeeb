#pragma once

/**
 * @file bfunction.hpp
 * @brief The normalizing function b(lambda), b/(c c), the symmetrization
 *        a~(lambda) and the defining residue identity.
 *
 * b/(c(lambda)c(-lambda)) = (C_b/P(rho)) P(lambda) prod_j 1/sin(pi(lambda_j - rho_j))
 * with C_b = (i/2)^l. Dividing by the factored density gives
 * b = K_b T(lambda) prod_j 1/sin(pi(lambda_j - rho_j)) with
 * K_b = C_b c0^2 / (P(rho) prod_beta C_beta).
 */

#include <cmath>
#include <optional>
#include <vector>

#include "rmt/hardy.hpp"
#include "rmt/numerics.hpp"
#include "rmt/plancherel.hpp"
#include "rmt/root_system.hpp"

namespace rmt {

/// Guard radius around singular hyperplanes.
inline constexpr double pole_guard = 1e-8;

namespace detail {

/// x / sin(pi x), accurate near 0.
inline cplx x_over_sin(cplx x) {
    if (std::abs(x) < 1e-4) {
        const cplx u = pi * x;
        return (1.0 + u * u / 6.0 + 7.0 * u * u * u * u / 360.0) / pi;
    }
    return x / std::sin(pi * x);
}

inline double dist_to_int(cplx x) { return std::abs(x - std::round(x.real())); }

/// sin(pi(z - s)) with the integer part removed before scaling, so values
/// near a zero keep full relative accuracy. s is a half-integer.
inline cplx sinpi_shift(cplx z, double s) {
    const double n = std::round(z.real() - s);
    const cplx y = z - (s + n);
    return (std::fmod(std::abs(n), 2.0) == 0.0 ? 1.0 : -1.0) * std::sin(pi * y);
}
inline cplx cospi_shift(cplx z, double s) {
    const double n = std::round(z.real() - s);
    const cplx y = z - (s + n);
    return (std::fmod(std::abs(n), 2.0) == 0.0 ? 1.0 : -1.0) * std::cos(pi * y);
}

}  // namespace detail

/**
 * @brief b(lambda) and the quantities built from it, for one root datum.
 */
class BFunction {
public:
    explicit BFunction(RootDatum datum) : cf_(std::move(datum)) {
        const auto& R = cf_.datum();
        const int l = R.rank;
        C_b_ = std::pow(0.5 * I, l);
        double prodC = 1.0;
        for (const auto& f : cf_.factors()) prodC *= f.C;
        const double c02 = cf_.c0() * cf_.c0();
        K_b_ = C_b_ * c02 / (cf_.P_rho() * prodC);
        K_b_printed_ = C_b_ * c02 * prodC / cf_.P_rho();
        // Sign of K'_b from one generic reference point.
        SpectralPoint ref(l);
        for (int j = 0; j < l; ++j) ref[j] = cplx(0.1234 + 0.0731 * j, 0.3817 - 0.1523 * j);
        const cplx ratio = b_eval(ref) / (K_b_ * explicit_unsigned(ref));
        sign_residual_ = std::min(std::abs(ratio - 1.0), std::abs(ratio + 1.0));
        K_b_prime_ = (ratio.real() >= 0.0 ? 1.0 : -1.0) * K_b_;
        gamma_ = 1.0;
        for (const auto& u : R.unmult)
            gamma_ = std::min(gamma_, u.even_half() ? 1.0 / u.rho_tilde : 1.0 / (2.0 * u.rho_tilde));
    }

    [[nodiscard]] const CFunction& cfun() const { return cf_; }
    [[nodiscard]] const RootDatum& datum() const { return cf_.datum(); }

    [[nodiscard]] cplx C_b() const { return C_b_; }
    /// K_b consistent with b/(cc) and the factored density.
    [[nodiscard]] cplx K_b() const { return K_b_; }
    /// K_b as printed, with prod C_beta in the numerator; kept as a diagnostic.
    [[nodiscard]] cplx K_b_printed() const { return K_b_printed_; }
    /// Sign-resolved constant of the explicit form.
    [[nodiscard]] cplx K_b_prime() const { return K_b_prime_; }
    /// Distance of the reference ratio from +-1; nonzero values are a finding.
    [[nodiscard]] double sign_residual() const { return sign_residual_; }

    /// gamma = min{delta, 1/rho_tilde (m_{beta/2}/2 even), 1/(2 rho_tilde) (odd)}.
    [[nodiscard]] double gamma_threshold(double delta) const { return std::min(delta, gamma_); }

    /// Pi(lambda) = prod_beta lambda_beta.
    [[nodiscard]] cplx Pi(const SpectralPoint& lam) const {
        cplx s = 1.0;
        for (const auto& u : datum().unmult) s *= datum().lambda_beta(lam, u);
        return s;
    }

    /**
     * @brief b(lambda) = K_b T(lambda) prod_j 1/sin(pi(lambda_j - rho_j)).
     *
     * For odd m_{beta_j} the factor tan/sin of the simple root is evaluated
     * as 1/cos, which is the same function without the removable points.
     * @throws PoleError within pole_guard of a singular hyperplane.
     */
    [[nodiscard]] cplx b_eval(const SpectralPoint& lam) const {
        const auto& R = datum();
        check_len(lam);
        cplx s = K_b_;
        for (const auto& u : R.unmult) {
            if (u.simple_index >= 0 || u.m % 2 == 0) continue;
            const cplx z = R.lambda_beta(lam, u);
            if (detail::dist_to_int(z - u.rho_tilde - 0.5) < pole_guard) throw PoleError("b: pole of tan factor");
            s *= detail::sinpi_shift(z, u.rho_tilde) / detail::cospi_shift(z, u.rho_tilde);
        }
        for (const auto& u : R.unmult) {
            if (u.simple_index < 0) continue;
            const cplx z = lam[u.simple_index];
            const double r = R.rho.rho[u.simple_index];
            if (u.m % 2 == 0) {
                if (detail::dist_to_int(z - r) < pole_guard) throw PoleError("b: pole on lambda_j - rho_j in Z");
                s /= detail::sinpi_shift(z, r);
            } else {
                if (detail::dist_to_int(z - r - 0.5) < pole_guard) throw PoleError("b: pole on lambda_j - rho_j in Z + 1/2");
                s /= detail::cospi_shift(z, r);
            }
        }
        return checked(s, "b_eval");
    }

    /**
     * @brief Explicit form: K'_b prod cot(pi lambda_beta) (non-simple, cases b, c)
     *        prod tan(pi lambda_beta) (non-simple, case d) prod 1/sin(pi lambda_j)
     *        (simple, cases a-c) prod 1/cos(pi lambda_j) (simple, case d).
     */
    [[nodiscard]] cplx b_explicit(const SpectralPoint& lam) const {
        check_len(lam);
        return checked(K_b_prime_ * explicit_unsigned(lam), "b_explicit");
    }

    /// True if lambda lies (to tol) on a singular hyperplane of b.
    [[nodiscard]] bool b_is_pole(const SpectralPoint& lam, double tol = pole_guard) const {
        const auto& R = datum();
        for (const auto& u : R.unmult) {
            const cplx x = R.lambda_beta(lam, u);
            const bool d = u.mult_case() == MultCase::d;
            if (u.simple_index >= 0) {
                if (detail::dist_to_int(d ? x - 0.5 : x) < tol) return true;
            } else if (u.m % 2 == 1) {
                if (detail::dist_to_int(d ? x - 0.5 : x) < tol) return true;
            }
        }
        return false;
    }

    /// True if lambda lies on +-lambda_j - rho_j = k, k in Z_+, a pole of b/(cc).
    [[nodiscard]] bool bcc_is_pole(const SpectralPoint& lam, double tol = pole_guard) const {
        const auto& R = datum();
        for (int j = 0; j < R.rank; ++j) {
            const cplx x = lam[j];
            const double rj = R.rho.rho[j];
            const double k = std::round(x.real() - rj);
            if (std::abs(x - (rj + k)) < tol && std::abs(rj + k) >= rj - 1e-12) return true;
        }
        return false;
    }

    /**
     * @brief b(lambda)/(c(lambda)c(-lambda)) = (C_b/P(rho)) P(lambda) prod_j 1/sin(pi(lambda_j - rho_j)).
     *
     * Zeros of p_{beta_j} that cancel a sine zero are divided out analytically.
     * @throws PoleError within pole_guard of a residual pole.
     */
    [[nodiscard]] cplx b_over_cc(const SpectralPoint& lam) const {
        const auto& R = datum();
        check_len(lam);
        cplx s = C_b_ / cf_.P_rho();
        for (std::size_t k = 0; k < R.unmult.size(); ++k) {
            const auto& u = R.unmult[k];
            const auto& F = cf_.factors()[k];
            const cplx x = R.lambda_beta(lam, u);
            if (u.simple_index < 0) {
                s *= F.p(x);
                continue;
            }
            const int j = u.simple_index;
            const double rj = R.rho.rho[j];
            const double rstar = rj + std::round(x.real() - rj);
            // Remove one copy of rstar from the roots of p_{beta_j} when present.
            int drop = -1;
            if (std::abs(rstar) < rj - 1e-12)
                for (std::size_t i = 0; i < F.roots.size(); ++i)
                    if (std::abs(F.roots[i] - rstar) < 1e-12) {
                        drop = static_cast<int>(i);
                        break;
                    }
            if (drop >= 0) {
                for (std::size_t i = 0; i < F.roots.size(); ++i)
                    if (static_cast<int>(i) != drop) s *= x - F.roots[i];
                const long n = std::lround(rstar - rj);
                s *= (n % 2 == 0 ? 1.0 : -1.0) * detail::x_over_sin(x - rstar);
            } else {
                if (std::abs(x - rstar) < pole_guard) throw PoleError("b/(cc): pole at lambda_j = mu_j + rho_j");
                s *= F.p(x) / detail::sinpi_shift(x, rj);
            }
        }
        return checked(s, "b_over_cc");
    }

    /**
     * @brief a~(lambda) = sum_w a(w lambda) b(w lambda).
     *
     * Near a root hyperplane lambda_beta = 0 the sum has a removable
     * singularity; it is then evaluated at lambda +- h v for a fixed generic
     * direction v, at h and h/2, and extrapolated.
     * @throws DomainError outside T_{Sigma,m} cap T_delta, ConvergenceError
     *         when the extrapolation residual is too large.
     */
    [[nodiscard]] cplx a_tilde(const HardyFunction& a, const SpectralPoint& lam, double h = 1e-6) const {
        const auto& R = datum();
        check_len(lam);
        if (!R.in_tube(lam, Tube::T_Sigma_m, 0.0) || !R.in_tube(lam, Tube::T_delta, a.cert.delta))
            throw DomainError("a_tilde: lambda outside T_{Sigma,m} cap T_delta");
        double mind = 1e300;
        for (const auto& u : R.unmult) mind = std::min(mind, std::abs(R.lambda_beta(lam, u)));
        if (mind > 1e-4) return sum_ab(a, lam);
        SpectralPoint v(R.rank);
        for (int j = 0; j < R.rank; ++j) v[j] = cplx(0.7071 + 0.1312 * j, 0.3183 - 0.0917 * j);
        auto central = [&](double s) {
            SpectralPoint p = lam, m = lam;
            for (int j = 0; j < R.rank; ++j) {
                p[j] += s * v[j];
                m[j] -= s * v[j];
            }
            return 0.5 * (sum_ab(a, p) + sum_ab(a, m));
        };
        const double hh = std::max(h, 10.0 * mind);
        const cplx c1 = central(hh), c2 = central(0.5 * hh);
        const cplx r = (4.0 * c2 - c1) / 3.0;
        if (std::abs(c1 - c2) > 1e-6 * std::max(1.0, std::abs(r)))
            throw ConvergenceError("a_tilde: removable-singularity extrapolation did not settle");
        return r;
    }

    /// sum_w a(w lambda) b_over_cc(w lambda): the integrand weight of the contour form.
    [[nodiscard]] cplx ab_over_cc_sym(const HardyFunction& a, const SpectralPoint& lam) const {
        const auto& R = datum();
        cplx s = 0.0;
        for (std::size_t w = 0; w < R.order_W(); ++w) {
            const auto wl = R.apply(static_cast<int>(w), lam);
            s += a(wl) * b_over_cc(wl);
        }
        return s;
    }

    /**
     * @brief Iterated residue of b/(cc) at lambda = mu + rho divided by
     *        (-1)^{|mu|} d(mu) (-2 pi i)^{-l}; equals 1.
     */
    [[nodiscard]] cplx residue_check(const DominantWeight& mu, double radius = 0.25) const {
        const auto& R = datum();
        const int l = R.rank;
        if (static_cast<int>(mu.mu.size()) != l) throw DomainError("weight has wrong length");
        SpectralPoint pt(l);
        for (int j = 0; j < l; ++j) pt[j] = double(mu.mu[j]) + R.rho.rho[j];
        // Innermost residue in lambda_l, outermost in lambda_1.
        std::function<cplx(int, SpectralPoint&)> nested = [&](int level, SpectralPoint& cur) -> cplx {
            if (level == l) return b_over_cc(cur);
            const cplx z0 = pt[level];
            return residue_at(
                [&](cplx z) {
                    SpectralPoint c = cur;
                    c[level] = z;
                    return nested(level + 1, c);
                },
                z0, radius, 64, 1e-9);
        };
        SpectralPoint cur = pt;
        const cplx res = nested(0, cur);
        const double d = static_cast<double>(cf_.weyl_dim(mu));
        const double sgn = mu.height() % 2 == 0 ? 1.0 : -1.0;
        return res * std::pow(-2.0 * pi * I, l) / (sgn * d);
    }

private:
    void check_len(const SpectralPoint& lam) const {
        if (static_cast<int>(lam.size()) != datum().rank) throw DomainError("spectral point has wrong length");
    }

    [[nodiscard]] cplx explicit_unsigned(const SpectralPoint& lam) const {
        const auto& R = datum();
        cplx s = 1.0;
        for (const auto& u : R.unmult) {
            const cplx x = R.lambda_beta(lam, u);
            const MultCase mc = u.mult_case();
            const cplx sn = detail::sinpi_shift(x, 0.0), cs = detail::cospi_shift(x, 0.0);
            if (u.simple_index >= 0) {
                s /= mc == MultCase::d ? cs : sn;
            } else if (mc == MultCase::b || mc == MultCase::c) {
                s *= cs / sn;
            } else if (mc == MultCase::d) {
                s *= sn / cs;
            }
        }
        return s;
    }

    [[nodiscard]] cplx sum_ab(const HardyFunction& a, const SpectralPoint& lam) const {
        const auto& R = datum();
        cplx s = 0.0;
        for (std::size_t w = 0; w < R.order_W(); ++w) {
            const auto wl = R.apply(static_cast<int>(w), lam);
            s += a(wl) * b_eval(wl);
        }
        return s;
    }

    CFunction cf_;
    cplx C_b_, K_b_, K_b_printed_, K_b_prime_;
    double sign_residual_ = 0.0;
    double gamma_ = 1.0;
};

}  // namespace rmt
