#pragma once

/**
 * @file plancherel.hpp
 * @brief Harish-Chandra c-function, Plancherel density and its factorization
 *        C_beta p_beta q_beta, and the Weyl dimension polynomial.
 *
 * Two independent routes to the density are kept: gamma functions through
 * c(lambda), and the factored form. The factored form has no removable
 * singularities at the interpolation lattice, so integrands use it.
 */

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rmt/numerics.hpp"
#include "rmt/root_system.hpp"

namespace rmt {

/// Factors of 1/(c_beta(lambda) c_beta(-lambda)) for one unmultipliable root.
struct DensityFactor {
    double C = 0.0;     ///< 4 pi eps(beta)
    RVec roots;         ///< zeros of p_beta as a polynomial in lambda_beta
    bool has_q = false; ///< q_beta = cot(pi(lambda_beta - rho_tilde)) when m_beta is odd
    double rho_tilde = 0.0;

    [[nodiscard]] cplx p(cplx x) const {
        cplx s = 1.0;
        for (double r : roots) s *= x - r;
        return s;
    }
    [[nodiscard]] cplx q(cplx x) const {
        if (!has_q) return 1.0;
        return 1.0 / std::tan(pi * (x - rho_tilde));
    }
    [[nodiscard]] int degree() const { return static_cast<int>(roots.size()); }
};

/// eps(beta) from the parity of the multiplicities.
inline int density_sign(int m_half, int m) {
    if (m % 2 == 0) return (m / 2) % 2 == 0 ? 1 : -1;
    return ((m_half + m - 1) / 2) % 2 == 0 ? 1 : -1;
}

/**
 * @brief Roots of p_beta.
 *
 * {0} together with rho_tilde - k for k = 1..2 rho_tilde - 1 and
 * m_{beta/2}/4 - 1/2 - k for k = 0..m_{beta/2}/2 - 1. For rho_tilde = 1 and
 * m_{beta/2} = 0 this gives lambda_beta^2.
 */
inline RVec density_roots(int m_half, int m) {
    const double rt = 0.5 * (m + 0.5 * m_half);
    RVec r{0.0};
    if (rt == 0.5) return r;
    const int n1 = static_cast<int>(std::lround(2.0 * rt)) - 1;
    for (int k = 1; k <= n1; ++k) r.push_back(rt - k);
    for (int k = 0; k < m_half / 2; ++k) r.push_back(0.25 * m_half - 0.5 - k);
    return r;
}

inline DensityFactor make_density_factor(const UnmultRoot& u) {
    DensityFactor f;
    f.C = 4.0 * pi * density_sign(u.m_half, u.m);
    f.roots = density_roots(u.m_half, u.m);
    f.has_q = u.m % 2 == 1;
    f.rho_tilde = u.rho_tilde;
    if (f.degree() != u.m + u.m_half) throw Error("density factor has wrong degree");
    return f;
}

struct WeylDim {
    long value = 0;
    double residual = 0.0;  ///< relative distance to the nearest integer
};

/**
 * @brief c-function, density and dimension polynomial of one root datum.
 *
 * Holds its own copy of the datum; immutable after construction.
 */
class CFunction {
public:
    explicit CFunction(RootDatum datum) : R_(std::move(datum)) {
        for (const auto& u : R_.unmult) F_.push_back(make_density_factor(u));
        const auto rho = R_.rho_point();
        cplx prod = 1.0;
        for (const auto& u : R_.unmult) prod *= c_beta(u, R_.lambda_beta(rho, u));
        c0_ = (1.0 / prod).real();
        P_rho_ = P(rho).real();
        if (!(P_rho_ > 0.0)) throw Error("P(rho) must be positive");
        // Positivity of the density on the tempered spectrum.
        SpectralPoint probe(R_.rank);
        for (int j = 0; j < R_.rank; ++j) probe[j] = cplx(0.0, 0.37 + 0.29 * j);
        for (std::size_t k = 0; k < F_.size(); ++k) {
            const cplx x = R_.lambda_beta(probe, R_.unmult[k]);
            const cplx v = F_[k].C * F_[k].p(x) * F_[k].q(x);
            if (!(v.real() > 0.0) || std::abs(v.imag()) > 1e-9 * std::abs(v))
                throw Error("density factor is not positive on the imaginary axis");
        }
    }

    [[nodiscard]] const RootDatum& datum() const { return R_; }
    [[nodiscard]] double c0() const { return c0_; }
    [[nodiscard]] double P_rho() const { return P_rho_; }
    [[nodiscard]] const std::vector<DensityFactor>& factors() const { return F_; }

    /**
     * @brief Unnormalized c_beta(lambda) = 2^{-2x} Gamma(2x) / (Gamma(x + m_{beta/2}/4 + 1/2)
     *        Gamma(x + m_{beta/2}/4 + m_beta/2)) at x = lambda_beta.
     * @throws PoleError when 2x is a nonpositive integer.
     */
    [[nodiscard]] static cplx c_beta(const UnmultRoot& u, cplx x) {
        const cplx a = x + 0.25 * u.m_half + 0.5;
        const cplx b = x + 0.25 * u.m_half + 0.5 * u.m;
        if (near_nonpositive_integer(2.0 * x, 0.0)) {
            std::ostringstream os;
            os << "c_function: pole of Gamma(2 lambda_beta) at beta with omega-coordinates (";
            for (std::size_t i = 0; i < u.omega_coords.size(); ++i) os << (i ? "," : "") << u.omega_coords[i];
            os << ")";
            throw PoleError(os.str());
        }
        if (near_nonpositive_integer(a, 0.0) || near_nonpositive_integer(b, 0.0)) return 0.0;
        const cplx lg = -2.0 * x * std::log(2.0) + clgamma(2.0 * x) - clgamma(a) - clgamma(b);
        if (lg.real() > 709.0) throw OverflowError("c_function overflow");
        return std::exp(lg);
    }

    /// c(lambda) = c0 prod_beta c_beta(lambda).
    [[nodiscard]] cplx c_function(const SpectralPoint& lam) const {
        check_len(lam);
        cplx s = c0_;
        for (const auto& u : R_.unmult) s *= c_beta(u, R_.lambda_beta(lam, u));
        return checked(s, "c_function");
    }

    /// 1/(c(lambda) c(-lambda)) through gamma functions.
    [[nodiscard]] cplx density(const SpectralPoint& lam) const {
        check_len(lam);
        cplx s = 1.0 / (c0_ * c0_);
        for (const auto& u : R_.unmult) {
            const cplx x = R_.lambda_beta(lam, u);
            s /= c_beta(u, x) * c_beta(u, -x);
        }
        return checked(s, "density");
    }

    /// C_beta p_beta(lambda) q_beta(lambda) for the k-th unmultipliable root.
    [[nodiscard]] cplx factor_eval(std::size_t k, const SpectralPoint& lam) const {
        const cplx x = R_.lambda_beta(lam, R_.unmult.at(k));
        return F_[k].C * F_[k].p(x) * F_[k].q(x);
    }

    /// c0^{-2} prod_beta C_beta p_beta q_beta.
    [[nodiscard]] cplx density_factored(const SpectralPoint& lam) const {
        check_len(lam);
        cplx s = 1.0 / (c0_ * c0_);
        for (std::size_t k = 0; k < F_.size(); ++k) s *= factor_eval(k, lam);
        return checked(s, "density_factored");
    }

    /// P(lambda) = prod_beta p_beta(lambda).
    [[nodiscard]] cplx P(const SpectralPoint& lam) const {
        cplx s = 1.0;
        for (std::size_t k = 0; k < F_.size(); ++k) s *= F_[k].p(R_.lambda_beta(lam, R_.unmult[k]));
        return s;
    }
    [[nodiscard]] double P(const RVec& lam) const {
        return P(SpectralPoint(lam.begin(), lam.end())).real();
    }

    /// d(lambda) = P(lambda + rho)/P(rho).
    [[nodiscard]] cplx d_poly(const SpectralPoint& lam) const {
        check_len(lam);
        SpectralPoint s = lam;
        for (int j = 0; j < R_.rank; ++j) s[j] += R_.rho.rho[j];
        return P(s) / P_rho_;
    }

    /**
     * @brief d(mu) rounded to the nearest integer.
     * @throws DomainError if the rational value is not integral to 1e-8.
     */
    [[nodiscard]] WeylDim weyl_dim_checked(const DominantWeight& mu) const {
        if (static_cast<int>(mu.mu.size()) != R_.rank) throw DomainError("weight has wrong length");
        SpectralPoint l(R_.rank);
        for (int j = 0; j < R_.rank; ++j) l[j] = double(mu.mu[j]);
        const double v = d_poly(l).real();
        WeylDim r;
        r.value = std::lround(v);
        r.residual = std::abs(v - double(r.value)) / std::max(1.0, std::abs(v));
        if (r.residual > 1e-8)
            throw DomainError("weyl_dim: non-integral value, factorization is inconsistent");
        return r;
    }
    [[nodiscard]] long weyl_dim(const DominantWeight& mu) const { return weyl_dim_checked(mu).value; }

    /**
     * @brief c(lambda-mu)c(mu-lambda)/(c(lambda)c(-lambda)) as lambda -> mu + rho,
     *        through gamma functions only.
     *
     * Evaluated at distances h and h/2 along a fixed generic direction and
     * combined by one Richardson step.
     */
    [[nodiscard]] cplx dim_limit(const DominantWeight& mu, double h = 1e-4) const {
        SpectralPoint base(R_.rank), shift(R_.rank), dir(R_.rank);
        for (int j = 0; j < R_.rank; ++j) {
            shift[j] = double(mu.mu[j]);
            base[j] = shift[j] + R_.rho.rho[j];
            dir[j] = cplx(0.61 + 0.17 * j, 0.23 - 0.11 * j);
        }
        auto ratio = [&](double s) {
            SpectralPoint l = base, lm = base;
            for (int j = 0; j < R_.rank; ++j) {
                l[j] += s * dir[j];
                lm[j] = l[j] - shift[j];
            }
            return density(l) / density(lm);
        };
        return 2.0 * ratio(0.5 * h) - ratio(h);
    }

private:
    void check_len(const SpectralPoint& lam) const {
        if (static_cast<int>(lam.size()) != R_.rank) throw DomainError("spectral point has wrong length");
    }

    RootDatum R_;
    std::vector<DensityFactor> F_;
    double c0_ = 1.0;
    double P_rho_ = 1.0;
};

}  // namespace rmt
