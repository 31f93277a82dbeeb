#pragma once

/**
 * @file spherical.hpp
 * @brief Spherical functions phi_lambda(exp H) in the closed-form regimes:
 *        complex case (any rank), rank one via 2F1, the compact duals, and an
 *        Iwasawa-integral oracle for SL(2,R) and SL(2,C).
 *
 * Radial points are given in the coordinates dual to the omega-basis, so
 * lambda(H) = sum_j lambda_j H_j. In rank one t = H_1 = beta(H).
 */

#include <cmath>
#include <string>
#include <vector>

#include "rmt/numerics.hpp"
#include "rmt/root_system.hpp"

namespace rmt {

using RadialPoint = RVec;

/// True for reduced systems with all multiplicities 2 (G complex).
inline bool is_complex_case(const RootDatum& R) {
    for (const auto& u : R.unmult)
        if (u.m != 2 || u.m_half != 0) return false;
    return true;
}

namespace detail {

inline cplx pair_c(const SpectralPoint& lam, const CVec& H) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < H.size(); ++j) s += lam[j] * H[j];
    return s;
}

inline CVec to_c(const RVec& v) { return CVec(v.begin(), v.end()); }

/// Richardson table in h^2 for the symmetric average p(h) = (g(h) + g(-h))/2.
template <class G>
cplx symmetric_limit(G&& g, double h, double& residual) {
    auto p = [&](double s) { return 0.5 * (g(s) + g(-s)); };
    const cplx p1 = p(h), p2 = p(0.5 * h), p3 = p(0.25 * h);
    const cplx r12 = (4.0 * p2 - p1) / 3.0, r23 = (4.0 * p3 - p2) / 3.0;
    const cplx r = (16.0 * r23 - r12) / 15.0;
    residual = std::abs(r - r23);
    return r;
}

}  // namespace detail

/// Result of an evaluation that may have gone through extrapolation.
struct SphericalValue {
    cplx value;
    double residual = 0.0;  ///< extrapolation residual, 0 for direct evaluation
    bool extrapolated = false;
};

/**
 * @brief Complex-case spherical function
 *        (pi(rho)/pi(lambda)) sum_w det(w) e^{(w lambda)(H)} / sum_w det(w) e^{(w rho)(H)}.
 *
 * H may be complex (compact continuation). At Weyl-singular lambda or H the
 * value is the limit along a generic offset, by a Richardson table in h^2.
 * @throws DomainError for a space outside the complex case, ConvergenceError
 *         if the extrapolation residual exceeds 1e-7 relative.
 */
inline SphericalValue phi_complex_ex(const RootDatum& R, const SpectralPoint& lam, const CVec& H) {
    if (!is_complex_case(R)) throw DomainError("phi_complex: space is not in the complex case");
    if (static_cast<int>(lam.size()) != R.rank || static_cast<int>(H.size()) != R.rank)
        throw DomainError("phi_complex: wrong length");
    bool zeroH = true;
    for (const auto& h : H) zeroH = zeroH && h == 0.0;
    if (zeroH) return {1.0};

    const auto rho = R.rho_point();
    auto Pi = [&](const SpectralPoint& l) {
        cplx s = 1.0;
        for (const auto& u : R.unmult) s *= R.lambda_beta(l, u);
        return s;
    };
    // sum_w det(w) e^{x_w}. For small |x_w| the exponentials cancel to order
    // |x|^N (N positive roots), so sum the power series from k = N instead.
    const int N = static_cast<int>(R.unmult.size());
    auto alt = [&](const SpectralPoint& l, const CVec& h) {
        std::vector<cplx> x(R.order_W());
        double m = 0.0;
        for (std::size_t w = 0; w < R.order_W(); ++w) {
            x[w] = detail::pair_c(R.apply(static_cast<int>(w), l), h);
            m = std::max(m, std::abs(x[w]));
        }
        cplx s = 0.0;
        if (m > 3.0) {
            for (std::size_t w = 0; w < x.size(); ++w) s += double(R.weyl_det[w]) * std::exp(x[w]);
            return s;
        }
        std::vector<cplx> p(x.size());
        double fact = 1.0;
        for (int k = 1; k <= N; ++k) fact *= k;
        for (std::size_t w = 0; w < x.size(); ++w) p[w] = double(R.weyl_det[w]) * std::pow(x[w], N) / fact;
        for (int k = N;; ++k) {
            cplx t = 0.0;
            for (const auto& v : p) t += v;
            s += t;
            double bound = 0.0;
            for (std::size_t w = 0; w < x.size(); ++w) {
                p[w] *= x[w] / double(k + 1);
                bound += std::abs(p[w]);
            }
            if (bound <= 1e-17 * std::abs(s) || k > 80) break;
        }
        return s;
    };
    auto raw = [&](const SpectralPoint& l, const CVec& h) { return Pi(rho) / Pi(l) * alt(l, h) / alt(rho, h); };

    // Singularity test: smallest |lambda_beta| and |beta(H)|.
    double scale_h = 0.0;
    std::vector<double> bl, bh;
    for (const auto& u : R.unmult) {
        bl.push_back(std::abs(R.lambda_beta(lam, u)));
        cplx x = 0.0;
        for (int j = 0; j < R.rank; ++j) x += u.omega_coords[j] * H[j];
        bh.push_back(std::abs(x));
        scale_h = std::max(scale_h, std::abs(x));
    }
    int nl = 0, nh = 0;
    for (std::size_t k = 0; k < bl.size(); ++k) {
        nl += bl[k] < 1e-3;
        nh += bh[k] < 1e-3 * scale_h;
    }
    const bool sl = nl > 0, sh = nh > 0;
    if (!sl && !sh) return {raw(lam, H)};

    SpectralPoint vl(R.rank);
    CVec vh(R.rank);
    for (int j = 0; j < R.rank; ++j) {
        // Quadratic in j so that no Cartan row annihilates the direction.
        vl[j] = cplx(0.5377 + 0.2113 * j + 0.0731 * j * j, 0.1871 - 0.0934 * j + 0.0412 * j * j);
        vh[j] = 0.4163 + 0.1729 * j + 0.0917 * j * j;
    }
    // Balance the h^6 truncation against cancellation in the vanishing factors.
    // The expansion variable is s|H| for a lambda offset; an H offset stays
    // relative to |H| and below 1/max(|lambda|, |rho|).
    double scale_l = 0.0;
    for (double b : bl) scale_l = std::max(scale_l, b);
    const double sc_l = 1.0 / std::max(scale_h, 1e-3), sc_h = std::min(scale_h, 1.0 / std::max(1.0, scale_l));
    const double hh = std::pow(1e-16, 1.0 / (6 + nl + nh));
    double res = 0.0;
    const cplx v = detail::symmetric_limit(
        [&](double s) {
            SpectralPoint l = lam;
            CVec h = H;
            for (int j = 0; j < R.rank; ++j) {
                if (sl) l[j] += s * vl[j] * sc_l;
                if (sh) h[j] += s * vh[j] * sc_h;
            }
            return raw(l, h);
        },
        hh, res);
    if (res > 1e-7 * std::max(1.0, std::abs(v))) throw ConvergenceError("phi_complex: extrapolation did not settle");
    return {v, res, true};
}

inline cplx phi_complex(const RootDatum& R, const SpectralPoint& lam, const RadialPoint& H) {
    return phi_complex_ex(R, lam, detail::to_c(H)).value;
}

/**
 * @brief Rank-one spherical function as a Jacobi function.
 *
 * Reduced (m_{beta/2} = 0): 2F1((rho+lambda)/2, (rho-lambda)/2; (m+1)/2; -sinh^2 t).
 * Otherwise: 2F1(rho+lambda, rho-lambda; (m_{beta/2}+m+1)/2; -sinh^2(t/2)).
 * Both are the same function by a quadratic transformation when m_{beta/2} = 0;
 * the first is used there because its connection formula degenerates less often.
 * t may be complex (t = i theta is the compact continuation).
 */
inline SphericalValue phi_rank1_ex(const RootDatum& R, cplx lam, cplx t) {
    if (R.rank != 1) throw DomainError("phi_rank1: rank must be 1");
    const auto& u = R.unmult.front();
    const double rho = u.rho_tilde;
    if (t == 0.0) return {1.0};
    auto eval = [&](cplx l) {
        if (u.m_half == 0) {
            const cplx s = std::sinh(t);
            return hyp2f1(0.5 * (rho + l), 0.5 * (rho - l), 0.5 * (u.m + 1), -s * s);
        }
        const cplx s = std::sinh(0.5 * t);
        return hyp2f1(rho + l, rho - l, 0.5 * (u.m_half + u.m + 1), -s * s);
    };
    try {
        return {checked(eval(lam), "phi_rank1")};
    } catch (const ConvergenceError&) {
        // Degenerate connection formula at large t: approach lambda off the lattice.
        double res = 0.0;
        const cplx v = detail::symmetric_limit([&](double s) { return eval(lam + s * cplx(0.6, 0.8)); }, 4e-3, res);
        if (res > 1e-7 * std::max(1.0, std::abs(v))) throw;
        return {v, res, true};
    }
}

inline cplx phi_rank1(const RootDatum& R, const SpectralPoint& lam, double t) {
    if (lam.size() != 1) throw DomainError("phi_rank1: wrong length");
    if (t < 0.0) throw DomainError("phi_rank1: t must be nonnegative");
    return phi_rank1_ex(R, lam[0], t).value;
}

/**
 * @brief Harish-Chandra series Phi_lambda(a_t) ~ e^{(lambda - rho) t} in rank one,
 *        so that phi_lambda = c(lambda) Phi_lambda + c(-lambda) Phi_{-lambda}.
 *
 * Reduced: (2 cosh t)^{lambda-rho} 2F1((rho-lambda)/2, (m/2+1-lambda)/2; 1-lambda; sech^2 t).
 * Otherwise the same Jacobi form in s = t/2 with 2 lambda and 2 rho.
 * Converges for t > 0; meant for large t where sech^2 is small.
 * @throws PoleError when 1 - lambda (reduced) or 1 - 2 lambda is a nonpositive integer.
 */
inline cplx Phi_rank1(const RootDatum& R, cplx lam, double t) {
    if (R.rank != 1) throw DomainError("Phi_rank1: rank must be 1");
    if (!(t > 0.0)) throw DomainError("Phi_rank1: t must be positive");
    const auto& u = R.unmult.front();
    const double rho = u.rho_tilde;
    if (u.m_half == 0) {
        const double ch = std::cosh(t);
        return std::exp((lam - rho) * std::log(2.0 * ch)) *
               hyp2f1(0.5 * (rho - lam), 0.5 * (0.5 * u.m + 1.0 - lam), 1.0 - lam, 1.0 / (ch * ch));
    }
    const double ch = std::cosh(0.5 * t);
    return std::exp(2.0 * (lam - rho) * std::log(2.0 * ch)) *
           hyp2f1(rho - lam, 0.5 * (0.5 * u.m_half + 1.0) - lam, 1.0 - 2.0 * lam, 1.0 / (ch * ch));
}

enum class SphericalMode { complex_case, rank_one };

/**
 * @brief Spherical function evaluator bound to one root datum.
 *
 * Picks the complex-case formula for spaces in the complex case of rank
 * above one and the Jacobi form in rank one. Construction runs the
 * convention self-check phi_rho = 1, phi_lambda = phi_{-lambda}.
 * @throws DomainError for spaces without a closed form, Error if the
 *         self-check fails.
 */
class SphericalEvaluator {
public:
    explicit SphericalEvaluator(RootDatum datum) : R_(std::move(datum)) {
        if (R_.rank == 1)
            mode_ = SphericalMode::rank_one;
        else if (is_complex_case(R_))
            mode_ = SphericalMode::complex_case;
        else
            throw DomainError("no closed-form spherical function for " + R_.name);
        const auto rho = R_.rho_point();
        for (double s : {0.3, 1.1, 2.4}) {
            RadialPoint H(R_.rank);
            for (int j = 0; j < R_.rank; ++j) H[j] = s * (1.0 + 0.37 * j + 0.11 * j * j);
            if (std::abs(phi(rho, H) - 1.0) > 1e-10) throw Error("spherical self-check: phi_rho != 1");
            SpectralPoint l(R_.rank), m(R_.rank);
            for (int j = 0; j < R_.rank; ++j) l[j] = cplx(0.21 + 0.1 * j, 0.77 - 0.3 * j);
            m = R_.apply(R_.w0, l);
            const cplx a = phi(l, H), b = phi(m, H);
            if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) throw Error("spherical self-check: W-invariance");
        }
    }

    [[nodiscard]] const RootDatum& datum() const { return R_; }
    [[nodiscard]] SphericalMode mode() const { return mode_; }

    [[nodiscard]] cplx phi(const SpectralPoint& lam, const RadialPoint& H) const {
        return phi_c(lam, detail::to_c(H));
    }

    /// phi at a complex radial point; Im H within Omega_pi is the compact continuation.
    [[nodiscard]] cplx phi_c(const SpectralPoint& lam, const CVec& H) const {
        if (static_cast<int>(H.size()) != R_.rank) throw DomainError("radial point has wrong length");
        if (mode_ == SphericalMode::rank_one) {
            const cplx t = H[0].real() < 0.0 ? -H[0] : H[0];
            return phi_rank1_ex(R_, lam.at(0), t).value;
        }
        return phi_complex_ex(R_, lam, H).value;
    }

private:
    RootDatum R_;
    SphericalMode mode_ = SphericalMode::rank_one;
};

/// max over Sigma^+ of |alpha(Im H)|; H lies in the closure of Omega_pi iff this is <= pi/2.
inline double omega_pi_level(const RootDatum& R, const CVec& H) {
    double m = 0.0;
    for (const auto& a : R.positive_roots) {
        double s = 0.0;
        for (int k = 0; k < R.rank; ++k) {
            const double coord = RootDatum::dot(a, R.beta[k]) / RootDatum::dot(R.beta[k], R.beta[k]);
            s += coord * H[k].imag();
        }
        m = std::max(m, std::abs(s));
    }
    return m;
}

/**
 * @brief psi_mu(exp(i Hc)) = phi_{mu+rho}(exp(i Hc)), the spherical function of
 *        the compact dual, by analytic continuation.
 * @throws DomainError if i Hc lies outside the closure of Omega_pi.
 */
inline cplx psi_compact(const SphericalEvaluator& S, const DominantWeight& mu, const RadialPoint& theta) {
    const auto& R = S.datum();
    if (static_cast<int>(mu.mu.size()) != R.rank || static_cast<int>(theta.size()) != R.rank)
        throw DomainError("psi_compact: wrong length");
    CVec H(R.rank);
    for (int j = 0; j < R.rank; ++j) H[j] = cplx(0.0, theta[j]);
    if (omega_pi_level(R, H) > 0.5 * pi + 1e-12) throw DomainError("psi_compact: point outside Omega_pi");
    SpectralPoint l(R.rank);
    for (int j = 0; j < R.rank; ++j) l[j] = double(mu.mu[j]) + R.rho.rho[j];
    return S.phi_c(l, H);
}

// ---------------------------------------------------------------------------
// Iwasawa oracle
// ---------------------------------------------------------------------------

enum class RankOneModel { split, complex };

/**
 * @brief phi_lambda(a_t) = int_K e^{(lambda - rho)(H(a_t k))} dk by direct quadrature.
 *
 * a_t = diag(e^{t/2}, e^{-t/2}) so that beta(log a_t) = t, and
 * e^{beta(H(g))} = |g e_1|^2 for g = k exp(H(g)) n.
 * split: SL(2,R), K = SO(2), angle theta uniform on [0, 2 pi).
 * complex: SL(2,C), K = SU(2) in Euler angles; only the middle angle enters,
 * with |k e_1|_1^2 = cos^2(theta/2) and density sin(theta)/2 on [0, pi].
 */
inline cplx phi_oracle_rank1(cplx lam, double t, RankOneModel model, int panels = 96) {
    const double ep = std::exp(t), em = std::exp(-t);
    if (model == RankOneModel::split) {
        // rho = 1/2
        const auto f = [&](double th) {
            const double c = std::cos(th), s = std::sin(th);
            return std::exp((lam - 0.5) * std::log(ep * c * c + em * s * s));
        };
        return integrate(f, 0.0, 2.0 * pi, panels) / (2.0 * pi);
    }
    // rho = 1
    const auto f = [&](double th) {
        const double c = std::cos(0.5 * th);
        const double x = ep * c * c + em * (1.0 - c * c);
        return 0.5 * std::sin(th) * std::exp((lam - 1.0) * std::log(x));
    };
    return integrate(f, 0.0, pi, panels);
}

}  // namespace rmt
