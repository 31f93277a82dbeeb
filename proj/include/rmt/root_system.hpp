#pragma once

/**
 * @file root_system.hpp
 * @brief Restricted root systems with multiplicities, Weyl groups,
 *        omega-coordinates, rho-data, dominant weights and tube domains.
 *
 * Spectral parameters are stored in the omega-basis: lambda = sum_j
 * lambda_j omega_j with (omega_j)_{beta_k} = delta_jk. Radial points H are
 * stored in the dual basis, so lambda(H) = sum_j lambda_j H_j.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <functional>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rmt/numerics.hpp"

namespace rmt {

using SpectralPoint = CVec;

/// Highest restricted weight in omega-coordinates.
struct DominantWeight {
    std::vector<int> mu;
    [[nodiscard]] int height() const { return std::accumulate(mu.begin(), mu.end(), 0); }
    bool operator==(const DominantWeight&) const = default;
};

struct ParityError : Error {
    using Error::Error;
};

/// Multiplicity pattern of an unmultipliable root (cases a to d).
enum class MultCase { a, b, c, d };

inline char case_letter(MultCase c) { return "abcd"[static_cast<int>(c)]; }

/// A positive unmultipliable root beta with its multiplicity data.
struct UnmultRoot {
    RVec vec;           ///< ambient vector
    RVec coeff;         ///< coeff[j] = (omega_j)_beta, so lambda_beta = sum_j lambda_j coeff[j]
    RVec omega_coords;  ///< beta itself in omega-coordinates
    int m = 0;          ///< m_beta
    int m_half = 0;     ///< m_{beta/2}, zero when beta/2 is not a root
    double rho_tilde = 0.0;
    int simple_index = -1;  ///< j with beta = beta_j, or -1

    [[nodiscard]] MultCase mult_case() const {
        if (m_half == 0) return m % 2 == 0 ? MultCase::a : MultCase::b;
        return (m_half / 2) % 2 == 0 ? MultCase::c : MultCase::d;
    }
    /// True when m_{beta/2}/2 is even (cases a, b, c).
    [[nodiscard]] bool even_half() const { return (m_half / 2) % 2 == 0; }
};

enum class Tube { T_delta, T_prime, T_dprime, T_Sigma_m, T_Sigma_m_eta, H_delta };

struct RhoData {
    RVec rho;  ///< rho_j
    double Omega = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    int M = 0;
};

/**
 * @brief Restricted root system with multiplicities and all derived data.
 *
 * Immutable after construction by build_root_system().
 */
struct RootDatum {
    std::string name;
    std::string family;
    int rank = 0;
    std::map<std::string, int> multiplicities;

    std::vector<RVec> positive_roots;  ///< Sigma^+, ambient
    std::vector<int> root_mult;        ///< m_alpha per positive root
    std::vector<RVec> simple_roots;    ///< alpha_j
    std::vector<UnmultRoot> unmult;    ///< Sigma_*^+
    std::vector<RVec> beta;            ///< beta_j, ambient
    std::vector<RVec> omega;           ///< omega_j, ambient
    Eigen::MatrixXd gram_omega;        ///< <omega_i, omega_j>
    Eigen::MatrixXd gram_dual;         ///< Gram matrix of the basis dual to omega
    std::vector<Eigen::MatrixXd> weyl;  ///< W acting on omega-coordinates
    std::vector<int> weyl_det;
    int w0 = -1;
    RhoData rho;

    [[nodiscard]] std::size_t order_W() const { return weyl.size(); }
    [[nodiscard]] int l() const { return rank; }

    /// lambda_beta for an unmultipliable root.
    [[nodiscard]] cplx lambda_beta(const SpectralPoint& lam, const UnmultRoot& b) const {
        cplx s = 0.0;
        for (int j = 0; j < rank; ++j) s += lam[j] * b.coeff[j];
        return s;
    }

    /// lambda_alpha = <lambda, alpha>/<alpha, alpha> for an ambient root alpha.
    [[nodiscard]] cplx lambda_sub(const SpectralPoint& lam, const RVec& alpha) const {
        const double aa = dot(alpha, alpha);
        if (aa == 0.0) throw DomainError("lambda_sub: zero root");
        cplx s = 0.0;
        for (int j = 0; j < rank; ++j) s += lam[j] * dot(omega[j], alpha) / aa;
        return s;
    }

    [[nodiscard]] SpectralPoint apply(int w, const SpectralPoint& lam) const {
        SpectralPoint r(rank, 0.0);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) r[i] += weyl[w](i, j) * lam[j];
        return r;
    }
    [[nodiscard]] RVec apply(int w, const RVec& lam) const {
        RVec r(rank, 0.0);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) r[i] += weyl[w](i, j) * lam[j];
        return r;
    }
    /// Dual action on radial coordinates, so that (w lambda)(w H) = lambda(H).
    [[nodiscard]] RVec apply_dual(int w, const RVec& H) const {
        const Eigen::MatrixXd m = weyl[w].inverse().transpose();
        RVec r(rank, 0.0);
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) r[i] += m(i, j) * H[j];
        return r;
    }

    [[nodiscard]] SpectralPoint rho_point() const { return SpectralPoint(rho.rho.begin(), rho.rho.end()); }

    /// Euclidean norm of a spectral point, ||Re||^2 + ||Im||^2 under the omega Gram matrix.
    [[nodiscard]] double norm(const SpectralPoint& lam) const {
        double s = 0.0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                s += gram_omega(i, j) * (lam[i].real() * lam[j].real() + lam[i].imag() * lam[j].imag());
        return std::sqrt(std::max(0.0, s));
    }
    [[nodiscard]] double norm(const RVec& lam) const {
        double s = 0.0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += gram_omega(i, j) * lam[i] * lam[j];
        return std::sqrt(std::max(0.0, s));
    }
    /// Norm of a radial point H given in the dual basis.
    [[nodiscard]] double norm_H(const RVec& H) const {
        double s = 0.0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j) s += gram_dual(i, j) * H[i] * H[j];
        return std::sqrt(std::max(0.0, s));
    }
    /// lambda(H) = sum_j lambda_j H_j.
    [[nodiscard]] static cplx pair(const SpectralPoint& lam, const RVec& H) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < H.size(); ++j) s += lam[j] * H[j];
        return s;
    }

    [[nodiscard]] bool in_tube(const SpectralPoint& lam, Tube kind, double param) const;
    [[nodiscard]] std::vector<SpectralPoint> weyl_orbit(const SpectralPoint& lam, double tol = 1e-12) const;

    static double dot(const RVec& a, const RVec& b) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }
};

namespace detail {

inline RVec unit(std::size_t n, std::size_t i, double v = 1.0) {
    RVec e(n, 0.0);
    e[i] = v;
    return e;
}
inline RVec add(RVec a, const RVec& b, double s = 1.0) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}
inline bool same(const RVec& a, const RVec& b, double tol = 1e-12) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return true;
}
inline RVec reflect(const RVec& v, const RVec& a) {
    return add(v, a, -2.0 * RootDatum::dot(v, a) / RootDatum::dot(a, a));
}

/// Simple roots in a standard ambient realization.
inline std::vector<RVec> simple_roots(const std::string& fam, int l, std::size_t& dim) {
    std::vector<RVec> s;
    if (fam == "A") {
        dim = l + 1;
        for (int i = 0; i < l; ++i) s.push_back(add(unit(dim, i), unit(dim, i + 1), -1.0));
    } else if (fam == "B" || fam == "C" || fam == "BC") {
        dim = l;
        for (int i = 0; i + 1 < l; ++i) s.push_back(add(unit(dim, i), unit(dim, i + 1), -1.0));
        s.push_back(unit(dim, l - 1, fam == "C" ? 2.0 : 1.0));
    } else if (fam == "D") {
        if (l < 3) throw DomainError("family D needs rank >= 3");
        dim = l;
        for (int i = 0; i + 1 < l; ++i) s.push_back(add(unit(dim, i), unit(dim, i + 1), -1.0));
        s.push_back(add(unit(dim, l - 2), unit(dim, l - 1)));
    } else if (fam == "G2") {
        if (l != 2) throw DomainError("family G2 has rank 2");
        dim = 3;
        s.push_back({1.0, -1.0, 0.0});
        s.push_back({-2.0, 1.0, 1.0});
    } else {
        throw DomainError("unsupported family: " + fam);
    }
    return s;
}

/// Coefficients of v in the basis of simple roots.
inline RVec simple_coords(const std::vector<RVec>& simple, const RVec& v) {
    const int l = static_cast<int>(simple.size());
    Eigen::MatrixXd G(l, l);
    Eigen::VectorXd r(l);
    for (int i = 0; i < l; ++i) {
        for (int j = 0; j < l; ++j) G(i, j) = RootDatum::dot(simple[i], simple[j]);
        r(i) = RootDatum::dot(simple[i], v);
    }
    const Eigen::VectorXd c = G.ldlt().solve(r);
    return RVec(c.data(), c.data() + l);
}

/// Positive roots ordered by height, generated as W-orbits of the simple roots.
inline std::vector<RVec> positive_roots(const std::string& family, int rank, std::size_t& dim) {
    const auto S = simple_roots(family, rank, dim);
    std::vector<RVec> all = S;
    for (std::size_t k = 0; k < all.size(); ++k) {
        for (const auto& s : S) {
            RVec r = reflect(all[k], s);
            bool seen = false;
            for (const auto& q : all)
                if (same(q, r)) seen = true;
            if (!seen) all.push_back(r);
        }
    }
    if (family == "BC") {
        const std::size_t n = all.size();
        for (std::size_t k = 0; k < n; ++k)
            if (RootDatum::dot(all[k], all[k]) < 1.5) {
                RVec d = all[k];
                for (double& x : d) x *= 2.0;
                all.push_back(d);
            }
    }
    std::vector<RVec> pos;
    std::vector<RVec> coords;
    for (const auto& r : all) {
        const RVec c = simple_coords(S, r);
        bool p = true;
        for (double x : c)
            if (x < -1e-9) p = false;
        if (p) {
            pos.push_back(r);
            coords.push_back(c);
        }
    }
    std::vector<std::size_t> order(pos.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ha = std::accumulate(coords[a].begin(), coords[a].end(), 0.0);
        const double hb = std::accumulate(coords[b].begin(), coords[b].end(), 0.0);
        if (std::abs(ha - hb) > 1e-9) return ha < hb;
        return coords[a] > coords[b];
    });
    std::vector<RVec> out;
    for (std::size_t i : order) out.push_back(pos[i]);
    return out;
}

/// Length classes: keys accepted in the multiplicity map for each family.
inline std::string length_class(const std::string& fam, int l, double sq) {
    if (fam == "A" || fam == "D") return "m";
    if (fam == "B") return sq < 1.5 ? "short" : "long";
    if (fam == "C") return sq < 3.0 ? "short" : "long";
    if (fam == "G2") return sq < 3.0 ? "short" : "long";
    // BC: e_i (1), e_i +- e_j (2), 2 e_i (4)
    (void)l;
    if (sq < 1.5) return "short";
    if (sq < 3.0) return "medium";
    return "long";
}

}  // namespace detail

/**
 * @brief Builds a validated root datum from a family, rank and multiplicities
 *        keyed by root length.
 *
 * Keys: "m" for A and D; "short"/"long" for B, C, G2; "short" (e_i),
 * "medium" (e_i +- e_j, rank >= 2) and "long" (2 e_i) for BC. For rank-one A a
 * key "half" may declare m_{beta/2}; it is parity-checked and then must be 0.
 *
 * @throws ParityError, DomainError
 */
inline RootDatum build_root_system(const std::string& family, int rank, const std::map<std::string, int>& mult,
                                   const std::string& name = "") {
    if (rank < 1) throw DomainError("rank must be positive");
    if (auto it = mult.find("half"); it != mult.end()) {
        if (it->second % 2 != 0) throw ParityError("m_{beta/2} must be even");
        if (it->second != 0) throw DomainError("nonzero m_{beta/2} requires family BC");
    }
    RootDatum R;
    R.name = name.empty() ? family + std::to_string(rank) : name;
    R.family = family;
    R.rank = rank;
    R.multiplicities = mult;
    R.multiplicities.erase("half");

    std::size_t dim = 0;
    R.simple_roots = detail::simple_roots(family, rank, dim);
    R.positive_roots = detail::positive_roots(family, rank, dim);
    const auto& S = R.simple_roots;

    // Multiplicities by length class.
    std::map<std::string, bool> used;
    for (const auto& r : R.positive_roots) {
        const std::string key = detail::length_class(family, rank, RootDatum::dot(r, r));
        auto it = R.multiplicities.find(key);
        if (it == R.multiplicities.end()) throw DomainError("missing multiplicity for root class '" + key + "'");
        if (it->second < 1) throw DomainError("multiplicities must be positive");
        used[key] = true;
        R.root_mult.push_back(it->second);
    }
    for (const auto& [k, v] : R.multiplicities)
        if (!used.count(k)) throw DomainError("multiplicity key '" + k + "' does not match a root class");

    auto find_root = [&](const RVec& v) -> int {
        for (std::size_t i = 0; i < R.positive_roots.size(); ++i)
            if (detail::same(R.positive_roots[i], v, 1e-9)) return static_cast<int>(i);
        return -1;
    };

    // Unmultipliable roots and beta_j.
    for (std::size_t i = 0; i < R.positive_roots.size(); ++i) {
        RVec d = R.positive_roots[i];
        for (double& x : d) x *= 2.0;
        if (find_root(d) >= 0) continue;
        UnmultRoot u;
        u.vec = R.positive_roots[i];
        u.m = R.root_mult[i];
        RVec h = u.vec;
        for (double& x : h) x *= 0.5;
        const int hi = find_root(h);
        u.m_half = hi >= 0 ? R.root_mult[hi] : 0;
        if (u.m_half % 2 != 0) throw ParityError("m_{beta/2} must be even");
        if (u.m_half != 0 && u.m % 2 == 0) throw ParityError("m_beta must be odd when beta/2 is a root");
        u.rho_tilde = 0.5 * (u.m + 0.5 * u.m_half);
        R.unmult.push_back(u);
    }
    for (int j = 0; j < rank; ++j) {
        RVec d = S[j];
        for (double& x : d) x *= 2.0;
        R.beta.push_back(find_root(d) >= 0 ? d : S[j]);
    }

    // omega_j = sum_i X_ji beta_i with <omega_j, beta_k> = delta_jk |beta_k|^2.
    Eigen::MatrixXd G(rank, rank), D = Eigen::MatrixXd::Zero(rank, rank);
    for (int i = 0; i < rank; ++i) {
        for (int k = 0; k < rank; ++k) G(i, k) = RootDatum::dot(R.beta[i], R.beta[k]);
        D(i, i) = G(i, i);
    }
    const Eigen::MatrixXd X = D * G.inverse();
    for (int j = 0; j < rank; ++j) {
        RVec w(dim, 0.0);
        for (int i = 0; i < rank; ++i) w = detail::add(w, R.beta[i], X(j, i));
        R.omega.push_back(w);
    }
    R.gram_omega.resize(rank, rank);
    R.gram_dual.resize(rank, rank);
    for (int i = 0; i < rank; ++i)
        for (int k = 0; k < rank; ++k) {
            R.gram_omega(i, k) = RootDatum::dot(R.omega[i], R.omega[k]);
            R.gram_dual(i, k) = G(i, k) / (G(i, i) * G(k, k));
        }
    for (int i = 0; i < rank; ++i)
        for (int k = 0; k < rank; ++k) {
            const double r = RootDatum::dot(R.omega[i], R.beta[k]) / G(k, k);
            if (std::abs(r - (i == k ? 1.0 : 0.0)) > 1e-12) throw Error("omega basis residual too large");
        }

    for (auto& u : R.unmult) {
        const double bb = RootDatum::dot(u.vec, u.vec);
        for (int j = 0; j < rank; ++j) {
            u.coeff.push_back(RootDatum::dot(R.omega[j], u.vec) / bb);
            u.omega_coords.push_back(RootDatum::dot(u.vec, R.beta[j]) / G(j, j));
        }
        for (int j = 0; j < rank; ++j)
            if (detail::same(u.vec, R.beta[j], 1e-9)) u.simple_index = j;
    }

    // Weyl group on omega-coordinates, generated by the simple reflections.
    std::vector<Eigen::MatrixXd> gens;
    for (int j = 0; j < rank; ++j) {
        const RVec& a = R.beta[j];
        const double aa = RootDatum::dot(a, a);
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(rank, rank);
        for (int k = 0; k < rank; ++k)
            for (int i = 0; i < rank; ++i) {
                const double kappa = RootDatum::dot(R.omega[i], a) / aa;      // (omega_i)_a
                const double acoord = RootDatum::dot(a, R.beta[k]) / G(k, k);  // a_{beta_k}
                M(k, i) -= 2.0 * kappa * acoord;
            }
        gens.push_back(M);
    }
    R.weyl.push_back(Eigen::MatrixXd::Identity(rank, rank));
    for (std::size_t k = 0; k < R.weyl.size(); ++k) {
        for (const auto& g : gens) {
            Eigen::MatrixXd m = g * R.weyl[k];
            bool seen = false;
            for (const auto& q : R.weyl)
                if ((q - m).cwiseAbs().maxCoeff() < 1e-12) {
                    seen = true;
                    break;
                }
            if (!seen) R.weyl.push_back(m);
        }
        if (R.weyl.size() > 100000) throw Error("Weyl group closure did not terminate");
    }
    for (const auto& w : R.weyl) R.weyl_det.push_back(w.determinant() > 0 ? 1 : -1);

    // rho
    RVec rho(dim, 0.0);
    for (std::size_t i = 0; i < R.positive_roots.size(); ++i)
        rho = detail::add(rho, R.positive_roots[i], 0.5 * R.root_mult[i]);
    for (int j = 0; j < rank; ++j) R.rho.rho.push_back(RootDatum::dot(rho, R.beta[j]) / G(j, j));
    for (const auto& u : R.unmult)
        if (u.simple_index >= 0 && std::abs(R.rho.rho[u.simple_index] - u.rho_tilde) > 1e-12)
            throw Error("rho_j differs from rho_tilde of beta_j");
    for (std::size_t w = 0; w < R.weyl.size(); ++w) {
        const RVec r = R.apply(static_cast<int>(w), R.rho.rho);
        bool neg = true;
        for (int j = 0; j < rank; ++j)
            if (std::abs(r[j] + R.rho.rho[j]) > 1e-12) neg = false;
        if (neg) R.w0 = static_cast<int>(w);
    }
    if (R.w0 < 0) throw Error("longest Weyl element not found");
    for (int j = 0; j < rank; ++j) R.rho.Omega = std::max(R.rho.Omega, std::sqrt(R.gram_omega(j, j)));
    R.rho.c1 = 1.0 / R.rho.Omega;
    for (int j = 0; j < rank; ++j) R.rho.c2 += 1.0 / std::sqrt(G(j, j));
    for (const auto& u : R.unmult) R.rho.M += u.m_half + u.m;
    return R;
}

/**
 * @brief Builds a root datum from one multiplicity per positive root.
 *
 * The list follows the order of RootDatum::positive_roots.
 * @throws DomainError if the multiplicities are not constant on W-orbits.
 */
inline RootDatum build_root_system_per_root(const std::string& family, int rank, const std::vector<int>& per_root,
                                            const std::string& name = "") {
    std::size_t dim = 0;
    const auto roots = detail::positive_roots(family, rank, dim);
    if (per_root.size() != roots.size()) throw DomainError("one multiplicity per positive root expected");
    std::map<std::string, int> classes;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const std::string key = detail::length_class(family, rank, RootDatum::dot(roots[i], roots[i]));
        auto [it, inserted] = classes.emplace(key, per_root[i]);
        if (!inserted && it->second != per_root[i]) throw DomainError("multiplicities are not W-invariant");
    }
    return build_root_system(family, rank, classes, name);
}

inline bool RootDatum::in_tube(const SpectralPoint& lam, Tube kind, double param) const {
    if (static_cast<int>(lam.size()) != rank) throw DomainError("spectral point has wrong length");
    switch (kind) {
        case Tube::T_delta:
        case Tube::T_prime:
        case Tube::T_dprime:
        case Tube::H_delta:
            if (!(param > 0.0 && param <= 1.0)) throw DomainError("delta must lie in (0, 1]");
            break;
        case Tube::T_Sigma_m_eta:
            if (!(param >= 0.0 && param < 0.5)) throw DomainError("eta must lie in [0, 1/2)");
            break;
        case Tube::T_Sigma_m:
            break;
    }
    switch (kind) {
        case Tube::T_delta:
            for (const auto& u : unmult)
                if (!(std::abs(lambda_beta(lam, u).real()) < param * u.rho_tilde)) return false;
            return true;
        case Tube::T_prime:
            for (int j = 0; j < rank; ++j)
                if (!(std::abs(lam[j].real()) < param * rho.rho[j])) return false;
            return true;
        case Tube::T_dprime:
            for (int j = 0; j < rank; ++j)
                if (!(lam[j].real() < param * rho.rho[j])) return false;
            return true;
        case Tube::H_delta:
            for (const auto& u : unmult)
                if (!(lambda_beta(lam, u).real() > -param * u.rho_tilde)) return false;
            return true;
        case Tube::T_Sigma_m:
        case Tube::T_Sigma_m_eta: {
            const double eta = kind == Tube::T_Sigma_m ? 0.0 : param;
            for (const auto& u : unmult) {
                const double lim = (u.even_half() ? 1.0 : 0.5) - eta;
                if (!(std::abs(lambda_beta(lam, u).real()) < lim)) return false;
            }
            return true;
        }
    }
    return false;
}

inline std::vector<SpectralPoint> RootDatum::weyl_orbit(const SpectralPoint& lam, double tol) const {
    std::vector<SpectralPoint> out;
    for (std::size_t w = 0; w < weyl.size(); ++w) {
        SpectralPoint p = apply(static_cast<int>(w), lam);
        bool seen = false;
        for (const auto& q : out) {
            double d = 0.0;
            for (int j = 0; j < rank; ++j) d = std::max(d, std::abs(q[j] - p[j]));
            if (d <= tol) seen = true;
        }
        if (!seen) out.push_back(p);
    }
    return out;
}

/// All mu in Z_+^l with |mu| <= max_height, by height, then first coordinate descending.
inline std::vector<DominantWeight> dominant_weights(int rank, int max_height) {
    std::vector<DominantWeight> out;
    if (max_height < 0) return out;
    for (int h = 0; h <= max_height; ++h) {
        std::vector<int> mu(rank, 0);
        // Enumerate compositions of h into rank parts in reverse-lexicographic order.
        std::function<void(int, int)> rec = [&](int pos, int rem) {
            if (pos == rank - 1) {
                mu[pos] = rem;
                out.push_back({mu});
                return;
            }
            for (int v = rem; v >= 0; --v) {
                mu[pos] = v;
                rec(pos + 1, rem - v);
            }
        };
        rec(0, h);
    }
    return out;
}

/// True if no unmultipliable root vanishes on lam.
inline bool is_regular(const RootDatum& R, const SpectralPoint& lam, double tol = 1e-12) {
    for (const auto& u : R.unmult)
        if (std::abs(R.lambda_beta(lam, u)) <= tol) return false;
    return true;
}

}  // namespace rmt
