#pragma once

/**
 * @file master.hpp
 * @brief Verification harness for the Master Theorem: the classical
 *        one-variable theorem, the semisimple series / contour /
 *        interpolation identities, the gamma variants, the reductive
 *        composition and the rectangle-contour iteration.
 *
 * Everything here is pure; a check is a function of its inputs only, and
 * reports are merged in check-id order.
 */

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rmt/bfunction.hpp"
#include "rmt/hardy.hpp"
#include "rmt/numerics.hpp"
#include "rmt/plancherel.hpp"
#include "rmt/root_system.hpp"
#include "rmt/spherical.hpp"

namespace rmt {

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline constexpr const char* report_schema = "rmt-report/1";

struct CheckRecord {
    std::string check;
    std::string point;
    cplx lhs, rhs;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tol = 0.0;
    bool relative = false;  ///< which error is compared with tol
    bool pass = false;
};

namespace detail {

inline std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string cnum(cplx z) { return num(z.real()) + (z.imag() < 0 || std::signbit(z.imag()) ? "" : "+") + num(z.imag()) + "i"; }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
    return r + "\"";
}

}  // namespace detail

inline std::string point_str(const CVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + detail::cnum(v[i]);
    return s + ")";
}
inline std::string point_str(const RVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + detail::num(v[i]);
    return s + ")";
}

/**
 * @brief Structured record of one verification run.
 *
 * pass() holds iff every record's compared error is within its tolerance.
 */
class VerificationReport {
public:
    std::string space;
    std::string hardy;
    HardyCertificate cert;
    std::vector<CheckRecord> records;
    std::map<std::string, std::string> meta;

    /// Adds a record; the error compared with tol is |lhs - rhs|, or that over |rhs| when relative.
    void add(const std::string& check, const std::string& point, cplx lhs, cplx rhs, double tol,
             bool relative = false) {
        CheckRecord r;
        r.check = check;
        r.point = point;
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_err = std::abs(lhs - rhs);
        r.rel_err = r.abs_err / std::max(std::abs(rhs), 1e-300);
        r.tol = tol;
        r.relative = relative;
        const double e = relative ? r.rel_err : r.abs_err;
        r.pass = is_finite(lhs) && is_finite(rhs) && e <= tol;
        records.push_back(std::move(r));
    }

    /// Boolean check recorded as lhs = 1 or 0 against rhs = 1.
    void add_bool(const std::string& check, const std::string& point, bool ok) {
        add(check, point, ok ? 1.0 : 0.0, 1.0, 0.0);
    }

    /// Records a check that could not be evaluated; it fails.
    void add_error(const std::string& check, const std::string& point, const std::string& what) {
        CheckRecord r;
        r.check = check;
        r.point = point + " error: " + what;
        r.lhs = r.rhs = std::numeric_limits<double>::quiet_NaN();
        r.abs_err = r.rel_err = std::numeric_limits<double>::infinity();
        records.push_back(std::move(r));
    }

    [[nodiscard]] bool pass() const {
        return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
    }
    [[nodiscard]] int failures() const {
        return static_cast<int>(std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return !r.pass; }));
    }

    /// Appends another report's records and metadata, then orders records by check id.
    void merge(const VerificationReport& o) {
        records.insert(records.end(), o.records.begin(), o.records.end());
        for (const auto& [k, v] : o.meta) meta[k] = v;
        std::stable_sort(records.begin(), records.end(),
                         [](const CheckRecord& a, const CheckRecord& b) { return a.check < b.check; });
    }

    [[nodiscard]] std::string to_text() const {
        std::ostringstream os;
        os << "# " << report_schema << "\n";
        os << "space: " << space << "\n";
        os << "hardy: " << hardy << " A=" << detail::num(cert.A) << " P=" << detail::num(cert.P)
           << " delta=" << detail::num(cert.delta) << " C=" << detail::num(cert.C) << "\n";
        for (const auto& [k, v] : meta) os << "meta " << k << ": " << v << "\n";
        for (const auto& r : records) {
            os << "check " << r.check << " point=" << r.point << " lhs=" << detail::cnum(r.lhs)
               << " rhs=" << detail::cnum(r.rhs) << " abs_err=" << detail::num(r.abs_err)
               << " rel_err=" << detail::num(r.rel_err) << " tol=" << detail::num(r.tol)
               << (r.relative ? " (rel)" : " (abs)") << " " << (r.pass ? "pass" : "FAIL") << "\n";
        }
        os << "summary: " << records.size() << " checks, " << failures() << " failed\n";
        return os.str();
    }

    static std::string csv_header() {
        return "space,check,point,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tol,pass";
    }

    [[nodiscard]] std::string to_csv(bool header = true) const {
        std::ostringstream os;
        if (header) os << csv_header() << "\n";
        for (const auto& r : records) {
            os << detail::csv_field(space) << "," << detail::csv_field(r.check) << "," << detail::csv_field(r.point)
               << "," << detail::num(r.lhs.real()) << "," << detail::num(r.lhs.imag()) << ","
               << detail::num(r.rhs.real()) << "," << detail::num(r.rhs.imag()) << "," << detail::num(r.abs_err)
               << "," << detail::num(r.rel_err) << "," << detail::num(r.tol) << "," << (r.pass ? 1 : 0) << "\n";
        }
        return os.str();
    }
};

// ---------------------------------------------------------------------------
// Shared quadrature helpers
// ---------------------------------------------------------------------------

/**
 * @brief Widens the box until the certificate's tail bound meets the target,
 *        keeping the node density of the original config.
 * @throws CertificateError if no L up to 400 suffices.
 */
inline QuadratureConfig widen_for_tail(const DecayCertificate& c, std::size_t l, QuadratureConfig cfg) {
    const double L0 = cfg.L;
    const int n0 = cfg.nodes_per_axis;
    while (!(c.tail_bound(cfg.L, l) <= cfg.tail_bound_target)) {
        cfg.L += 2.0;
        if (cfg.L > 400.0) throw CertificateError("contour tail bound cannot reach the target");
    }
    cfg.nodes_per_axis = 16 * static_cast<int>(std::ceil(n0 * cfg.L / L0 / 16.0));
    return cfg;
}

/**
 * @brief Fits the constant of C prod_j (1+|y_j|)^M e^{-rate |y_j|} on a grid strictly
 *        inside [-Lfit, Lfit]^l, with a safety margin.
 *
 * The truncation-boundary check in line_integral then tests the majorant
 * outside the fitted region.
 */
inline DecayCertificate fit_decay(const Integrand& F, const RVec& sigma, double rate, double degree, double Lfit,
                                  int per_axis = 41, double margin = 4.0) {
    DecayCertificate c{rate, degree, 1.0};
    const std::size_t l = sigma.size();
    std::size_t total = 1;
    for (std::size_t j = 0; j < l; ++j) total *= per_axis;
    double best = 0.0;
    CVec p(l);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t r = k;
        double maj = 1.0;
        for (std::size_t j = 0; j < l; ++j) {
            const int q = static_cast<int>(r % per_axis);
            r /= per_axis;
            const double y = 0.97 * Lfit * (2.0 * q / (per_axis - 1) - 1.0);
            p[j] = cplx(sigma[j], y);
            maj *= c.majorant1(y);
        }
        const double v = std::abs(F(p));
        if (!std::isfinite(v)) throw CertificateError("decay fit: non-finite integrand on the line");
        best = std::max(best, v / maj);
    }
    c.constant = margin * std::max(best, 1e-300);
    return c;
}

// ---------------------------------------------------------------------------
// Classical theorem
// ---------------------------------------------------------------------------

struct SeriesSum {
    cplx value;
    int terms = 0;
    double tail_bound = 0.0;
};

/**
 * @brief sum_k (-1)^k a(k) x^k up to the certified tail C r^{K+1}/(1-r), r = x e^{-P}.
 * @throws DomainError outside 0 <= x < e^P, CertificateError if more than
 *         max_terms are needed.
 */
inline SeriesSum classical_series_ex(const HardyFunction& a, double x, double tol = 1e-15, int max_terms = 100000) {
    require_validated(a);
    if (a.rank != 1) throw DomainError("classical_series: rank-one Hardy function required");
    const double P = a.cert.P;
    if (!(x >= 0.0 && x < std::exp(P))) throw DomainError("classical_series: x outside (0, e^P)");
    SeriesSum s;
    if (x == 0.0) {
        s.value = a({0.0});
        s.terms = 1;
        return s;
    }
    const double r = x * std::exp(-P);
    // smallest K with C r^{K+1}/(1-r) <= tol
    const double need = std::log(tol * (1.0 - r) / a.cert.C) / std::log(r) - 1.0;
    const int K = std::max(0, static_cast<int>(std::ceil(need)));
    if (K > max_terms) throw CertificateError("classical_series: certified tail needs too many terms");
    cplx sum = 0.0;
    double xk = 1.0;
    for (int k = 0; k <= K; ++k) {
        sum += (k % 2 == 0 ? 1.0 : -1.0) * a({double(k)}) * xk;
        xk *= x;
    }
    s.value = sum;
    s.terms = K + 1;
    s.tail_bound = a.cert.C * std::pow(r, K + 1) / (1.0 - r);
    return s;
}

inline cplx classical_series(const HardyFunction& a, double x, double tol = 1e-15) {
    return classical_series_ex(a, x, tol).value;
}

struct ContourResult {
    cplx value;
    QuadratureConfig used;
    double tail_bound = 0.0;
    DecayCertificate cert;
};

/**
 * @brief (1/2 pi i) int_{sigma + iR} (-pi/sin(pi lambda)) a(lambda) x^lambda dlambda.
 *
 * The decay certificate is analytic: |a| is bounded by the Hardy majorant
 * and 1/|sin(pi lambda)| by max(2/(1-e^{-pi}), e^{pi/2}/|sin(pi sigma)|) e^{-pi|y|}.
 * @throws DomainError for sigma outside (-delta, 0) or x <= 0.
 */
inline ContourResult classical_contour_ex(const HardyFunction& a, double x, double sigma,
                                          const QuadratureConfig& cfg = {}) {
    require_validated(a);
    if (a.rank != 1) throw DomainError("classical_contour: rank-one Hardy function required");
    if (!(x > 0.0)) throw DomainError("classical_contour: x must be positive");
    if (!(sigma > -a.cert.delta && sigma < 0.0)) throw DomainError("classical_contour: sigma outside (-delta, 0)");
    const auto& c = a.cert;
    DecayCertificate cert;
    cert.rate = pi - c.A;
    cert.degree = 0.0;
    const double sin_bound = std::max(2.0 / (1.0 - std::exp(-pi)), std::exp(0.5 * pi) / std::abs(std::sin(pi * sigma)));
    cert.constant = pi * c.C * std::exp(-c.P * sigma) * std::pow(x, sigma) * sin_bound;
    const auto used = widen_for_tail(cert, 1, cfg);
    const double lx = std::log(x);
    const Integrand g = [&](const CVec& l) {
        return -pi / std::sin(pi * l[0]) * a(l) * std::exp(l[0] * lx);
    };
    ContourResult r;
    r.value = line_integral(g, {sigma}, used, &cert) / (2.0 * pi * I);
    r.used = used;
    r.tail_bound = cert.tail_bound(used.L, 1) / (2.0 * pi);
    r.cert = cert;
    return r;
}

inline cplx classical_contour(const HardyFunction& a, double x, double sigma, const QuadratureConfig& cfg = {}) {
    return classical_contour_ex(a, x, sigma, cfg).value;
}

struct ClassicalInterpolation {
    cplx lhs;        ///< int_0^inf x^{-lambda-1} f(x) dx, continued
    cplx rhs;        ///< -pi a(lambda)/sin(pi lambda)
    cplx rhs_gamma;  ///< Gamma(-lambda) A(lambda), A(lambda) = a(lambda) Gamma(lambda+1)
    double tail = 0.0;
    double tail_residual = 0.0;
};

/**
 * @brief Mellin transform of f tabulated once for one Hardy function.
 *
 * Split at x0 = e^P/2: on (0, x0] the series is integrated termwise,
 * sum_k (-1)^k a(k) x0^{k-lambda}/(k-lambda). This is the continuation of
 * the integral to 0 < |Re lambda| < delta; for Re lambda > 0 it equals
 * int_0^inf x^{-lambda-1}(f(x) - a(0)) dx. On [x0, X] f comes from the
 * contour integral on a log grid, and beyond X = e^U a power fit of f on
 * the last decade gives the tail.
 */
class ClassicalProfile {
public:
    explicit ClassicalProfile(HardyFunction a, const QuadratureConfig& cfg = {}, double U = 16.0, double panel = 0.5)
        : a_(std::move(a)) {
        require_validated(a_);
        const double P = a_.cert.P;
        x0_ = 0.5 * std::exp(P);
        sigma_ = -0.5 * a_.cert.delta;
        // termwise coefficients with C 2^{-k} below 1e-17
        const int K = static_cast<int>(std::ceil(std::log2(std::max(1.0, a_.cert.C) * 1e17))) + 2;
        for (int k = 0; k <= K; ++k) ak_.push_back((k % 2 == 0 ? 1.0 : -1.0) * a_({double(k)}));
        const double u0 = std::log(x0_);
        if (!(U > u0 + 4.0)) throw DomainError("ClassicalProfile: window too short");
        composite_rule(u0, U, static_cast<int>(std::ceil((U - u0) / panel)), u_, w_);
        for (double u : u_) f_.push_back(classical_contour(a_, std::exp(u), sigma_, cfg));
        X_ = std::exp(U);
        fX_ = classical_contour(a_, X_, sigma_, cfg);
        fX10_ = classical_contour(a_, X_ / 10.0, sigma_, cfg);
        fXm_ = classical_contour(a_, X_ / std::sqrt(10.0), sigma_, cfg);
    }

    [[nodiscard]] const HardyFunction& hardy() const { return a_; }
    [[nodiscard]] double x0() const { return x0_; }

    /**
     * @throws DomainError outside 0 < |Re lambda| < delta, ConvergenceError
     *         when the tail fit is poor.
     */
    [[nodiscard]] ClassicalInterpolation interpolate(cplx lam) const {
        const double re = lam.real();
        if (!(std::abs(re) > 0.0 && std::abs(re) < a_.cert.delta))
            throw DomainError("classical_interpolate: need 0 < |Re lambda| < delta");
        ClassicalInterpolation r;
        cplx s = 0.0;
        const double lx0 = std::log(x0_);
        for (std::size_t k = 0; k < ak_.size(); ++k)
            s += ak_[k] * std::exp((double(k) - lam) * lx0) / (double(k) - lam);
        for (std::size_t k = 0; k < u_.size(); ++k) s += w_[k] * std::exp(-lam * u_[k]) * f_[k];
        // tail beyond X
        const double lX = std::log(X_);
        // Below this scale the last decade is quadrature noise and the tail is negligible.
        const double scale = std::max({std::abs(fX_), std::abs(fXm_), std::abs(fX10_)}) * std::exp(-re * lX) /
                             std::max(std::abs(lam), 1e-3);
        if (scale <= 1e-10) {
            r.tail = scale;
        } else {
            const double kap = std::log(std::abs(fX10_) / std::abs(fX_)) / std::log(10.0);
            const cplx pred = fX_ * std::pow(10.0, 0.5 * kap);
            r.tail_residual = std::abs(pred - fXm_) / std::abs(fXm_);
            if (!(kap + re > 0.0) || r.tail_residual > 0.05)
                throw ConvergenceError("classical_interpolate: tail-fit residual too large");
            const cplx tail = fX_ * std::exp(-lam * lX) / (kap + lam);
            s += tail;
            r.tail = std::abs(tail);
        }
        r.lhs = s;
        r.rhs = -pi / std::sin(pi * lam) * a_({lam});
        r.rhs_gamma = cgamma(-lam) * (a_({lam}) * cgamma(lam + 1.0));
        return r;
    }

private:
    HardyFunction a_;
    double x0_ = 1.0, sigma_ = -0.5, X_ = 1.0;
    CVec ak_;
    RVec u_, w_;
    CVec f_;
    cplx fX_, fX10_, fXm_;
};

inline ClassicalInterpolation classical_interpolate(const HardyFunction& a, cplx lam, const QuadratureConfig& cfg = {}) {
    return ClassicalProfile(a, cfg).interpolate(lam);
}

// ---------------------------------------------------------------------------
// Semisimple theorem
// ---------------------------------------------------------------------------

/**
 * @brief A catalog space with the evaluators the harness needs.
 * @throws DomainError for spaces without a closed-form spherical function.
 */
class MasterSpace {
public:
    explicit MasterSpace(const RootDatum& R) : b_(R), S_(R) {}

    [[nodiscard]] const RootDatum& datum() const { return b_.datum(); }
    [[nodiscard]] const BFunction& bfun() const { return b_; }
    [[nodiscard]] const CFunction& cfun() const { return b_.cfun(); }
    [[nodiscard]] const SphericalEvaluator& sph() const { return S_; }
    [[nodiscard]] int rank() const { return datum().rank; }

    /// Largest s such that s rho lies in T_{Sigma,m} cap T_delta, by bisection.
    [[nodiscard]] double strip_scale(double delta) const {
        const auto& R = datum();
        auto inside = [&](double s) {
            SpectralPoint p(R.rank);
            for (int j = 0; j < R.rank; ++j) p[j] = s * R.rho.rho[j];
            return R.in_tube(p, Tube::T_Sigma_m, 0.0) && R.in_tube(p, Tube::T_delta, delta);
        };
        double lo = 0.0, hi = 4.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (inside(mid) ? lo : hi) = mid;
        }
        return lo;
    }

private:
    BFunction b_;
    SphericalEvaluator S_;
};

struct SeriesConfig {
    double tolerance = 1e-10;
    int max_height = 400;
};

struct SeriesResult {
    cplx value;
    int cap = 0;
    double tail_bound = 0.0;
    long terms = 0;
    double dbar_constant = 0.0;  ///< K in d(mu) <= K (1 + |mu|)^M
};

namespace detail {

inline double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / i;
    return r;
}

/// 1.5 max_{|mu| <= hmax} d(mu)/(1+|mu|)^M.
inline double dbar_constant(const CFunction& cf, int hmax) {
    const auto& R = cf.datum();
    double K = 0.0;
    SpectralPoint l(R.rank);
    for (const auto& mu : dominant_weights(R.rank, hmax)) {
        for (int j = 0; j < R.rank; ++j) l[j] = double(mu.mu[j]);
        K = std::max(K, cf.d_poly(l).real() / std::pow(1.0 + mu.height(), R.rho.M));
    }
    return 1.5 * K;
}

/// sum_{n > cap} #{|mu| = n} K (1+n)^M q^n.
inline double weighted_tail(int rank, int M, double K, double q, int cap) {
    double s = 0.0;
    for (int n = cap + 1;; ++n) {
        const double t = binom(n + rank - 1, rank - 1) * K * std::pow(1.0 + n, M) * std::pow(q, n);
        s += t;
        if (n > cap + 10 && t < 1e-18 * s) break;
        if (n > cap + 100000) break;
    }
    return s;
}

inline double sum_rho(const RootDatum& R) {
    double s = 0.0;
    for (double r : R.rho.rho) s += r;
    return s;
}

}  // namespace detail

/**
 * @brief Smallest height cap with C e^{(Omega|H| - P)|rho|_1} sum_{n>cap} #_n dbar(n) q^n < tol/2,
 *        q = e^{-(P - Omega|H|)}, dbar(n) = K (1+n)^M fitted on heights <= 2 cap.
 *
 * Uses |a(mu+rho)| <= C e^{-P(|mu| + |rho|_1)} and
 * |phi_{mu+rho}(exp H)| <= e^{|mu+rho| |H|} <= e^{Omega |H| (|mu| + |rho|_1)}.
 */
inline SeriesResult series_cap(const MasterSpace& S, const HardyCertificate& c, double rH, const SeriesConfig& cfg) {
    const auto& R = S.datum();
    const double q = std::exp(-(c.P - rH));
    const double pref = c.C * std::exp((rH - c.P) * detail::sum_rho(R));
    SeriesResult r;
    int cap = 0;
    double K = detail::dbar_constant(S.cfun(), 32);
    for (int it = 0; it < 8; ++it) {
        cap = 0;
        while (pref * detail::weighted_tail(R.rank, R.rho.M, K, q, cap) >= 0.5 * cfg.tolerance) {
            if (++cap > cfg.max_height) throw CertificateError("series_f: truncation certificate needs a larger height cap");
        }
        const double K2 = detail::dbar_constant(S.cfun(), std::max(32, 2 * cap));
        if (K2 <= K) break;
        K = K2;
    }
    r.cap = cap;
    r.dbar_constant = K;
    r.tail_bound = pref * detail::weighted_tail(R.rank, R.rho.M, K, q, cap);
    return r;
}

/**
 * @brief f(exp H) = sum_{mu in Lambda^+} (-1)^{|mu|} d(mu) a(mu+rho) phi_{mu+rho}(exp H),
 *        truncated at the certified height.
 * @throws DomainError if Omega |H| >= P, CertificateError on truncation failure.
 */
inline SeriesResult series_f_ex(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H,
                                const SeriesConfig& cfg = {}) {
    require_validated(a);
    const auto& R = S.datum();
    if (a.rank != R.rank || static_cast<int>(H.size()) != R.rank) throw DomainError("series_f: rank mismatch");
    const double rH = R.rho.Omega * R.norm_H(H);
    if (!(rH < a.cert.P)) throw DomainError("series_f: |H| outside the radius P/Omega");
    SeriesResult r = series_cap(S, a.cert, rH, cfg);
    cplx sum = 0.0;
    SpectralPoint mu(R.rank), lam(R.rank);
    for (const auto& w : dominant_weights(R.rank, r.cap)) {
        for (int j = 0; j < R.rank; ++j) {
            mu[j] = double(w.mu[j]);
            lam[j] = mu[j] + R.rho.rho[j];
        }
        const cplx coef = a(lam);
        if (coef == 0.0) continue;
        const double d = S.cfun().d_poly(mu).real();
        sum += (w.height() % 2 == 0 ? 1.0 : -1.0) * d * coef * S.sph().phi(lam, H);
        ++r.terms;
    }
    r.value = sum;
    return r;
}

inline cplx series_f(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H, const SeriesConfig& cfg = {}) {
    return series_f_ex(S, a, H, cfg).value;
}

namespace detail {

/// max_w of the l1 operator norm of w in omega-coordinates.
inline double weyl_l1_norm(const RootDatum& R) {
    double k = 0.0;
    for (const auto& w : R.weyl)
        for (int j = 0; j < R.rank; ++j) {
            double s = 0.0;
            for (int i = 0; i < R.rank; ++i) s += std::abs(w(i, j));
            k = std::max(k, s);
        }
    return k;
}

}  // namespace detail

/**
 * @brief Per-axis decay rate of sum_w a(w lambda) b(w lambda)/(c c) on a vertical plane.
 *
 * Each term decays like e^{-pi sum_j |Im (w lambda)_j| + A sum_j |Im (w lambda)_j|}
 * and sum_j |Im (w lambda)_j| lies within a factor kappa of sum_j |Im lambda_j|,
 * so rate = pi/kappa - kappa A. Rank one has kappa = 1.
 */
inline double contour_rate(const RootDatum& R, double A) {
    const double k = detail::weyl_l1_norm(R);
    return pi / k - k * A;
}

/**
 * @brief (1/|W|) int_{sigma + i a*} a~(lambda) phi_lambda(exp H) dlambda/(c(lambda)c(-lambda)).
 *
 * The weight sum_w a(w lambda) b(w lambda)/(c c) is evaluated with the
 * factored density. The decay constant is fitted inside [-L, L]^l, the box
 * is widened until the certified tail meets the target, and line_integral
 * checks the majorant on the truncation boundary.
 * @throws DomainError for sigma outside B(T_delta) or rank above 2,
 *         CertificateError when no decay certificate holds.
 */
inline ContourResult contour_f_ex(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H, const RVec& sigma,
                                  const QuadratureConfig& cfg = {}) {
    require_validated(a);
    const auto& R = S.datum();
    if (a.rank != R.rank || static_cast<int>(H.size()) != R.rank || static_cast<int>(sigma.size()) != R.rank)
        throw DomainError("contour_f: rank mismatch");
    if (R.rank > 2) throw DomainError("contour_f: iterated quadrature is limited to rank <= 2");
    const SpectralPoint sp(sigma.begin(), sigma.end());
    if (!R.in_tube(sp, Tube::T_delta, a.cert.delta)) throw DomainError("contour_f: sigma outside B(T_delta)");
    const double rate = contour_rate(R, a.cert.A);
    if (!(rate > 0.0)) throw CertificateError("contour_f: no decay certificate for this A in this rank");
    const double W = static_cast<double>(R.order_W());
    const Integrand F = [&](const CVec& l) { return S.bfun().ab_over_cc_sym(a, l) * S.sph().phi(l, H) / W; };
    ContourResult r;
    r.cert = fit_decay(F, sigma, rate, R.rho.M, cfg.L);
    r.used = widen_for_tail(r.cert, R.rank, cfg);
    r.value = line_integral(F, sigma, r.used, &r.cert);
    r.tail_bound = r.cert.tail_bound(r.used.L, R.rank);
    return r;
}

inline cplx contour_f(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H, const RVec& sigma,
                      const QuadratureConfig& cfg = {}) {
    return contour_f_ex(S, a, H, sigma, cfg).value;
}

/// The same integral with the unsymmetrized weight a(lambda) b(lambda)/(c c) and no 1/|W|.
inline cplx contour_f_unsym(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H, const RVec& sigma,
                            const QuadratureConfig& cfg = {}) {
    require_validated(a);
    const auto& R = S.datum();
    const Integrand F = [&](const CVec& l) { return a(l) * S.bfun().b_over_cc(l) * S.sph().phi(l, H); };
    const auto cert = fit_decay(F, sigma, contour_rate(R, a.cert.A), R.rho.M, cfg.L);
    return line_integral(F, sigma, widen_for_tail(cert, R.rank, cfg), &cert);
}

// ---------------------------------------------------------------------------
// Interpolation in rank one
// ---------------------------------------------------------------------------

struct RadialConfig {
    double T = 80.0;       ///< radial cutoff
    double panel = 0.5;    ///< Gauss panel width in t
    double t_join = 1.0;   ///< f from the sigma = 0 form below, from the shifted form above
    QuadratureConfig quad{};
};

struct InterpolationValue {
    cplx lambda;
    cplx lhs;  ///< calibrated radial integral of f phi_{-lambda}
    cplx rhs;  ///< a~(lambda)
    double tail = 0.0;
};

/**
 * @brief Spherical transform of the contour function f in rank one, as a
 *        radial integral against J(t) = (2 sinh(t/2))^{m_{beta/2}} (2 sinh t)^{m_beta}.
 *
 * H is parametrized by t = beta(H). f is tabulated once on Gauss nodes of
 * [0, T]. Below t_join it comes from the contour on i R. Above it the
 * contour is rewritten as (2/|W|) int a~(lambda) Phi_lambda(t)/c(-lambda)
 * dlambda/(...) on Re lambda = sigma' < 0. This is the same integral but
 * without the cancellation of the sigma = 0 form at large t.
 *
 * The measure constant is fixed by calibrate() at one point, and every
 * other point is then an independent check.
 */
class RadialTransform {
public:
    RadialTransform(const MasterSpace& S, const HardyFunction& a, RadialConfig cfg = {})
        : S_(S), a_(a), cfg_(cfg) {
        require_validated(a);
        const auto& R = S.datum();
        if (R.rank != 1) throw DomainError("RadialTransform: rank one only");
        const auto& u = R.unmult.front();
        rho_ = u.rho_tilde;
        mh_ = u.m_half;
        m_ = u.m;
        hw_ = S.strip_scale(a.cert.delta) * rho_;
        sigma_ = -0.75 * hw_;
        const double W = static_cast<double>(R.order_W());

        // Weights of the two line integrals.
        const Integrand g0 = [&](const CVec& l) { return S.bfun().ab_over_cc_sym(a, l) / W; };
        const auto c0 = fit_decay(g0, {0.0}, contour_rate(R, a.cert.A), R.rho.M, cfg.quad.L);
        const auto q0 = widen_for_tail(c0, 1, cfg.quad);
        line_nodes(q0, 0.0, [&](cplx l) { return g0({l}); }, l0_, g0_);
        auto g1 = [&](cplx l) { return 2.0 / W * S.bfun().ab_over_cc_sym(a, {l}) * S.cfun().c_function({l}); };
        // Phi_lambda(t) oscillates like e^{i y t}: panels of width <= 10/T keep
        // the phase per 16-point panel bounded up to t = T.
        QuadratureConfig q1 = q0;
        const int panels1 = static_cast<int>(std::ceil(2.0 * q0.L / std::min(0.25, 10.0 / cfg.T)));
        q1.nodes_per_axis = std::max(q0.nodes_per_axis, 16 * panels1);
        line_nodes(q1, sigma_, g1, l1_, g1_);

        RVec x, w;
        const int panels = static_cast<int>(std::lround(cfg.T / cfg.panel));
        composite_rule(0.0, cfg.T, panels, x, w);
        // Stop at the first panel where f drops below 1e-6 of its summed term
        // sizes; past that the cancellation leaves mostly evaluation noise.
        const std::size_t per = gauss16().x.size();
        T_ = cfg.T;
        for (std::size_t k = 0; k < x.size(); ++k) {
            double mass = 0.0;
            const cplx fk = x[k] < cfg.t_join ? f_low(x[k]) : f_high(x[k], &mass);
            if (x[k] > 2.0 * cfg.t_join && std::abs(fk) < 1e-6 * mass) {
                const std::size_t keep = k - k % per;
                t_.resize(keep);
                f_.resize(keep);
                fJw_.resize(keep);
                T_ = cfg.panel * static_cast<double>(keep / per);
                break;
            }
            t_.push_back(x[k]);
            f_.push_back(fk);
            fJw_.push_back(w[k] * fk * J(x[k]));
        }
        fT_ = f_high(T_);
        join_residual_ = std::abs(f_low(cfg.t_join) - f_high(cfg.t_join));

        // Decay rate of f on the last stretch, by least squares on log|f|.
        const std::size_t n = t_.size();
        const double Tc = T_;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int cnt = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (x[k] < 0.85 * Tc || f_[k] == 0.0) continue;
            const double y = std::log(std::abs(f_[k]));
            sx += x[k];
            sy += y;
            sxx += x[k] * x[k];
            sxy += x[k] * y;
            ++cnt;
        }
        if (cnt < 2) throw ConvergenceError("RadialTransform: no samples for the decay fit");
        kf_ = -(cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
        const double b0 = (sy + kf_ * sx) / cnt;
        for (std::size_t k = 0; k < n; ++k)
            if (x[k] >= 0.85 * Tc && f_[k] != 0.0)
                fit_residual_ = std::max(fit_residual_, std::abs(std::log(std::abs(f_[k])) - (b0 - kf_ * x[k])));
    }

    [[nodiscard]] double half_width() const { return hw_; }
    [[nodiscard]] double shifted_sigma() const { return sigma_; }
    [[nodiscard]] double join_residual() const { return join_residual_; }
    [[nodiscard]] double decay_rate() const { return kf_; }
    [[nodiscard]] double fit_residual() const { return fit_residual_; }
    [[nodiscard]] cplx kappa() const { return kappa_; }
    [[nodiscard]] const RVec& nodes() const { return t_; }
    [[nodiscard]] double cutoff() const { return T_; }
    [[nodiscard]] const CVec& profile() const { return f_; }

    /// Radial density (2 sinh(t/2))^{m_{beta/2}} (2 sinh t)^{m_beta}.
    [[nodiscard]] double J(double t) const {
        return std::pow(2.0 * std::sinh(0.5 * t), mh_) * std::pow(2.0 * std::sinh(t), m_);
    }

    /// f(a_t) straight from the line integrals.
    [[nodiscard]] cplx f_at(double t) const { return t < cfg_.t_join ? f_low(t) : f_high(t); }

    /**
     * @brief int_0^inf f(t) phi_lambda(t) J(t) dt, uncalibrated.
     *
     * Beyond T every factor is replaced by its leading exponential; the
     * size of that correction is returned in tail.
     * @throws DomainError outside T_{Sigma,m} cap T_delta, ConvergenceError
     *         when the radial integrand does not decay on the window.
     */
    [[nodiscard]] cplx raw(cplx lam, double* tail = nullptr) const {
        const auto& R = S_.datum();
        if (!R.in_tube({lam}, Tube::T_Sigma_m, 0.0) || !R.in_tube({lam}, Tube::T_delta, a_.cert.delta))
            throw DomainError("RadialTransform: lambda outside T_{Sigma,m} cap T_delta");
        if (!(kf_ - std::abs(lam.real()) - rho_ > 0.0) || fit_residual_ > 0.05)
            throw ConvergenceError("RadialTransform: radial integrand does not decay on the window");
        cplx s = 0.0;
        for (std::size_t k = 0; k < t_.size(); ++k) s += fJw_[k] * phi_rank1(R, {lam}, t_[k]);
        const double T = T_;
        const cplx fT = fT_;
        const double JT = J(T);
        cplx tl = 0.0;
        // Past T: f(t) = f(T) e^{-kf (t-T)}, J(t) = J(T) e^{2 rho (t-T)}, Phi_l(t) = Phi_l(T) e^{(l-rho)(t-T)}.
        for (double sg : {1.0, -1.0}) {
            const cplx l = sg * lam;
            tl += S_.cfun().c_function({l}) * Phi_rank1(R, l, T) / (kf_ - l - rho_);
        }
        tl *= fT * JT;
        if (tail) *tail = std::abs(tl);
        return s + tl;
    }

    /// Sets kappa = a~(lambda*)/raw(lambda*).
    cplx calibrate(cplx lam_star) {
        kappa_ = S_.bfun().a_tilde(a_, {lam_star}) / raw(lam_star);
        return kappa_;
    }

    /// Reuses the constant calibrated on another Hardy function of the same space.
    void set_kappa(cplx k) { kappa_ = k; }

    /// kappa raw(lambda).
    [[nodiscard]] cplx lhs(cplx lam, double* tail = nullptr) const {
        if (kappa_ == 0.0) throw DomainError("RadialTransform: calibrate() first");
        const cplx v = kappa_ * raw(lam, tail);
        if (tail) *tail *= std::abs(kappa_);
        return v;
    }

    [[nodiscard]] InterpolationValue interpolate(cplx lam) const {
        InterpolationValue v;
        v.lambda = lam;
        v.lhs = lhs(lam, &v.tail);
        v.rhs = S_.bfun().a_tilde(a_, {lam});
        return v;
    }

    /// int |f|^2 J dt over the tabulated window.
    [[nodiscard]] double l2_radial() const {
        double s = 0.0;
        for (std::size_t k = 0; k < t_.size(); ++k) s += (fJw_[k] * std::conj(f_[k])).real();
        return s;
    }

    /// (1/|W|) int_{-Y}^{Y} |a~(iy)|^2 / |c(iy)|^2 dy.
    [[nodiscard]] double l2_spectral(double Y = 20.0, int panels = 160) const {
        RVec y, w;
        composite_rule(-Y, Y, panels, y, w);
        double s = 0.0;
        for (std::size_t k = 0; k < y.size(); ++k) {
            const SpectralPoint l{cplx(0.0, y[k])};
            s += w[k] * std::norm(S_.bfun().a_tilde(a_, l)) * S_.cfun().density(l).real();
        }
        return s / static_cast<double>(S_.datum().order_W());
    }

private:
    template <class G>
    static void line_nodes(const QuadratureConfig& q, double sigma, G g, CVec& lam, CVec& wt) {
        RVec y, w;
        composite_rule(-q.L, q.L, (q.nodes_per_axis + 15) / 16, y, w);
        lam.resize(y.size());
        wt.resize(y.size());
        for (std::size_t n = 0; n < y.size(); ++n) {
            lam[n] = cplx(sigma, y[n]);
            wt[n] = I * w[n] * g(lam[n]);
        }
    }

    [[nodiscard]] cplx f_low(double t) const {
        const auto& R = S_.datum();
        cplx s = 0.0;
        for (std::size_t n = 0; n < l0_.size(); ++n) s += g0_[n] * phi_rank1(R, {l0_[n]}, t);
        return s;
    }

    [[nodiscard]] cplx f_high(double t, double* abs_sum = nullptr) const {
        const auto& R = S_.datum();
        cplx s = 0.0;
        double m = 0.0;
        for (std::size_t n = 0; n < l1_.size(); ++n) {
            const cplx v = g1_[n] * Phi_rank1(R, l1_[n], t);
            s += v;
            m += std::abs(v);
        }
        if (abs_sum) *abs_sum = m;
        return s;
    }

    const MasterSpace& S_;
    HardyFunction a_;
    RadialConfig cfg_;
    double rho_ = 0.0, hw_ = 0.0, sigma_ = 0.0;
    int mh_ = 0, m_ = 0;
    CVec l0_, g0_, l1_, g1_;
    RVec t_;
    CVec f_, fJw_;
    double T_ = 0.0;  ///< end of the tabulated window, a panel boundary
    cplx fT_;
    double join_residual_ = 0.0, kf_ = 0.0, fit_residual_ = 0.0;
    cplx kappa_ = 0.0;
};

// ---------------------------------------------------------------------------
// Gamma variants
// ---------------------------------------------------------------------------

namespace detail {

inline cplx gamma_shift(const RootDatum& R, const SpectralPoint& lam) {
    cplx g = 1.0;
    for (int j = 0; j < R.rank; ++j) g *= cgamma(lam[j] - R.rho.rho[j] + 1.0);
    return g;
}

inline cplx cos_shift(const RootDatum& R, const SpectralPoint& lam) {
    cplx c = 1.0;
    for (int j = 0; j < R.rank; ++j) c *= std::cos(0.5 * pi * (lam[j] - R.rho.rho[j]));
    return c;
}

}  // namespace detail

/// A(lambda) = a(lambda) prod_j Gamma(lambda_j - rho_j + 1). @throws PoleError at gamma poles.
inline cplx gamma_A(const MasterSpace& S, const HardyFunction& a, const SpectralPoint& lam) {
    return a(lam) * detail::gamma_shift(S.datum(), lam);
}

/// B(lambda) = b(lambda) / prod_j Gamma(lambda_j - rho_j + 1).
inline cplx gamma_B(const MasterSpace& S, const SpectralPoint& lam) {
    const auto& R = S.datum();
    cplx r = 1.0;
    for (int j = 0; j < R.rank; ++j) r *= crgamma(lam[j] - R.rho.rho[j] + 1.0);
    return S.bfun().b_eval(lam) * r;
}

/// A~(lambda) = a(lambda) prod_j Gamma(lambda_j - rho_j + 1)/cos(pi(lambda_j - rho_j)/2).
inline cplx tilde_A(const MasterSpace& S, const HardyFunction& a, const SpectralPoint& lam) {
    const cplx c = detail::cos_shift(S.datum(), lam);
    if (std::abs(c) < pole_guard) throw PoleError("A~: zero of the cosine factor");
    return gamma_A(S, a, lam) / c;
}

/// B~(lambda) = b(lambda) prod_j cos(pi(lambda_j - rho_j)/2)/Gamma(lambda_j - rho_j + 1).
inline cplx tilde_B(const MasterSpace& S, const SpectralPoint& lam) {
    return gamma_B(S, lam) * detail::cos_shift(S.datum(), lam);
}

/**
 * @brief a(lambda) = e^{-P sum lambda_j} prod_j cos(pi(lambda_j - rho_j)/2).
 *
 * Its A~ is e^{-P sum lambda_j} prod_j Gamma(lambda_j - rho_j + 1), holomorphic,
 * and a(mu + rho) = 0 whenever some mu_j is odd. Certificate (pi/2, P, 1, 1).
 */
inline HardyFunction hardy_exp_cos(const RootDatum& R, double P = 1.0) {
    HardyFunction a;
    a.id = "expcos:P=" + std::to_string(P);
    a.rank = R.rank;
    a.cert = {0.5 * pi, P, 1.0, 1.0};
    const RVec rho = R.rho.rho;
    a.eval = [P, rho](const SpectralPoint& l) {
        cplx s = 0.0, c = 1.0;
        for (std::size_t j = 0; j < l.size(); ++j) {
            s += l[j];
            c *= std::cos(0.5 * pi * (l[j] - rho[j]));
        }
        return std::exp(-P * s) * c;
    };
    return a;
}

/// (-1)^{|mu|} d(mu) A(mu+rho)/mu!, with A and mu! through the gamma function.
inline cplx F_coefficient(const MasterSpace& S, const HardyFunction& a, const DominantWeight& mu) {
    const auto& R = S.datum();
    SpectralPoint lam(R.rank), m(R.rank);
    double lfact = 0.0;
    for (int j = 0; j < R.rank; ++j) {
        m[j] = double(mu.mu[j]);
        lam[j] = m[j] + R.rho.rho[j];
        lfact += std::lgamma(m[j].real() + 1.0);
    }
    // A(mu+rho)/mu! in logs: Gamma(mu_j + 1) overflows doubles past 170.
    cplx lg = 0.0;
    for (int j = 0; j < R.rank; ++j) lg += clgamma(lam[j] - R.rho.rho[j] + 1.0);
    const cplx coef = a(lam) * std::exp(lg - lfact);
    return (mu.height() % 2 == 0 ? 1.0 : -1.0) * S.cfun().d_poly(m).real() * coef;
}

/**
 * @brief Coefficient of phi_{mu+rho} in the even-weight series of A~.
 *
 * Exactly 0 when some mu_j is odd; for mu = 2 nu it is
 * (-1)^{|nu|} d(2 nu) A~(2 nu + rho)/(2 nu)!. The sign (-1)^{|nu|} comes from
 * cos(pi nu_j) when the f-series is rewritten; print_sign = true drops it.
 */
inline cplx tilde_coefficient(const MasterSpace& S, const HardyFunction& a, const DominantWeight& mu,
                              bool print_sign = false) {
    const auto& R = S.datum();
    for (int m : mu.mu)
        if (m % 2 != 0) return 0.0;
    SpectralPoint lam(R.rank), m(R.rank);
    double lfact = 0.0;
    for (int j = 0; j < R.rank; ++j) {
        m[j] = double(mu.mu[j]);
        lam[j] = m[j] + R.rho.rho[j];
        lfact += std::lgamma(m[j].real() + 1.0);
    }
    cplx lg = 0.0;
    for (int j = 0; j < R.rank; ++j) lg += clgamma(lam[j] - R.rho.rho[j] + 1.0);
    const cplx At = a(lam) * std::exp(lg - lfact) / detail::cos_shift(R, lam);
    const double sgn = (print_sign || (mu.height() / 2) % 2 == 0) ? 1.0 : -1.0;
    return sgn * S.cfun().d_poly(m).real() * At;
}

namespace detail {

template <class Coef>
SeriesResult weight_series(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H, const SeriesConfig& cfg,
                           Coef coef) {
    require_validated(a);
    const auto& R = S.datum();
    const double rH = R.rho.Omega * R.norm_H(H);
    if (!(rH < a.cert.P)) throw DomainError("series: |H| outside the radius P/Omega");
    SeriesResult r = series_cap(S, a.cert, rH, cfg);
    cplx sum = 0.0;
    SpectralPoint lam(R.rank);
    for (const auto& w : dominant_weights(R.rank, r.cap)) {
        const cplx c = coef(w);
        if (c == 0.0) continue;
        for (int j = 0; j < R.rank; ++j) lam[j] = double(w.mu[j]) + R.rho.rho[j];
        sum += c * S.sph().phi(lam, H);
        ++r.terms;
    }
    r.value = sum;
    return r;
}

}  // namespace detail

/// F(exp H) = sum (-1)^{|mu|} d(mu) A(mu+rho)/mu! phi_{mu+rho}(exp H).
inline SeriesResult F_series_ex(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H,
                                const SeriesConfig& cfg = {}) {
    return detail::weight_series(S, a, H, cfg, [&](const DominantWeight& mu) { return F_coefficient(S, a, mu); });
}

/// F~(exp H) = sum_nu (-1)^{|nu|} d(2 nu) A~(2 nu + rho)/(2 nu)! phi_{2 nu + rho}(exp H).
inline SeriesResult F_tilde_series_ex(const MasterSpace& S, const HardyFunction& a, const RadialPoint& H,
                                      const SeriesConfig& cfg = {}, bool print_sign = false) {
    return detail::weight_series(S, a, H, cfg,
                                 [&](const DominantWeight& mu) { return tilde_coefficient(S, a, mu, print_sign); });
}

/// sum_w A(w lambda) B(w lambda).
inline cplx sum_AB(const MasterSpace& S, const HardyFunction& a, const SpectralPoint& lam) {
    const auto& R = S.datum();
    cplx s = 0.0;
    for (std::size_t w = 0; w < R.order_W(); ++w) {
        const auto wl = R.apply(static_cast<int>(w), lam);
        s += gamma_A(S, a, wl) * gamma_B(S, wl);
    }
    return s;
}

/// sum_w A~(w lambda) B~(w lambda).
inline cplx sum_AB_tilde(const MasterSpace& S, const HardyFunction& a, const SpectralPoint& lam) {
    const auto& R = S.datum();
    cplx s = 0.0;
    for (std::size_t w = 0; w < R.order_W(); ++w) {
        const auto wl = R.apply(static_cast<int>(w), lam);
        s += tilde_A(S, a, wl) * tilde_B(S, wl);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Reductive spaces
// ---------------------------------------------------------------------------

/**
 * @brief Torus of dimension v times a semisimple catalog space.
 *
 * Spectral coordinates are (lambda^0_1..lambda^0_v, lambda'_1..lambda'_l)
 * in the basis (eps_k, omega_j). W acts on lambda' only, rho has no torus
 * part, c(lambda) = c(lambda') and phi_lambda(x, H) = x^{lambda^0} phi_{lambda'}(H).
 */
class ReductiveSpace {
public:
    ReductiveSpace(int v, const RootDatum& R) : v_(v), S_(R) {
        if (v < 1) throw DomainError("ReductiveSpace: torus dimension must be positive");
    }

    [[nodiscard]] int v() const { return v_; }
    [[nodiscard]] int rank() const { return v_ + S_.rank(); }
    [[nodiscard]] const MasterSpace& semisimple() const { return S_; }

    [[nodiscard]] std::pair<CVec, CVec> split(const SpectralPoint& lam) const {
        if (static_cast<int>(lam.size()) != rank()) throw DomainError("ReductiveSpace: wrong spectral length");
        return {CVec(lam.begin(), lam.begin() + v_), CVec(lam.begin() + v_, lam.end())};
    }

    [[nodiscard]] static SpectralPoint join(const CVec& l0, const CVec& l1) {
        SpectralPoint r = l0;
        r.insert(r.end(), l1.begin(), l1.end());
        return r;
    }

    /// b^0(lambda^0) = (i/2)^v prod_k 1/sin(pi lambda^0_k).
    [[nodiscard]] cplx b0(const CVec& l0) const {
        cplx s = 1.0;
        for (const auto& z : l0) {
            if (detail::dist_to_int(z) < pole_guard) throw PoleError("b0: pole at an integer");
            s *= 0.5 * I / std::sin(pi * z);
        }
        return s;
    }

    /// b(lambda)/(c(lambda)c(-lambda)) = b^0(lambda^0) b'(lambda')/(c(lambda')c(-lambda')).
    [[nodiscard]] cplx b_over_cc(const SpectralPoint& lam) const {
        const auto [l0, l1] = split(lam);
        return b0(l0) * S_.bfun().b_over_cc(l1);
    }

    /// sum_w a(w lambda) b(w lambda)/(cc), W acting on lambda' only.
    [[nodiscard]] cplx ab_over_cc_sym(const HardyFunction& a, const SpectralPoint& lam) const {
        const auto [l0, l1] = split(lam);
        const auto& R = S_.datum();
        cplx s = 0.0;
        for (std::size_t w = 0; w < R.order_W(); ++w) {
            const auto wl = R.apply(static_cast<int>(w), l1);
            s += a(join(l0, wl)) * S_.bfun().b_over_cc(wl);
        }
        return b0(l0) * s;
    }

    /// a~(lambda) = b^0(lambda^0) sum_w a(lambda^0, w lambda') b'(w lambda').
    [[nodiscard]] cplx a_tilde(const HardyFunction& a, const SpectralPoint& lam) const {
        const auto [l0, l1] = split(lam);
        const auto& R = S_.datum();
        cplx s = 0.0;
        for (std::size_t w = 0; w < R.order_W(); ++w) {
            const auto wl = R.apply(static_cast<int>(w), l1);
            s += a(join(l0, wl)) * S_.bfun().b_eval(wl);
        }
        return b0(l0) * s;
    }

    /// phi_lambda(x, H) = prod_k x_k^{lambda^0_k} phi_{lambda'}(H).
    [[nodiscard]] cplx phi(const SpectralPoint& lam, const RVec& x, const RadialPoint& H) const {
        const auto [l0, l1] = split(lam);
        cplx s = 1.0;
        for (int k = 0; k < v_; ++k) s *= std::exp(l0[k] * std::log(x[k]));
        return s * S_.sph().phi(l1, H);
    }

    /// sigma in B(T_delta): 0 < sigma^0_k < delta and sigma' in B(T'_delta).
    [[nodiscard]] bool in_base_T_delta(const RVec& sigma, double delta) const {
        for (int k = 0; k < v_; ++k)
            if (!(sigma[k] > 0.0 && sigma[k] < delta)) return false;
        const SpectralPoint l1(sigma.begin() + v_, sigma.end());
        return S_.datum().in_tube(l1, Tube::T_delta, delta);
    }

    /**
     * @brief Iterated residue of b/(cc) at mu + rho over all v + l coordinates,
     *        divided by (-1)^{|mu|} (-2 pi i)^{-(v+l)}; this is d(mu).
     */
    [[nodiscard]] cplx d_from_residue(const DominantWeight& mu, double radius = 0.25) const {
        const int n = rank();
        SpectralPoint pt(n);
        for (int k = 0; k < n; ++k) pt[k] = double(mu.mu[k]) + (k < v_ ? 0.0 : S_.datum().rho.rho[k - v_]);
        std::function<cplx(int, SpectralPoint&)> nested = [&](int level, SpectralPoint& cur) -> cplx {
            if (level == n) return b_over_cc(cur);
            return residue_at(
                [&](cplx z) {
                    SpectralPoint c = cur;
                    c[level] = z;
                    return nested(level + 1, c);
                },
                pt[level], radius, 64, 1e-9);
        };
        SpectralPoint cur = pt;
        const double sgn = mu.height() % 2 == 0 ? 1.0 : -1.0;
        return nested(0, cur) * std::pow(-2.0 * pi * I, n) * sgn;
    }

private:
    int v_;
    MasterSpace S_;
};

/**
 * @brief a^0 (rank v) times a' (rank l) as one Hardy function on the product.
 *
 * The joint certificate takes the larger A and the smaller P and delta. The
 * constant absorbs e^{|P^0 - P'| delta} for the coordinates whose own P is larger.
 */
inline HardyFunction product_hardy(const HardyFunction& a0, const HardyFunction& a1) {
    HardyFunction a;
    a.id = a0.id + "*" + a1.id;
    a.rank = a0.rank + a1.rank;
    const double P = std::min(a0.cert.P, a1.cert.P), delta = std::min(a0.cert.delta, a1.cert.delta);
    double C = a0.cert.C * a1.cert.C;
    C *= std::exp(a0.rank * (a0.cert.P - P) * a0.cert.delta + a1.rank * (a1.cert.P - P) * a1.cert.delta);
    a.cert = {std::max(a0.cert.A, a1.cert.A), P, delta, C};
    const int v = a0.rank;
    a.eval = [a0, a1, v](const SpectralPoint& l) {
        return a0(CVec(l.begin(), l.begin() + v)) * a1(CVec(l.begin() + v, l.end()));
    };
    a.validated = a0.validated && a1.validated;
    return a;
}

/**
 * @brief f(x, H) = sum_{mu in Lambda^{++}} (-1)^{|mu|} d(mu') a(mu + rho) x^{mu^0} phi_{mu'+rho}(H).
 *
 * Cap as for series_f, with per-height ratio e^{-(P - max(|log x_k|, Omega |H|))}.
 */
inline SeriesResult reductive_series_ex(const ReductiveSpace& RS, const HardyFunction& a, const RVec& x,
                                        const RadialPoint& H, const SeriesConfig& cfg = {}) {
    require_validated(a);
    const auto& S = RS.semisimple();
    const auto& R = S.datum();
    const int v = RS.v(), n = RS.rank();
    if (a.rank != n || static_cast<int>(x.size()) != v) throw DomainError("reductive_series: rank mismatch");
    double r = R.rho.Omega * R.norm_H(H);
    for (double xk : x) {
        if (!(xk > 0.0)) throw DomainError("reductive_series: torus coordinates must be positive");
        r = std::max(r, std::abs(std::log(xk)));
    }
    if (!(r < a.cert.P)) throw DomainError("reductive_series: point outside the radius");
    const double q = std::exp(-(a.cert.P - r));
    const double pref = a.cert.C * std::exp((r - a.cert.P) * detail::sum_rho(R));
    SeriesResult res;
    double K = detail::dbar_constant(S.cfun(), 32);
    int cap = 0;
    for (int it = 0; it < 8; ++it) {
        cap = 0;
        while (pref * detail::weighted_tail(n, R.rho.M, K, q, cap) >= 0.5 * cfg.tolerance)
            if (++cap > cfg.max_height) throw CertificateError("reductive_series: height cap exceeded");
        const double K2 = detail::dbar_constant(S.cfun(), std::max(32, 2 * cap));
        if (K2 <= K) break;
        K = K2;
    }
    res.cap = cap;
    res.dbar_constant = K;
    res.tail_bound = pref * detail::weighted_tail(n, R.rho.M, K, q, cap);
    cplx sum = 0.0;
    SpectralPoint lam(n), mu1(R.rank);
    for (const auto& w : dominant_weights(n, cap)) {
        for (int k = 0; k < n; ++k) lam[k] = double(w.mu[k]) + (k < v ? 0.0 : R.rho.rho[k - v]);
        for (int j = 0; j < R.rank; ++j) mu1[j] = double(w.mu[v + j]);
        const cplx c = a(lam);
        if (c == 0.0) continue;
        sum += (w.height() % 2 == 0 ? 1.0 : -1.0) * S.cfun().d_poly(mu1).real() * c * RS.phi(lam, x, H);
        ++res.terms;
    }
    res.value = sum;
    return res;
}

/**
 * @brief (1/|W|) int_{sigma + i a*} a~(lambda) phi_lambda(x, H) dlambda/(c c).
 *
 * The torus part of sigma must lie in (-delta, 0)^v. On 0 < sigma^0 < delta
 * the same integral misses the residue at lambda^0 = 0 and returns f minus
 * the lambda^0 = 0 slice.
 * @throws DomainError for sigma outside that base or total rank above 2.
 */
inline ContourResult reductive_contour_ex(const ReductiveSpace& RS, const HardyFunction& a, const RVec& x,
                                          const RadialPoint& H, const RVec& sigma, const QuadratureConfig& cfg = {}) {
    require_validated(a);
    const auto& S = RS.semisimple();
    const auto& R = S.datum();
    const int v = RS.v(), n = RS.rank();
    if (a.rank != n || static_cast<int>(sigma.size()) != n) throw DomainError("reductive_contour: rank mismatch");
    if (n > 2) throw DomainError("reductive_contour: iterated quadrature is limited to total rank <= 2");
    for (int k = 0; k < v; ++k)
        if (!(sigma[k] < 0.0 && sigma[k] > -a.cert.delta))
            throw DomainError("reductive_contour: torus base point must lie in (-delta, 0)");
    if (!R.in_tube(SpectralPoint(sigma.begin() + v, sigma.end()), Tube::T_delta, a.cert.delta))
        throw DomainError("reductive_contour: sigma' outside B(T'_delta)");
    const double rate = std::min(pi - a.cert.A, contour_rate(R, a.cert.A));
    if (!(rate > 0.0)) throw CertificateError("reductive_contour: no decay certificate");
    const double W = static_cast<double>(R.order_W());
    const Integrand F = [&](const CVec& l) { return RS.ab_over_cc_sym(a, l) * RS.phi(l, x, H) / W; };
    ContourResult r;
    r.cert = fit_decay(F, sigma, rate, R.rho.M, cfg.L);
    r.used = widen_for_tail(r.cert, n, cfg);
    r.value = line_integral(F, sigma, r.used, &r.cert);
    r.tail_bound = r.cert.tail_bound(r.used.L, n);
    return r;
}

// ---------------------------------------------------------------------------
// Rectangle-contour iteration
// ---------------------------------------------------------------------------

struct IterationStep {
    int N = 0;
    cplx eta;           ///< int over [-iN, iN] of a b phi/(cc)
    cplx partial_sum;   ///< sum_{k <= N} (-1)^k d(k) a(k + rho) phi_{k+rho}
    cplx rectangle;     ///< clockwise integral over the rectangle with corners +-iN, X +- iN
    double error = 0.0; ///< |eta - f|
};

struct ContourIteration {
    cplx target;               ///< series value of f
    std::vector<IterationStep> steps;
    double slope = 0.0;        ///< least-squares slope of log(error) in N
    double predicted = 0.0;    ///< -(pi - A)
    bool monotone = false;
};

/**
 * @brief Truncated imaginary-axis integrals and rectangle sums in rank one.
 *
 * The rectangle -iN -> iN -> X + iN -> X - iN with X = rho + N + 1/2
 * encloses the poles k + rho, k <= N, clockwise, so it reproduces the
 * partial sum S_N. The left side alone converges to f, and its error
 * decays like e^{-(pi - A) N}.
 */
inline ContourIteration contour_iteration(const MasterSpace& S, const HardyFunction& a, double t, int Nmax = 6,
                                          double panel = 0.25) {
    require_validated(a);
    const auto& R = S.datum();
    if (R.rank != 1) throw DomainError("contour_iteration: rank one only");
    const double rho = R.rho.rho[0];
    ContourIteration out;
    out.target = series_f(S, a, {t});
    out.predicted = -(pi - a.cert.A);
    auto F = [&](cplx l) { return a({l}) * S.bfun().b_over_cc({l}) * S.sph().phi({l}, {t}); };
    // Straight segment z0 -> z1, Gauss panels of about the given length.
    auto seg = [&](cplx z0, cplx z1) {
        const int n = std::max(1, static_cast<int>(std::ceil(std::abs(z1 - z0) / panel)));
        RVec s, w;
        composite_rule(0.0, 1.0, n, s, w);
        cplx acc = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) acc += w[k] * F(z0 + s[k] * (z1 - z0));
        return acc * (z1 - z0);
    };
    cplx partial = 0.0;
    int k_done = -1;
    for (int N = 1; N <= Nmax; ++N) {
        for (int k = k_done + 1; k <= N; ++k) {
            const double lam = k + rho;
            partial += (k % 2 == 0 ? 1.0 : -1.0) * S.cfun().d_poly({double(k)}).real() * a({lam}) *
                       S.sph().phi({lam}, {t});
        }
        k_done = N;
        IterationStep st;
        st.N = N;
        st.partial_sum = partial;
        const double X = rho + N + 0.5;
        const cplx lo(0.0, -N), hi(0.0, N), hiX(X, N), loX(X, -N);
        st.eta = seg(lo, hi);
        st.rectangle = st.eta + seg(hi, hiX) + seg(hiX, loX) + seg(loX, lo);
        st.error = std::abs(st.eta - out.target);
        out.steps.push_back(st);
    }
    const double n = static_cast<double>(out.steps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& st : out.steps) {
        const double y = std::log(st.error);
        sx += st.N;
        sy += y;
        sxx += double(st.N) * st.N;
        sxy += st.N * y;
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    out.monotone = true;
    for (std::size_t i = 1; i < out.steps.size(); ++i)
        out.monotone = out.monotone && out.steps[i].error < out.steps[i - 1].error;
    return out;
}

// ---------------------------------------------------------------------------
// Report builders
// ---------------------------------------------------------------------------

struct VerifyConfig {
    SeriesConfig series{};
    QuadratureConfig quad{};
    double tol = 1e-6;           ///< series against contour
    double sigma_tol = 1e-8;     ///< spread over base points
    double interp_tol = 1e-5;    ///< relative, interpolation
    int radial_points = 10;
    std::uint64_t seed = 1;
    bool interpolation = true;
    bool gamma = true;
};

/**
 * @brief Built-in Hardy function from "id[:P=value]".
 *
 * Ids: exp, rgamma, box, expcos, sin. The result is certified against the
 * domain of R when given; sin fails certification by design.
 * @throws DomainError on an unknown id, CertificateError on failed certification.
 */
inline HardyFunction parse_hardy(const std::string& spec, int rank, const RootDatum* R = nullptr,
                                 std::uint64_t seed = 1) {
    std::string id = spec;
    double P = 1.0;
    if (const auto c = spec.find(':'); c != std::string::npos) {
        id = spec.substr(0, c);
        const std::string rest = spec.substr(c + 1);
        if (rest.rfind("P=", 0) != 0) throw DomainError("hardy spec: expected P=value after ':'");
        try {
            std::size_t used = 0;
            P = std::stod(rest.substr(2), &used);
            if (used != rest.size() - 2) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw DomainError("hardy spec: bad P value '" + rest.substr(2) + "'");
        }
    }
    HardyFunction a;
    if (id == "exp") a = hardy_exp(P, rank);
    else if (id == "rgamma") a = hardy_rgamma(rank, P, R);
    else if (id == "box") a = hardy_box(rank, R);
    else if (id == "expcos") {
        if (!R) throw DomainError("hardy spec: expcos needs a space");
        a = hardy_exp_cos(*R, P);
    } else if (id == "sin") {
        if (rank != 1) throw DomainError("hardy spec: sin is rank one");
        a = hardy_sin(3.0, P);
    } else
        throw DomainError("hardy spec: unknown id '" + id + "'");
    return certify(a, R, 2000, seed);
}

namespace detail {

/// Runs fn; an rmt::Error becomes a failing record.
template <class Fn>
void guarded(VerificationReport& rep, const std::string& check, const std::string& point, Fn fn) {
    try {
        fn();
    } catch (const Error& e) {
        rep.add_error(check, point, e.what());
    }
}

inline RVec scaled(const RVec& v, double s) {
    RVec r = v;
    for (auto& x : r) x *= s;
    return r;
}

}  // namespace detail

/**
 * @brief Classical theorem: series against contour, sigma independence,
 *        interpolation and its gamma form at the standard lambda values.
 */
inline VerificationReport verify_classical(const HardyFunction& a, const VerifyConfig& cfg = {}) {
    VerificationReport rep;
    rep.space = "classical";
    rep.hardy = a.id;
    rep.cert = a.cert;
    const double d = a.cert.delta;
    for (double x : {0.1, 0.5, 1.0}) {
        if (!(x < std::exp(a.cert.P))) continue;
        detail::guarded(rep, "classical.series_contour", "x=" + detail::num(x), [&] {
            rep.add("classical.series_contour", "x=" + detail::num(x), classical_series(a, x),
                    classical_contour(a, x, -0.5 * d, cfg.quad), 1e-10);
        });
    }
    for (double x : {1.0, 10.0}) {
        detail::guarded(rep, "classical.sigma_independence", "x=" + detail::num(x), [&] {
            rep.add("classical.sigma_independence", "x=" + detail::num(x), classical_contour(a, x, -0.2 * d, cfg.quad),
                    classical_contour(a, x, -0.8 * d, cfg.quad), 1e-9);
        });
    }
    detail::guarded(rep, "classical.interpolation", "profile", [&] {
        const ClassicalProfile prof(a, cfg.quad);
        for (cplx l : {cplx(0.2), cplx(0.4), cplx(0.5, 0.3), cplx(0.7, -0.2), cplx(0.9)}) {
            const cplx lam(l.real() * d, l.imag());
            const std::string pt = "lambda=" + detail::cnum(lam);
            detail::guarded(rep, "classical.interpolation", pt, [&] {
                const auto r = prof.interpolate(lam);
                rep.add("classical.interpolation", pt, r.lhs, r.rhs, 1e-8);
                rep.add("classical.interpolation_gamma", pt, r.lhs, r.rhs_gamma, 1e-8);
            });
        }
    });
    return rep;
}

/**
 * @brief Part 1 against part 2 at radial points, sigma independence, the
 *        unsymmetrized contour, and in rank one the interpolation identity,
 *        holomorphy probe, W-invariance, L2 identity and the gamma variants.
 */
inline VerificationReport verify_semisimple(const MasterSpace& S, const std::string& name, const HardyFunction& a,
                                            const VerifyConfig& cfg = {}) {
    VerificationReport rep;
    rep.space = name;
    rep.hardy = a.id;
    rep.cert = a.cert;
    const auto& R = S.datum();
    const int l = R.rank;
    const RVec zero(l, 0.0);

    // Radial points with Omega |H| <= P/2.
    std::vector<RVec> Hs;
    RVec dir(l, 1.0);
    if (l > 1)
        for (int j = 0; j < l; ++j) dir[j] = 1.0 + 0.37 * j;
    const double rmax = 0.5 * a.cert.P / (R.rho.Omega * R.norm_H(dir));
    const int np = l == 1 ? cfg.radial_points : 2;
    for (int k = 0; k < np; ++k) Hs.push_back(detail::scaled(dir, np == 1 ? 0.0 : rmax * k / (np - 1)));
    for (const auto& H : Hs) {
        const std::string pt = "H=" + point_str(H);
        detail::guarded(rep, "part12.series_contour", pt, [&] {
            const auto sr = series_f_ex(S, a, H, cfg.series);
            const auto cr = contour_f_ex(S, a, H, zero, cfg.quad);
            rep.add("part12.series_contour", pt, sr.value, cr.value, cfg.tol);
            rep.meta["series_cap " + pt] = std::to_string(sr.cap) + " tail=" + detail::num(sr.tail_bound);
            rep.meta["contour_L " + pt] = detail::num(cr.used.L) + " nodes=" + std::to_string(cr.used.nodes_per_axis) +
                                          " tail=" + detail::num(cr.tail_bound);
        });
    }

    // Three base points of T_delta along rho.
    const double s = S.strip_scale(a.cert.delta);
    const RVec Hm = Hs[Hs.size() / 2];
    detail::guarded(rep, "part2.sigma_spread", "H=" + point_str(Hm), [&] {
        std::vector<cplx> vals;
        for (double c : {0.0, 0.4, -0.4}) {
            RVec sg(l);
            for (int j = 0; j < l; ++j) sg[j] = c * s * R.rho.rho[j];
            vals.push_back(contour_f(S, a, Hm, sg, cfg.quad));
        }
        double spread = 0.0;
        for (const auto& x : vals)
            for (const auto& y : vals) spread = std::max(spread, std::abs(x - y));
        rep.add("part2.sigma_spread", "H=" + point_str(Hm), spread, 0.0, cfg.sigma_tol);
    });
    detail::guarded(rep, "part2.unsymmetrized", "H=" + point_str(Hm), [&] {
        rep.add("part2.unsymmetrized", "H=" + point_str(Hm), contour_f_unsym(S, a, Hm, zero, cfg.quad),
                contour_f(S, a, Hm, zero, cfg.quad), 1e-10);
    });

    if (cfg.gamma) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> re(-0.9, 0.9), im(-3.0, 3.0);
        double worst = -1.0, worst_t = -1.0;
        cplx wl = 0.0, wr = 0.0, wlt = 0.0, wrt = 0.0;
        std::string wp, wpt;
        for (int k = 0; k < 100; ++k) {
            SpectralPoint lam(l);
            for (int j = 0; j < l; ++j) lam[j] = cplx(R.rho.rho[j] + re(rng), im(rng));
            try {
                const cplx ab = a(lam) * S.bfun().b_eval(lam);
                const cplx AB = gamma_A(S, a, lam) * gamma_B(S, lam);
                const cplx ABt = tilde_A(S, a, lam) * tilde_B(S, lam);
                const double e = std::abs(AB - ab) / std::abs(ab), et = std::abs(ABt - ab) / std::abs(ab);
                if (e > worst) worst = e, wl = AB, wr = ab, wp = point_str(lam);
                if (et > worst_t) worst_t = et, wlt = ABt, wrt = ab, wpt = point_str(lam);
            } catch (const PoleError&) {
                // pole-free points only
            }
        }
        rep.add("gamma.AB_identity", "worst of 100: " + wp, wl, wr, 1e-10, true);
        rep.add("gamma.AB_tilde_identity", "worst of 100: " + wpt, wlt, wrt, 1e-10, true);
        for (const RVec& H : {Hs.front(), Hm}) {
            const std::string pt = "H=" + point_str(H);
            detail::guarded(rep, "gamma.F_series", pt, [&] {
                rep.add("gamma.F_series", pt, F_series_ex(S, a, H, cfg.series).value, series_f(S, a, H, cfg.series),
                        cfg.series.tolerance);
            });
        }
        bool odd_zero = true;
        const auto ac = certify(hardy_exp_cos(R, a.cert.P), &R, 2000, cfg.seed);
        for (const auto& mu : dominant_weights(l, 10)) {
            bool odd = false;
            for (int m : mu.mu) odd = odd || m % 2 != 0;
            if (odd) odd_zero = odd_zero && tilde_coefficient(S, ac, mu) == 0.0;
        }
        rep.add_bool("gamma.tilde_odd_zero", "|mu|<=10", odd_zero);
        detail::guarded(rep, "gamma.tilde_series", "H=" + point_str(Hm), [&] {
            rep.add("gamma.tilde_series", "H=" + point_str(Hm), F_tilde_series_ex(S, ac, Hm, cfg.series).value,
                    series_f(S, ac, Hm, cfg.series), cfg.series.tolerance);
        });
    }

    if (l != 1 || !cfg.interpolation) {
        rep.meta["interpolation"] = l != 1 ? "not run: radial measure implemented in rank one only" : "disabled";
        return rep;
    }
    detail::guarded(rep, "part3.interpolation", "setup", [&] {
        RadialTransform RT(S, a, RadialConfig{80.0, 0.5, 1.0, cfg.quad});
        const double hw = RT.half_width();
        const cplx lstar(0.37 * hw, 0.0);
        const cplx kappa = RT.calibrate(lstar);
        rep.meta["calibration"] = "lambda*=" + detail::cnum(lstar) + " kappa=" + detail::cnum(kappa) + " (excluded)";
        rep.meta["radial"] = "cutoff=" + detail::num(RT.cutoff()) + " decay=" + detail::num(RT.decay_rate()) +
                             " join_residual=" + detail::num(RT.join_residual());
        for (double r : {-0.6, -0.3, 0.15, 0.45})
            for (double y : {0.0, 0.7, 1.5, 2.5, 3.5}) {
                const cplx lam(r * hw, y);
                const std::string pt = "lambda=" + detail::cnum(lam);
                detail::guarded(rep, "part3.interpolation", pt, [&] {
                    const auto v = RT.interpolate(lam);
                    rep.add("part3.interpolation", pt, v.lhs, v.rhs, cfg.interp_tol, true);
                });
            }
        const double h = 1e-3;
        for (cplx lam : {cplx(0.2 * hw, 0.5), cplx(-0.3 * hw, 1.2), cplx(0.1 * hw, 2.0)}) {
            const std::string pt = "lambda=" + detail::cnum(lam);
            detail::guarded(rep, "part3.holomorphy", pt, [&] {
                const cplx r0 = S.bfun().a_tilde(a, {lam});
                for (cplx dir : {cplx(1.0), I}) {
                    const cplx dl = (RT.lhs(lam + h * dir) - RT.lhs(lam - h * dir)) / (2.0 * h);
                    const cplx dr = (S.bfun().a_tilde(a, {lam + h * dir}) - S.bfun().a_tilde(a, {lam - h * dir})) / (2.0 * h);
                    rep.add(dir == 1.0 ? "part3.holomorphy_re" : "part3.holomorphy_im", pt, dl, dr,
                            1e-4 * std::max(std::abs(dr), std::abs(r0)));
                }
            });
            detail::guarded(rep, "part3.w_invariance", pt, [&] {
                rep.add("part3.w_invariance", pt, RT.lhs(lam), RT.lhs(-lam), 1e-12, true);
            });
        }
        detail::guarded(rep, "part3.l2", "iR", [&] {
            rep.add("part3.l2", "iR", I * kappa * RT.l2_radial(), RT.l2_spectral(), 1e-4, true);
        });
        if (cfg.gamma) {
            const auto ac = certify(hardy_exp_cos(R, a.cert.P), &R, 2000, cfg.seed);
            RadialTransform RTc(S, ac, RadialConfig{80.0, 0.5, 1.0, cfg.quad});
            RTc.set_kappa(kappa);
            for (cplx lam : {cplx(0.2 * hw, 0.4), cplx(-0.4 * hw, 1.1), cplx(0.3 * hw, 2.2)}) {
                const std::string pt = "lambda=" + detail::cnum(lam);
                detail::guarded(rep, "gamma.F_interpolation", pt, [&] {
                    rep.add("gamma.F_interpolation", pt, RT.lhs(lam), sum_AB(S, a, {lam}), cfg.interp_tol, true);
                });
                detail::guarded(rep, "gamma.tilde_interpolation", pt, [&] {
                    rep.add("gamma.tilde_interpolation", pt, RTc.lhs(lam), sum_AB_tilde(S, ac, {lam}), cfg.interp_tol,
                            true);
                });
            }
        }
    });
    std::stable_sort(rep.records.begin(), rep.records.end(),
                     [](const CheckRecord& x, const CheckRecord& y) { return x.check < y.check; });
    return rep;
}

/**
 * @brief Torus of dimension one times a rank-one space with a = a0 (x) a1:
 *        both sides of every identity factor into the classical and the
 *        semisimple result.
 */
inline VerificationReport verify_reductive(const ReductiveSpace& RS, const std::string& name, const HardyFunction& a0,
                                           const HardyFunction& a1, const VerifyConfig& cfg = {}) {
    if (RS.v() != 1 || RS.semisimple().rank() != 1)
        throw DomainError("verify_reductive: torus dimension 1 and a rank-one factor only");
    const auto& S = RS.semisimple();
    const auto a = product_hardy(a0, a1);
    require_validated(a);
    VerificationReport rep;
    rep.space = "T1x" + name;
    rep.hardy = a.id;
    rep.cert = a.cert;
    const double d0 = a.cert.delta;
    for (const auto& [x, t] : std::vector<std::pair<double, double>>{{0.5, 0.0}, {0.8, 0.2}, {1.2, 0.3}}) {
        const std::string pt = "x=" + detail::num(x) + " t=" + detail::num(t);
        detail::guarded(rep, "reductive.series_factor", pt, [&] {
            const cplx joint = reductive_series_ex(RS, a, {x}, {t}, cfg.series).value;
            rep.add("reductive.series_factor", pt, joint,
                    classical_series(a0, x) * series_f(S, a1, {t}, cfg.series), 2.0 * cfg.series.tolerance);
            const cplx jc = reductive_contour_ex(RS, a, {x}, {t}, {-0.5 * d0, 0.0}, cfg.quad).value;
            rep.add("reductive.series_contour", pt, joint, jc, cfg.tol);
            rep.add("reductive.contour_factor", pt, jc,
                    classical_contour(a0, x, -0.5 * d0, cfg.quad) * contour_f(S, a1, {t}, {0.0}, cfg.quad), 1e-10);
        });
    }
    detail::guarded(rep, "reductive.interpolation", "setup", [&] {
        const ClassicalProfile prof(a0, cfg.quad);
        RadialTransform RT(S, a1, RadialConfig{80.0, 0.5, 1.0, cfg.quad});
        const double hw = RT.half_width();
        RT.calibrate(cplx(0.37 * hw, 0.0));
        for (const auto& [l0, l1] : std::vector<std::pair<cplx, cplx>>{
                 {0.3, cplx(0.2 * hw, 0.5)}, {cplx(0.5, 0.2), cplx(-0.4 * hw, 0.0)}, {0.7, cplx(0.1 * hw, 1.2)}}) {
            const cplx lam0(l0.real() * d0, l0.imag());
            const SpectralPoint lam{lam0, l1};
            const std::string pt = point_str(lam);
            detail::guarded(rep, "reductive.interpolation", pt, [&] {
                const cplx lhs = prof.interpolate(lam0).lhs * RT.lhs(l1);
                rep.add("reductive.interpolation", pt, lhs, 2.0 * pi * I * RS.a_tilde(a, lam), 1e-6, true);
                rep.add("reductive.atilde_factor", pt, RS.a_tilde(a, lam),
                        RS.b0({lam0}) * a0({lam0}) * S.bfun().a_tilde(a1, {l1}), 1e-12, true);
            });
        }
    });
    const auto& cf = S.cfun();
    for (const auto& mu : dominant_weights(RS.rank(), 3)) {
        const DominantWeight m1{{mu.mu.begin() + RS.v(), mu.mu.end()}};
        const std::string pt = "mu=" + point_str(RVec(mu.mu.begin(), mu.mu.end()));
        detail::guarded(rep, "reductive.d_mu", pt, [&] {
            const cplx dr = RS.d_from_residue(mu);
            const long d1 = cf.weyl_dim(m1);
            rep.add("reductive.d_mu_residue", pt, dr, double(d1), 1e-8, true);
            rep.add_bool("reductive.d_mu_exact", pt, std::lround(dr.real()) == d1);
        });
    }
    std::stable_sort(rep.records.begin(), rep.records.end(),
                     [](const CheckRecord& x, const CheckRecord& y) { return x.check < y.check; });
    return rep;
}

}  // namespace rmt
