// rmt: catalog inspection, pointwise evaluation and verification runs.
//
// Exit codes: 0 success, 1 verification failure or evaluation error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rmt/rmt.hpp"

using namespace rmt;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

double parse_real(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

// "a", "bi", "a+bi", "a-bi", "i", "-i".
cplx parse_complex(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw UsageError("empty number");
    if (s.back() != 'i') return parse_real(s);
    s.pop_back();
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t k = std::string::npos;
    for (std::size_t j = s.size(); j-- > 1;)
        if ((s[j] == '+' || s[j] == '-') && s[j - 1] != 'e' && s[j - 1] != 'E') {
            k = j;
            break;
        }
    auto imag = [](const std::string& t) {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        return parse_real(t);
    };
    if (k == std::string::npos) return cplx(0.0, imag(s));
    return cplx(parse_real(s.substr(0, k)), imag(s.substr(k)));
}

SpectralPoint parse_lambda(const std::string& s, int rank) {
    SpectralPoint lam;
    for (const auto& t : split(s, ',')) lam.push_back(parse_complex(t));
    if (static_cast<int>(lam.size()) != rank)
        throw UsageError("--lambda needs " + std::to_string(rank) + " comma-separated entries");
    return lam;
}

RVec parse_reals(const std::string& s, int rank, const char* flag) {
    RVec v;
    for (const auto& t : split(s, ',')) v.push_back(parse_real(t));
    if (static_cast<int>(v.size()) != rank)
        throw UsageError(std::string(flag) + " needs " + std::to_string(rank) + " comma-separated entries");
    return v;
}

std::string cstr(cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

std::string mult_str(const std::map<std::string, int>& m) {
    std::string s;
    for (const auto& [k, v] : m) s += (s.empty() ? "" : ";") + k + "=" + std::to_string(v);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Master-theorem toolkit for symmetric spaces: catalog, evaluation, verification"};
    app.require_subcommand(1);

    std::string catalog_path, space, hardy = "exp:P=1", hardy0 = "exp:P=1", lambda, mu, H, report_path,
                                      format = "csv";
    VerifyConfig vc;
    std::optional<double> tol, quad_L;
    std::optional<int> max_height, quad_nodes;
    app.add_option("--catalog", catalog_path, "catalog JSON (default: built-in)")->check(CLI::ExistingFile);

    auto* cat = app.add_subcommand("catalog", "list or show catalog spaces");
    cat->require_subcommand(1);
    cat->add_subcommand("list", "one CSV row per space");
    auto* show = cat->add_subcommand("show", "structure of one space");
    std::string show_name;
    show->add_option("NAME", show_name, "space name")->required();

    auto* ev = app.add_subcommand("eval", "evaluate c, b, d or phi at one point");
    ev->require_subcommand(1);
    auto* ev_c = ev->add_subcommand("c", "c(lambda)");
    auto* ev_b = ev->add_subcommand("b", "b(lambda)");
    auto* ev_d = ev->add_subcommand("d", "d(mu), dimension of the spherical representation");
    auto* ev_phi = ev->add_subcommand("phi", "phi_lambda(exp H)");
    for (auto* s : {ev_c, ev_b, ev_d, ev_phi}) s->add_option("--space", space, "catalog space")->required();
    for (auto* s : {ev_c, ev_b, ev_phi})
        s->add_option("--lambda", lambda, "omega-coordinates, e.g. 0.3+0.2i,1")->required();
    ev_d->add_option("--mu", mu, "highest weight, non-negative integers")->required();
    ev_phi->add_option("--H", H, "radial point, omega-dual coordinates")->required();

    auto* ver = app.add_subcommand("verify", "run a verification suite");
    ver->require_subcommand(1);
    auto* v_cl = ver->add_subcommand("classical", "classical theorem");
    auto* v_ss = ver->add_subcommand("semisimple", "series, contour and interpolation on a catalog space");
    auto* v_rd = ver->add_subcommand("reductive", "one-dimensional torus times a rank-one space");
    for (auto* s : {v_ss, v_rd}) s->add_option("--space", space, "catalog space")->required();
    for (auto* s : {v_cl, v_ss, v_rd}) {
        s->add_option("--hardy", hardy, "Hardy function id[:P=value]: exp, rgamma, box, expcos, sin")
            ->capture_default_str();
        s->add_option("--report", report_path, "also write the text report here");
        s->add_option("--format", format, "stdout format")->check(CLI::IsMember({"csv", "text"}))->capture_default_str();
        s->add_option("--seed", vc.seed, "sampling seed")->capture_default_str();
        s->add_option("--tol", tol, "series/contour tolerance (default 1e-6)");
        s->add_option("--max-height", max_height, "series height cap (default 400)");
        s->add_option("--quad-L", quad_L, "initial truncation of the contour lines (default 14)");
        s->add_option("--quad-nodes", quad_nodes, "initial nodes per axis (default 896)");
    }
    v_rd->add_option("--hardy0", hardy0, "torus factor, id[:P=value]")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
    }

    try {
        const auto catalog = catalog_path.empty() ? builtin_catalog() : load_catalog(catalog_path);
        auto space_datum = [&] {
            try {
                return build_catalog_space(space, catalog);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
        };

        if (cat->parsed()) {
            if (cat->got_subcommand("list")) {
                std::cout << "name,family,rank,multiplicities,order_W,note\n";
                for (const auto& e : catalog) {
                    const auto R = build_catalog_space(e.name, catalog);
                    std::cout << e.name << ',' << e.family << ',' << e.rank << ',' << mult_str(e.multiplicities) << ','
                              << R.order_W() << ",\"" << e.note << "\"\n";
                }
                return 0;
            }
            space = show_name;
            const auto R = space_datum();
            std::cout << "name: " << R.name << "\nfamily: " << R.family << "\nrank: " << R.rank
                      << "\nmultiplicities: " << mult_str(R.multiplicities) << "\n|W|: " << R.order_W() << "\nrho:";
            for (double r : R.rho.rho) std::cout << ' ' << r;
            std::cout << "\nOmega: " << R.rho.Omega << "\nunmultipliable roots:\n";
            for (const auto& u : R.unmult) {
                std::cout << "  beta=(";
                for (std::size_t j = 0; j < u.omega_coords.size(); ++j) std::cout << (j ? "," : "") << u.omega_coords[j];
                std::cout << ") m_beta=" << u.m << " m_beta/2=" << u.m_half << " case=" << case_letter(u.mult_case())
                          << (u.simple_index >= 0 ? " simple" : "") << '\n';
            }
            return 0;
        }

        if (ev->parsed()) {
            const MasterSpace S(space_datum());
            const int l = S.rank();
            if (ev_d->parsed()) {
                DominantWeight w;
                for (const auto& t : split(mu, ',')) {
                    const double x = parse_real(t);
                    if (x < 0 || x != std::floor(x)) throw UsageError("--mu entries must be non-negative integers");
                    w.mu.push_back(static_cast<int>(x));
                }
                if (static_cast<int>(w.mu.size()) != l)
                    throw UsageError("--mu needs " + std::to_string(l) + " comma-separated entries");
                std::cout << S.cfun().weyl_dim(w) << '\n';
                return 0;
            }
            const auto lam = parse_lambda(lambda, l);
            cplx v;
            if (ev_c->parsed()) v = S.cfun().c_function(lam);
            else if (ev_b->parsed()) v = S.bfun().b_eval(lam);
            else v = S.sph().phi(lam, parse_reals(H, l, "--H"));
            std::cout << cstr(v) << '\n';
            return 0;
        }

        // verify
        if (tol) vc.tol = *tol;
        if (max_height) vc.series.max_height = *max_height;
        if (quad_L) vc.quad.L = *quad_L;
        if (quad_nodes) vc.quad.nodes_per_axis = *quad_nodes;
        VerificationReport rep;
        auto hardy_for = [&](const std::string& spec, int rank, const RootDatum* R) {
            try {
                return parse_hardy(spec, rank, R, vc.seed);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
        };
        if (v_cl->parsed()) {
            rep = verify_classical(hardy_for(hardy, 1, nullptr), vc);
        } else if (v_ss->parsed()) {
            const MasterSpace S(space_datum());
            rep = verify_semisimple(S, space, hardy_for(hardy, S.rank(), &S.datum()), vc);
        } else {
            const auto R = space_datum();
            if (R.rank != 1) throw UsageError("verify reductive: the semisimple factor must have rank one");
            const ReductiveSpace RS(1, R);
            rep = verify_reductive(RS, space, hardy_for(hardy0, 1, nullptr),
                                   hardy_for(hardy, 1, &RS.semisimple().datum()), vc);
        }
        std::cout << (format == "csv" ? rep.to_csv() : rep.to_text());
        if (!report_path.empty()) {
            std::ofstream out(report_path);
            if (!out) throw UsageError("cannot write " + report_path);
            out << rep.to_text();
        }
        if (!rep.pass()) std::cerr << rep.failures() << " check(s) failed\n";
        return rep.pass() ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const CertificateError& e) {
        std::cerr << "certificate: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
