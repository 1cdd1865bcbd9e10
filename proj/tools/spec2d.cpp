// spec2d: tables, kernel samples and verification reports for the 2D
// Coulomb-like Hamiltonian with a central point interaction, and the thin-slab
// convergence study.
//
// Subcommands: point-levels, green, spectrum, transform-check, slab-converge,
// constants, verify. Output is CSV (17 significant digits) or JSON; identical
// flags produce byte-identical artifacts.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spec2d/momentum_rep.hpp"
#include "spec2d/slab_limit.hpp"
#include "spec2d/spectral_core.hpp"
#include "spec2d/verify.hpp"

using json = nlohmann::ordered_json;
using namespace spec2d;

namespace {

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::string schema;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell_str(const Cell& c) {
    if (std::holds_alternative<double>(c)) return fmt_double(std::get<double>(c));
    if (std::holds_alternative<long>(c)) return std::to_string(std::get<long>(c));
    return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& os) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& r : t.rows)
        for (std::size_t i = 0; i < r.size(); ++i)
            os << cell_str(r[i]) << (i + 1 < r.size() ? "," : "\n");
}

void write_json(const Table& t, std::ostream& os) {
    json j;
    j["schema"] = t.schema;
    json p = json::object();
    for (auto& [k, v] : t.params) p[k] = v;
    j["params"] = p;
    j["columns"] = t.columns;
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = json::array();
        for (const auto& c : r) {
            if (std::holds_alternative<double>(c)) row.push_back(std::get<double>(c));
            else if (std::holds_alternative<long>(c)) row.push_back(std::get<long>(c));
            else row.push_back(std::get<std::string>(c));
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    os << j.dump(2) << "\n";
}

struct OutputOpts {
    std::string format = "csv";
    std::string out = "-";
};

void add_output_opts(CLI::App* cmd, OutputOpts& o) {
    cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "output path ('-' for stdout)");
}

int emit(const Table& t, const OutputOpts& o) {
    std::ostringstream buf;
    if (o.format == "json") write_json(t, buf);
    else write_csv(t, buf);
    if (o.out == "-") {
        std::cout << buf.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) {
            std::cerr << "spec2d: cannot open output file " << o.out << "\n";
            return 3;
        }
        f << buf.str();
    }
    return 0;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2D Coulomb-like Hamiltonian with a central point interaction"};
    app.require_subcommand(1);

    int exit_status = 0;

    // ---- point-levels ------------------------------------------------------
    auto* pl = app.add_subcommand("point-levels", "point levels over a kappa grid");
    struct {
        double Z = 1.0, kmin = -5.0, kmax = 10.0;
        int steps = 31, jmax = 4;
        bool asymptotes = false, natural = false, scaled = false;
        double tol = 1e-12;
        std::string gnuplot;
        OutputOpts out;
    } plo;
    pl->add_option("--Z", plo.Z, "coupling strength (> 0)");
    pl->add_option("--kappa-min", plo.kmin);
    pl->add_option("--kappa-max", plo.kmax);
    pl->add_option("--steps", plo.steps)->check(CLI::Range(2, 100000));
    pl->add_option("--jmax", plo.jmax)->check(CLI::Range(1, 64));
    pl->add_option("--tol", plo.tol, "solver tolerance");
    pl->add_flag("--asymptotes", plo.asymptotes, "append the kappa->+/-inf formulas");
    pl->add_flag("--natural", plo.natural, "energies in Z^2 units");
    pl->add_flag("--scaled", plo.scaled, "report (kappa + ln Z, epsilon/Z^2) rows");
    pl->add_option("--gnuplot", plo.gnuplot, "also write a gnuplot script to this path");
    add_output_opts(pl, plo.out);
    pl->callback([&] {
        Table t;
        t.schema = "point_levels";
        t.params = {{"Z", fmt_double(plo.Z)},
                    {"kappa_min", fmt_double(plo.kmin)},
                    {"kappa_max", fmt_double(plo.kmax)},
                    {"steps", std::to_string(plo.steps)},
                    {"jmax", std::to_string(plo.jmax)}};
        t.columns = {"kappa", "j", plo.natural || plo.scaled ? "epsilon[Z^2]" : "epsilon[energy]",
                     "k[dimensionless]", "residual", "status"};
        if (plo.scaled) t.columns[0] = "kappa0";
        if (plo.asymptotes) {
            t.columns.insert(t.columns.end() - 1, "asym_plus[energy]");
            t.columns.insert(t.columns.end() - 1, "asym_minus[energy]");
        }
        double esc = (plo.natural || plo.scaled) ? plo.Z * plo.Z : 1.0;
        for (int s = 0; s < plo.steps; ++s) {
            double kap = plo.kmin + (plo.kmax - plo.kmin) * s / (plo.steps - 1);
            double kap_out = plo.scaled ? kap + std::log(plo.Z) : kap;
            try {
                auto table = spectral::point_levels(spectral::SpectralParams(plo.Z, kap),
                                                    plo.jmax, plo.tol);
                for (auto& l : table.levels) {
                    std::vector<Cell> row{kap_out, long(l.j), l.epsilon / esc, l.k, l.residual};
                    if (plo.asymptotes) {
                        double q = 2.0 * l.j + 1.0;
                        double ap = -plo.Z * plo.Z / (q * q) -
                                    4.0 * plo.Z * plo.Z / (q * q * q * kap);
                        double am = (l.j == 0)
                                        ? -4.0 * std::exp(-2.0 * euler_gamma - 2.0 * kap)
                                        : -plo.Z * plo.Z / ((q - 2.0) * (q - 2.0)) -
                                              4.0 * plo.Z * plo.Z /
                                                  ((q - 2.0) * (q - 2.0) * (q - 2.0) * kap);
                        row.push_back(ap);
                        row.push_back(am);
                    }
                    row.push_back(std::string("ok"));
                    t.rows.push_back(std::move(row));
                }
            } catch (const std::exception& e) {
                std::vector<Cell> row{kap_out, long(-1), 0.0, 0.0, 0.0};
                if (plo.asymptotes) {
                    row.push_back(0.0);
                    row.push_back(0.0);
                }
                row.push_back(std::string("error: ") + e.what());
                t.rows.push_back(std::move(row));
                exit_status = 1;
            }
        }
        int rc = emit(t, plo.out);
        if (rc) exit_status = rc;
        if (!plo.gnuplot.empty()) {
            std::ofstream g(plo.gnuplot, std::ios::binary);
            g << "# gnuplot script for the point-level diagram\n"
              << "set logscale y\n"
              << "set xlabel 'kappa'\n"
              << "set ylabel '-epsilon_j'\n"
              << "set datafile separator ','\n"
              << "plot for [j=0:" << plo.jmax - 1 << "] '"
              << (plo.out.out == "-" ? std::string("point_levels.csv") : plo.out.out)
              << "' using 1:($2==j ? -$3 : 1/0) with lines title sprintf('j=%d', j)\n";
        }
    });

    // ---- green -------------------------------------------------------------
    auto* gr = app.add_subcommand("green", "sample the full-plane Green function");
    struct {
        double Z = 1.0, kappa = 0.0, zre = -0.5, zim = 0.0, tol = 1e-10;
        bool friedrichs = false;
        int mmax = 64;
        std::string points = "1.0:0.0:2.0:1.0";
        OutputOpts out;
    } gro;
    gr->add_option("--Z", gro.Z);
    gr->add_option("--kappa", gro.kappa);
    gr->add_flag("--friedrichs", gro.friedrichs, "kappa = infinity (no point interaction)");
    gr->add_option("--z-re", gro.zre);
    gr->add_option("--z-im", gro.zim);
    gr->add_option("--modes", gro.mmax, "angular cutoff")->check(CLI::Range(1, 80));
    gr->add_option("--tol", gro.tol, "relative truncation tolerance");
    gr->add_option("--points", gro.points, "semicolon-separated rho1:phi1:rho2:phi2 samples");
    add_output_opts(gr, gro.out);
    gr->callback([&] {
        Table t;
        t.schema = "green_samples";
        t.params = {{"Z", fmt_double(gro.Z)},
                    {"kappa", gro.friedrichs ? "inf" : fmt_double(gro.kappa)},
                    {"z", fmt_double(gro.zre) + "+" + fmt_double(gro.zim) + "i"},
                    {"m_max", std::to_string(gro.mmax)}};
        t.columns = {"rho1", "phi1", "rho2", "phi2", "re", "im", "m_used", "tail_bound", "status"};
        auto params = gro.friedrichs ? spectral::SpectralParams::friedrichs_ext(gro.Z)
                                     : spectral::SpectralParams(gro.Z, gro.kappa);
        std::stringstream ss(gro.points);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            std::stringstream ps(tok);
            std::string c;
            std::vector<double> q;
            while (std::getline(ps, c, ':')) q.push_back(std::stod(c));
            if (q.size() != 4) throw CLI::ValidationError("--points", "expected rho1:phi1:rho2:phi2");
            try {
                auto gv = spectral::green_full(params, cplx(gro.zre, gro.zim), {q[0], q[1]},
                                               {q[2], q[3]}, gro.mmax, gro.tol);
                t.rows.push_back({q[0], q[1], q[2], q[3], gv.value.real(), gv.value.imag(),
                                  long(gv.m_truncation), gv.tail_bound, std::string("ok")});
            } catch (const std::exception& e) {
                t.rows.push_back({q[0], q[1], q[2], q[3], 0.0, 0.0, long(0), 0.0,
                                  std::string("error: ") + e.what()});
                exit_status = 1;
            }
        }
        int rc = emit(t, gro.out);
        if (rc) exit_status = rc;
    });

    // ---- spectrum ----------------------------------------------------------
    auto* spc = app.add_subcommand("spectrum", "exact bound-state table");
    struct {
        double Z = 1.0;
        int mmax = 3, nmax = 3;
        OutputOpts out;
    } spo;
    spc->add_option("--Z", spo.Z);
    spc->add_option("--mmax", spo.mmax)->check(CLI::Range(0, 64));
    spc->add_option("--nmax", spo.nmax)->check(CLI::Range(0, 256));
    add_output_opts(spc, spo.out);
    spc->callback([&] {
        Table t;
        t.schema = "spectrum";
        t.params = {{"Z", fmt_double(spo.Z)}};
        t.columns = {"m", "n", "N", "lambda[energy]", "multiplicity"};
        spectral::SpectralParams p(spo.Z, 0.0);
        for (int m = -spo.mmax; m <= spo.mmax; ++m)
            for (int n = 0; n <= spo.nmax; ++n) {
                auto b = spectral::eigenvalue(p, m, n);
                t.rows.push_back({long(m), long(n), long(b.principal), b.lambda,
                                  long(b.multiplicity())});
            }
        int rc = emit(t, spo.out);
        if (rc) exit_status = rc;
    });

    // ---- transform-check ---------------------------------------------------
    auto* tc = app.add_subcommand("transform-check", "unitarity report of the m=0 transform");
    struct {
        double Z = 1.0;
        bool full = false;
        int threads = 0;
        OutputOpts out;
    } tco;
    tc->add_option("--Z", tco.Z);
    tc->add_flag("--full", tco.full, "acceptance-grade grids (slower)");
    tc->add_option("--threads", tco.threads, "worker threads (0 = auto)");
    add_output_opts(tc, tco.out);
    tc->callback([&] {
        using namespace momentum;
        auto us = tco.full ? TransformGridSpec::unitarity(tco.Z)
                           : TransformGridSpec::unitarity_compact(tco.Z);
        auto as = tco.full ? TransformGridSpec::annihilation(tco.Z)
                           : TransformGridSpec::annihilation_compact(tco.Z);
        TransformPlan up = TransformPlan::build(tco.Z, 0, us, tco.threads);
        TransformPlan lp = TransformPlan::build(tco.Z, 0, as, tco.threads);
        TransformReport rep = transform_checks(up, lp, tco.full ? 5 : 2);
        Table t;
        t.schema = "transform_report";
        t.params = {{"Z", fmt_double(tco.Z)}, {"grids", tco.full ? "full" : "compact"}};
        t.columns = {"check", "measured", "threshold", "pass"};
        auto add = [&](const char* n, double v, double thr) {
            t.rows.push_back({std::string(n), v, thr, std::string(v <= thr ? "1" : "0")});
            if (v > thr) exit_status = 1;
        };
        add("parseval_defect", rep.parseval_defect, 1e-5);
        add("completeness_defect", rep.completeness_defect, 1e-4);
        add("bound_state_leakage", rep.bound_state_leakage, 1e-6);
        add("roundtrip_error", rep.roundtrip_error, 1e-5);
        add("diagonalization_residual", rep.diagonalization_residual, 1e-4);
        int rc = emit(t, tco.out);
        if (rc) exit_status = rc;
    });

    // ---- slab-converge -----------------------------------------------------
    auto* sc = app.add_subcommand("slab-converge", "norm-resolvent convergence records");
    struct {
        double xi = -0.5, h = 0.02, R = 20.0;
        std::string alist = "0.4,0.2,0.1,0.05";
        int modes = 4;
        std::uint64_t seed = 0xC0FFEE;
        OutputOpts out;
    } sco;
    sc->add_option("--xi", sco.xi, "spectral point in (-3, 0)");
    sc->add_option("--a", sco.alist, "comma-separated slab widths");
    sc->add_option("--modes", sco.modes)->check(CLI::Range(1, 16));
    sc->add_option("--grid-h", sco.h);
    sc->add_option("--grid-R", sco.R);
    sc->add_option("--seed", sco.seed, "power-iteration seed");
    add_output_opts(sc, sco.out);
    sc->callback([&] {
        slab::RadialGrid g(sco.h, sco.R);
        auto recs = slab::convergence_study(sco.xi, parse_list(sco.alist), g, sco.modes, sco.seed);
        Table t;
        t.schema = "slab_convergence";
        t.params = {{"xi", fmt_double(sco.xi)},
                    {"grid_h", fmt_double(sco.h)},
                    {"grid_R", fmt_double(sco.R)},
                    {"n_modes", std::to_string(sco.modes)},
                    {"seed", std::to_string(sco.seed)}};
        t.columns = {"a",        "diff_effective", "diff_slab",      "rhs_proposition",
                     "rhs_theorem", "admissible_prop", "admissible_thm", "within_bounds",
                     "fit_c1",   "fit_c2"};
        for (auto& r : recs)
            t.rows.push_back({r.a, r.diff_effective, r.diff_slab, r.rhs_proposition,
                              r.rhs_theorem, long(r.admissible_prop), long(r.admissible_theorem),
                              long(r.within_bounds), r.fit_c1, r.fit_c2});
        int rc = emit(t, sco.out);
        if (rc) exit_status = rc;
    });

    // ---- constants ---------------------------------------------------------
    auto* cn = app.add_subcommand("constants", "closed-form constants of the bounds");
    struct {
        OutputOpts out;
    } cno;
    add_output_opts(cn, cno.out);
    cn->callback([&] {
        auto c = slab::constants();
        Table t;
        t.schema = "constants";
        t.columns = {"name", "value"};
        t.rows.push_back({std::string("C_I"), c.c1});
        t.rows.push_back({std::string("C_II"), c.c2});
        t.rows.push_back({std::string("C_III"), c.c3});
        t.rows.push_back({std::string("gamma_quarter_4"),
                          std::exp(4.0 * specfun::log_gamma(cplx(0.25)).real())});
        t.rows.push_back({std::string("kato_constant"),
                          std::exp(4.0 * specfun::log_gamma(cplx(0.25)).real()) / (4.0 * pi * pi)});
        t.rows.push_back({std::string("w_integral"), slab::w_integral()});
        int rc = emit(t, cno.out);
        if (rc) exit_status = rc;
    });

    // ---- verify ------------------------------------------------------------
    auto* vf = app.add_subcommand("verify", "run an invariant suite");
    struct {
        std::string suite = "all";
        bool full = false;
        int threads = 0;
        std::uint64_t seed = 0xC0FFEE;
        OutputOpts out;
    } vfo;
    vf->add_option("--suite", vfo.suite)
        ->check(CLI::IsMember({"specfun", "spectral", "momentum", "slab", "all"}));
    vf->add_flag("--full", vfo.full, "acceptance-grade grids (slower)");
    vf->add_option("--threads", vfo.threads);
    vf->add_option("--seed", vfo.seed);
    add_output_opts(vf, vfo.out);
    vf->callback([&] {
        std::vector<verify::CheckRow> rows;
        auto append = [&](std::vector<verify::CheckRow> r) {
            rows.insert(rows.end(), r.begin(), r.end());
        };
        if (vfo.suite == "specfun" || vfo.suite == "all") append(verify::verify_specfun(vfo.seed));
        if (vfo.suite == "spectral" || vfo.suite == "all") append(verify::verify_spectral(vfo.seed));
        if (vfo.suite == "momentum" || vfo.suite == "all")
            append(verify::verify_momentum({vfo.full, vfo.threads}, vfo.seed));
        if (vfo.suite == "slab" || vfo.suite == "all") {
            verify::SlabVerifyOptions so;
            so.full_grids = vfo.full;
            so.seed = vfo.seed;
            append(verify::verify_slab(so));
        }
        Table t;
        t.schema = "verify_report";
        t.params = {{"suite", vfo.suite}, {"grids", vfo.full ? "full" : "compact"}};
        t.columns = {"suite", "check", "measured", "threshold", "pass"};
        for (auto& r : rows) {
            t.rows.push_back({r.suite, r.name, r.measured, r.threshold,
                              std::string(r.pass ? "1" : "0")});
            if (!r.pass) exit_status = 1;
        }
        int rc = emit(t, vfo.out);
        if (rc) exit_status = rc;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "spec2d: " << e.what() << "\n";
        return 2;
    }
    return exit_status;
}
