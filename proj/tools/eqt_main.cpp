// Command-line front end for the enhanced-symbol toolkit: closed-form
// moment tables, oracle verification reports, Hamiltonian coefficient
// dumps, and symplectic trajectory runs.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eqt/dynamics.hpp"
#include "eqt/fock1d.hpp"
#include "eqt/moments.hpp"
#include "eqt/oracle.hpp"
#include "eqt/symbol.hpp"
#include "json.hpp"

namespace {

struct CommonOpts {
    double gamma = 0.0;
    double Omega = 1.0;
    double hbar = 1.0;
    double m = 1.0;
    double varpi = 1.0;
    double g = 1.0;
};

struct VerifyOpts {
    std::string suite = "all";
    std::vector<double> gamma_grid{0.0, 0.25, 0.5, 1.0, 1.5};
    double rel_tol = 1e-6;
    long mc_samples = 1000000;
    std::uint64_t seed = 42;
    int radial_nodes = 48;
    int angular_nodes = 64;
    std::string json_path;
    bool dump_discrepancies = false;
};

struct SimulateOpts {
    double dt = 1e-3;
    double t_end = 10.0;
    int record_every = 10;
    eqt::dynamics::Scheme scheme = eqt::dynamics::Scheme::yoshida4;
    std::vector<double> x0;  // px1 py1 px2 py2 qx1 qy1 qx2 qy2
    std::string csv_path;
};

eqt::moments::FiducialSpec fiducial_of(const CommonOpts& c) {
    eqt::moments::FiducialSpec f;
    f.stats.gamma = c.gamma;
    f.Omega = c.Omega;
    f.hbar = c.hbar > 0.0 ? c.hbar : 1.0;
    return f;
}

eqt::symbol::PhysicalParams params_of(const CommonOpts& c) {
    eqt::symbol::PhysicalParams p;
    p.m = c.m;
    p.varpi = c.varpi;
    p.g = c.g;
    p.hbar = c.hbar;
    p.Omega = c.Omega;
    return p;
}

eqt::symbol::EnhancedHamiltonian hamiltonian_of(const CommonOpts& c) {
    const auto f = fiducial_of(c);
    eqt::moments::validate(f);
    return eqt::symbol::assemble_enhanced(params_of(c),
                                          eqt::moments::moment_table(f));
}

void print_rows(const std::vector<eqt::oracle::ReportRow>& rows) {
    for (const auto& r : rows) {
        std::printf("[%s] %-32s gamma=%-6g rel_err=%.3e\n",
                    r.pass ? "PASS" : "FAIL", r.check.c_str(), r.gamma,
                    r.rel_err);
    }
}

int run_moments(const CommonOpts& c) {
    const auto f = fiducial_of(c);
    eqt::moments::validate(f);
    std::cout << eqt::moments::table_to_json(eqt::moments::moment_table(f))
              << "\n";
    return 0;
}

int run_hamiltonian(const CommonOpts& c, bool dump_discrepancies) {
    const auto h = hamiltonian_of(c);
    if (!dump_discrepancies) {
        std::cout << eqt::symbol::coefficient_terms_json(h) << "\n";
        return 0;
    }
    nlohmann::ordered_json out;
    out["coefficients"] =
        nlohmann::ordered_json::parse(eqt::symbol::coefficient_terms_json(h));
    out["discrepancies"] = nlohmann::ordered_json::parse(
        eqt::symbol::discrepancies_to_json(eqt::symbol::discrepancy_report(h)));
    std::cout << out.dump(2) << "\n";
    return 0;
}

void verify_moments_suite(const CommonOpts& c, const VerifyOpts& v,
                          std::vector<eqt::oracle::ReportRow>& rows) {
    eqt::oracle::QuadConfig cfg;
    cfg.radial_nodes = v.radial_nodes;
    cfg.angular_nodes = v.angular_nodes;
    cfg.mc_samples = v.mc_samples;
    cfg.mc_seed = v.seed;
    cfg.rel_tol = v.rel_tol;
    for (double g : v.gamma_grid) {
        CommonOpts cc = c;
        cc.gamma = g;
        const auto f = fiducial_of(cc);
        eqt::moments::validate(f);
        const auto part = eqt::oracle::verify_moment_table(f, cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }
}

void verify_appendix_suite(const CommonOpts& c, const VerifyOpts& v,
                           std::vector<eqt::oracle::ReportRow>& rows) {
    for (double g : v.gamma_grid) {
        if (!(g >= 0.0 && g < 2.0)) {
            throw std::invalid_argument("gamma must lie in [0,2)");
        }
        for (auto sign : {eqt::oracle::Sign::plus, eqt::oracle::Sign::minus}) {
            for (int n : {0, 1, 2}) {
                const auto chain = eqt::oracle::appendix_chain_check(g, 12, n, sign);
                eqt::oracle::ReportRow r;
                r.check = std::string("appendix:") +
                          (sign == eqt::oracle::Sign::plus ? "plus" : "minus") +
                          ":n" + std::to_string(n);
                r.gamma = g;
                r.lambda = c.Omega / (c.hbar > 0.0 ? c.hbar : 1.0);
                r.pass = true;
                for (const auto& row : chain) {
                    const double worst = std::max(row.rho_rel_err, row.r_rel_err);
                    if (worst >= r.rel_err) {
                        r.rel_err = worst;
                        r.closed_form = row.r_closed;
                        r.oracle = row.r_direct;
                    }
                    r.pass = r.pass && row.pass;
                }
                rows.push_back(r);
            }
        }
    }
}

void verify_fock_suite(const CommonOpts& c,
                       std::vector<eqt::oracle::ReportRow>& rows) {
    const double hb = c.hbar > 0.0 ? c.hbar : 1.0;
    const auto f = eqt::fock1d::build_fock(96, hb);

    eqt::oracle::ReportRow metric;
    metric.check = "fock:fs_metric_identity";
    metric.lambda = hb;
    double dev = 0.0;
    const double w = 0.5 * std::sqrt(hb);
    for (double p : {-w, 0.0, w}) {
        for (double q : {-w, 0.0, w}) {
            const auto gm = eqt::fock1d::fubini_study_metric(f, p, q, 0.02);
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    const double want = (i == j) ? 1.0 : 0.0;
                    dev = std::max(dev, std::abs(gm[i][j] - want));
                }
            }
        }
    }
    metric.closed_form = 0.0;
    metric.oracle = dev;
    metric.rel_err = dev;
    metric.pass = dev <= 1e-6;
    rows.push_back(metric);

    eqt::oracle::ReportRow unity;
    unity.check = "fock:resolution_of_unity";
    unity.lambda = hb;
    const auto acc =
        eqt::fock1d::resolution_of_unity_check(f, 10.0 * std::sqrt(hb), 128);
    double udev = 0.0;
    for (int i = 0; i <= 12; ++i) {
        for (int j = 0; j <= 12; ++j) {
            const double want = (i == j) ? 1.0 : 0.0;
            udev = std::max(udev, std::abs(acc(i, j) - std::complex<double>(want)));
        }
    }
    unity.closed_form = 0.0;
    unity.oracle = udev;
    unity.rel_err = udev;
    unity.pass = udev <= 1e-6;
    rows.push_back(unity);

    eqt::oracle::ReportRow sym;
    sym.check = "fock:quartic_symbol";
    sym.lambda = hb;
    const Eigen::MatrixXcd q2 = f.Q * f.Q;
    const Eigen::MatrixXcd mat = f.P * f.P + q2 + q2 * q2;
    std::mt19937_64 gen(12345);
    std::uniform_real_distribution<double> u(-1.2, 1.2);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double p = u(gen) * std::sqrt(hb);
        const double q = u(gen) * std::sqrt(hb);
        const double lattice = eqt::fock1d::symbol_expectation(f, mat, p, q);
        const double closed = eqt::symbol::symbol_1dof_quartic(
            0.5 * hb, 0.5 * hb, 0.75 * hb * hb, p, q);
        const double rel = std::abs(lattice - closed) / std::abs(closed);
        if (rel > worst) {
            worst = rel;
            sym.closed_form = closed;
            sym.oracle = lattice;
        }
    }
    sym.rel_err = worst;
    sym.pass = worst <= 1e-8;
    rows.push_back(sym);
}

int run_verify(const CommonOpts& c, const VerifyOpts& v) {
    std::vector<eqt::oracle::ReportRow> rows;
    if (v.suite == "moments" || v.suite == "all") verify_moments_suite(c, v, rows);
    if (v.suite == "appendix" || v.suite == "all") verify_appendix_suite(c, v, rows);
    if (v.suite == "fock" || v.suite == "all") verify_fock_suite(c, rows);

    print_rows(rows);
    long fails = 0;
    for (const auto& r : rows) {
        if (!r.pass) ++fails;
    }
    std::printf("verification: %ld/%zu checks passed\n", rows.size() - fails,
                rows.size());

    if (!v.json_path.empty()) {
        std::ofstream out(v.json_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + v.json_path);
        out << eqt::oracle::report_to_json(rows) << "\n";
    }
    if (v.dump_discrepancies) {
        for (double g : v.gamma_grid) {
            CommonOpts cc = c;
            cc.gamma = g;
            const auto h = hamiltonian_of(cc);
            std::cerr << eqt::symbol::discrepancies_to_json(
                             eqt::symbol::discrepancy_report(h))
                      << "\n";
        }
    }
    return fails == 0 ? 0 : 1;
}

int run_simulate(const CommonOpts& c, const SimulateOpts& s) {
    const auto h = hamiltonian_of(c);
    eqt::symbol::PhaseSpacePoint x0;
    bool default_x0 = true;
    if (!s.x0.empty()) {
        default_x0 = false;
        x0.p1 = {s.x0[0], s.x0[1]};
        x0.p2 = {s.x0[2], s.x0[3]};
        x0.q1 = {s.x0[4], s.x0[5]};
        x0.q2 = {s.x0[6], s.x0[7]};
    } else {
        x0.p1 = {0.0, 0.0};
        x0.p2 = {0.0, 0.0};
        x0.q1 = {1.0, 0.0};
        x0.q2 = {-1.0, 0.0};
    }
    eqt::dynamics::IntegratorConfig cfg;
    cfg.dt = s.dt;
    cfg.t_end = s.t_end;
    cfg.scheme = s.scheme;
    cfg.record_every = s.record_every;
    const auto traj = eqt::dynamics::integrate(h, x0, cfg);

    if (!s.csv_path.empty()) {
        std::ofstream out(s.csv_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + s.csv_path);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "gamma=%.17g Omega=%.17g hbar=%.17g m=%.17g varpi=%.17g "
                      "g=%.17g dt=%.17g scheme=%s",
                      c.gamma, c.Omega, c.hbar, c.m, c.varpi, c.g, s.dt,
                      s.scheme == eqt::dynamics::Scheme::yoshida4 ? "yoshida4"
                                                                  : "leapfrog");
        std::vector<std::string> comments{buf};
        if (default_x0) {
            comments.push_back(
                "initial condition (demonstration default of this artifact, "
                "not a distinguished point of the model): q1=(1,0), "
                "q2=(-1,0), p1=p2=(0,0)");
        }
        eqt::dynamics::write_csv(traj, out, comments);
    } else {
        const double e0 = traj.energies.front();
        double drift = 0.0;
        for (double e : traj.energies) drift = std::max(drift, std::abs(e - e0));
        std::printf("steps=%ld recorded=%zu\n",
                    std::lround(s.t_end / s.dt), traj.states.size());
        std::printf("E0=%.12g Efinal=%.12g max_drift_rel=%.3e\n", e0,
                    traj.energies.back(),
                    drift / std::max(std::abs(e0), 1e-300));
        std::printf("L0=%.12g Lfinal=%.12g\n",
                    eqt::dynamics::angular_momentum(traj.states.front()),
                    eqt::dynamics::angular_momentum(traj.states.back()));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "eqt: coherent-symbol toolkit for two-body anyon models.\n"
        "Closed-form fiducial moments, brute-force verification oracles,\n"
        "enhanced Hamiltonian assembly, and symplectic dynamics."};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from a key=value file ([section] per "
                   "subcommand)");

    CommonOpts c;
    auto add_common = [&c](CLI::App* sub, bool physical) {
        sub->add_option("--gamma", c.gamma,
                        "Exchange statistics parameter in [0,2)");
        sub->add_option("--omega", c.Omega, "Fiducial frequency Omega > 0");
        sub->add_option("--hbar", c.hbar, "Planck constant (0 = classical)");
        if (physical) {
            sub->add_option("--mass", c.m, "Particle mass");
            sub->add_option("--varpi", c.varpi, "Trap frequency");
            sub->add_option("--coupling", c.g, "Quartic coupling g");
        }
    };

    auto* cmd_moments =
        app.add_subcommand("moments", "Print the closed-form moment table as JSON");
    add_common(cmd_moments, false);

    auto* cmd_hamiltonian = app.add_subcommand(
        "hamiltonian", "Print enhanced-symbol coefficients as JSON");
    add_common(cmd_hamiltonian, true);
    bool ham_dump = false;
    cmd_hamiltonian->add_flag("--dump-discrepancies", ham_dump,
                              "Include the variant-assembly comparison");

    VerifyOpts v;
    auto* cmd_verify = app.add_subcommand(
        "verify", "Cross-check closed forms against the integration oracles");
    add_common(cmd_verify, true);
    cmd_verify
        ->add_option("--suite", v.suite, "moments|appendix|fock|all")
        ->check(CLI::IsMember({"moments", "appendix", "fock", "all"}));
    cmd_verify->add_option("--gamma-grid", v.gamma_grid, "Gamma values to sweep")
        ->delimiter(',');
    cmd_verify->add_option("--rel-tol", v.rel_tol, "Quadrature pass tolerance");
    cmd_verify->add_option("--mc-samples", v.mc_samples, "Monte Carlo samples");
    cmd_verify->add_option("--seed", v.seed, "Monte Carlo seed");
    cmd_verify->add_option("--radial-nodes", v.radial_nodes, "Radial nodes");
    cmd_verify->add_option("--angular-nodes", v.angular_nodes, "Angular nodes");
    cmd_verify->add_option("--json", v.json_path, "Write the JSON report here");
    cmd_verify->add_flag("--dump-discrepancies", v.dump_discrepancies,
                         "Also dump variant-assembly comparisons to stderr");

    SimulateOpts s;
    auto* cmd_simulate = app.add_subcommand(
        "simulate", "Integrate Hamilton's equations for the enhanced symbol");
    add_common(cmd_simulate, true);
    cmd_simulate->add_option("--dt", s.dt, "Time step");
    cmd_simulate->add_option("--t-end", s.t_end, "Final time");
    cmd_simulate->add_option("--record-every", s.record_every,
                             "Record every k-th step");
    const std::map<std::string, eqt::dynamics::Scheme> scheme_names{
        {"leapfrog", eqt::dynamics::Scheme::leapfrog},
        {"yoshida4", eqt::dynamics::Scheme::yoshida4}};
    cmd_simulate
        ->add_option("--scheme", s.scheme, "leapfrog|yoshida4")
        ->transform(CLI::CheckedTransformer(scheme_names, CLI::ignore_case));
    cmd_simulate
        ->add_option("--x0", s.x0,
                     "Initial state px1 py1 px2 py2 qx1 qy1 qx2 qy2")
        ->expected(8)
        ->delimiter(',');
    cmd_simulate->add_option("--csv", s.csv_path, "Write the trajectory here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_moments->parsed()) return run_moments(c);
        if (cmd_hamiltonian->parsed()) return run_hamiltonian(c, ham_dump);
        if (cmd_verify->parsed()) return run_verify(c, v);
        if (cmd_simulate->parsed()) return run_simulate(c, s);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
