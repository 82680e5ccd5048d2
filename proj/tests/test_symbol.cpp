#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "eqt/moments.hpp"
#include "eqt/oracle.hpp"
#include "eqt/symbol.hpp"
#include "json.hpp"

using eqt::symbol::EnhancedHamiltonian;
using eqt::symbol::PhaseSpacePoint;
using eqt::symbol::PhysicalParams;

namespace {

eqt::moments::FiducialSpec fiducial(double gamma, double Omega = 1.0,
                                    double hbar = 1.0) {
    eqt::moments::FiducialSpec f;
    f.stats.gamma = gamma;
    f.Omega = Omega;
    f.hbar = hbar;
    return f;
}

EnhancedHamiltonian make_h(double gamma, PhysicalParams pp = PhysicalParams{}) {
    const auto f = fiducial(gamma, pp.Omega, pp.hbar > 0.0 ? pp.hbar : 1.0);
    return eqt::symbol::assemble_enhanced(pp, eqt::moments::moment_table(f));
}

PhaseSpacePoint default_x0() {
    PhaseSpacePoint x;
    x.p1 = {0.0, 0.0};
    x.p2 = {0.0, 0.0};
    x.q1 = {1.0, 0.0};
    x.q2 = {-1.0, 0.0};
    return x;
}

PhaseSpacePoint random_point(std::mt19937_64& gen, double box = 1.5) {
    std::uniform_real_distribution<double> u(-box, box);
    PhaseSpacePoint x;
    x.p1 = {u(gen), u(gen)};
    x.p2 = {u(gen), u(gen)};
    x.q1 = {u(gen), u(gen)};
    x.q2 = {u(gen), u(gen)};
    return x;
}

double sum_sq(const PhaseSpacePoint& x) {
    return x.q1[0] * x.q1[0] + x.q1[1] * x.q1[1] + x.q2[0] * x.q2[0] +
           x.q2[1] * x.q2[1];
}

}  // namespace

TEST_CASE("assembly validation") {
    PhysicalParams pp;
    const auto f = fiducial(0.5);
    auto t = eqt::moments::moment_table(f);
    CHECK_NOTHROW(eqt::symbol::assemble_enhanced(pp, t));

    auto bad = t;
    bad.hbar = 0.5;  // table built at a different hbar than the parameters
    CHECK_THROWS_AS(eqt::symbol::assemble_enhanced(pp, bad), std::invalid_argument);
    bad = t;
    bad.Omega = 2.0;
    CHECK_THROWS_AS(eqt::symbol::assemble_enhanced(pp, bad), std::invalid_argument);
    bad = t;
    bad.gamma = 2.0;
    CHECK_THROWS_AS(eqt::symbol::assemble_enhanced(pp, bad), std::invalid_argument);
    PhysicalParams neg;
    neg.m = -1.0;
    CHECK_THROWS_AS(eqt::symbol::assemble_enhanced(neg, t), std::invalid_argument);
}

TEST_CASE("coefficient values at the endpoints") {
    const auto h0 = make_h(0.0);
    CHECK(h0.c_kin_const == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h0.c_harm_const == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(h0.c_q2 == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(h0.c_q1q2 == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(h0.c_const_quartic == doctest::Approx(6.0).epsilon(1e-13));

    const auto h1 = make_h(1.0);
    CHECK(h1.c_kin_const == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(h1.c_harm_const == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(h1.c_kin_const + h1.c_harm_const == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(h1.c_q2 == doctest::Approx(9.0).epsilon(1e-13));
    CHECK(h1.c_q1q2 == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(h1.c_const_quartic == doctest::Approx(12.0).epsilon(1e-13));
}

TEST_CASE("evaluation at pinned points") {
    const auto h0 = make_h(0.0);
    PhaseSpacePoint x;
    x.p1 = {0.0, 0.0};
    x.p2 = {0.0, 0.0};
    x.q1 = {1.0, 0.0};
    x.q2 = {0.0, 0.0};
    CHECK(eqt::symbol::classical_limit(h0, x) == doctest::Approx(1.5).epsilon(1e-13));
    // classical 1.5 + c_q2*1 + consts (1 + 1 + 6)
    CHECK(eqt::symbol::eval_hamiltonian(h0, x) ==
          doctest::Approx(15.5).epsilon(1e-13));

    const auto xd = default_x0();
    CHECK(eqt::symbol::classical_limit(h0, xd) == doctest::Approx(5.0).epsilon(1e-13));
    // classical 5 + c_q2*2 + c_q1q2*(-1) + consts
    const double expect = 5.0 + 6.0 * 2.0 + 0.0 + 1.0 + 1.0 + 6.0;
    CHECK(eqt::symbol::eval_hamiltonian(h0, xd) ==
          doctest::Approx(expect).epsilon(1e-13));

    const auto h1 = make_h(1.0);
    const double expect1 = 5.0 + 9.0 * 2.0 + (-2.0) * (-1.0) + 1.5 + 1.5 + 12.0;
    CHECK(eqt::symbol::eval_hamiltonian(h1, xd) ==
          doctest::Approx(expect1).epsilon(1e-13));
}

TEST_CASE("re-expansion against the closed-moment dictionary") {
    std::mt19937_64 gen(7);
    for (double g : {0.0, 0.5, 1.0, 1.5}) {
        PhysicalParams pp;
        pp.g = 1.7;
        pp.m = 0.8;
        pp.varpi = 1.2;
        const auto h = make_h(g, pp);
        const auto t = h.table;
        for (int k = 0; k < 10; ++k) {
            const auto x = random_point(gen);
            const double S = sum_sq(x);
            const double psq = x.p1[0] * x.p1[0] + x.p1[1] * x.p1[1] +
                               x.p2[0] * x.p2[0] + x.p2[1] * x.p2[1];
            const double dot = x.q1[0] * x.q2[0] + x.q1[1] * x.q2[1];
            const double direct =
                psq / (2.0 * pp.m) + 2.0 * t.p2 / pp.m +
                0.5 * pp.m * pp.varpi * pp.varpi * S +
                pp.m * pp.varpi * pp.varpi * 2.0 * t.q2 +
                pp.g * (S * S + 12.0 * t.q2 * S + 8.0 * t.qq_cross * dot +
                        t.v_expect);
            CHECK(eqt::symbol::eval_hamiltonian(h, x) ==
                  doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("re-expansion against the quadrature-moment dictionary") {
    // Rebuild the moment table entirely from the integration oracle and
    // check the assembled symbol agrees pointwise.
    const double g = 0.6;
    eqt::oracle::QuadConfig cfg;
    const auto f = fiducial(g);
    auto t = eqt::moments::moment_table(f);
    eqt::oracle::IntegrandSpec s;
    s.gamma = g;
    s.lambda = 1.0;
    s.powers = {2, 0, 0, 0};
    t.q2 = eqt::oracle::moment_quadrature(s, cfg);
    s.powers = {4, 0, 0, 0};
    t.q4 = eqt::oracle::moment_quadrature(s, cfg);
    s.powers = {2, 2, 0, 0};
    t.q2q2_same = eqt::oracle::moment_quadrature(s, cfg);
    s.powers = {2, 0, 2, 0};
    t.q2q2_cross = eqt::oracle::moment_quadrature(s, cfg);
    s.powers = {1, 0, 1, 0};
    t.qq_cross = eqt::oracle::moment_quadrature(s, cfg);
    s.powers = {2, 0, 0, 2};
    const double x2y2 = eqt::oracle::moment_quadrature(s, cfg);
    t.v_expect = 4.0 * (t.q4 + t.q2q2_same + t.q2q2_cross + x2y2);
    t.p2 = eqt::oracle::p2_quadrature(g, 1.0, cfg);

    PhysicalParams pp;
    const auto h_closed = make_h(g, pp);
    const auto h_oracle = eqt::symbol::assemble_enhanced(pp, t);
    std::mt19937_64 gen(11);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_point(gen);
        const double a = eqt::symbol::eval_hamiltonian(h_closed, x);
        const double b = eqt::symbol::eval_hamiltonian(h_oracle, x);
        CHECK(a == doctest::Approx(b).epsilon(1e-7));
    }
}

TEST_CASE("symmetries of the evaluated symbol") {
    const auto h = make_h(0.8);
    std::mt19937_64 gen(3);
    for (int k = 0; k < 8; ++k) {
        const auto x = random_point(gen);
        // Exchange of the two particles.
        PhaseSpacePoint sw;
        sw.p1 = x.p2;
        sw.p2 = x.p1;
        sw.q1 = x.q2;
        sw.q2 = x.q1;
        CHECK(eqt::symbol::eval_hamiltonian(h, sw) ==
              doctest::Approx(eqt::symbol::eval_hamiltonian(h, x)).epsilon(1e-14));
        // Simultaneous rotation of all phase-space vectors.
        const double th = 0.37 + 0.41 * k;
        const double c = std::cos(th), sn = std::sin(th);
        auto rot = [&](const std::array<double, 2>& v) {
            return std::array<double, 2>{c * v[0] - sn * v[1], sn * v[0] + c * v[1]};
        };
        PhaseSpacePoint r;
        r.p1 = rot(x.p1);
        r.p2 = rot(x.p2);
        r.q1 = rot(x.q1);
        r.q2 = rot(x.q2);
        CHECK(eqt::symbol::eval_hamiltonian(h, r) ==
              doctest::Approx(eqt::symbol::eval_hamiltonian(h, x)).epsilon(1e-12));
    }
}

TEST_CASE("single-mode quartic symbol") {
    CHECK(eqt::symbol::symbol_1dof_quartic(0.5, 0.5, 0.75, 0.0, 0.0) ==
          doctest::Approx(1.75).epsilon(1e-13));
    CHECK(eqt::symbol::symbol_1dof_quartic(0.5, 0.5, 0.75, 0.0, 1.0) ==
          doctest::Approx(6.75).epsilon(1e-13));
    // p^2 + q^2 + q^4 + 6 q^2 <Q^2> + const, cross-checked by expansion
    const double p = 0.3, q = -0.7;
    const double expect = p * p + q * q + q * q * q * q + 6.0 * q * q * 0.5 +
                          (0.5 + 0.5 + 0.75);
    CHECK(eqt::symbol::symbol_1dof_quartic(0.5, 0.5, 0.75, p, q) ==
          doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("spectator shift") {
    const auto h = make_h(0.5);
    CHECK(eqt::symbol::spectator_shift(h, 0, 2.5) == doctest::Approx(0.0));
    CHECK(eqt::symbol::spectator_shift(h, 3, 2.5) == doctest::Approx(7.5));
    CHECK_THROWS_AS(eqt::symbol::spectator_shift(h, -1, 2.5), std::invalid_argument);
}

TEST_CASE("strict classical limit") {
    PhysicalParams pp;
    pp.hbar = 0.0;
    const auto f = fiducial(0.5);  // table carries hbar = 1; must be ignored
    const auto h = eqt::symbol::assemble_enhanced(pp, eqt::moments::moment_table(f));
    CHECK(h.c_kin_const == 0.0);
    CHECK(h.c_harm_const == 0.0);
    CHECK(h.c_q2 == 0.0);
    CHECK(h.c_q1q2 == 0.0);
    CHECK(h.c_const_quartic == 0.0);
    std::mt19937_64 gen(5);
    for (int k = 0; k < 5; ++k) {
        const auto x = random_point(gen);
        CHECK(eqt::symbol::eval_hamiltonian(h, x) ==
              doctest::Approx(eqt::symbol::classical_limit(h, x)).epsilon(1e-14));
    }
}

TEST_CASE("enhancement is asymptotically linear in hbar") {
    std::mt19937_64 gen(17);
    const double g = 0.5;
    const double eps = 1e-5;
    auto h_at = [&](double hb) {
        // At hb = 0 the parameters pin the limit and the table is inert.
        PhysicalParams pp;
        pp.hbar = hb;
        const auto f = fiducial(g, pp.Omega, hb > 0.0 ? hb : 1.0);
        return eqt::symbol::assemble_enhanced(pp, eqt::moments::moment_table(f));
    };
    const auto h0 = h_at(0.0);
    const auto h1 = h_at(eps);
    const auto h2 = h_at(2.0 * eps);
    for (int k = 0; k < 50; ++k) {
        const auto x = random_point(gen);
        const double e0 = eqt::symbol::eval_hamiltonian(h0, x);
        const double e1 = eqt::symbol::eval_hamiltonian(h1, x);
        const double e2 = eqt::symbol::eval_hamiltonian(h2, x);
        const double scale = std::abs(e0) + 1.0;
        // Second difference in hbar is O(eps^2); linear term dominates.
        CHECK(std::abs(e2 - 2.0 * e1 + e0) <= 1e-8 * scale);
        // And the linear term itself is nonzero for gamma > 0 geometry.
        if (sum_sq(x) > 0.5) CHECK(std::abs(e1 - e0) > 1e-7);
    }
}

TEST_CASE("coefficient breakdown serialization") {
    PhysicalParams pp;
    pp.g = 2.0;
    const auto h = make_h(0.5, pp);
    const auto j = nlohmann::json::parse(eqt::symbol::coefficient_terms_json(h));
    CHECK(j.is_array());
    bool saw_quartic = false;
    for (const auto& row : j) {
        CHECK(row.contains("term"));
        CHECK(row.contains("value"));
        CHECK(row.contains("hbar_power"));
        if (row.at("term") == "c_const_quartic") {
            saw_quartic = true;
            CHECK(row.at("hbar_power").get<int>() == 2);
            // Dividing out the coupling recovers the radial quartic moment.
            CHECK(row.at("value").get<double>() / pp.g ==
                  doctest::Approx(h.table.v_expect).epsilon(1e-13));
        }
    }
    CHECK(saw_quartic);
}

TEST_CASE("variant assembly discrepancies are pinned") {
    using eqt::symbol::discrepancy_report;
    const auto rows_mid = discrepancy_report(make_h(0.5));
    bool saw_kin = false, saw_harm = false, saw_q2 = false, saw_q1q2 = false,
         saw_quartic = false;
    for (const auto& r : rows_mid) {
        if (r.label != "interpolating") continue;
        if (r.term == "kinetic_const") {
            saw_kin = true;
            CHECK(!r.agrees);
            CHECK(r.ratio == doctest::Approx(3.0 / 2.5).epsilon(1e-12));
        } else if (r.term == "harmonic_const") {
            saw_harm = true;
            CHECK(r.agrees);
            CHECK(r.ratio == doctest::Approx(1.0).epsilon(1e-12));
        } else if (r.term == "q2_coeff") {
            saw_q2 = true;
            CHECK(!r.agrees);
            CHECK(r.ratio == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
        } else if (r.term == "q1q2_coeff") {
            saw_q1q2 = true;
            CHECK(!r.agrees);
            CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-12));
        } else if (r.term == "quartic_const") {
            saw_quartic = true;
            CHECK(!r.agrees);
            CHECK(r.ratio == doctest::Approx(59.0 / 70.0).epsilon(1e-12));
        }
    }
    CHECK(saw_kin);
    CHECK(saw_harm);
    CHECK(saw_q2);
    CHECK(saw_q1q2);
    CHECK(saw_quartic);

    const auto rows0 = discrepancy_report(make_h(0.0));
    int boson_rows = 0;
    for (const auto& r : rows0) {
        if (r.label != "boson_endpoint") continue;
        ++boson_rows;
        if (r.term == "kinetic_const" || r.term == "harmonic_const") {
            CHECK(r.agrees);
        } else {
            CHECK(!r.agrees);
            CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    CHECK(boson_rows == 4);

    const auto rows1 = discrepancy_report(make_h(1.0));
    int fermion_rows = 0;
    for (const auto& r : rows1) {
        if (r.label != "fermion_endpoint") continue;
        ++fermion_rows;
        if (r.term == "kinetic_const" || r.term == "harmonic_const") {
            CHECK(r.agrees);
        } else if (r.term == "q2_coeff") {
            CHECK(r.ratio == doctest::Approx(2.0).epsilon(1e-12));
        } else if (r.term == "quartic_const") {
            CHECK(r.ratio == doctest::Approx(0.5).epsilon(1e-12));
        }
    }
    CHECK(fermion_rows == 4);

    const auto js = eqt::symbol::discrepancies_to_json(rows_mid);
    const auto j = nlohmann::json::parse(js);
    CHECK(j.is_array());
    CHECK(j.size() == rows_mid.size());
}
