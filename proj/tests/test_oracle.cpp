#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "doctest.h"
#include "eqt/moments.hpp"
#include "eqt/oracle.hpp"
#include "eqt/specfun.hpp"
#include "json.hpp"

using eqt::oracle::IntegrandSpec;
using eqt::oracle::QuadConfig;

namespace {

constexpr double kPi = 3.14159265358979323846;

IntegrandSpec mono(double gamma, double lambda, int px1, int py1, int px2, int py2) {
    IntegrandSpec s;
    s.gamma = gamma;
    s.lambda = lambda;
    s.powers = {px1, py1, px2, py2};
    return s;
}

QuadConfig small_cfg() {
    QuadConfig c;
    c.mc_samples = 200000;
    return c;
}

double closed_angular(double r1, double r2, double gamma, int cos_power) {
    const double ss = r1 * r1 + r2 * r2;
    const double zeta = std::pow(2.0 * r1 * r2 / ss, 2);
    eqt::specfun::HypParams hp;
    hp.a = 0.5 * (1.0 - gamma);
    hp.b = -0.5 * gamma;
    hp.c = (cos_power == 0) ? 1.0 : 2.0;
    const double f = eqt::specfun::hyp2f1_partial(hp, zeta);
    const double pre = (cos_power == 0) ? 2.0 * kPi : kPi;
    return pre * std::pow(ss, gamma) * f;
}

}  // namespace

TEST_CASE("configuration validation") {
    QuadConfig c;
    CHECK_NOTHROW(eqt::oracle::validate(c));
    c.radial_nodes = 8;
    CHECK_THROWS_AS(eqt::oracle::validate(c), std::invalid_argument);
    c = QuadConfig{};
    c.angular_nodes = 8;
    CHECK_THROWS_AS(eqt::oracle::validate(c), std::invalid_argument);
    c = QuadConfig{};
    c.mc_samples = 100;
    CHECK_THROWS_AS(eqt::oracle::validate(c), std::invalid_argument);
    c = QuadConfig{};
    c.rel_tol = 0.0;
    CHECK_THROWS_AS(eqt::oracle::validate(c), std::invalid_argument);

    auto s = mono(0.5, 1.0, 2, 0, 0, 0);
    CHECK_NOTHROW(eqt::oracle::validate(s));
    s.powers = {5, 0, 0, 0};
    CHECK_THROWS_AS(eqt::oracle::validate(s), std::invalid_argument);
    s = mono(2.3, 1.0, 0, 0, 0, 0);
    CHECK_THROWS_AS(eqt::oracle::validate(s), std::invalid_argument);
    s = mono(0.5, -1.0, 0, 0, 0, 0);
    CHECK_THROWS_AS(eqt::oracle::validate(s), std::invalid_argument);
    s = mono(0.5, 1.0, 2, 0, 0, 0);
    s.derivative_flag = eqt::oracle::DerivFlag::p2;
    CHECK_THROWS_AS(eqt::oracle::validate(s), std::invalid_argument);
}

TEST_CASE("angular kernel integral against its hypergeometric form") {
    // Single-radius edge: the kernel degenerates to a pure power.
    CHECK(eqt::oracle::angular_integral(1.3, 0.0, 0.7, 0, 64) ==
          doctest::Approx(2.0 * kPi * std::pow(1.3, 1.4)).epsilon(1e-12));
    CHECK(eqt::oracle::angular_integral(1.3, 0.0, 0.7, 2, 64) ==
          doctest::Approx(kPi * std::pow(1.3, 1.4)).epsilon(1e-12));
    // Gamma -> 0 shuts the kernel off entirely.
    CHECK(eqt::oracle::angular_integral(0.9, 0.4, 0.0, 0, 64) ==
          doctest::Approx(2.0 * kPi).epsilon(1e-13));
    CHECK(eqt::oracle::angular_integral(0.9, 0.4, 0.0, 2, 64) ==
          doctest::Approx(kPi).epsilon(1e-13));

    const double triples[][3] = {
        {1.0, 0.7, 0.5},  {0.4, 1.9, 1.25}, {2.0, 0.3, 1.8},
        {1.2, 1.05, 0.6}, {0.8, 0.75, 1.5}, {1.6, 0.2, 0.05},
    };
    for (const auto& t : triples) {
        for (int cp : {0, 2}) {
            const double quad = eqt::oracle::angular_integral(t[0], t[1], t[2], cp, 96);
            const double closed = closed_angular(t[0], t[1], t[2], cp);
            CHECK(quad == doctest::Approx(closed).epsilon(1e-9));
        }
    }
}

TEST_CASE("gaussian point recovers textbook moments") {
    const double lam = 1.7;
    QuadConfig cfg;
    CHECK(eqt::oracle::moment_quadrature(mono(0.0, lam, 2, 0, 0, 0), cfg) ==
          doctest::Approx(0.5 / lam).epsilon(1e-10));
    CHECK(eqt::oracle::moment_quadrature(mono(0.0, lam, 4, 0, 0, 0), cfg) ==
          doctest::Approx(0.75 / (lam * lam)).epsilon(1e-10));
    CHECK(eqt::oracle::moment_quadrature(mono(0.0, lam, 2, 0, 2, 0), cfg) ==
          doctest::Approx(0.25 / (lam * lam)).epsilon(1e-10));
    // Odd in one coordinate: identically zero at the Gaussian point.
    CHECK(std::abs(eqt::oracle::moment_quadrature(mono(0.0, lam, 1, 0, 1, 0), cfg)) <
          1e-12);
}

TEST_CASE("quadrature oracle matches the frozen closed-form tables") {
    QuadConfig cfg;
    struct Row {
        double gamma, lambda;
    };
    for (const Row r : {Row{0.5, 1.0}, Row{1.0, 1.0}, Row{1.5, 0.5}, Row{0.25, 2.0}}) {
        eqt::moments::FiducialSpec f;
        f.stats.gamma = r.gamma;
        f.Omega = r.lambda;  // hbar = 1 so lambda tracks Omega
        f.hbar = 1.0;
        const auto t = eqt::moments::moment_table(f);
        CHECK(eqt::oracle::moment_quadrature(mono(r.gamma, r.lambda, 2, 0, 0, 0), cfg) ==
              doctest::Approx(t.q2).epsilon(1e-9));
        CHECK(eqt::oracle::moment_quadrature(mono(r.gamma, r.lambda, 4, 0, 0, 0), cfg) ==
              doctest::Approx(t.q4).epsilon(1e-9));
        CHECK(eqt::oracle::moment_quadrature(mono(r.gamma, r.lambda, 2, 2, 0, 0), cfg) ==
              doctest::Approx(t.q2q2_same).epsilon(1e-9));
        CHECK(eqt::oracle::moment_quadrature(mono(r.gamma, r.lambda, 2, 0, 2, 0), cfg) ==
              doctest::Approx(t.q2q2_cross).epsilon(1e-9));
        CHECK(eqt::oracle::moment_quadrature(mono(r.gamma, r.lambda, 1, 0, 1, 0), cfg) ==
              doctest::Approx(t.qq_cross).epsilon(1e-9));
        // Mixed same/cross component shares the x^2 y^2 value.
        CHECK(eqt::oracle::moment_quadrature(mono(r.gamma, r.lambda, 2, 0, 0, 2), cfg) ==
              doctest::Approx(t.q2q2_same).epsilon(1e-9));
    }
}

TEST_CASE("momentum dispersion oracle") {
    QuadConfig cfg;
    CHECK(eqt::oracle::p2_quadrature(0.0, 1.3, cfg) ==
          doctest::Approx(0.5 * 1.3).epsilon(1e-9));
    CHECK(eqt::oracle::p2_quadrature(1.0, 1.0, cfg) ==
          doctest::Approx(0.75).epsilon(1e-8));
    CHECK(eqt::oracle::p2_quadrature(0.5, 1.0, cfg) ==
          doctest::Approx(0.625).epsilon(1e-8));
    CHECK(eqt::oracle::p2_quadrature(1.5, 2.0, cfg) ==
          doctest::Approx(2.0 * 3.5 / 4.0).epsilon(1e-8));
}

TEST_CASE("monte carlo oracle agrees within its own error bars") {
    auto cfg = small_cfg();
    cfg.mc_samples = 400000;
    const double g = 0.6;
    eqt::moments::FiducialSpec f;
    f.stats.gamma = g;
    const auto t = eqt::moments::moment_table(f);
    const auto q2 = eqt::oracle::moment_montecarlo(mono(g, 1.0, 2, 0, 0, 0), cfg);
    CHECK(q2.n == cfg.mc_samples);
    CHECK(q2.std_err > 0.0);
    CHECK(std::abs(q2.mean - t.q2) < 4.0 * q2.std_err);
    const auto qq = eqt::oracle::moment_montecarlo(mono(g, 1.0, 1, 0, 1, 0), cfg);
    CHECK(std::abs(qq.mean - t.qq_cross) < 4.0 * qq.std_err);
    // Odd monomial: mean compatible with zero.
    const auto odd = eqt::oracle::moment_montecarlo(mono(g, 1.0, 1, 0, 0, 0), cfg);
    CHECK(std::abs(odd.mean) < 4.0 * odd.std_err);

    IntegrandSpec p2s;
    p2s.gamma = g;
    p2s.lambda = 1.0;
    p2s.derivative_flag = eqt::oracle::DerivFlag::p2;
    const auto p2 = eqt::oracle::moment_montecarlo(p2s, cfg);
    CHECK(std::abs(p2.mean - t.p2) < 4.0 * p2.std_err);
}

TEST_CASE("monte carlo determinism is bitwise") {
    auto cfg = small_cfg();
    const auto a = eqt::oracle::moment_montecarlo(mono(0.5, 1.0, 2, 0, 0, 0), cfg);
    const auto b = eqt::oracle::moment_montecarlo(mono(0.5, 1.0, 2, 0, 0, 0), cfg);
    CHECK(std::memcmp(&a.mean, &b.mean, sizeof a.mean) == 0);
    CHECK(std::memcmp(&a.std_err, &b.std_err, sizeof a.std_err) == 0);
    cfg.mc_seed = 43;
    const auto c = eqt::oracle::moment_montecarlo(mono(0.5, 1.0, 2, 0, 0, 0), cfg);
    CHECK(c.mean != a.mean);
}

TEST_CASE("quadrature is stable under node refinement") {
    QuadConfig coarse;
    QuadConfig fine;
    fine.radial_nodes = 64;
    fine.angular_nodes = 96;
    const auto s = mono(0.75, 1.0, 4, 0, 0, 0);
    const double a = eqt::oracle::moment_quadrature(s, coarse);
    const double b = eqt::oracle::moment_quadrature(s, fine);
    CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("series coefficients vanish at both endpoint statistics") {
    for (int s = 1; s <= 6; ++s) {
        CHECK(eqt::oracle::series_coefficient(0.0, 1.0, s, eqt::oracle::Sign::plus) ==
              0.0);
        CHECK(eqt::oracle::series_coefficient(0.0, 1.0, s, eqt::oracle::Sign::minus) ==
              0.0);
        CHECK(eqt::oracle::series_coefficient(1.0, 1.0, s, eqt::oracle::Sign::plus) ==
              0.0);
        CHECK(eqt::oracle::series_coefficient(1.0, 1.0, s, eqt::oracle::Sign::minus) ==
              0.0);
    }
    // Leading coefficient survives and carries the plain measure weight.
    CHECK(eqt::oracle::series_coefficient(0.0, 2.0, 0, eqt::oracle::Sign::minus) ==
          doctest::Approx(kPi / 2.0).epsilon(1e-13));
    CHECK(eqt::oracle::series_coefficient(0.5, 1.0, 0, eqt::oracle::Sign::minus) ==
          doctest::Approx(kPi).epsilon(1e-13));
    // Generic statistics keep every order alive.
    CHECK(std::abs(eqt::oracle::series_coefficient(0.5, 1.0, 3,
                                                   eqt::oracle::Sign::plus)) > 0.0);
}

TEST_CASE("laplace-transform chain closes for interpolating statistics") {
    for (double g : {0.5, 1.5}) {
        for (auto sign : {eqt::oracle::Sign::plus, eqt::oracle::Sign::minus}) {
            for (int n : {0, 2}) {
                const auto rows = eqt::oracle::appendix_chain_check(g, 8, n, sign);
                CHECK(rows.size() == 9);
                for (const auto& r : rows) {
                    CHECK(r.pass);
                    CHECK(r.rho_rel_err <= 1e-7);
                    CHECK(r.r_rel_err <= 1e-7);
                    CHECK(r.r_closed > 0.0);
                }
            }
        }
    }
}

TEST_CASE("chain check rejects shallow depth and bad order") {
    CHECK_THROWS_AS(eqt::oracle::appendix_chain_check(0.5, 4, 0, eqt::oracle::Sign::plus),
                    std::invalid_argument);
    CHECK_THROWS_AS(eqt::oracle::appendix_chain_check(0.5, 8, 3, eqt::oracle::Sign::plus),
                    std::invalid_argument);
    CHECK_THROWS_AS(eqt::oracle::appendix_chain_check(2.5, 8, 0, eqt::oracle::Sign::plus),
                    std::invalid_argument);
}

TEST_CASE("full verification report") {
    eqt::moments::FiducialSpec f;
    f.stats.gamma = 0.5;
    auto cfg = small_cfg();
    const auto rows = eqt::oracle::verify_moment_table(f, cfg);
    // Eight closed forms, each probed by both oracles.
    CHECK(rows.size() == 16);
    int quad_rows = 0;
    int mc_rows = 0;
    for (const auto& r : rows) {
        CHECK(r.pass);
        CHECK(r.gamma == 0.5);
        if (r.check.find(":quadrature") != std::string::npos) ++quad_rows;
        if (r.check.find(":montecarlo") != std::string::npos) ++mc_rows;
    }
    CHECK(quad_rows == 8);
    CHECK(mc_rows == 8);

    const std::string js = eqt::oracle::report_to_json(rows);
    const auto j = nlohmann::json::parse(js);
    CHECK(j.is_array());
    CHECK(j.size() == rows.size());
    for (const char* key :
         {"check", "gamma", "lambda", "closed_form", "oracle", "rel_err", "pass"}) {
        CHECK(j.at(0).contains(key));
    }
    // Same spec, same config: byte-identical serialized report.
    const auto rows2 = eqt::oracle::verify_moment_table(f, cfg);
    CHECK(eqt::oracle::report_to_json(rows2) == js);
}
