#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eqt/moments.hpp"

namespace eqt::oracle {

// Knobs for the brute-force integration routes.  Defaults are tuned so the
// quadrature routes resolve well past 1e-8 relative error for gamma in
// [0,2) and lambda within a couple of decades of 1.
struct QuadConfig {
    int radial_nodes = 48;       // >= 16
    int angular_nodes = 64;      // >= 32
    long mc_samples = 1000000;   // >= 1e5
    std::uint64_t mc_seed = 42;
    double rel_tol = 1e-6;
};
void validate(const QuadConfig& cfg);

enum class DerivFlag { none, p2 };

// One expectation value over the fiducial weight
// |r1-r2|^(2 gamma) exp(-lambda (r1^2+r2^2)) on R^4:
// either a monomial x1^a y1^b x2^c y2^d of total degree <= 4 (powers in
// that coordinate order), or the kinetic-operator reduction selected by
// derivative_flag = p2, for which the powers must all be zero.
struct IntegrandSpec {
    double gamma = 0.0;
    double lambda = 1.0;
    std::array<int, 4> powers{0, 0, 0, 0};
    DerivFlag derivative_flag = DerivFlag::none;
};
void validate(const IntegrandSpec& spec);

// Relative-angle integral of the exchange weight,
//   int_0^{2pi} (cos t)^cos_power (r1^2 + r2^2 - 2 r1 r2 sin t)^gamma dt,
// for cos_power 0 or 2.  Evaluated on the sine-form integrand exactly as
// written, by the periodic trapezoid rule with doubled-grid control and an
// endpoint-aware fallback near the r1 = r2 cusp.
double angular_integral(double r1, double r2, double gamma, int cos_power,
                        int n_nodes);

// Normalized expectation <spec> by deterministic quadrature.  Monomials run
// through an exact Fourier reduction of the angular integrals followed by a
// triangle-split radial scheme; the p2 flag dispatches to p2_quadrature.
double moment_quadrature(const IntegrandSpec& spec, const QuadConfig& cfg);

// Same expectation by importance-sampled Monte Carlo (Gaussian proposal,
// ratio estimator).  std_err is the delta-method standard error of mean.
// Deterministic for fixed seed; accumulation uses pairwise reduction.
struct McResult {
    double mean = 0.0;
    double std_err = 0.0;
    long n = 0;
};
McResult moment_montecarlo(const IntegrandSpec& spec, const QuadConfig& cfg);

// <P_x1^2> per hbar^2, i.e. the normalized value of the second-derivative
// reduction evaluated with the full unsplit bracket of the integrand, in
// center-of-mass polar coordinates where every factor stays integrable.
// Multiply by hbar^2 for physical units.
double p2_quadrature(double gamma, double lambda, const QuadConfig& cfg);

// Sign label for the two angular-reduction branches: plus carries the
// cos^2 factor, minus the plain weight.
enum class Sign { plus, minus };

// Coefficient Lambda_s of the radial-series decomposition of the angular
// integral, including its 1/lambda^(gamma + (3 +- 1)/2) prefactor.
// Identically zero for s >= 1 at gamma = 0.
double series_coefficient(double gamma, double lambda, int s, Sign sign);

// Per-order consistency rows for the radial-series reduction chain: the
// partner-density function rho_s evaluated directly and through its
// Whittaker-function closed form, then the moment integral R_n evaluated
// by quadrature against its gamma-function closed form.
struct AppendixCheckRow {
    int s = 0;
    double rho_direct = 0.0;    // worst-probe direct integral
    double rho_special = 0.0;   // same probe via the Whittaker form
    double rho_rel_err = 0.0;   // max over the u probes
    double r_direct = 0.0;
    double r_closed = 0.0;
    double r_rel_err = 0.0;
    bool pass = false;          // both rel errs <= 1e-7
};
std::vector<AppendixCheckRow> appendix_chain_check(double gamma, int s_max,
                                                   int n, Sign sign);

// One closed-form-vs-oracle comparison, serialized verbatim into reports.
struct ReportRow {
    std::string check;
    double gamma = 0.0;
    double lambda = 0.0;
    double closed_form = 0.0;
    double oracle = 0.0;
    double rel_err = 0.0;
    bool pass = false;
};
std::string report_to_json(const std::vector<ReportRow>& rows);

// Every entry of the closed-form moment table against both oracle routes.
// Produces a "<name>:quadrature" row (pass when rel_err <= cfg.rel_tol)
// and a "<name>:montecarlo" row (pass when the discrepancy is within three
// standard errors) for each table field.
std::vector<ReportRow> verify_moment_table(const moments::FiducialSpec& f,
                                           const QuadConfig& cfg);

}  // namespace eqt::oracle
