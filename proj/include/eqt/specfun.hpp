#pragma once

#include <cstdint>

namespace eqt::specfun {

// log Gamma(x) for x > 0.  Throws std::domain_error otherwise.
double log_gamma(double x);

// log |Gamma(x)| with the sign of Gamma(x), valid away from the poles
// x = 0, -1, -2, ...  Needed internally wherever Gamma-ratio formulas meet
// negative parameters.
struct SignedLogGamma {
    double log_abs;
    int sign;  // +1 or -1
};
SignedLogGamma log_gamma_signed(double x);

double gamma_fn(double x);

// Rising factorial (a)_n = a (a+1) ... (a+n-1), n >= 0.
double pochhammer(double a, int n);

struct HypParams {
    double a;
    double b;
    double c;
};

// Gauss hypergeometric F(a, b; c; 1).  If a or b is within 1e-12 of a
// non-positive integer the series terminates and is summed directly;
// otherwise the Gauss closed form applies and requires c - a - b > 0.
double hyp2f1_unit(const HypParams& p);

// Power series for F(a, b; c; z), |z| <= 1.  Stops only after three
// consecutive terms fall below tol relative to the running sum, so an
// isolated zero term cannot end the series prematurely.  Throws
// std::runtime_error if 10^6 terms are exceeded; the partial sum is never
// returned as if it were final.  `terms_out`, when given, receives the
// number of terms summed.
double hyp2f1_partial(const HypParams& p, double z, double tol = 1e-15,
                      long* terms_out = nullptr);

struct WhittakerParams {
    double mu;  // first index (exponent of the power prefactor)
    double nu;  // second index; W is even in nu
};

struct WhittakerResult {
    double value = 0.0;
    bool converged = false;
    double refine_delta = 0.0;  // relative change of the last refinement
};

// Whittaker W_{mu,nu}(z) for z > 0 via the integral representation
//   W = e^{-z/2} z^mu / Gamma(nu - mu + 1/2) *
//       int_0^inf e^{-t} t^{nu-mu-1/2} (1 + t/z)^{nu+mu-1/2} dt,
// valid for nu - mu + 1/2 > 0 (throws std::domain_error otherwise).
// Evaluated with a double-exponential rule refined until stable.
WhittakerResult whittaker_w(const WhittakerParams& p, double z);

}  // namespace eqt::specfun
