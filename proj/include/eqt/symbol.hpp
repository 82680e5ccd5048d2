#pragma once

#include <array>
#include <string>
#include <vector>

#include "eqt/moments.hpp"

namespace eqt::symbol {

// Physical constants of the two-body model: mass, trap frequency varpi,
// quartic coupling g, Planck constant, and the fiducial frequency Omega.
// hbar = 0 selects the strict classical limit.
struct PhysicalParams {
    double m = 1.0;
    double varpi = 1.0;
    double g = 1.0;
    double hbar = 1.0;
    double Omega = 1.0;
};
void validate(const PhysicalParams& p);

struct PhaseSpacePoint {
    std::array<double, 2> p1{0.0, 0.0};
    std::array<double, 2> p2{0.0, 0.0};
    std::array<double, 2> q1{0.0, 0.0};
    std::array<double, 2> q2{0.0, 0.0};
};

// Phase-space symbol of the quantum Hamiltonian over the coherent family:
// the classical expression plus moment-weighted corrections,
//   H = H_c + c_q2 (q1^2 + q2^2) + c_q1q2 (q1.q2)
//         + c_kin_const + c_harm_const + c_const_quartic,
// with every correction tagged by its power of hbar.
struct EnhancedHamiltonian {
    PhysicalParams params;
    moments::StatisticsParam stats;
    moments::MomentTable table;
    double c_kin_const = 0.0;      // hbar^1: 2 <P^2> / m
    double c_harm_const = 0.0;     // hbar^1: 2 m varpi^2 <Q^2>
    double c_q2 = 0.0;             // hbar^1: 12 g <Q^2>
    double c_q1q2 = 0.0;           // hbar^1: 8 g <Q_1 Q_2>
    double c_const_quartic = 0.0;  // hbar^2: g <(Q1^2+Q2^2)^2>
};

// One-dof quartic-oscillator symbol in unit-mass units:
//   p^2 + q^2 + q^4 + 6 q^2 <Q^2> + (<P^2> + <Q^2> + <Q^4>),
// taking the three fiducial moments directly.
double symbol_1dof_quartic(double q2f, double p2f, double q4f, double p,
                           double q);

// Builds the enhanced Hamiltonian from a moment table.  Throws
// std::invalid_argument when the table's hbar or Omega disagree with the
// parameters (hbar = 0 accepts any table and zeroes every tagged term).
EnhancedHamiltonian assemble_enhanced(const PhysicalParams& params,
                                      const moments::MomentTable& table);

double eval_hamiltonian(const EnhancedHamiltonian& h, const PhaseSpacePoint& x);

// hbar^0 part only: kinetic + trap + bare quartic.
double classical_limit(const EnhancedHamiltonian& h, const PhaseSpacePoint& x);

// Energy offset from n non-interacting spectator copies in their ground
// state; additive, state-independent.
double spectator_shift(const EnhancedHamiltonian& h, int n_spectators,
                       double ground_energy);

// JSON array of {term, hbar_power, value} covering the hbar^0 structural
// coefficients and the five tagged corrections.
std::string coefficient_terms_json(const EnhancedHamiltonian& h);

// Comparison of the implemented coefficients against alternative
// assemblies that circulate for this model.  `label` names the assembly
// ("interpolating" for the gamma-generic one, "boson_endpoint" and
// "fermion_endpoint" for the frozen gamma = 0 / gamma = 1 forms), `ratio`
// is variant/implemented.  The dual integration oracles side with the
// implemented values; these rows exist so any drift in either direction
// surfaces immediately.
struct DiscrepancyRow {
    std::string label;
    std::string term;
    double implemented = 0.0;
    double variant = 0.0;
    double ratio = 0.0;
    bool agrees = false;
};
std::vector<DiscrepancyRow> discrepancy_report(const EnhancedHamiltonian& h);
std::string discrepancies_to_json(const std::vector<DiscrepancyRow>& rows);

}  // namespace eqt::symbol
