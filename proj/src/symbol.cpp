#include "eqt/symbol.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace eqt::symbol {

namespace {

double dot(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] * b[0] + a[1] * b[1];
}

double norm2(const std::array<double, 2>& a) { return dot(a, a); }

double safe_ratio(double variant, double implemented) {
    if (implemented != 0.0) return variant / implemented;
    if (variant == 0.0) return 1.0;
    return std::numeric_limits<double>::infinity();
}

bool close(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

void validate(const PhysicalParams& p) {
    if (!(p.m > 0.0)) throw std::invalid_argument("m must be positive");
    if (!(p.varpi >= 0.0)) throw std::invalid_argument("varpi must be >= 0");
    if (!(p.g >= 0.0)) throw std::invalid_argument("g must be >= 0");
    if (!(p.hbar >= 0.0)) throw std::invalid_argument("hbar must be >= 0");
    if (!(p.Omega > 0.0)) throw std::invalid_argument("Omega must be positive");
}

double symbol_1dof_quartic(double q2f, double p2f, double q4f, double p,
                           double q) {
    const double q2 = q * q;
    return p * p + q2 + q2 * q2 + 6.0 * q2 * q2f + (p2f + q2f + q4f);
}

EnhancedHamiltonian assemble_enhanced(const PhysicalParams& params,
                                      const moments::MomentTable& table) {
    validate(params);
    if (!(table.gamma >= 0.0) || !(table.gamma < 2.0)) {
        throw std::invalid_argument("gamma must lie in [0,2)");
    }
    if (!close(table.Omega, params.Omega)) {
        throw std::invalid_argument("moment table Omega disagrees with parameters");
    }
    EnhancedHamiltonian h;
    h.params = params;
    h.stats.gamma = table.gamma;
    h.table = table;
    if (params.hbar == 0.0) {
        // Strict classical limit: every correction carries at least one
        // power of hbar, so the table only contributes structure, not value.
        return h;
    }
    if (!close(table.hbar, params.hbar)) {
        throw std::invalid_argument("moment table hbar disagrees with parameters");
    }
    h.c_kin_const = 2.0 * table.p2 / params.m;
    h.c_harm_const = 2.0 * params.m * params.varpi * params.varpi * table.q2;
    h.c_q2 = 12.0 * params.g * table.q2;
    h.c_q1q2 = 8.0 * params.g * table.qq_cross;
    h.c_const_quartic = params.g * table.v_expect;
    return h;
}

double classical_limit(const EnhancedHamiltonian& h, const PhaseSpacePoint& x) {
    const double S = norm2(x.q1) + norm2(x.q2);
    return (norm2(x.p1) + norm2(x.p2)) / (2.0 * h.params.m) +
           0.5 * h.params.m * h.params.varpi * h.params.varpi * S +
           h.params.g * S * S;
}

double eval_hamiltonian(const EnhancedHamiltonian& h, const PhaseSpacePoint& x) {
    const double S = norm2(x.q1) + norm2(x.q2);
    return classical_limit(h, x) + h.c_q2 * S + h.c_q1q2 * dot(x.q1, x.q2) +
           h.c_kin_const + h.c_harm_const + h.c_const_quartic;
}

double spectator_shift(const EnhancedHamiltonian&, int n_spectators,
                       double ground_energy) {
    if (n_spectators < 0) throw std::invalid_argument("n_spectators must be >= 0");
    return n_spectators * ground_energy;
}

std::string coefficient_terms_json(const EnhancedHamiltonian& h) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    auto add = [&](const char* term, int hbar_power, double value) {
        nlohmann::ordered_json j;
        j["term"] = term;
        j["hbar_power"] = hbar_power;
        j["value"] = value;
        arr.push_back(std::move(j));
    };
    add("p_sq", 0, 0.5 / h.params.m);
    add("q_sq_harmonic", 0, 0.5 * h.params.m * h.params.varpi * h.params.varpi);
    add("q_quartic", 0, h.params.g);
    add("c_kin_const", 1, h.c_kin_const);
    add("c_harm_const", 1, h.c_harm_const);
    add("c_q2", 1, h.c_q2);
    add("c_q1q2", 1, h.c_q1q2);
    add("c_const_quartic", 2, h.c_const_quartic);
    return arr.dump(2);
}

std::vector<DiscrepancyRow> discrepancy_report(const EnhancedHamiltonian& h) {
    std::vector<DiscrepancyRow> rows;
    const PhysicalParams& P = h.params;
    if (P.hbar == 0.0) return rows;

    moments::FiducialSpec f;
    f.stats = h.stats;
    f.Omega = P.Omega;
    f.hbar = P.hbar;
    const moments::VariantMoments vm = moments::variant_moments(f);
    const double gamma = h.stats.gamma;

    auto add = [&rows](const std::string& label, const std::string& term,
                       double implemented, double variant) {
        DiscrepancyRow r;
        r.label = label;
        r.term = term;
        r.implemented = implemented;
        r.variant = variant;
        r.ratio = safe_ratio(variant, implemented);
        r.agrees = close(implemented, variant);
        rows.push_back(r);
    };

    // Gamma-generic alternative assembly: kinetic constant built on the
    // variant <P^2>, the harmonic constant coinciding, the quadratic shift
    // with weight 5/2 per hbar g (gamma+2)/Omega instead of 3, the cross
    // coupling at half strength, and the quartic constant using the variant
    // fourth-moment combination with no coupling factor.
    add("interpolating", "kinetic_const", h.c_kin_const, 2.0 * vm.p2_variant / P.m);
    add("interpolating", "harmonic_const", h.c_harm_const,
        P.hbar * P.m * P.varpi * P.varpi * (gamma + 2.0) / (2.0 * P.Omega));
    add("interpolating", "q2_coeff", h.c_q2,
        2.5 * P.g * P.hbar * (gamma + 2.0) / P.Omega);
    add("interpolating", "q1q2_coeff", h.c_q1q2, 4.0 * P.g * h.table.qq_cross);
    add("interpolating", "quartic_const", h.c_const_quartic, vm.v_variant);

    const double hw = P.hbar / P.Omega;
    if (std::abs(gamma) < 1e-12) {
        add("boson_endpoint", "kinetic_const", h.c_kin_const, P.hbar * P.Omega / P.m);
        add("boson_endpoint", "harmonic_const", h.c_harm_const,
            P.m * P.varpi * P.varpi * hw);
        add("boson_endpoint", "q2_coeff", h.c_q2, 3.0 * P.g * hw);
        add("boson_endpoint", "quartic_const", h.c_const_quartic,
            3.0 * P.g * P.hbar * hw / P.Omega);
    }
    if (std::abs(gamma - 1.0) < 1e-12) {
        add("fermion_endpoint", "kinetic_const", h.c_kin_const,
            1.5 * P.hbar * P.Omega / P.m);
        add("fermion_endpoint", "harmonic_const", h.c_harm_const,
            1.5 * P.m * P.varpi * P.varpi * hw);
        add("fermion_endpoint", "q2_coeff", h.c_q2, 18.0 * P.g * hw);
        add("fermion_endpoint", "quartic_const", h.c_const_quartic,
            6.0 * P.g * P.hbar * hw / P.Omega);
    }
    return rows;
}

std::string discrepancies_to_json(const std::vector<DiscrepancyRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["label"] = r.label;
        j["term"] = r.term;
        j["implemented"] = r.implemented;
        j["variant"] = r.variant;
        j["ratio"] = r.ratio;
        j["agrees"] = r.agrees;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace eqt::symbol
