#pragma once

#include <Eigen/Dense>
#include <array>

namespace eqt::fock1d {

// Truncated one-mode ladder representation:
//   Q = sqrt(hbar/2)(a + a*),  P = i sqrt(hbar/2)(a* - a),
// so (Q + iP) annihilates the ground vector and [Q,P] = i hbar holds
// exactly on the first dim-1 components.  The eigensystems of Q and P are
// kept so displacement exponentials apply in O(dim^2).
struct FockSpace {
    int dim = 0;
    double hbar = 1.0;
    Eigen::MatrixXcd Q;
    Eigen::MatrixXcd P;
    Eigen::VectorXd q_eigs;
    Eigen::MatrixXcd q_vecs;
    Eigen::VectorXd p_eigs;
    Eigen::MatrixXcd p_vecs;
};

// dim >= 8, hbar > 0.
FockSpace build_fock(int dim, double hbar);

// Coherent vector exp(-i q P / hbar) exp(i p Q / hbar) e0, built through
// the stored eigensystems; exactly unit norm by construction.  When
// tail_weight is given it receives the probability carried by the top
// eighth of the basis, a direct truncation-quality signal.
Eigen::VectorXcd coherent_state(const FockSpace& f, double p, double q,
                                double* tail_weight = nullptr);

// Dense matrix exponential by Pade-13 scaling and squaring.  Kept as an
// independent route so the spectral displacements above can be
// cross-checked against a generic algorithm.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

// Real diagonal expectation <p,q| m |p,q> (imaginary part discarded; it
// vanishes for Hermitian m).
double symbol_expectation(const FockSpace& f, const Eigen::MatrixXcd& m,
                          double p, double q);

// Ray-space metric of the coherent family in (p,q), from central finite
// differences at the given step with one Richardson refinement, scaled by
// 2 hbar so the harmonic family yields the identity matrix.
std::array<std::array<double, 2>, 2> fubini_study_metric(const FockSpace& f,
                                                         double p, double q,
                                                         double step);

// Phase-space integral of |p,q><p,q| dp dq / (2 pi hbar) over the disk
// p^2 + q^2 <= radial_cutoff^2, with n_quad radial and angular nodes.
// Approaches the identity on basis states well below both the cutoff
// occupancy radial_cutoff^2/(2 hbar) and the truncation edge.
Eigen::MatrixXcd resolution_of_unity_check(const FockSpace& f,
                                           double radial_cutoff, int n_quad);

}  // namespace eqt::fock1d
