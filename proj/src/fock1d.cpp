#include "eqt/fock1d.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "eqt/quadrature.hpp"

namespace eqt::fock1d {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cd = std::complex<double>;

// Applies exp(i phase * H) v through the eigensystem H = V D V*.
Eigen::VectorXcd apply_phase_exp(const Eigen::VectorXd& eigs,
                                 const Eigen::MatrixXcd& vecs, double phase,
                                 const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w = vecs.adjoint() * v;
    for (int i = 0; i < eigs.size(); ++i) {
        w(i) *= std::exp(cd(0.0, phase * eigs(i)));
    }
    return vecs * w;
}

}  // namespace

FockSpace build_fock(int dim, double hbar) {
    if (dim < 8) throw std::invalid_argument("dim must be >= 8");
    if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
    FockSpace f;
    f.dim = dim;
    f.hbar = hbar;
    f.Q = Eigen::MatrixXcd::Zero(dim, dim);
    f.P = Eigen::MatrixXcd::Zero(dim, dim);
    const double c = std::sqrt(0.5 * hbar);
    for (int n = 0; n + 1 < dim; ++n) {
        const double r = c * std::sqrt(double(n + 1));
        f.Q(n, n + 1) = r;
        f.Q(n + 1, n) = r;
        f.P(n, n + 1) = cd(0.0, -r);
        f.P(n + 1, n) = cd(0.0, r);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sq(f.Q);
    f.q_eigs = sq.eigenvalues();
    f.q_vecs = sq.eigenvectors();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> sp(f.P);
    f.p_eigs = sp.eigenvalues();
    f.p_vecs = sp.eigenvectors();
    return f;
}

Eigen::VectorXcd coherent_state(const FockSpace& f, double p, double q,
                                double* tail_weight) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(f.dim);
    v(0) = 1.0;
    v = apply_phase_exp(f.q_eigs, f.q_vecs, p / f.hbar, v);
    v = apply_phase_exp(f.p_eigs, f.p_vecs, -q / f.hbar, v);
    if (tail_weight != nullptr) {
        const int tail = std::max(1, f.dim / 8);
        double w = 0.0;
        for (int i = f.dim - tail; i < f.dim; ++i) w += std::norm(v(i));
        *tail_weight = w;
    }
    return v;
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix must be square");
    const Eigen::Index n = a.rows();
    // Pade-13 coefficients.
    static const double b[14] = {64764752532480000.0, 32382376266240000.0,
                                 7771770303897600.0,  1187353796428800.0,
                                 129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,
                                 1323241920.0,        40840800.0,
                                 960960.0,            16380.0,
                                 182.0,               1.0};
    const double theta13 = 5.371920351148152;
    const double nrm = a.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
    int s = 0;
    if (nrm > theta13) {
        s = int(std::ceil(std::log2(nrm / theta13)));
    }
    const Eigen::MatrixXcd as = a / std::pow(2.0, s);
    const Eigen::MatrixXcd a2 = as * as;
    const Eigen::MatrixXcd a4 = a2 * a2;
    const Eigen::MatrixXcd a6 = a2 * a4;
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd u =
        as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
              b[3] * a2 + b[1] * id);
    const Eigen::MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                               b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    Eigen::MatrixXcd r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

double symbol_expectation(const FockSpace& f, const Eigen::MatrixXcd& m,
                          double p, double q) {
    if (m.rows() != f.dim || m.cols() != f.dim) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    const Eigen::VectorXcd v = coherent_state(f, p, q);
    return std::real(cd(v.dot(m * v)));
}

std::array<std::array<double, 2>, 2> fubini_study_metric(const FockSpace& f,
                                                         double p, double q,
                                                         double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    auto metric_at = [&](double h) -> std::array<std::array<double, 2>, 2> {
        const Eigen::VectorXcd psi = coherent_state(f, p, q);
        const Eigen::VectorXcd dp =
            (coherent_state(f, p + h, q) - coherent_state(f, p - h, q)) / (2.0 * h);
        const Eigen::VectorXcd dq =
            (coherent_state(f, p, q + h) - coherent_state(f, p, q - h)) / (2.0 * h);
        const Eigen::VectorXcd d[2] = {dp, dq};
        std::array<std::array<double, 2>, 2> g{};
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const cd full = d[i].dot(d[j]);
                const cd proj = d[i].dot(psi) * psi.dot(d[j]);
                g[i][j] = 2.0 * f.hbar * std::real(full - proj);
            }
        }
        return g;
    };
    // One Richardson pass removes the O(h^2) error of the central stencils.
    const auto gh = metric_at(step);
    const auto gh2 = metric_at(0.5 * step);
    std::array<std::array<double, 2>, 2> g{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            g[i][j] = (4.0 * gh2[i][j] - gh[i][j]) / 3.0;
        }
    }
    return g;
}

Eigen::MatrixXcd resolution_of_unity_check(const FockSpace& f,
                                           double radial_cutoff, int n_quad) {
    if (!(radial_cutoff > 0.0)) throw std::invalid_argument("cutoff must be positive");
    if (n_quad < 16) throw std::invalid_argument("n_quad must be >= 16");
    // Polar grid: Gauss-Legendre radially on [0, R] with the r measure
    // folded in, trapezoid in the angle.  The angular rule is exact once
    // n_quad exceeds the largest basis index difference, since the (m,n)
    // matrix element of |p,q><p,q| carries the harmonic exp(i(m-n)t).
    const auto rrule = quad::gauss_legendre(n_quad, 0.0, radial_cutoff);
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(f.dim, f.dim);
    for (int i = 0; i < n_quad; ++i) {
        const double r = rrule.x[i];
        const double wr = rrule.w[i] * r / (2.0 * kPi * f.hbar);
        for (int j = 0; j < n_quad; ++j) {
            const double t = 2.0 * kPi * j / n_quad;
            const Eigen::VectorXcd v =
                coherent_state(f, r * std::cos(t), r * std::sin(t));
            acc.noalias() += (wr * 2.0 * kPi / n_quad) * (v * v.adjoint());
        }
    }
    return acc;
}

}  // namespace eqt::fock1d
