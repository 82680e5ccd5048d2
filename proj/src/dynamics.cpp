#include "eqt/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace eqt::dynamics {

namespace {

struct State {
    std::array<double, 4> p{};
    std::array<double, 4> q{};
};

State to_state(const symbol::PhaseSpacePoint& x) {
    return State{{x.p1[0], x.p1[1], x.p2[0], x.p2[1]},
                 {x.q1[0], x.q1[1], x.q2[0], x.q2[1]}};
}

symbol::PhaseSpacePoint to_point(const State& s) {
    symbol::PhaseSpacePoint x;
    x.p1 = {s.p[0], s.p[1]};
    x.p2 = {s.p[2], s.p[3]};
    x.q1 = {s.q[0], s.q[1]};
    x.q2 = {s.q[2], s.q[3]};
    return x;
}

// dH/dq with the quartic chain rule expanded once; shared by gradient()
// and the integrator kick.
std::array<double, 4> force_dq(const symbol::EnhancedHamiltonian& h,
                               const std::array<double, 4>& q) {
    const double S = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    const double radial =
        h.params.m * h.params.varpi * h.params.varpi + 4.0 * h.params.g * S +
        2.0 * h.c_q2;
    std::array<double, 4> dq{};
    for (int i = 0; i < 4; ++i) dq[i] = radial * q[i];
    // partner index map for the q1.q2 coupling: (0,1)<->(2,3)
    dq[0] += h.c_q1q2 * q[2];
    dq[1] += h.c_q1q2 * q[3];
    dq[2] += h.c_q1q2 * q[0];
    dq[3] += h.c_q1q2 * q[1];
    return dq;
}

void leapfrog_step(const symbol::EnhancedHamiltonian& h, State& s, double dt) {
    auto f = force_dq(h, s.q);
    for (int i = 0; i < 4; ++i) s.p[i] -= 0.5 * dt * f[i];
    for (int i = 0; i < 4; ++i) s.q[i] += dt * s.p[i] / h.params.m;
    f = force_dq(h, s.q);
    for (int i = 0; i < 4; ++i) s.p[i] -= 0.5 * dt * f[i];
}

void yoshida4_step(const symbol::EnhancedHamiltonian& h, State& s, double dt) {
    const double cbrt2 = std::cbrt(2.0);
    const double w1 = 1.0 / (2.0 - cbrt2);
    const double w0 = 1.0 - 2.0 * w1;
    leapfrog_step(h, s, w1 * dt);
    leapfrog_step(h, s, w0 * dt);
    leapfrog_step(h, s, w1 * dt);
}

void check_finite(const State& s) {
    for (int i = 0; i < 4; ++i) {
        if (!(std::abs(s.p[i]) <= 1e12) || !(std::abs(s.q[i]) <= 1e12)) {
            throw std::runtime_error("trajectory blow-up: coordinate exceeded 1e12");
        }
    }
}

}  // namespace

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (cfg.record_every < 1) throw std::invalid_argument("record_every must be >= 1");
}

Gradient gradient(const symbol::EnhancedHamiltonian& h,
                  const symbol::PhaseSpacePoint& x) {
    const State s = to_state(x);
    Gradient grad;
    for (int i = 0; i < 4; ++i) grad.dp[i] = s.p[i] / h.params.m;
    grad.dq = force_dq(h, s.q);
    return grad;
}

Trajectory integrate(const symbol::EnhancedHamiltonian& h,
                     const symbol::PhaseSpacePoint& x0,
                     const IntegratorConfig& cfg) {
    validate(cfg);
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    if (n_steps < 1) throw std::invalid_argument("t_end must cover at least one step");

    Trajectory traj;
    State s = to_state(x0);
    check_finite(s);
    auto record = [&](long k) {
        const symbol::PhaseSpacePoint x = to_point(s);
        traj.times.push_back(k * cfg.dt);
        traj.states.push_back(x);
        traj.energies.push_back(symbol::eval_hamiltonian(h, x));
    };
    record(0);
    for (long k = 1; k <= n_steps; ++k) {
        if (cfg.scheme == Scheme::leapfrog) {
            leapfrog_step(h, s, cfg.dt);
        } else {
            yoshida4_step(h, s, cfg.dt);
        }
        check_finite(s);
        if (k % cfg.record_every == 0 || k == n_steps) record(k);
    }
    return traj;
}

double angular_momentum(const symbol::PhaseSpacePoint& x) {
    return x.q1[0] * x.p1[1] - x.q1[1] * x.p1[0] + x.q2[0] * x.p2[1] -
           x.q2[1] * x.p2[0];
}

void write_csv(const Trajectory& traj, std::ostream& out,
               const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "t,px1,py1,px2,py2,qx1,qy1,qx2,qy2,E\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    for (size_t i = 0; i < traj.times.size(); ++i) {
        const auto& x = traj.states[i];
        put(traj.times[i], ',');
        put(x.p1[0], ',');
        put(x.p1[1], ',');
        put(x.p2[0], ',');
        put(x.p2[1], ',');
        put(x.q1[0], ',');
        put(x.q1[1], ',');
        put(x.q2[0], ',');
        put(x.q2[1], ',');
        put(traj.energies[i], '\n');
    }
}

std::vector<TrajectoryStats> compare_statistics(
    const std::vector<symbol::EnhancedHamiltonian>& hs,
    const symbol::PhaseSpacePoint& x0, const IntegratorConfig& cfg) {
    std::vector<TrajectoryStats> stats;
    std::vector<Trajectory> trajs;
    trajs.reserve(hs.size());
    for (const auto& h : hs) trajs.push_back(integrate(h, x0, cfg));
    for (size_t i = 0; i < hs.size(); ++i) {
        const Trajectory& t = trajs[i];
        TrajectoryStats st;
        st.gamma = hs[i].stats.gamma;
        st.e_initial = t.energies.front();
        double sum = 0.0, worst = 0.0;
        for (double e : t.energies) {
            sum += e;
            worst = std::max(worst, std::abs(e - t.energies.front()));
        }
        st.e_mean = sum / double(t.energies.size());
        st.drift_rel = worst / std::max(std::abs(t.energies.front()), 1e-300);
        double diff = 0.0;
        const size_t nrec = std::min(t.states.size(), trajs[0].states.size());
        for (size_t k = 0; k < nrec; ++k) {
            const auto& a = t.states[k];
            const auto& b = trajs[0].states[k];
            const double comp[8] = {
                a.p1[0] - b.p1[0], a.p1[1] - b.p1[1], a.p2[0] - b.p2[0],
                a.p2[1] - b.p2[1], a.q1[0] - b.q1[0], a.q1[1] - b.q1[1],
                a.q2[0] - b.q2[0], a.q2[1] - b.q2[1]};
            for (double c : comp) diff = std::max(diff, std::abs(c));
        }
        st.max_diff_from_first = diff;
        stats.push_back(st);
    }
    return stats;
}

}  // namespace eqt::dynamics
