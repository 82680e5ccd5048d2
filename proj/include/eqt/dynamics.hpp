#pragma once

#include <array>
#include <ostream>
#include <string>
#include <vector>

#include "eqt/symbol.hpp"

namespace eqt::dynamics {

enum class Scheme { leapfrog, yoshida4 };

struct IntegratorConfig {
    double dt = 1e-3;
    double t_end = 10.0;
    Scheme scheme = Scheme::yoshida4;
    int record_every = 10;
};
void validate(const IntegratorConfig& cfg);

struct Trajectory {
    std::vector<double> times;
    std::vector<symbol::PhaseSpacePoint> states;
    std::vector<double> energies;
};

// Exact partial derivatives of the enhanced symbol, ordered
// (px1,py1,px2,py2) and (qx1,qy1,qx2,qy2).
struct Gradient {
    std::array<double, 4> dp{};
    std::array<double, 4> dq{};
};
Gradient gradient(const symbol::EnhancedHamiltonian& h,
                  const symbol::PhaseSpacePoint& x);

// Symplectic integration of Hamilton's equations for the enhanced symbol.
// Throws std::runtime_error if any coordinate exceeds 1e12 in magnitude.
Trajectory integrate(const symbol::EnhancedHamiltonian& h,
                     const symbol::PhaseSpacePoint& x0,
                     const IntegratorConfig& cfg);

// Total angular momentum sum_s (qx ps_y - qy ps_x); conserved exactly by
// the rotationally invariant symbol, up to integrator roundoff.
double angular_momentum(const symbol::PhaseSpacePoint& x);

// Writes "t,px1,py1,px2,py2,qx1,qy1,qx2,qy2,E" rows at full precision,
// preceded by optional "# " comment lines.  Byte-stable across runs.
void write_csv(const Trajectory& traj, std::ostream& out,
               const std::vector<std::string>& comments = {});

// One summary per Hamiltonian, all started from the same point: initial
// and mean recorded energy, worst relative energy drift, and the largest
// recorded state deviation from the first Hamiltonian's trajectory.
struct TrajectoryStats {
    double gamma = 0.0;
    double e_initial = 0.0;
    double e_mean = 0.0;
    double drift_rel = 0.0;
    double max_diff_from_first = 0.0;
};
std::vector<TrajectoryStats> compare_statistics(
    const std::vector<symbol::EnhancedHamiltonian>& hs,
    const symbol::PhaseSpacePoint& x0, const IntegratorConfig& cfg);

}  // namespace eqt::dynamics
