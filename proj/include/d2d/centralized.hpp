#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "d2d/netmodel.hpp"
#include "d2d/params.hpp"

namespace d2d {

// rho within [1 - margin, 1] is treated as infeasible; solving those
// systems would produce astronomically large powers.
inline constexpr double kRhoFeasibilityMargin = 1e-9;

// Normalized-gain constraint system for the SINR-target polytope
// (I - F) p >= b, 0 <= p <= p_max.  Index 0 is the cellular link; entries
// are in watt units.  active_set keeps the original link indices that the
// rows/columns currently refer to.
struct ConstraintSystem {
    Eigen::MatrixXd f;       // zero diagonal, F(k,l) = beta_k G(k,l) / G(k,k)
    Eigen::VectorXd b;       // b(k) = beta_k sigma^2 / G(k,k)
    double g0 = 0.0;         // direct cellular gain G(0,0)
    Eigen::VectorXd g0c;     // cross gains G(0,k) of the retained D2D links
    Eigen::VectorXd p_max;   // per-link peak powers
    double noise_w = 0.0;
    std::vector<int> active; // active[0] == 0 always

    int size() const { return static_cast<int>(active.size()); }

    // drop the link at current position j (j >= 1)
    void remove(int j);
};

struct ControlOutcome {
    std::vector<int> admitted;      // original D2D indices kept transmitting
    PowerProfile profile;           // full K+1 vector, removed links at 0
    double cell_sinr = 0.0;         // recomputed from the raw gains
    double rho_final = 0.0;         // spectral radius of the retained F
    std::vector<double> rho_trace;  // rho after each admission step (front = initial)
};

// Peak-power caps can make the program infeasible even when rho(F) < 1;
// the control loop treats this like a failed feasibility test.
struct CapInfeasibleError : std::runtime_error {
    CapInfeasibleError() : std::runtime_error("infeasible under power caps") {}
};

// Assemble F, b and the objective gains from a realization (or from a
// precomputed gain matrix with the same indexing).  Throws
// std::domain_error if any direct gain is zero.
ConstraintSystem build_constraints(const NetworkRealization& real, const SystemParams& params);
ConstraintSystem build_constraints(const Eigen::MatrixXd& gains, const SystemParams& params);

// Perron-Frobenius feasibility: rho(F) < 1 (minus the numerical margin).
bool is_feasible(const ConstraintSystem& cs);

// Successively removes the D2D column with the largest Euclidean norm
// until the system is feasible.  Ties go to the lowest index.
ConstraintSystem admission_control(const ConstraintSystem& cs);

// As above but also records the spectral radius after every step and the
// removed original indices (front of rho_trace = input system).
struct AdmissionTrace {
    ConstraintSystem cs;
    std::vector<double> rho_trace;
    std::vector<int> removed;
};
AdmissionTrace admission_control_traced(ConstraintSystem cs);

// Maximize the cellular SINR over the constraint polytope via the
// fractional-to-linear transform (single LP).  Returns powers for the
// links in cs.active order.  Throws CapInfeasibleError when the caps cut
// the polytope down to nothing.
Eigen::VectorXd solve_power(const ConstraintSystem& cs);

// Full pipeline: constraints -> admission (including cap-infeasible
// re-entry) -> LP solve, mapped back onto the original link indices.
ControlOutcome centralized_control(const NetworkRealization& real, const SystemParams& params);
ControlOutcome centralized_control(const Eigen::MatrixXd& gains, const SystemParams& params);

// Plain-text dump/load for regression fixtures.
void save_constraints(std::ostream& os, const ConstraintSystem& cs);
ConstraintSystem load_constraints(std::istream& is);

} // namespace d2d
