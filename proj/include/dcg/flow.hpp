#pragma once

#include <span>
#include <string>
#include <vector>

#include "dcg/complex.hpp"
#include "dcg/error.hpp"
#include "dcg/metric.hpp"

namespace dcg {

struct FlowState {
    double time = 0.0;
    ConformalFactor u;
    PLMetric metric;
    EdgeWeights weights;
    /// du/dt at this state: boundary data, harmonic extension inside.
    std::vector<double> velocity;
    /// max interior |K|.
    double flatness = 0.0;
    /// max |du/dt| over interior and boundary vertices.
    double interior_speed = 0.0;
    double boundary_speed = 0.0;
};

enum class FlowTermination { Completed, LeftDomain, WeightDegenerate, StepFailure };
const char* to_string(FlowTermination t);

struct FlowTrajectory {
    std::vector<FlowState> states;
    std::vector<double> boundary_velocity;
    FlowTermination termination = FlowTermination::Completed;
    std::string message;
    double step = 0.0;
};

struct FlowOptions {
    /// 0 picks h = t_end / ceil(t_end / 0.01).
    double step = 0.0;
    /// Newton correction after each step pinning interior K to zero.
    bool project = true;
    /// Throw on LeftDomain / WeightDegenerate / StepFailure instead of
    /// returning the partial trajectory.
    bool throw_on_failure = true;
    double delaunay_slack = kDelaunaySlack;
};

/// Conformal flow with u(0) = 0, u' = boundary_velocity on the boundary and
/// u' harmonic for the weights mu(u(t)) inside, integrated by classical RK4.
/// `boundary_velocity` is indexed over all vertices; interior entries are
/// ignored.
FlowTrajectory conformal_flow(const Triangulation& tri, const PLMetric& l, std::span<const double> boundary_velocity,
                              double t_end, double delta, const FlowOptions& opts = {});

struct YamabeResult {
    ConformalFactor u;
    /// max interior |K(u)|.
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> history;
    bool converged = false;
};

class NoConvergenceError : public Error {
public:
    NoConvergenceError(YamabeResult best, const std::string& what)
        : Error(ErrorCode::NoConvergence, what), best_(std::move(best)) {}
    const YamabeResult& best() const noexcept { return best_; }

private:
    YamabeResult best_;
};

struct YamabeOptions {
    double tol = 1e-10;
    int max_iterations = 50;
};

/// Newton iteration for interior K(u) = 0 with u fixed on the boundary.
/// Backtracks until the metric stays valid and the residual decreases.
YamabeResult yamabe_solve(const Triangulation& tri, const PLMetric& l, std::span<const double> boundary_u,
                          const YamabeOptions& opts = {});

enum class BoundaryProfile { Zero, Constant, Dipole };
BoundaryProfile parse_profile(const std::string& name);
const char* to_string(BoundaryProfile p);

struct RigidityRow {
    int radius = 0;
    int vertices = 0;
    double oscillation = 0.0;
    /// max - min over rings <= 1.
    double core_oscillation = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct RigidityReport {
    BoundaryProfile profile = BoundaryProfile::Zero;
    double amplitude = 0.1;
    std::vector<RigidityRow> rows;
    bool strictly_decreasing = true;
};

/// Boundary data on a hex patch: 0, the constant a, or a cos(arg z).
std::vector<double> profile_values(const Mesh& m, BoundaryProfile p, double amplitude);

/// For each radius, solves the Yamabe problem on the hex patch with the given
/// boundary profile and records max - min of u over rings <= R/2.
RigidityReport rigidity_experiment(std::span<const int> radii, BoundaryProfile profile, double amplitude = 0.1);

}  // namespace dcg
