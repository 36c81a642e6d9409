#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dcg {

struct CheckRecord {
    std::string suite;
    int instance = 0;
    std::string name;
    bool pass = true;
    /// Measured quantity and the limit it was compared against.
    double value = 0.0;
    double limit = 0.0;
    std::string detail;
    /// Replay file written for failing instances.
    std::string artifact;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int instances = 0;
    std::vector<CheckRecord> checks;
    int failures = 0;
    /// Instances that threw instead of completing their checks.
    int errors = 0;
    double wall_seconds = 0.0;

    bool passed() const { return failures == 0 && errors == 0; }
};

struct SuiteOptions {
    /// 0 uses the suite's default count.
    int instances = 0;
    std::uint64_t seed = 1;
    int jobs = 1;
    /// Empty disables artifact files.
    std::string artifact_dir = "dcg_artifacts";
};

/// Smallest corner angle of the random meshes in the jacobian suite.
extern const double kJacobianMinAngle;

/// jacobian, max-principle, hyperbolic, flow, vel, schwarz.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
int default_instances(const std::string& name);

/// Runs one suite, or every suite for "all". Instances draw independent
/// streams split from `seed` in instance order, so results do not depend on
/// `jobs`.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

/// JSON report; `stable` drops the timing field.
std::string suite_report_json(const SuiteReport& report, bool stable);

}  // namespace dcg
