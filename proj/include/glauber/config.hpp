#ifndef GLAUBER_CONFIG_HPP
#define GLAUBER_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "glauber/estimation.hpp"

namespace glauber {

enum class ExperimentKind {
    ContractionSuite,
    ConsistencySuite,
    SemigroupCauchy,
    FiniteVolumeLadder,
    SimulatorStats,
    Duality,
};

std::string experiment_name(ExperimentKind k);
std::optional<ExperimentKind> experiment_from_name(const std::string& name);

/**
 * Validated experiment configuration.  Every physical parameter is
 * explicit in the file; there are no defaults for z, delta, C or the
 * potential.  The norm-condition margins are evaluated during validation
 * and embedded here.
 */
struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::ContractionSuite;

    // domain
    int dim = 1;
    double length = 0.0;
    double spacing = 0.0;

    // dynamics
    double z = 0.0;
    double delta = 0.0;
    double C = 0.0;
    int n_max = 0;

    // potential
    PotentialKind potential_kind = PotentialKind::Zero;
    double theta = 0.0;      // truncated-constant strength (may be +inf)
    double range = 0.0;      // truncated-constant range
    double amplitude = 0.0;  // gaussian / exponential amplitude
    double width = 0.0;      // gaussian sigma
    double rate = 0.0;       // exponential decay rate

    // run controls
    std::uint64_t seed = 0;
    std::size_t replicas = 0;
    int jobs = 1;

    // suite controls
    int num_g = 100;                 // random quasi-observables per suite
    std::vector<double> deltas;      // delta ladder for the operator suites
    double t = 0.5;                  // time horizon for semigroup experiments
    std::vector<int> n_ladder;       // refinement ladder for the Cauchy test
    int steps = 0;                   // chain steps (simulator-stats, duality)
    double z0 = 0.0;                 // initial Poisson intensity / density
    std::vector<std::uint64_t> checkpoints;  // mean-count checkpoints
    int bins = 20;                   // estimator bins

    // embedded validation results
    ContractionCheck condition;

    PairPotential make_potential() const;
    GridPtr make_grid_ptr() const;
    DynamicsParams make_dynamics() const;
};

struct ValidationResult {
    std::vector<std::string> errors;  // "field.path: message"
    std::optional<ExperimentConfig> config;
    bool ok() const { return errors.empty(); }
};

/// Parse and validate a JSON config file.
ValidationResult validate_config_file(const std::string& path);
ValidationResult validate_config_text(const std::string& text);

/// Re-serialize the normalized config (with embedded margins) as JSON.
std::string normalized_config_json(const ExperimentConfig& cfg);

}  // namespace glauber

#endif  // GLAUBER_CONFIG_HPP
