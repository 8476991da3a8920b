#ifndef GLAUBER_EXPERIMENTS_HPP
#define GLAUBER_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "glauber/config.hpp"

namespace glauber {

struct CriterionRow {
    std::string name;
    bool pass = false;
    bool asserted = true;  // informative rows don't gate the exit code
    std::string detail;
};

struct ExperimentReport {
    std::string rows;  // deterministic TSV payload (no timestamps)
    std::vector<CriterionRow> criteria;
    bool all_pass = true;

    void add(CriterionRow row);
};

/// Deterministic sparse random quasi-observable on the (domain, n_max) basis.
QuasiObservable random_sparse_quasi(GridPtr domain, int n_max, int support, Rng& rng);

ExperimentReport contraction_suite(const DynamicsParams& base, const std::vector<double>& deltas,
                                   int num_g, std::uint64_t seed);
ExperimentReport consistency_suite(const DynamicsParams& base, const std::vector<double>& deltas,
                                   int num_g, std::uint64_t seed);
/// Split-bound companion of the contraction suite: ||P^(>=2) G||_C <= delta ||G||_{2C}.
ExperimentReport split_suite(const DynamicsParams& base, const std::vector<double>& deltas,
                             int num_g, std::uint64_t seed);
ExperimentReport semigroup_cauchy(const DynamicsParams& base, double t, const std::vector<int>& n_ladder,
                                  int num_g, std::uint64_t seed);
ExperimentReport finite_volume_ladder(const DynamicsParams& base, double t, int num_g, std::uint64_t seed);
ExperimentReport simulator_stats(const SimulatorParams& sim, double z0, int steps,
                                 const std::vector<std::uint64_t>& checkpoints, std::size_t replicas,
                                 int bins, std::uint64_t seed, int jobs);
ExperimentReport duality_experiment(const DynamicsParams& base, int n_max, double z0, int m,
                                    std::size_t replicas, std::uint64_t seed, int jobs);

/// Standard order <= 2 observable family used by the duality experiment.
std::vector<std::pair<std::string, ObservableFactory>> duality_observables();

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Writes manifest.json (config + version + timestamp), rows.tsv and
/// summary.json under out_dir.  Only the manifest carries a timestamp.
void write_report_bundle(const std::string& out_dir, const ExperimentConfig& cfg,
                         const ExperimentReport& report);

}  // namespace glauber

#endif  // GLAUBER_EXPERIMENTS_HPP
