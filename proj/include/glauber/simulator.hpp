#ifndef GLAUBER_SIMULATOR_HPP
#define GLAUBER_SIMULATOR_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "glauber/potential.hpp"

namespace glauber {

/**
 * Deterministic replica stream specification.  Stream derivation rule:
 * the four words of a xoshiro256++ state are produced by iterating
 * splitmix64 from master_seed + 0x9E3779B97F4A7C15 * (replica_index + 1),
 * so distinct replicas get statistically independent, reproducible streams
 * on every platform (no standard-library distributions are involved).
 */
struct RngSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t replica_index = 0;
};

/// xoshiro256++ with hand-rolled uniform and Poisson sampling.
class Rng {
public:
    explicit Rng(const RngSpec& spec);

    std::uint64_t next_u64();
    /// Uniform on [0,1) with 53 random bits.
    double uniform01();
    double uniform(double lo, double hi);
    /// Poisson by inversion; requires mean < 60 (exceeded only far outside
    /// the desk scale this simulator targets).
    std::uint64_t poisson(double mean);

    std::array<std::uint64_t, 4> state() const { return s_; }
    void restore(const std::array<std::uint64_t, 4>& s) { s_ = s; }

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Parameters of the continuum chain in the box [0,L)^d.
struct SimulatorParams {
    double z = 0.0;        // activity
    double delta = 0.0;    // time step in (0,1)
    int dim = 1;
    double length = 0.0;   // box side L
    PairPotential phi = PairPotential::zero(1);
    bool periodic = false; // hard wall by default

    double box_volume() const;
    void validate() const;

    /// Relative energy of x against gamma under the configured boundary.
    double energy(const double* x, const PointConfiguration& gamma) const;
};

struct ChainState {
    PointConfiguration configuration;
    std::uint64_t step_index = 0;
    Rng rng;

    ChainState(PointConfiguration cfg, Rng r) : configuration(std::move(cfg)), rng(r) {}
};

/// N ~ Poisson(z0 L^d) points placed i.i.d. uniformly in the box.
PointConfiguration sample_poisson_initial(double z0, const SimulatorParams& params, Rng& rng);

/// Independent thinning: every point survives with probability 1 - delta.
PointConfiguration death_step(const PointConfiguration& gamma, double delta, Rng& rng);

/**
 * The newborn set: a Poisson(z delta L^d) cloud of uniform candidates,
 * each accepted independently with probability e^{-E(y, gamma)} where
 * gamma is the full pre-step configuration.
 */
PointConfiguration birth_step(const PointConfiguration& gamma, const SimulatorParams& params, Rng& rng);

/**
 * One step of the multiple birth-and-death chain: survivors of an
 * independent thinning joined with the newborn set, both conditioned on
 * the same pre-step configuration.  A coordinate collision on the union
 * (an event of probability zero) resamples the colliding birth.
 */
ChainState chain_step(const ChainState& state, const SimulatorParams& params);

struct TrajectorySummary {
    std::vector<std::size_t> counts;  // per recorded step, including step 0
    ChainState final_state;
};

using StateRecorder = std::function<void(const ChainState&)>;

/**
 * Apply chain_step m_steps times.  The recorder (optional) receives the
 * initial state and then every thin-th state; fully reproducible from the
 * RngSpec that seeded the initial state's Rng.
 */
TrajectorySummary run_chain(ChainState initial, std::uint64_t m_steps, const SimulatorParams& params,
                            const StateRecorder& recorder = nullptr, std::uint64_t thin = 1);

/// Delimited-text trajectory record: step index, point count, coordinates.
void write_trajectory_header(std::ostream& os, const SimulatorParams& params, const RngSpec& spec);
void write_trajectory_row(std::ostream& os, const ChainState& state);

}  // namespace glauber

#endif  // GLAUBER_SIMULATOR_HPP
