#ifndef GLAUBER_ESTIMATION_HPP
#define GLAUBER_ESTIMATION_HPP

#include <functional>
#include <iosfwd>
#include <vector>

#include "glauber/operators.hpp"
#include "glauber/simulator.hpp"

namespace glauber {

struct MeanSE {
    double mean = 0.0;
    double se = 0.0;
};

/**
 * Replica average of (KG)(gamma) = sum over finite subconfigurations of
 * gamma (up to G's order cap) with the points interpreted through
 * nearest-grid-cell membership.  Point subsets whose cells collide lie in
 * the diagonal strata the lattice excludes and contribute zero.
 */
MeanSE empirical_pairing(const QuasiObservable& G, const std::vector<PointConfiguration>& samples);

/// Monte Carlo estimate of a correlation function with standard errors.
struct CorrelationEstimate {
    int order = 1;
    std::vector<double> bin_centers;
    std::vector<double> bin_low, bin_high;
    std::vector<double> values;
    std::vector<double> standard_errors;
    std::size_t replica_count = 0;
};

/**
 * Empirical factorial-moment density.  order 1: histogram of positions
 * along axis 0 over [0,L), each bin divided by replicas * bin volume.
 * order 2 (d = 1 only): histogram of ordered distinct pairs' separations,
 * divided by replicas * exact pair-volume element of the bin.
 */
CorrelationEstimate estimate_k(const std::vector<PointConfiguration>& samples, int order, int num_bins,
                               double length);

/// One row per bin: bin-center(s), value, SE, count of contributing replicas.
void write_estimate(std::ostream& os, const CorrelationEstimate& est);

using CorrelationWeights = std::function<double(const SiteConfiguration&)>;

/// Poisson weights k(eta) = z0^{|eta|}.
CorrelationWeights poisson_weights(double z0);

/// Duality pairing <<G, k>> = lp-integral of the pointwise product at kappa = 1.
double pairing(const QuasiObservable& G, const CorrelationWeights& k);

struct RuelleReport {
    bool pass = true;
    double worst_margin = 0.0;  // min over bins of const*C^n + 3 SE - value
    int worst_bin = -1;
};

/// Checks every bin value against const_bound * C^order + 3 SE.
RuelleReport ruelle_check(const CorrelationEstimate& estimate, double C, double const_bound);

/// Exact solution of the free-case one-step mean recursion
/// k_{m+1} = (1-delta) k_m + z delta:  z + (1-delta)^m (k0 - z).
/// Rejects non-zero potentials.
double free_case_k1(double k0_density, const SimulatorParams& params, std::uint64_t m);

struct InitialLaw {
    enum class Kind { Poisson } kind = Kind::Poisson;
    double z0 = 0.0;
};

/// Builds the test observable on an arbitrary grid refinement, so the
/// h-sensitivity of the duality residual can be probed honestly.
using ObservableFactory = std::function<QuasiObservable(GridPtr domain, int n_max)>;

struct DualityResult {
    double empirical = 0.0;
    double empirical_se = 0.0;
    double deterministic = 0.0;
    double residual = 0.0;
    double tolerance = 0.0;   // 3 SE + c_h * h + eps_trunc
    double c_h = 0.0;         // reported h-refinement slope
    double eps_trunc = 0.0;   // reported truncation part
    std::size_t replicas = 0;
};

/**
 * Cross-validation of the two dynamics implementations through the
 * pairing: empirical = replica mean of (KG)(gamma_m) from the continuum
 * chain started from the initial law; deterministic = <<(P^_delta)^m G, k0>>
 * from the operator core.  Supported initial law: Poisson(z0), whose
 * correlation weights are exactly z0^{|eta|}.  Requires the norm condition.
 */
DualityResult duality_residual(const ObservableFactory& make_G, const InitialLaw& law, int m,
                               const DynamicsParams& params, int n_max, std::size_t replicas,
                               const RngSpec& seed, int jobs = 1);

/// SimulatorParams matching the operator-core parameters (hard wall).
SimulatorParams simulator_params_of(const DynamicsParams& params);

/// Run fn(replica) for replica = 0..count-1 across jobs threads; each call
/// writes only replica-indexed state, so results are order-independent.
void parallel_replicas(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace glauber

#endif  // GLAUBER_ESTIMATION_HPP
