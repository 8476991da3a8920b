#ifndef GLAUBER_OPERATORS_HPP
#define GLAUBER_OPERATORS_HPP

#include <vector>

#include "glauber/k_transform.hpp"
#include "glauber/potential.hpp"
#include "glauber/quasi.hpp"

namespace glauber {

struct ConditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Result of checking the norm conditions z e^{C c_phi} <= C and
/// z <= min{C e^{-C c_phi}, 2C e^{-2C c_phi}}.
struct ContractionCheck {
    bool cond_small = false;
    bool cond_verysmall = false;
    double margin_small = 0.0;      // C - z e^{C c_phi}
    double margin_verysmall = 0.0;  // min{...} - z
    double c_phi = 0.0;
};

ContractionCheck check_contraction_condition(double z, double C, const PairPotential& phi);

/**
 * Parameters of the discrete-time dynamics: activity z, step delta in
 * (0,1), norm weight C, pair potential and grid.  The norm conditions are
 * evaluated once at construction and recorded.
 */
class DynamicsParams {
public:
    DynamicsParams(double z, double delta, double C, PairPotential phi, GridPtr domain);

    double z() const { return z_; }
    double delta() const { return delta_; }
    double C() const { return C_; }
    const PairPotential& potential() const { return phi_; }
    const GridDomain& domain() const { return *domain_; }
    GridPtr domain_ptr() const { return domain_; }
    bool cond_small() const { return check_.cond_small; }
    bool cond_verysmall() const { return check_.cond_verysmall; }
    const ContractionCheck& condition_check() const { return check_; }

    DynamicsParams with_delta(double delta) const;

    /// Cached e^{-phi(x_i - x_j)} for all site pairs.
    const std::vector<double>& pair_exp() const { return pair_exp_; }
    double pair_exp(std::uint32_t i, std::uint32_t j) const {
        return pair_exp_[static_cast<std::size_t>(i) * domain_->num_sites() + j];
    }

private:
    double z_, delta_, C_;
    PairPotential phi_;
    GridPtr domain_;
    ContractionCheck check_;
    std::vector<double> pair_exp_;
};

/// (L0 G)(eta) = -|eta| G(eta).
QuasiObservable apply_L0(const QuasiObservable& G);

/**
 * One-birth part of the symbol: the space integral discretized as a sum
 * over sites x outside eta, weight h^d:
 *
 *   (L1 G)(eta) = z sum_{xi subset eta} sum_{x not in eta} h^d e^{-E(x,xi)}
 *                 G(xi u x) e_lambda(e^{-phi(x-.)} - 1, eta \ xi)
 */
QuasiObservable apply_L1(const QuasiObservable& G, const DynamicsParams& params);

/// L0 + L1.
QuasiObservable apply_L_hat(const QuasiObservable& G, const DynamicsParams& params);

/**
 * Normalization of the one-step kernel at configuration gamma: the
 * discretized birth integral over simple subsets of the unoccupied sites,
 *
 *   Xi(gamma) = prod_{y not in gamma} (1 + z delta h^d e^{-E(y,gamma)})  >= 1.
 */
double xi_normalization(const SiteConfiguration& gamma, const DynamicsParams& params);

/// Birth series truncated at order n_max, plus a bound on the dropped tail.
struct XiSeries {
    double value = 0.0;
    double tail_bound = 0.0;
};
XiSeries xi_normalization_series(const SiteConfiguration& gamma, const DynamicsParams& params, int n_max);

enum class PDeltaForm {
    /**
     * The normalized transition kernel: deaths are independent removals with
     * probability delta, births an independent cloud on the unoccupied
     * sites weighted (z delta h^d) e^{-E(y,gamma)} and normalized by Xi.
     * Stochastic and positivity preserving; this is the lattice twin of the
     * simulator's one-step kernel.
     */
    Direct,
    /**
     * The factorized resummation through K^-1: births carry weight
     * (z delta h^d) e^{-E(x, gamma \ omega)} and are excluded from the
     * survivor set only.  On the lattice this form is the exact K-conjugate
     * of p_delta_hat_volume; it coincides with Direct in the continuum
     * limit and differs from it at O(z delta h^d) on an atomic grid.
     */
    Resummed,
};

struct PDeltaValue {
    double value = 0.0;
    bool truncated = false;  // F was read above its n_max
};

/// One-step transition operator applied to an observable F at gamma.
PDeltaValue p_delta_observable(const QuasiObservable& F, const SiteConfiguration& gamma,
                               const DynamicsParams& params, PDeltaForm form);

/**
 * K-image of the one-step operator, evaluated at eta with the birth
 * integral restricted to sub_domain:
 *
 *   (P^ G)(eta) = sum_{xi subset eta} (1-delta)^{|xi|}
 *                 sum_{omega subset sub_domain \ eta} (z delta h^d)^{|omega|}
 *                 G(xi u omega) prod_{y in xi} e^{-E(y,omega)}
 *                 prod_{y' in eta\xi} (e^{-E(y',omega)} - 1)
 *
 * Births land on unoccupied sites only (simple configurations).
 */
double p_delta_hat_volume(const QuasiObservable& G, const SiteConfiguration& eta,
                          const DynamicsParams& params, const std::vector<std::uint32_t>& sub_domain);

/// p_delta_hat_volume with sub_domain = the full grid, for every key of
/// order <= G.n_max(); sets the truncation flag when the order cap bound
/// the birth sum.
QuasiObservable p_delta_hat(const QuasiObservable& G, const DynamicsParams& params);

/**
 * C-norm of the stratum the order cap discards in one application: the
 * one-step image evaluated on keys of order n_max+1 .. site count.  Zero
 * when n_max is the site count; quantifies the per-operation truncation
 * error epsilon_trunc.
 */
double p_delta_hat_discarded_norm(const QuasiObservable& G, const DynamicsParams& params, double C);

struct PDeltaSplit {
    QuasiObservable part0;    // (1-delta)^{|eta|} G(eta)
    QuasiObservable part1;    // one-birth stratum
    QuasiObservable part_ge2; // remainder: p_delta_hat - part0 - part1
};
PDeltaSplit p_delta_split(const QuasiObservable& G, const DynamicsParams& params);

/// Discrete generator (P^_delta - 1)/delta.
QuasiObservable l_delta(const QuasiObservable& G, const DynamicsParams& params);

/**
 * (P^_{1/n})^{[n t]} G, the semigroup approximation.  Requires n >= 2 and
 * the norm condition z e^{C c_phi} <= C (refused otherwise: contraction is
 * the only stability guarantee for iteration).
 */
QuasiObservable iterate_semigroup(const QuasiObservable& G, double t, int n, const DynamicsParams& params);

/// Cut-off p_n: zero every key containing a site outside sub_domain.
QuasiObservable cutoff_p_n(const QuasiObservable& G, const std::vector<std::uint32_t>& sub_domain);

/**
 * Dense matrix of a linear operator on the configuration basis
 * enumerate_configurations(domain, n_max); row-major, row = output key.
 * Iteration-heavy paths (semigroup approximation, suites over many G)
 * apply the compiled matrix instead of re-evaluating the per-key formula.
 */
class CompiledOperator {
public:
    CompiledOperator(GridPtr domain, int n_max);

    int n_max() const { return n_max_; }
    const std::vector<SiteConfiguration>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    int rank_of(const SiteConfiguration& eta) const;

    std::vector<double> to_vector(const QuasiObservable& G) const;
    QuasiObservable to_quasi(const std::vector<double>& v, bool truncated) const;

    std::vector<double> apply(const std::vector<double>& v) const;
    void add_entry(std::size_t row, std::size_t col, double w) { mat_[row * dim() + col] += w; }
    double entry(std::size_t row, std::size_t col) const { return mat_[row * dim() + col]; }

    /// ||v||_C in the basis weights.
    double norm_C(const std::vector<double>& v, double C) const;

private:
    GridPtr domain_;
    int n_max_;
    std::vector<SiteConfiguration> basis_;
    std::map<SiteConfiguration, int, ConfigOrder> rank_;
    std::vector<double> mat_;
};

/// Compile P^_delta (full grid) on the order <= n_max basis.
CompiledOperator compile_p_delta_hat(const DynamicsParams& params, int n_max);
/// Compile P^_delta with births restricted to sub_domain.
CompiledOperator compile_p_delta_hat_volume(const DynamicsParams& params, int n_max,
                                            const std::vector<std::uint32_t>& sub_domain);
/// Compile the symbol L0 + L1 on the order <= n_max basis.
CompiledOperator compile_l_hat(const DynamicsParams& params, int n_max);

/// Sites of the domain whose coordinates lie in [lo_k, hi_k) per axis.
std::vector<std::uint32_t> sites_in_box(const GridDomain& domain, const std::vector<double>& lo,
                                        const std::vector<double>& hi);
std::vector<std::uint32_t> all_sites(const GridDomain& domain);

}  // namespace glauber

#endif  // GLAUBER_OPERATORS_HPP
