#ifndef GLAUBER_POTENTIAL_HPP
#define GLAUBER_POTENTIAL_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "glauber/grid.hpp"

namespace glauber {

struct NotImplementedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToleranceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class PotentialKind { Zero, TruncatedConstant, Gaussian, ExponentialDecay };

std::string kind_name(PotentialKind k);
std::optional<PotentialKind> kind_from_name(const std::string& name);

/// Composite-midpoint quadrature parameters for the integrability constant.
struct CPhiQuadrature {
    double radius = 8.0;      // integrate over [-R, R]^d
    int cells_per_axis = 2000;
    double tail_tol = 1e-9;   // declared tail bound must stay below this
};

struct CPhiResult {
    double value = 0.0;       // box integral of 1 - e^{-phi}
    double tail_bound = 0.0;  // analytic bound on the mass outside the box
};

/**
 * Even nonnegative pair interaction phi with a finite integrability
 * constant c_phi = integral of (1 - e^{-phi}).  +infinity is a first-class
 * value (hard core) with e^{-inf} = 0.  The constant is computed once at
 * construction and cached.
 */
class PairPotential {
public:
    PotentialKind kind() const { return kind_; }
    int dimension() const { return d_; }

    /// phi(u) for a displacement u of length dimension(); may be +infinity.
    double evaluate(const double* u) const;
    double evaluate_r(double r) const;  // all kinds are radial

    /// Cached integrability constant (closed form where available).
    double c_phi() const { return c_phi_; }

    bool is_zero() const { return kind_ == PotentialKind::Zero; }

    double theta() const { return a_; }   // truncated-constant strength / amplitude
    double range() const { return b_; }   // truncated-constant range
    double amplitude() const { return a_; }
    double width() const { return b_; }   // gaussian sigma
    double rate() const { return b_; }    // exponential decay rate

    static PairPotential zero(int dimension);
    static PairPotential truncated_constant(int dimension, double theta, double range);
    static PairPotential gaussian(int dimension, double amplitude, double sigma);
    static PairPotential exponential_decay(int dimension, double amplitude, double rate);

private:
    PairPotential(PotentialKind k, int d, double a, double b);

    PotentialKind kind_;
    int d_;
    double a_;  // theta / amplitude
    double b_;  // range / sigma / rate
    double c_phi_;
};

/**
 * Relative energy E^phi(x, gamma) = sum_{y in gamma} phi(x - y), in
 * [0, +infinity]; any infinite summand makes the result +infinity and the
 * empty configuration gives 0.  x must not be an element of gamma.
 */
double relative_energy(const double* x, const PointConfiguration& gamma, const PairPotential& phi);
double relative_energy(std::uint32_t site, const SiteConfiguration& gamma, const GridDomain& domain,
                       const PairPotential& phi);

/**
 * Composite-midpoint quadrature of the integrability constant over
 * [-R, R]^d plus the kind's declared tail bound.  Throws ToleranceError if
 * the tail bound exceeds quad.tail_tol and NotImplementedError for kinds or
 * dimensions without a tail formula (smooth kinds support d <= 3).
 */
CPhiResult c_phi(const PairPotential& phi, const CPhiQuadrature& quad);

}  // namespace glauber

#endif  // GLAUBER_POTENTIAL_HPP
