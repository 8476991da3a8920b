#ifndef GLAUBER_K_TRANSFORM_HPP
#define GLAUBER_K_TRANSFORM_HPP

#include <functional>
#include <utility>

#include "glauber/quasi.hpp"

namespace glauber {

struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * K-transform: (KG)(gamma) = sum over all subsets eta of gamma of G(eta),
 * reading absent keys as 0.  Linear, positivity preserving, invertible.
 * Configurations above 20 sites are rejected (2^|gamma| cost).
 */
double k_apply(const QuasiObservable& G, const SiteConfiguration& gamma);

/// Inverse transform: (K^-1 F)(eta) = sum_{xi subset eta} (-1)^{|eta \ xi|} F(xi).
double k_inverse(const QuasiObservable& F, const SiteConfiguration& eta);

/// k_apply on every configuration of order <= n_max, as a QuasiObservable.
QuasiObservable k_apply_all(const QuasiObservable& G, int n_max);
QuasiObservable k_inverse_all(const QuasiObservable& F, int n_max);

using MinlosFn = std::function<double(const SiteConfiguration&, const SiteConfiguration&, const SiteConfiguration&)>;

/**
 * Both sides of the combinatorial disintegration identity for a
 * three-argument function H, discretized over simple site subsets:
 *
 *   lhs = sum_{|eta| <= n_max} w^{|eta|} sum_{xi subset eta} H(xi, eta\xi, eta)
 *   rhs = sum over disjoint pairs (xi, eta), |xi|+|eta| <= n_max, of
 *         w^{|xi|+|eta|} H(xi, eta, xi u eta)
 *
 * Under this convention the two sides are equal term by term.
 */
std::pair<double, double> minlos_check(const MinlosFn& H, const GridDomain& domain, int n_max);

}  // namespace glauber

#endif  // GLAUBER_K_TRANSFORM_HPP
