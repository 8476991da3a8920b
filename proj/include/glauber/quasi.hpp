#ifndef GLAUBER_QUASI_HPP
#define GLAUBER_QUASI_HPP

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "glauber/grid.hpp"

namespace glauber {

/**
 * A real function on site configurations of order <= n_max, stored sparsely
 * (absent key means 0).  Houses quasi-observables G and, through the
 * K-transform, the observables F = KG living on the same truncated space.
 *
 * The truncation flag is sticky: it marks that some operation discarded
 * contributions above n_max, so downstream equalities hold only up to a
 * truncation error.
 */
class QuasiObservable {
public:
    using Map = std::map<SiteConfiguration, double, ConfigOrder>;

    QuasiObservable(GridPtr domain, int n_max);

    const GridDomain& domain() const { return *domain_; }
    GridPtr domain_ptr() const { return domain_; }
    int n_max() const { return n_max_; }
    bool truncation_flag() const { return truncated_; }
    void mark_truncated() { truncated_ = true; }

    /// 0 for absent keys.
    double value(const SiteConfiguration& eta) const;
    void set(const SiteConfiguration& eta, double v);
    void add(const SiteConfiguration& eta, double v);

    std::size_t support_size() const { return values_.size(); }
    const Map& values() const { return values_; }

    /// this + s*other (domains and n_max must match; flag is OR-ed).
    QuasiObservable axpy(double s, const QuasiObservable& other) const;
    QuasiObservable scaled(double s) const;

    static QuasiObservable indicator(GridPtr domain, int n_max, const SiteConfiguration& eta);
    /// G with G(eta) = 1 for every |eta| <= n_max; KG is then 2^{|gamma|}.
    static QuasiObservable filled(GridPtr domain, int n_max, const std::function<double(const SiteConfiguration&)>& f);

private:
    GridPtr domain_;
    int n_max_;
    bool truncated_ = false;
    Map values_;
};

/**
 * Every subset of the domain's sites with order 0..n_max, emitted exactly
 * once in (order, lexicographic) sequence; the first element is the empty
 * configuration.
 */
std::vector<SiteConfiguration> enumerate_configurations(const GridDomain& domain, int n_max);

/// Same enumeration restricted to subsets of the given site pool.
std::vector<SiteConfiguration> enumerate_configurations_in(const std::vector<std::uint32_t>& pool, int n_max);

/**
 * Discretized Lebesgue-Poisson integral: sum over the support of G of
 * G(eta) * kappa^{|eta|} * h^{d |eta|}.  The n-point stratum runs over
 * simple site subsets only (no repeated sites).
 */
double lp_integrate(const QuasiObservable& G, double kappa);

/// Discretized ||G||_C = lp_integrate(|G| C^{|.|}, kappa=1).  C must be > 0.
double norm_C(const QuasiObservable& G, double C);

/// Product e_lambda(f, eta) = prod_{x in eta} f(x); 1 on the empty configuration.
double e_lambda(const std::function<double(std::uint32_t)>& f, const SiteConfiguration& eta);

/**
 * Text-table serialization.  Header records d, L, h, n_max and the
 * truncation flag; one row per key, "i1,i2,...,ik<TAB>value" with an empty
 * index list for the empty configuration.  Values are printed with
 * max_digits10 precision so a round-trip is bit-exact.
 */
void write_quasi(std::ostream& os, const QuasiObservable& G);
QuasiObservable read_quasi(std::istream& is);

std::string to_string(const SiteConfiguration& eta);

}  // namespace glauber

#endif  // GLAUBER_QUASI_HPP
