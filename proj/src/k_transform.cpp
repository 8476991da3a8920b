#include "glauber/k_transform.hpp"

#include <bit>
#include <cmath>

namespace glauber {

namespace {

void check_size(const SiteConfiguration& gamma) {
    if (gamma.order() > 20)
        throw SizeError("k_transform: configuration order above 20 (2^n cost guardrail)");
}

}  // namespace

double k_apply(const QuasiObservable& G, const SiteConfiguration& gamma) {
    check_size(gamma);
    double total = 0.0;
    for_each_subset(gamma, [&](const SiteConfiguration& eta) {
        if (eta.order() <= static_cast<std::size_t>(G.n_max())) total += G.value(eta);
    });
    return total;
}

double k_inverse(const QuasiObservable& F, const SiteConfiguration& eta) {
    check_size(eta);
    double total = 0.0;
    const std::size_t n = eta.order();
    for_each_subset(eta, [&](const SiteConfiguration& xi) {
        const double sign = ((n - xi.order()) % 2 == 0) ? 1.0 : -1.0;
        total += sign * F.value(xi);
    });
    return total;
}

namespace {

// Whole-space transforms run as standard subset (zeta / Moebius) transforms
// over bitmasks, O(n 2^n); the per-configuration definitional sums above
// stay as the independent oracle.
constexpr std::uint32_t kMaxTransformSites = 22;

std::vector<double> to_mask_array(const QuasiObservable& G) {
    const std::uint32_t m = G.domain().num_sites();
    std::vector<double> f(std::size_t{1} << m, 0.0);
    for (const auto& [eta, v] : G.values()) {
        std::uint32_t mask = 0;
        for (std::uint32_t s : eta.indices) mask |= 1u << s;
        f[mask] = v;
    }
    return f;
}

QuasiObservable from_mask_array(const std::vector<double>& f, const QuasiObservable& like, int n_max) {
    QuasiObservable out(like.domain_ptr(), n_max);
    const std::uint32_t m = like.domain().num_sites();
    for (std::uint32_t mask = 0; mask < f.size(); ++mask) {
        if (f[mask] == 0.0) continue;
        if (static_cast<int>(std::popcount(mask)) > n_max) continue;
        SiteConfiguration eta;
        for (std::uint32_t s = 0; s < m; ++s)
            if (mask & (1u << s)) eta.indices.push_back(s);
        out.set(eta, f[mask]);
    }
    if (like.truncation_flag()) out.mark_truncated();
    return out;
}

}  // namespace

QuasiObservable k_apply_all(const QuasiObservable& G, int n_max) {
    const std::uint32_t m = G.domain().num_sites();
    if (m > kMaxTransformSites) {
        QuasiObservable out(G.domain_ptr(), n_max);
        for (const auto& gamma : enumerate_configurations(G.domain(), n_max))
            out.set(gamma, k_apply(G, gamma));
        if (G.truncation_flag()) out.mark_truncated();
        return out;
    }
    std::vector<double> f = to_mask_array(G);
    for (std::uint32_t b = 0; b < m; ++b)
        for (std::uint32_t mask = 0; mask < f.size(); ++mask)
            if (mask & (1u << b)) f[mask] += f[mask ^ (1u << b)];
    return from_mask_array(f, G, n_max);
}

QuasiObservable k_inverse_all(const QuasiObservable& F, int n_max) {
    const std::uint32_t m = F.domain().num_sites();
    if (m > kMaxTransformSites) {
        QuasiObservable out(F.domain_ptr(), n_max);
        for (const auto& eta : enumerate_configurations(F.domain(), n_max))
            out.set(eta, k_inverse(F, eta));
        if (F.truncation_flag()) out.mark_truncated();
        return out;
    }
    std::vector<double> f = to_mask_array(F);
    for (std::uint32_t b = 0; b < m; ++b)
        for (std::uint32_t mask = 0; mask < f.size(); ++mask)
            if (mask & (1u << b)) f[mask] -= f[mask ^ (1u << b)];
    return from_mask_array(f, F, n_max);
}

std::pair<double, double> minlos_check(const MinlosFn& H, const GridDomain& domain, int n_max) {
    const double w = domain.cell_volume();

    double lhs = 0.0;
    for (const auto& eta : enumerate_configurations(domain, n_max)) {
        const double weight = std::pow(w, static_cast<double>(eta.order()));
        for_each_subset(eta, [&](const SiteConfiguration& xi) {
            lhs += weight * H(xi, eta.difference(xi), eta);
        });
    }

    double rhs = 0.0;
    std::vector<std::uint32_t> all(domain.num_sites());
    for (std::uint32_t i = 0; i < domain.num_sites(); ++i) all[i] = i;
    for (const auto& xi : enumerate_configurations(domain, n_max)) {
        std::vector<std::uint32_t> rest;
        for (std::uint32_t s : all)
            if (!xi.contains(s)) rest.push_back(s);
        const int room = n_max - static_cast<int>(xi.order());
        for (const auto& eta : enumerate_configurations_in(rest, room)) {
            const double weight = std::pow(w, static_cast<double>(xi.order() + eta.order()));
            rhs += weight * H(xi, eta, xi.disjoint_union(eta));
        }
    }
    return {lhs, rhs};
}

}  // namespace glauber
