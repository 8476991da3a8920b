#include "glauber/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace glauber {

ContractionCheck check_contraction_condition(double z, double C, const PairPotential& phi) {
    if (z <= 0 || C <= 0) throw std::invalid_argument("check_contraction_condition: z and C must be positive");
    ContractionCheck out;
    out.c_phi = phi.c_phi();
    const double lhs = z * std::exp(C * out.c_phi);
    out.cond_small = lhs <= C;
    out.margin_small = C - lhs;
    const double cap = std::min(C * std::exp(-C * out.c_phi), 2.0 * C * std::exp(-2.0 * C * out.c_phi));
    out.cond_verysmall = z <= cap;
    out.margin_verysmall = cap - z;
    return out;
}

DynamicsParams::DynamicsParams(double z, double delta, double C, PairPotential phi, GridPtr domain)
    : z_(z), delta_(delta), C_(C), phi_(std::move(phi)), domain_(std::move(domain)) {
    if (!domain_) throw std::invalid_argument("DynamicsParams: null domain");
    if (!(delta_ > 0.0 && delta_ < 1.0)) throw std::invalid_argument("DynamicsParams: delta must lie in (0,1)");
    if (z_ <= 0) throw std::invalid_argument("DynamicsParams: z must be positive");
    if (C_ <= 0) throw std::invalid_argument("DynamicsParams: C must be positive");
    if (phi_.dimension() != domain_->dimension())
        throw std::invalid_argument("DynamicsParams: potential dimension mismatch");
    check_ = check_contraction_condition(z_, C_, phi_);

    const std::uint32_t m = domain_->num_sites();
    if (m > 4096) throw std::invalid_argument("DynamicsParams: grid too large for the operator core");
    pair_exp_.resize(static_cast<std::size_t>(m) * m);
    for (std::uint32_t i = 0; i < m; ++i) {
        for (std::uint32_t j = 0; j <= i; ++j) {
            const std::vector<double> u = domain_->displacement(i, j);
            const double v = phi_.evaluate(u.data());
            const double e = std::isinf(v) ? 0.0 : std::exp(-v);
            pair_exp_[static_cast<std::size_t>(i) * m + j] = e;
            pair_exp_[static_cast<std::size_t>(j) * m + i] = e;
        }
    }
}

DynamicsParams DynamicsParams::with_delta(double delta) const {
    return DynamicsParams(z_, delta, C_, phi_, domain_);
}

QuasiObservable apply_L0(const QuasiObservable& G) {
    QuasiObservable out(G.domain_ptr(), G.n_max());
    for (const auto& [eta, v] : G.values())
        out.set(eta, -static_cast<double>(eta.order()) * v);
    if (G.truncation_flag()) out.mark_truncated();
    return out;
}

namespace {

std::vector<std::uint32_t> complement_of(const SiteConfiguration& eta, const std::vector<std::uint32_t>& pool) {
    std::vector<std::uint32_t> out;
    out.reserve(pool.size());
    for (std::uint32_t s : pool)
        if (!eta.contains(s)) out.push_back(s);
    return out;
}

// Shared enumeration core of the K-image operator: at a fixed output key
// eta, visit every (xi subset eta, omega subset avail, |xi|+|omega| <= cap)
// with the weight
//   (1-delta)^{|xi|} (z delta h^d)^{|omega|}
//   prod_{y in xi} e^{-E(y,omega)} prod_{y' in eta\xi} (e^{-E(y',omega)} - 1).
// Returns true if the order cap stopped an extendable birth set.
template <typename Emit>
bool visit_hat_terms(const SiteConfiguration& eta, const DynamicsParams& params,
                     const std::vector<std::uint32_t>& avail, int cap, Emit&& emit) {
    const double one_minus_delta = 1.0 - params.delta();
    const double zdw = params.z() * params.delta() * params.domain().cell_volume();
    const std::size_t n = eta.order();
    bool cap_hit = false;

    SiteConfiguration xi, rest, omega;
    std::vector<double> f;  // f[j] = e^{-E(rest[j], omega)}
    const std::uint32_t masks = 1u << n;
    for (std::uint32_t mask = 0; mask < masks; ++mask) {
        xi.indices.clear();
        rest.indices.clear();
        for (std::size_t b = 0; b < n; ++b)
            ((mask >> b) & 1u ? xi : rest).indices.push_back(eta.indices[b]);
        const int max_birth = cap - static_cast<int>(xi.order());
        if (max_birth < 0) continue;
        const double base = std::pow(one_minus_delta, static_cast<double>(xi.order()));

        f.assign(rest.order(), 1.0);
        omega.indices.clear();

        // Depth-first over birth sets; products are carried incrementally.
        auto rec = [&](auto&& self, std::size_t pos, double wpow, double prod_xi) -> void {
            double prod_diff = 1.0;
            for (double fv : f) prod_diff *= (fv - 1.0);
            emit(xi, omega, base * wpow * prod_xi * prod_diff);
            if (static_cast<int>(omega.order()) == max_birth) {
                if (pos < avail.size()) cap_hit = true;
                return;
            }
            for (std::size_t i = pos; i < avail.size(); ++i) {
                const std::uint32_t x = avail[i];
                double np = prod_xi;
                for (std::uint32_t y : xi.indices) np *= params.pair_exp(y, x);
                if (np == 0.0) continue;  // hard core: every extension stays zero
                std::vector<double> saved = f;
                for (std::size_t j = 0; j < rest.order(); ++j) f[j] *= params.pair_exp(rest.indices[j], x);
                omega.indices.push_back(x);
                self(self, i + 1, wpow * zdw, np);
                omega.indices.pop_back();
                f = std::move(saved);
            }
        };
        rec(rec, 0, 1.0, 1.0);
    }
    return cap_hit;
}

SiteConfiguration merge_disjoint(const SiteConfiguration& a, const SiteConfiguration& b) {
    SiteConfiguration out;
    out.indices.resize(a.indices.size() + b.indices.size());
    std::merge(a.indices.begin(), a.indices.end(), b.indices.begin(), b.indices.end(), out.indices.begin());
    return out;
}

}  // namespace

QuasiObservable apply_L1(const QuasiObservable& G, const DynamicsParams& params) {
    if (G.domain_ptr().get() != &params.domain())
        throw std::invalid_argument("apply_L1: G and params use different domains");
    const GridDomain& dom = params.domain();
    const double w = dom.cell_volume();
    const std::vector<std::uint32_t> pool = all_sites(dom);

    QuasiObservable out(G.domain_ptr(), G.n_max());
    bool truncated = G.truncation_flag();
    for (const auto& eta : enumerate_configurations(dom, G.n_max())) {
        const std::vector<std::uint32_t> avail = complement_of(eta, pool);
        const std::size_t n = eta.order();
        double total = 0.0;
        SiteConfiguration xi, rest;
        const std::uint32_t masks = 1u << n;
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            xi.indices.clear();
            rest.indices.clear();
            for (std::size_t b = 0; b < n; ++b)
                ((mask >> b) & 1u ? xi : rest).indices.push_back(eta.indices[b]);
            if (static_cast<int>(xi.order()) + 1 > G.n_max()) {
                if (!avail.empty()) truncated = true;  // reads above the truncated space
                continue;
            }
            for (std::uint32_t x : avail) {
                double e_xi = 1.0;
                for (std::uint32_t y : xi.indices) e_xi *= params.pair_exp(y, x);
                if (e_xi == 0.0) continue;
                double prod_diff = 1.0;
                for (std::uint32_t y : rest.indices) prod_diff *= (params.pair_exp(y, x) - 1.0);
                if (prod_diff == 0.0) continue;
                total += e_xi * prod_diff * G.value(xi.with_site(x));
            }
        }
        const double v = params.z() * w * total;
        if (v != 0.0) out.set(eta, v);
    }
    if (truncated) out.mark_truncated();
    return out;
}

QuasiObservable apply_L_hat(const QuasiObservable& G, const DynamicsParams& params) {
    return apply_L0(G).axpy(1.0, apply_L1(G, params));
}

double xi_normalization(const SiteConfiguration& gamma, const DynamicsParams& params) {
    const GridDomain& dom = params.domain();
    const double u0 = params.z() * params.delta() * dom.cell_volume();
    double prod = 1.0;
    for (std::uint32_t y = 0; y < dom.num_sites(); ++y) {
        if (gamma.contains(y)) continue;
        double ee = 1.0;
        for (std::uint32_t s : gamma.indices) ee *= params.pair_exp(y, s);
        prod *= 1.0 + u0 * ee;
    }
    return prod;
}

XiSeries xi_normalization_series(const SiteConfiguration& gamma, const DynamicsParams& params, int n_max) {
    const GridDomain& dom = params.domain();
    const double u0 = params.z() * params.delta() * dom.cell_volume();
    std::vector<double> u;
    for (std::uint32_t y = 0; y < dom.num_sites(); ++y) {
        if (gamma.contains(y)) continue;
        double ee = 1.0;
        for (std::uint32_t s : gamma.indices) ee *= params.pair_exp(y, s);
        u.push_back(u0 * ee);
    }
    // elementary symmetric sums e_0..e_{n_max}
    std::vector<double> e(static_cast<std::size_t>(n_max) + 1, 0.0);
    e[0] = 1.0;
    for (double uy : u)
        for (int k = n_max; k >= 1; --k)
            e[static_cast<std::size_t>(k)] += uy * e[static_cast<std::size_t>(k - 1)];
    XiSeries out;
    for (double ek : e) out.value += ek;
    // e_k <= U^k / k!, so the dropped tail is below the exponential remainder.
    const double U = std::accumulate(u.begin(), u.end(), 0.0);
    double term = 1.0;
    for (int k = 1; k <= n_max + 1; ++k) term *= U / k;
    out.tail_bound = term * std::exp(U);
    return out;
}

PDeltaValue p_delta_observable(const QuasiObservable& F, const SiteConfiguration& gamma,
                               const DynamicsParams& params, PDeltaForm form) {
    if (F.domain_ptr().get() != &params.domain())
        throw std::invalid_argument("p_delta_observable: F and params use different domains");
    if (gamma.order() > 20) throw SizeError("p_delta_observable: |gamma| above 20");
    const GridDomain& dom = params.domain();
    const double delta = params.delta();
    const double zdw = params.z() * delta * dom.cell_volume();
    const std::vector<std::uint32_t> pool = all_sites(dom);

    PDeltaValue out;
    if (form == PDeltaForm::Direct) {
        const std::vector<std::uint32_t> vacant = complement_of(gamma, pool);
        std::vector<double> ee(vacant.size());
        for (std::size_t i = 0; i < vacant.size(); ++i) {
            double e = 1.0;
            for (std::uint32_t s : gamma.indices) e *= params.pair_exp(vacant[i], s);
            ee[i] = e;
        }
        double xi_norm = 1.0;
        for (double e : ee) xi_norm *= 1.0 + zdw * e;

        double total = 0.0;
        for_each_subset(gamma, [&](const SiteConfiguration& removed) {
            const SiteConfiguration survivors = gamma.difference(removed);
            const double death_w = std::pow(delta, static_cast<double>(removed.order())) *
                                   std::pow(1.0 - delta, static_cast<double>(survivors.order()));
            const int max_birth = F.n_max() - static_cast<int>(survivors.order());
            if (max_birth < 0) { out.truncated = true; return; }
            SiteConfiguration omega;
            auto rec = [&](auto&& self, std::size_t pos, double wpow) -> void {
                total += death_w * wpow * F.value(merge_disjoint(survivors, omega));
                if (static_cast<int>(omega.order()) == max_birth) {
                    if (pos < vacant.size()) out.truncated = true;
                    return;
                }
                for (std::size_t i = pos; i < vacant.size(); ++i) {
                    if (ee[i] == 0.0) continue;
                    omega.indices.push_back(vacant[i]);
                    self(self, i + 1, wpow * zdw * ee[i]);
                    omega.indices.pop_back();
                }
            };
            rec(rec, 0, 1.0);
        });
        out.value = total / xi_norm;
        return out;
    }

    // Resummed: births are excluded from the survivor set only and carry the
    // post-birth environment gamma \ omega; exact K-conjugate of the hat form.
    const QuasiObservable Ginv = k_inverse_all(F, F.n_max());
    double total = 0.0;
    for_each_subset(gamma, [&](const SiteConfiguration& xi) {
        const double base = std::pow(1.0 - delta, static_cast<double>(xi.order()));
        const int max_birth = F.n_max() - static_cast<int>(xi.order());
        if (max_birth < 0) { out.truncated = true; return; }
        const std::vector<std::uint32_t> avail = complement_of(xi, pool);
        SiteConfiguration omega;
        auto rec = [&](auto&& self, std::size_t pos, double wpow) -> void {
            double env = 1.0;
            for (std::uint32_t x : omega.indices)
                for (std::uint32_t uu : gamma.indices)
                    if (!omega.contains(uu)) env *= params.pair_exp(x, uu);
            total += base * wpow * env * Ginv.value(merge_disjoint(xi, omega));
            if (static_cast<int>(omega.order()) == max_birth) {
                if (pos < avail.size()) out.truncated = true;
                return;
            }
            for (std::size_t i = pos; i < avail.size(); ++i) {
                omega.indices.push_back(avail[i]);
                self(self, i + 1, wpow * zdw);
                omega.indices.pop_back();
            }
        };
        rec(rec, 0, 1.0);
    });
    out.value = total;
    if (F.truncation_flag()) out.truncated = true;
    return out;
}

double p_delta_hat_volume(const QuasiObservable& G, const SiteConfiguration& eta,
                          const DynamicsParams& params, const std::vector<std::uint32_t>& sub_domain) {
    if (G.domain_ptr().get() != &params.domain())
        throw std::invalid_argument("p_delta_hat_volume: G and params use different domains");
    const std::vector<std::uint32_t> avail = complement_of(eta, sub_domain);
    double total = 0.0;
    visit_hat_terms(eta, params, avail, G.n_max(),
                    [&](const SiteConfiguration& xi, const SiteConfiguration& omega, double weight) {
                        if (weight != 0.0) total += weight * G.value(merge_disjoint(xi, omega));
                    });
    return total;
}

QuasiObservable p_delta_hat(const QuasiObservable& G, const DynamicsParams& params) {
    const GridDomain& dom = params.domain();
    const std::vector<std::uint32_t> pool = all_sites(dom);
    QuasiObservable out(G.domain_ptr(), G.n_max());
    bool truncated = G.truncation_flag();
    for (const auto& eta : enumerate_configurations(dom, G.n_max())) {
        const std::vector<std::uint32_t> avail = complement_of(eta, pool);
        double total = 0.0;
        const bool hit = visit_hat_terms(eta, params, avail, G.n_max(),
                                         [&](const SiteConfiguration& xi, const SiteConfiguration& omega, double weight) {
                                             if (weight != 0.0) total += weight * G.value(merge_disjoint(xi, omega));
                                         });
        truncated = truncated || hit;
        if (total != 0.0) out.set(eta, total);
    }
    if (truncated) out.mark_truncated();
    return out;
}

double p_delta_hat_discarded_norm(const QuasiObservable& G, const DynamicsParams& params, double C) {
    const GridDomain& dom = params.domain();
    const double w = dom.cell_volume();
    const std::vector<std::uint32_t> pool = all_sites(dom);
    const int sites = static_cast<int>(dom.num_sites());
    if (sites > 12)
        throw std::invalid_argument("p_delta_hat_discarded_norm: exhaustive stratum report needs <= 12 sites");
    double total = 0.0;
    for (const auto& eta : enumerate_configurations(dom, sites)) {
        if (static_cast<int>(eta.order()) <= G.n_max()) continue;
        const std::vector<std::uint32_t> avail = complement_of(eta, pool);
        double value = 0.0;
        visit_hat_terms(eta, params, avail, G.n_max(),
                        [&](const SiteConfiguration& xi, const SiteConfiguration& omega, double weight) {
                            if (weight != 0.0) value += weight * G.value(merge_disjoint(xi, omega));
                        });
        total += std::abs(value) * std::pow(C * w, static_cast<double>(eta.order()));
    }
    return total;
}

PDeltaSplit p_delta_split(const QuasiObservable& G, const DynamicsParams& params) {
    const GridDomain& dom = params.domain();
    const double delta = params.delta();
    const double w = dom.cell_volume();
    const std::vector<std::uint32_t> pool = all_sites(dom);

    QuasiObservable part0(G.domain_ptr(), G.n_max());
    for (const auto& [eta, v] : G.values())
        part0.set(eta, std::pow(1.0 - delta, static_cast<double>(eta.order())) * v);

    QuasiObservable part1(G.domain_ptr(), G.n_max());
    for (const auto& eta : enumerate_configurations(dom, G.n_max())) {
        const std::vector<std::uint32_t> avail = complement_of(eta, pool);
        const std::size_t n = eta.order();
        double total = 0.0;
        SiteConfiguration xi, rest;
        const std::uint32_t masks = 1u << n;
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            xi.indices.clear();
            rest.indices.clear();
            for (std::size_t b = 0; b < n; ++b)
                ((mask >> b) & 1u ? xi : rest).indices.push_back(eta.indices[b]);
            if (static_cast<int>(xi.order()) + 1 > G.n_max()) continue;
            const double base = std::pow(1.0 - delta, static_cast<double>(xi.order()));
            for (std::uint32_t x : avail) {
                double e_xi = 1.0;
                for (std::uint32_t y : xi.indices) e_xi *= params.pair_exp(y, x);
                if (e_xi == 0.0) continue;
                double prod_diff = 1.0;
                for (std::uint32_t y : rest.indices) prod_diff *= (params.pair_exp(y, x) - 1.0);
                if (prod_diff == 0.0) continue;
                total += base * e_xi * prod_diff * G.value(xi.with_site(x));
            }
        }
        const double v = params.z() * delta * w * total;
        if (v != 0.0) part1.set(eta, v);
    }

    QuasiObservable hat = p_delta_hat(G, params);
    QuasiObservable ge2 = hat.axpy(-1.0, part0).axpy(-1.0, part1);
    return {std::move(part0), std::move(part1), std::move(ge2)};
}

QuasiObservable l_delta(const QuasiObservable& G, const DynamicsParams& params) {
    if (params.delta() == 0.0) throw std::invalid_argument("l_delta: delta must be nonzero");
    return p_delta_hat(G, params).axpy(-1.0, G).scaled(1.0 / params.delta());
}

QuasiObservable iterate_semigroup(const QuasiObservable& G, double t, int n, const DynamicsParams& params) {
    if (n < 2) throw std::invalid_argument("iterate_semigroup: n must be >= 2");
    if (t < 0) throw std::invalid_argument("iterate_semigroup: t must be >= 0");
    if (!params.cond_small())
        throw ConditionViolation("iterate_semigroup: norm condition z e^{C c_phi} <= C fails");
    const DynamicsParams step = params.with_delta(1.0 / n);
    const long steps = static_cast<long>(std::floor(n * t + 1e-9));
    CompiledOperator op = compile_p_delta_hat(step, G.n_max());
    std::vector<double> v = op.to_vector(G);
    for (long k = 0; k < steps; ++k) v = op.apply(v);
    const bool truncated = G.truncation_flag() ||
                           (steps > 0 && G.n_max() < static_cast<int>(params.domain().num_sites()));
    return op.to_quasi(v, truncated);
}

QuasiObservable cutoff_p_n(const QuasiObservable& G, const std::vector<std::uint32_t>& sub_domain) {
    std::vector<std::uint32_t> sorted = sub_domain;
    std::sort(sorted.begin(), sorted.end());
    QuasiObservable out(G.domain_ptr(), G.n_max());
    for (const auto& [eta, v] : G.values()) {
        bool inside = true;
        for (std::uint32_t s : eta.indices)
            if (!std::binary_search(sorted.begin(), sorted.end(), s)) { inside = false; break; }
        if (inside) out.set(eta, v);
    }
    if (G.truncation_flag()) out.mark_truncated();
    return out;
}

CompiledOperator::CompiledOperator(GridPtr domain, int n_max)
    : domain_(std::move(domain)), n_max_(n_max) {
    basis_ = enumerate_configurations(*domain_, n_max_);
    if (basis_.size() > 6000)
        throw std::invalid_argument(
            "CompiledOperator: dense basis of " + std::to_string(basis_.size()) +
            " configurations is beyond the desk scale; reduce n_max or the site count");
    for (std::size_t r = 0; r < basis_.size(); ++r) rank_[basis_[r]] = static_cast<int>(r);
    mat_.assign(basis_.size() * basis_.size(), 0.0);
}

int CompiledOperator::rank_of(const SiteConfiguration& eta) const {
    auto it = rank_.find(eta);
    return it == rank_.end() ? -1 : it->second;
}

std::vector<double> CompiledOperator::to_vector(const QuasiObservable& G) const {
    if (G.n_max() != n_max_) throw std::invalid_argument("CompiledOperator: n_max mismatch");
    std::vector<double> v(dim(), 0.0);
    for (const auto& [eta, val] : G.values()) {
        const int r = rank_of(eta);
        if (r < 0) throw std::invalid_argument("CompiledOperator: key outside basis");
        v[static_cast<std::size_t>(r)] = val;
    }
    return v;
}

QuasiObservable CompiledOperator::to_quasi(const std::vector<double>& v, bool truncated) const {
    QuasiObservable out(domain_, n_max_);
    for (std::size_t r = 0; r < dim(); ++r)
        if (v[r] != 0.0) out.set(basis_[r], v[r]);
    if (truncated) out.mark_truncated();
    return out;
}

std::vector<double> CompiledOperator::apply(const std::vector<double>& v) const {
    const std::size_t n = dim();
    std::vector<double> out(n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        const double* row = mat_.data() + r * n;
        double acc = 0.0;
        for (std::size_t c = 0; c < n; ++c) acc += row[c] * v[c];
        out[r] = acc;
    }
    return out;
}

double CompiledOperator::norm_C(const std::vector<double>& v, double C) const {
    const double w = domain_->cell_volume();
    double total = 0.0;
    for (std::size_t r = 0; r < dim(); ++r)
        total += std::abs(v[r]) * std::pow(C * w, static_cast<double>(basis_[r].order()));
    return total;
}

CompiledOperator compile_p_delta_hat_volume(const DynamicsParams& params, int n_max,
                                            const std::vector<std::uint32_t>& sub_domain) {
    CompiledOperator op(params.domain_ptr(), n_max);
    for (std::size_t r = 0; r < op.dim(); ++r) {
        const SiteConfiguration& eta = op.basis()[r];
        const std::vector<std::uint32_t> avail = complement_of(eta, sub_domain);
        visit_hat_terms(eta, params, avail, n_max,
                        [&](const SiteConfiguration& xi, const SiteConfiguration& omega, double weight) {
                            if (weight == 0.0) return;
                            const int c = op.rank_of(merge_disjoint(xi, omega));
                            if (c >= 0) op.add_entry(r, static_cast<std::size_t>(c), weight);
                        });
    }
    return op;
}

CompiledOperator compile_p_delta_hat(const DynamicsParams& params, int n_max) {
    return compile_p_delta_hat_volume(params, n_max, all_sites(params.domain()));
}

CompiledOperator compile_l_hat(const DynamicsParams& params, int n_max) {
    const GridDomain& dom = params.domain();
    const double w = dom.cell_volume();
    const std::vector<std::uint32_t> pool = all_sites(dom);
    CompiledOperator op(params.domain_ptr(), n_max);
    for (std::size_t r = 0; r < op.dim(); ++r) {
        const SiteConfiguration& eta = op.basis()[r];
        op.add_entry(r, r, -static_cast<double>(eta.order()));
        const std::vector<std::uint32_t> avail = complement_of(eta, pool);
        const std::size_t n = eta.order();
        SiteConfiguration xi, rest;
        const std::uint32_t masks = 1u << n;
        for (std::uint32_t mask = 0; mask < masks; ++mask) {
            xi.indices.clear();
            rest.indices.clear();
            for (std::size_t b = 0; b < n; ++b)
                ((mask >> b) & 1u ? xi : rest).indices.push_back(eta.indices[b]);
            if (static_cast<int>(xi.order()) + 1 > n_max) continue;
            for (std::uint32_t x : avail) {
                double e_xi = 1.0;
                for (std::uint32_t y : xi.indices) e_xi *= params.pair_exp(y, x);
                if (e_xi == 0.0) continue;
                double prod_diff = 1.0;
                for (std::uint32_t y : rest.indices) prod_diff *= (params.pair_exp(y, x) - 1.0);
                if (prod_diff == 0.0) continue;
                const int c = op.rank_of(xi.with_site(x));
                if (c >= 0) op.add_entry(r, static_cast<std::size_t>(c), params.z() * w * e_xi * prod_diff);
            }
        }
    }
    return op;
}

std::vector<std::uint32_t> all_sites(const GridDomain& domain) {
    std::vector<std::uint32_t> out(domain.num_sites());
    for (std::uint32_t i = 0; i < domain.num_sites(); ++i) out[i] = i;
    return out;
}

std::vector<std::uint32_t> sites_in_box(const GridDomain& domain, const std::vector<double>& lo,
                                        const std::vector<double>& hi) {
    if (lo.size() != static_cast<std::size_t>(domain.dimension()) || hi.size() != lo.size())
        throw std::invalid_argument("sites_in_box: bound dimension mismatch");
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < domain.num_sites(); ++i) {
        const std::vector<double> x = domain.site_coords(i);
        bool inside = true;
        for (int k = 0; k < domain.dimension(); ++k)
            if (x[static_cast<std::size_t>(k)] < lo[static_cast<std::size_t>(k)] ||
                x[static_cast<std::size_t>(k)] >= hi[static_cast<std::size_t>(k)]) {
                inside = false;
                break;
            }
        if (inside) out.push_back(i);
    }
    return out;
}

}  // namespace glauber
