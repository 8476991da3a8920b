#include "glauber/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace glauber {

namespace {

MeanSE mean_se_of(const std::vector<double>& xs) {
    MeanSE out;
    const std::size_t n = xs.size();
    if (n == 0) return out;
    double sum = 0.0;
    for (double x : xs) sum += x;
    out.mean = sum / static_cast<double>(n);
    if (n > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(ss / (static_cast<double>(n) * static_cast<double>(n - 1)));
    }
    return out;
}

// (KG)(gamma) with points mapped to their grid cells; subsets that collide
// in a cell sit in the excluded diagonal strata and read as zero.
double k_apply_points(const QuasiObservable& G, const PointConfiguration& gamma) {
    const GridDomain& dom = G.domain();
    const std::size_t n = gamma.size();
    std::vector<std::uint32_t> cells(n);
    for (std::size_t p = 0; p < n; ++p) cells[p] = dom.cell_of(gamma.point(p));

    const int cap = std::min<int>(G.n_max(), static_cast<int>(n));
    double total = 0.0;
    std::vector<int> pick;
    std::vector<std::uint32_t> key;
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        key.assign(pick.size(), 0);
        for (std::size_t i = 0; i < pick.size(); ++i) key[i] = cells[static_cast<std::size_t>(pick[i])];
        std::sort(key.begin(), key.end());
        bool distinct = true;
        for (std::size_t i = 1; i < key.size(); ++i)
            if (key[i - 1] == key[i]) { distinct = false; break; }
        if (distinct) {
            SiteConfiguration eta;
            eta.indices = key;
            total += G.value(eta);
        }
        if (static_cast<int>(pick.size()) == cap) return;
        for (std::size_t i = pos; i < n; ++i) {
            pick.push_back(static_cast<int>(i));
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return total;
}

}  // namespace

MeanSE empirical_pairing(const QuasiObservable& G, const std::vector<PointConfiguration>& samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_pairing: samples must be nonempty");
    std::vector<double> vals(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) vals[i] = k_apply_points(G, samples[i]);
    return mean_se_of(vals);
}

CorrelationEstimate estimate_k(const std::vector<PointConfiguration>& samples, int order, int num_bins,
                               double length) {
    if (order != 1 && order != 2)
        throw NotImplementedError("estimate_k: only orders 1 and 2 are supported");
    if (samples.empty()) throw std::invalid_argument("estimate_k: samples must be nonempty");
    if (num_bins < 1) throw std::invalid_argument("estimate_k: need at least one bin");
    const int dim = samples.front().dim;
    if (order == 2 && dim != 1)
        throw NotImplementedError("estimate_k: order 2 is implemented for d = 1");

    const std::size_t R = samples.size();
    const double bw = length / num_bins;

    CorrelationEstimate est;
    est.order = order;
    est.replica_count = R;
    est.bin_centers.resize(static_cast<std::size_t>(num_bins));
    est.bin_low.resize(static_cast<std::size_t>(num_bins));
    est.bin_high.resize(static_cast<std::size_t>(num_bins));
    for (int b = 0; b < num_bins; ++b) {
        est.bin_low[static_cast<std::size_t>(b)] = b * bw;
        est.bin_high[static_cast<std::size_t>(b)] = (b + 1) * bw;
        est.bin_centers[static_cast<std::size_t>(b)] = (b + 0.5) * bw;
    }

    // normalizing volume per bin
    std::vector<double> vol(static_cast<std::size_t>(num_bins));
    for (int b = 0; b < num_bins; ++b) {
        if (order == 1) {
            vol[static_cast<std::size_t>(b)] = bw * std::pow(length, dim - 1);
        } else {
            // integral over the box pair of 1{|x-y| in [a,b)}, d = 1
            const double a = est.bin_low[static_cast<std::size_t>(b)];
            const double c = std::min(est.bin_high[static_cast<std::size_t>(b)], length);
            vol[static_cast<std::size_t>(b)] = a >= length ? 0.0 : 2.0 * (length * (c - a) - 0.5 * (c * c - a * a));
        }
    }

    // per-replica densities, then mean and SE across replicas
    std::vector<std::vector<double>> dens(static_cast<std::size_t>(num_bins),
                                          std::vector<double>(R, 0.0));
    for (std::size_t r = 0; r < R; ++r) {
        const PointConfiguration& g = samples[r];
        const std::size_t n = g.size();
        if (order == 1) {
            for (std::size_t p = 0; p < n; ++p) {
                int b = static_cast<int>(std::floor(g.point(p)[0] / bw));
                if (b < 0) b = 0;
                if (b >= num_bins) b = num_bins - 1;
                dens[static_cast<std::size_t>(b)][r] += 1.0;
            }
        } else {
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    if (p == q) continue;
                    const double s = std::abs(g.point(p)[0] - g.point(q)[0]);
                    int b = static_cast<int>(std::floor(s / bw));
                    if (b >= 0 && b < num_bins) dens[static_cast<std::size_t>(b)][r] += 1.0;
                }
        }
    }
    est.values.resize(static_cast<std::size_t>(num_bins));
    est.standard_errors.resize(static_cast<std::size_t>(num_bins));
    for (int b = 0; b < num_bins; ++b) {
        const double v = vol[static_cast<std::size_t>(b)];
        for (std::size_t r = 0; r < R; ++r)
            dens[static_cast<std::size_t>(b)][r] = v > 0 ? dens[static_cast<std::size_t>(b)][r] / v : 0.0;
        const MeanSE ms = mean_se_of(dens[static_cast<std::size_t>(b)]);
        est.values[static_cast<std::size_t>(b)] = ms.mean;
        est.standard_errors[static_cast<std::size_t>(b)] = ms.se;
    }
    return est;
}

void write_estimate(std::ostream& os, const CorrelationEstimate& est) {
    os << "# glauber correlation estimate v1\n";
    os << "# order=" << est.order << " replicas=" << est.replica_count << "\n";
    os << "# bin_center\tvalue\tse\treplicas\n";
    char buf[128];
    for (std::size_t b = 0; b < est.values.size(); ++b) {
        std::snprintf(buf, sizeof buf, "%.17g\t%.17g\t%.17g\t%zu\n", est.bin_centers[b], est.values[b],
                      est.standard_errors[b], est.replica_count);
        os << buf;
    }
}

CorrelationWeights poisson_weights(double z0) {
    return [z0](const SiteConfiguration& eta) { return std::pow(z0, static_cast<double>(eta.order())); };
}

double pairing(const QuasiObservable& G, const CorrelationWeights& k) {
    const double w = G.domain().cell_volume();
    double total = 0.0;
    for (const auto& [eta, v] : G.values())
        total += v * k(eta) * std::pow(w, static_cast<double>(eta.order()));
    return total;
}

RuelleReport ruelle_check(const CorrelationEstimate& estimate, double C, double const_bound) {
    RuelleReport report;
    const double cap = const_bound * std::pow(C, estimate.order);
    for (std::size_t b = 0; b < estimate.values.size(); ++b) {
        const double margin = cap + 3.0 * estimate.standard_errors[b] - estimate.values[b];
        if (report.worst_bin < 0 || margin < report.worst_margin) {
            report.worst_margin = margin;
            report.worst_bin = static_cast<int>(b);
        }
        if (margin < 0) report.pass = false;
    }
    return report;
}

double free_case_k1(double k0_density, const SimulatorParams& params, std::uint64_t m) {
    if (!params.phi.is_zero())
        throw std::invalid_argument("free_case_k1: closed form requires the zero potential");
    return params.z + std::pow(1.0 - params.delta, static_cast<double>(m)) * (k0_density - params.z);
}

SimulatorParams simulator_params_of(const DynamicsParams& params) {
    SimulatorParams sim;
    sim.z = params.z();
    sim.delta = params.delta();
    sim.dim = params.domain().dimension();
    sim.length = params.domain().side_length();
    sim.phi = params.potential();
    sim.periodic = false;
    return sim;
}

void parallel_replicas(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1) {
        for (std::size_t r = 0; r < count; ++r) fn(r);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t r = t; r < count; r += workers) fn(r);
        });
    }
    for (auto& th : pool) th.join();
}

namespace {

double deterministic_pairing(const QuasiObservable& G, const DynamicsParams& params, int m, double z0) {
    CompiledOperator op = compile_p_delta_hat(params, G.n_max());
    std::vector<double> v = op.to_vector(G);
    for (int k = 0; k < m; ++k) v = op.apply(v);
    const double w = params.domain().cell_volume();
    double total = 0.0;
    for (std::size_t r = 0; r < op.dim(); ++r)
        total += v[r] * std::pow(z0 * w, static_cast<double>(op.basis()[r].order()));
    return total;
}

}  // namespace

DualityResult duality_residual(const ObservableFactory& make_G, const InitialLaw& law, int m,
                               const DynamicsParams& params, int n_max, std::size_t replicas,
                               const RngSpec& seed, int jobs) {
    if (law.kind != InitialLaw::Kind::Poisson)
        throw NotImplementedError("duality_residual: only the Poisson initial law is supported");
    if (replicas == 0) throw std::invalid_argument("duality_residual: need at least one replica");
    if (m < 0) throw std::invalid_argument("duality_residual: m must be >= 0");
    if (!params.cond_small())
        throw ConditionViolation("duality_residual: norm condition z e^{C c_phi} <= C fails");

    const GridPtr grid = params.domain_ptr();
    const GridPtr grid_half = make_grid(grid->dimension(), grid->side_length(), grid->spacing() / 2.0);
    const QuasiObservable G = make_G(grid, n_max);

    // simulate once; snap the same final configurations on both grids
    SimulatorParams sim = simulator_params_of(params);
    std::vector<PointConfiguration> finals(replicas, PointConfiguration(sim.dim));
    parallel_replicas(replicas, jobs, [&](std::size_t r) {
        Rng rng(RngSpec{seed.master_seed, seed.replica_index + r});
        PointConfiguration g0 = sample_poisson_initial(law.z0, sim, rng);
        ChainState state(std::move(g0), rng);
        for (int k = 0; k < m; ++k) state = chain_step(state, sim);
        finals[r] = std::move(state.configuration);
    });

    DualityResult out;
    out.replicas = replicas;
    const MeanSE emp = empirical_pairing(G, finals);
    out.empirical = emp.mean;
    out.empirical_se = emp.se;

    out.deterministic = deterministic_pairing(G, params, m, law.z0);
    out.residual = std::abs(out.empirical - out.deterministic);

    // truncation part: compare against the untruncated lattice dynamics
    const int n_full = static_cast<int>(grid->num_sites());
    if (n_max < n_full) {
        const QuasiObservable G_full = make_G(grid, n_full);
        out.eps_trunc = std::abs(deterministic_pairing(G_full, params, m, law.z0) - out.deterministic);
    }

    // h-refinement probe at a reduced order cap: deterministic side on the
    // halved grid plus re-snapping of the same samples
    const int n_probe = std::min(n_max, 4);
    const DynamicsParams params_half(params.z(), params.delta(), params.C(), params.potential(), grid_half);
    const QuasiObservable G_probe = make_G(grid, n_probe);
    const QuasiObservable G_probe_half = make_G(grid_half, n_probe);
    const double det_h = deterministic_pairing(G_probe, params, m, law.z0);
    const double det_h2 = deterministic_pairing(G_probe_half, params_half, m, law.z0);
    const QuasiObservable G_half = make_G(grid_half, n_max);
    const MeanSE emp_half = empirical_pairing(G_half, finals);
    const double h = grid->spacing();
    out.c_h = (std::abs(det_h - det_h2) + std::abs(emp.mean - emp_half.mean)) / (h / 2.0);

    out.tolerance = 3.0 * out.empirical_se + out.c_h * h + out.eps_trunc;
    return out;
}

}  // namespace glauber
