#include "glauber/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace glauber {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(const RngSpec& spec) {
    std::uint64_t seed = spec.master_seed + 0x9E3779B97F4A7C15ull * (spec.replica_index + 1);
    for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::uint64_t Rng::poisson(double mean) {
    if (mean < 0) throw std::invalid_argument("poisson: negative mean");
    if (mean == 0) return 0;
    if (mean >= 60) throw std::invalid_argument("poisson: mean too large for inversion sampling");
    const double u = uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf && k < 4096) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

double SimulatorParams::box_volume() const { return std::pow(length, dim); }

void SimulatorParams::validate() const {
    if (z < 0) throw std::invalid_argument("SimulatorParams: z must be >= 0");
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("SimulatorParams: delta must lie in (0,1)");
    if (dim < 1) throw std::invalid_argument("SimulatorParams: dim must be >= 1");
    if (length <= 0) throw std::invalid_argument("SimulatorParams: length must be > 0");
    if (phi.dimension() != dim) throw std::invalid_argument("SimulatorParams: potential dimension mismatch");
}

double SimulatorParams::energy(const double* x, const PointConfiguration& gamma) const {
    if (!periodic) return relative_energy(x, gamma, phi);
    // minimum-image displacement inside the torus
    double total = 0.0;
    std::vector<double> u(static_cast<std::size_t>(dim));
    const std::size_t n = gamma.size();
    for (std::size_t p = 0; p < n; ++p) {
        const double* y = gamma.point(p);
        for (int k = 0; k < dim; ++k) {
            double dxy = x[k] - y[k];
            dxy -= length * std::round(dxy / length);
            u[static_cast<std::size_t>(k)] = dxy;
        }
        const double v = phi.evaluate(u.data());
        if (std::isinf(v)) return v;
        total += v;
    }
    return total;
}

PointConfiguration sample_poisson_initial(double z0, const SimulatorParams& params, Rng& rng) {
    if (z0 < 0) throw std::invalid_argument("sample_poisson_initial: z0 must be >= 0");
    PointConfiguration out(params.dim);
    const std::uint64_t n = rng.poisson(z0 * params.box_volume());
    std::vector<double> x(static_cast<std::size_t>(params.dim));
    for (std::uint64_t i = 0; i < n; ++i) {
        do {
            for (int k = 0; k < params.dim; ++k) x[static_cast<std::size_t>(k)] = rng.uniform(0.0, params.length);
        } while (out.contains_point(x.data()));  // probability-zero redraw
        out.push_point(x.data());
    }
    return out;
}

PointConfiguration death_step(const PointConfiguration& gamma, double delta, Rng& rng) {
    if (!(delta > 0 && delta < 1)) throw std::invalid_argument("death_step: delta must lie in (0,1)");
    std::vector<char> keep(gamma.size());
    for (std::size_t p = 0; p < gamma.size(); ++p) keep[p] = rng.uniform01() >= delta ? 1 : 0;
    return gamma.filtered(keep);
}

PointConfiguration birth_step(const PointConfiguration& gamma, const SimulatorParams& params, Rng& rng) {
    params.validate();
    PointConfiguration births(params.dim);
    const std::uint64_t n = rng.poisson(params.z * params.delta * params.box_volume());
    std::vector<double> x(static_cast<std::size_t>(params.dim));
    for (std::uint64_t i = 0; i < n; ++i) {
        for (int k = 0; k < params.dim; ++k) x[static_cast<std::size_t>(k)] = rng.uniform(0.0, params.length);
        const double e = params.energy(x.data(), gamma);
        const double accept = std::isinf(e) ? 0.0 : std::exp(-e);
        if (rng.uniform01() < accept && !births.contains_point(x.data())) births.push_point(x.data());
    }
    return births;
}

ChainState chain_step(const ChainState& state, const SimulatorParams& params) {
    params.validate();
    ChainState next = state;
    const PointConfiguration& pre = state.configuration;

    PointConfiguration survivors = death_step(pre, params.delta, next.rng);
    PointConfiguration births = birth_step(pre, params, next.rng);

    PointConfiguration merged = survivors;
    std::vector<double> x(static_cast<std::size_t>(params.dim));
    for (std::size_t p = 0; p < births.size(); ++p) {
        const double* y = births.point(p);
        if (!merged.contains_point(y)) {
            merged.push_point(y);
            continue;
        }
        // probability-zero collision: resample this birth until it lands free
        for (int attempt = 0; attempt < 64; ++attempt) {
            for (int k = 0; k < params.dim; ++k) x[static_cast<std::size_t>(k)] = next.rng.uniform(0.0, params.length);
            const double e = params.energy(x.data(), pre);
            const double accept = std::isinf(e) ? 0.0 : std::exp(-e);
            if (next.rng.uniform01() < accept && !merged.contains_point(x.data())) {
                merged.push_point(x.data());
                break;
            }
        }
    }
    next.configuration = std::move(merged);
    next.step_index = state.step_index + 1;
    return next;
}

TrajectorySummary run_chain(ChainState initial, std::uint64_t m_steps, const SimulatorParams& params,
                            const StateRecorder& recorder, std::uint64_t thin) {
    if (thin == 0) thin = 1;
    TrajectorySummary summary{{}, initial};
    summary.counts.reserve(m_steps + 1);
    summary.counts.push_back(initial.configuration.size());
    if (recorder) recorder(initial);
    ChainState state = std::move(initial);
    for (std::uint64_t m = 0; m < m_steps; ++m) {
        state = chain_step(state, params);
        summary.counts.push_back(state.configuration.size());
        if (recorder && (state.step_index % thin == 0)) recorder(state);
    }
    summary.final_state = std::move(state);
    return summary;
}

void write_trajectory_header(std::ostream& os, const SimulatorParams& params, const RngSpec& spec) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "# z=%.17g delta=%.17g L=%.17g d=%d potential=%s seed=%llu replica=%llu\n",
                  params.z, params.delta, params.length, params.dim, kind_name(params.phi.kind()).c_str(),
                  static_cast<unsigned long long>(spec.master_seed),
                  static_cast<unsigned long long>(spec.replica_index));
    os << "# glauber trajectory v1\n" << buf << "# step\tcount\tcoords\n";
}

void write_trajectory_row(std::ostream& os, const ChainState& state) {
    os << state.step_index << '\t' << state.configuration.size() << '\t';
    char buf[40];
    const std::size_t n = state.configuration.coords.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", state.configuration.coords[i]);
        if (i) os << ',';
        os << buf;
    }
    os << '\n';
}

}  // namespace glauber
