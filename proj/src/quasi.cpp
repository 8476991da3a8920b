#include "glauber/quasi.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace glauber {

QuasiObservable::QuasiObservable(GridPtr domain, int n_max)
    : domain_(std::move(domain)), n_max_(n_max) {
    if (!domain_) throw std::invalid_argument("QuasiObservable: null domain");
    if (n_max_ < 0) throw std::invalid_argument("QuasiObservable: n_max must be >= 0");
    if (static_cast<std::uint32_t>(n_max_) > domain_->num_sites())
        throw std::invalid_argument("QuasiObservable: n_max exceeds site count");
}

double QuasiObservable::value(const SiteConfiguration& eta) const {
    auto it = values_.find(eta);
    return it == values_.end() ? 0.0 : it->second;
}

void QuasiObservable::set(const SiteConfiguration& eta, double v) {
    if (eta.order() > static_cast<std::size_t>(n_max_))
        throw std::invalid_argument("QuasiObservable::set: order exceeds n_max");
    if (!std::isfinite(v)) throw std::invalid_argument("QuasiObservable::set: non-finite value");
    if (!eta.indices.empty() && eta.indices.back() >= domain_->num_sites())
        throw std::invalid_argument("QuasiObservable::set: site index out of range");
    values_[eta] = v;
}

void QuasiObservable::add(const SiteConfiguration& eta, double v) {
    set(eta, value(eta) + v);
}

QuasiObservable QuasiObservable::axpy(double s, const QuasiObservable& other) const {
    if (domain_.get() != other.domain_.get() || n_max_ != other.n_max_)
        throw std::invalid_argument("axpy: mismatched domains");
    QuasiObservable out = *this;
    for (const auto& [eta, v] : other.values_) out.add(eta, s * v);
    if (other.truncated_) out.mark_truncated();
    return out;
}

QuasiObservable QuasiObservable::scaled(double s) const {
    QuasiObservable out(domain_, n_max_);
    for (const auto& [eta, v] : values_) out.set(eta, s * v);
    if (truncated_) out.mark_truncated();
    return out;
}

QuasiObservable QuasiObservable::indicator(GridPtr domain, int n_max, const SiteConfiguration& eta) {
    QuasiObservable out(std::move(domain), n_max);
    out.set(eta, 1.0);
    return out;
}

QuasiObservable QuasiObservable::filled(GridPtr domain, int n_max,
                                        const std::function<double(const SiteConfiguration&)>& f) {
    QuasiObservable out(domain, n_max);
    for (const auto& eta : enumerate_configurations(*domain, n_max)) out.set(eta, f(eta));
    return out;
}

namespace {

void emit_combinations(const std::vector<std::uint32_t>& pool, int k, std::vector<SiteConfiguration>& out) {
    const int n = static_cast<int>(pool.size());
    if (k > n) return;
    std::vector<int> pos(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pos[static_cast<std::size_t>(i)] = i;
    while (true) {
        SiteConfiguration cfg;
        cfg.indices.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) cfg.indices.push_back(pool[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])]);
        out.push_back(std::move(cfg));
        int i = k - 1;
        while (i >= 0 && pos[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++pos[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

std::vector<SiteConfiguration> enumerate_configurations_in(const std::vector<std::uint32_t>& pool, int n_max) {
    if (n_max < 0 || static_cast<std::size_t>(n_max) > pool.size())
        throw std::invalid_argument("enumerate_configurations: n_max exceeds site count");
    std::vector<SiteConfiguration> out;
    for (int k = 0; k <= n_max; ++k) emit_combinations(pool, k, out);
    return out;
}

std::vector<SiteConfiguration> enumerate_configurations(const GridDomain& domain, int n_max) {
    std::vector<std::uint32_t> pool(domain.num_sites());
    for (std::uint32_t i = 0; i < domain.num_sites(); ++i) pool[i] = i;
    return enumerate_configurations_in(pool, n_max);
}

double lp_integrate(const QuasiObservable& G, double kappa) {
    if (kappa <= 0) throw std::invalid_argument("lp_integrate: kappa must be positive");
    const double w = G.domain().cell_volume();
    double total = 0.0;
    for (const auto& [eta, v] : G.values()) {
        if (!std::isfinite(v)) throw std::runtime_error("lp_integrate: non-finite value in G");
        total += v * std::pow(kappa * w, static_cast<double>(eta.order()));
    }
    return total;
}

double norm_C(const QuasiObservable& G, double C) {
    if (C <= 0) throw std::invalid_argument("norm_C: C must be positive");
    const double w = G.domain().cell_volume();
    double total = 0.0;
    for (const auto& [eta, v] : G.values())
        total += std::abs(v) * std::pow(C * w, static_cast<double>(eta.order()));
    return total;
}

double e_lambda(const std::function<double(std::uint32_t)>& f, const SiteConfiguration& eta) {
    double prod = 1.0;
    for (std::uint32_t s : eta.indices) prod *= f(s);
    return prod;
}

std::string to_string(const SiteConfiguration& eta) {
    std::string s;
    for (std::size_t i = 0; i < eta.indices.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(eta.indices[i]);
    }
    return s;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_quasi(std::ostream& os, const QuasiObservable& G) {
    const GridDomain& dom = G.domain();
    os << "# glauber quasi-observable v1\n";
    os << "# d=" << dom.dimension() << " L=" << fmt_double(dom.side_length())
       << " h=" << fmt_double(dom.spacing()) << " n_max=" << G.n_max()
       << " trunc=" << (G.truncation_flag() ? 1 : 0) << "\n";
    for (const auto& [eta, v] : G.values())
        os << to_string(eta) << '\t' << fmt_double(v) << '\n';
}

QuasiObservable read_quasi(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# glauber quasi-observable", 0) != 0)
        throw std::runtime_error("read_quasi: missing signature line");
    if (!std::getline(is, line)) throw std::runtime_error("read_quasi: missing header line");
    int d = 0, n_max = -1, trunc = 0;
    double L = 0, h = 0;
    if (std::sscanf(line.c_str(), "# d=%d L=%lf h=%lf n_max=%d trunc=%d", &d, &L, &h, &n_max, &trunc) != 5)
        throw std::runtime_error("read_quasi: malformed header");
    QuasiObservable out(make_grid(d, L, h), n_max);
    if (trunc) out.mark_truncated();
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw std::runtime_error("read_quasi: row without tab");
        SiteConfiguration eta;
        const std::string idx = line.substr(0, tab);
        if (!idx.empty()) {
            std::stringstream ss(idx);
            std::string tok;
            while (std::getline(ss, tok, ',')) eta.indices.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        }
        out.set(SiteConfiguration(eta.indices), std::strtod(line.c_str() + tab + 1, nullptr));
    }
    return out;
}

}  // namespace glauber
