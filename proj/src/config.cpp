#include "glauber/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace glauber {

using nlohmann::json;

std::string experiment_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::ContractionSuite: return "contraction-suite";
        case ExperimentKind::ConsistencySuite: return "consistency-suite";
        case ExperimentKind::SemigroupCauchy: return "semigroup-cauchy";
        case ExperimentKind::FiniteVolumeLadder: return "finite-volume-ladder";
        case ExperimentKind::SimulatorStats: return "simulator-stats";
        case ExperimentKind::Duality: return "duality";
    }
    return "?";
}

std::optional<ExperimentKind> experiment_from_name(const std::string& name) {
    for (ExperimentKind k : {ExperimentKind::ContractionSuite, ExperimentKind::ConsistencySuite,
                             ExperimentKind::SemigroupCauchy, ExperimentKind::FiniteVolumeLadder,
                             ExperimentKind::SimulatorStats, ExperimentKind::Duality})
        if (experiment_name(k) == name) return k;
    return std::nullopt;
}

PairPotential ExperimentConfig::make_potential() const {
    switch (potential_kind) {
        case PotentialKind::Zero: return PairPotential::zero(dim);
        case PotentialKind::TruncatedConstant: return PairPotential::truncated_constant(dim, theta, range);
        case PotentialKind::Gaussian: return PairPotential::gaussian(dim, amplitude, width);
        case PotentialKind::ExponentialDecay: return PairPotential::exponential_decay(dim, amplitude, rate);
    }
    throw std::logic_error("unreachable");
}

GridPtr ExperimentConfig::make_grid_ptr() const { return make_grid(dim, length, spacing); }

DynamicsParams ExperimentConfig::make_dynamics() const {
    return DynamicsParams(z, delta, C, make_potential(), make_grid_ptr());
}

namespace {

struct Reader {
    const json& root;
    std::vector<std::string>& errors;

    const json* find(const std::string& path) const {
        const json* cur = &root;
        std::stringstream ss(path);
        std::string key;
        while (std::getline(ss, key, '.')) {
            if (!cur->is_object() || !cur->contains(key)) return nullptr;
            cur = &(*cur)[key];
        }
        return cur;
    }

    double number(const std::string& path, bool required = true, double fallback = 0.0) {
        const json* v = find(path);
        if (!v) {
            if (required) errors.push_back(path + ": missing");
            return fallback;
        }
        if (v->is_string() && v->get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        if (!v->is_number()) {
            errors.push_back(path + ": expected a number");
            return fallback;
        }
        return v->get<double>();
    }

    std::int64_t integer(const std::string& path, bool required = true, std::int64_t fallback = 0) {
        const json* v = find(path);
        if (!v) {
            if (required) errors.push_back(path + ": missing");
            return fallback;
        }
        if (!v->is_number_integer()) {
            errors.push_back(path + ": expected an integer");
            return fallback;
        }
        return v->get<std::int64_t>();
    }

    std::string text(const std::string& path, bool required = true) {
        const json* v = find(path);
        if (!v) {
            if (required) errors.push_back(path + ": missing");
            return {};
        }
        if (!v->is_string()) {
            errors.push_back(path + ": expected a string");
            return {};
        }
        return v->get<std::string>();
    }
};

}  // namespace

ValidationResult validate_config_text(const std::string& text) {
    ValidationResult result;
    json root;
    try {
        root = json::parse(text);
    } catch (const std::exception& e) {
        result.errors.push_back(std::string("config: JSON parse error: ") + e.what());
        return result;
    }

    Reader r{root, result.errors};
    ExperimentConfig cfg;

    const std::string exp = r.text("experiment");
    if (!exp.empty()) {
        if (auto k = experiment_from_name(exp))
            cfg.experiment = *k;
        else
            result.errors.push_back("experiment: unknown kind '" + exp + "'");
    }

    cfg.dim = static_cast<int>(r.integer("domain.d"));
    cfg.length = r.number("domain.L");
    cfg.spacing = r.number("domain.h");
    if (cfg.dim < 1) result.errors.push_back("domain.d: must be >= 1");
    if (cfg.length <= 0) result.errors.push_back("domain.L: must be > 0");
    if (cfg.spacing <= 0) result.errors.push_back("domain.h: must be > 0");
    if (cfg.length > 0 && cfg.spacing > 0) {
        const double ratio = cfg.length / cfg.spacing;
        if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio))
            result.errors.push_back("domain.h: L/h not integer");
    }

    cfg.z = r.number("dynamics.z");
    cfg.delta = r.number("dynamics.delta");
    cfg.C = r.number("dynamics.C");
    cfg.n_max = static_cast<int>(r.integer("dynamics.n_max"));
    if (!(cfg.delta > 0 && cfg.delta < 1)) result.errors.push_back("dynamics.delta: delta out of (0,1)");
    if (cfg.z <= 0) result.errors.push_back("dynamics.z: must be > 0");
    if (cfg.C <= 0) result.errors.push_back("dynamics.C: must be > 0");
    if (cfg.n_max < 0) result.errors.push_back("dynamics.n_max: must be >= 0");

    const std::string kind = r.text("potential.kind");
    if (!kind.empty()) {
        if (auto k = kind_from_name(kind)) {
            cfg.potential_kind = *k;
            switch (*k) {
                case PotentialKind::Zero:
                    break;
                case PotentialKind::TruncatedConstant:
                    cfg.theta = r.number("potential.theta");
                    cfg.range = r.number("potential.range");
                    if (cfg.theta < 0) result.errors.push_back("potential.theta: must be >= 0");
                    if (cfg.range <= 0) result.errors.push_back("potential.range: must be > 0");
                    break;
                case PotentialKind::Gaussian:
                    cfg.amplitude = r.number("potential.amplitude");
                    cfg.width = r.number("potential.width");
                    if (cfg.amplitude < 0) result.errors.push_back("potential.amplitude: must be >= 0");
                    if (cfg.width <= 0) result.errors.push_back("potential.width: must be > 0");
                    break;
                case PotentialKind::ExponentialDecay:
                    cfg.amplitude = r.number("potential.amplitude");
                    cfg.rate = r.number("potential.rate");
                    if (cfg.amplitude < 0) result.errors.push_back("potential.amplitude: must be >= 0");
                    if (cfg.rate <= 0) result.errors.push_back("potential.rate: must be > 0");
                    break;
            }
        } else {
            result.errors.push_back("potential.kind: unknown kind '" + kind + "'");
        }
    }

    cfg.seed = static_cast<std::uint64_t>(r.integer("run.seed"));
    cfg.jobs = static_cast<int>(r.integer("run.jobs", false, 1));
    if (cfg.jobs < 1) result.errors.push_back("run.jobs: must be >= 1");

    switch (cfg.experiment) {
        case ExperimentKind::ContractionSuite:
        case ExperimentKind::ConsistencySuite: {
            cfg.num_g = static_cast<int>(r.integer("suite.num_g"));
            if (const json* v = r.find("suite.deltas"); v && v->is_array())
                for (const auto& d : *v) cfg.deltas.push_back(d.get<double>());
            else
                result.errors.push_back("suite.deltas: missing array");
            for (double d : cfg.deltas)
                if (!(d > 0 && d < 1)) result.errors.push_back("suite.deltas: delta out of (0,1)");
            if (cfg.num_g < 1) result.errors.push_back("suite.num_g: must be >= 1");
            break;
        }
        case ExperimentKind::SemigroupCauchy: {
            cfg.num_g = static_cast<int>(r.integer("suite.num_g"));
            cfg.t = r.number("suite.t");
            if (const json* v = r.find("suite.n_ladder"); v && v->is_array())
                for (const auto& n : *v) cfg.n_ladder.push_back(n.get<int>());
            else
                result.errors.push_back("suite.n_ladder: missing array");
            for (int n : cfg.n_ladder)
                if (n < 2) result.errors.push_back("suite.n_ladder: n must be >= 2");
            if (cfg.n_ladder.size() < 2) result.errors.push_back("suite.n_ladder: need at least two rungs");
            if (cfg.t < 0) result.errors.push_back("suite.t: must be >= 0");
            break;
        }
        case ExperimentKind::FiniteVolumeLadder: {
            cfg.num_g = static_cast<int>(r.integer("suite.num_g"));
            cfg.t = r.number("suite.t");
            break;
        }
        case ExperimentKind::SimulatorStats: {
            cfg.replicas = static_cast<std::size_t>(r.integer("run.replicas"));
            cfg.steps = static_cast<int>(r.integer("chain.steps"));
            cfg.z0 = r.number("chain.z0");
            cfg.bins = static_cast<int>(r.integer("chain.bins", false, 20));
            if (const json* v = r.find("chain.checkpoints"); v && v->is_array())
                for (const auto& c : *v) cfg.checkpoints.push_back(c.get<std::uint64_t>());
            for (std::uint64_t c : cfg.checkpoints)
                if (c > static_cast<std::uint64_t>(std::max(cfg.steps, 0)))
                    result.errors.push_back("chain.checkpoints: checkpoint beyond chain.steps");
            if (cfg.steps < 0) result.errors.push_back("chain.steps: must be >= 0");
            if (cfg.z0 < 0) result.errors.push_back("chain.z0: must be >= 0");
            if (cfg.replicas == 0) result.errors.push_back("run.replicas: must be >= 1");
            break;
        }
        case ExperimentKind::Duality: {
            cfg.replicas = static_cast<std::size_t>(r.integer("run.replicas"));
            cfg.steps = static_cast<int>(r.integer("chain.steps"));
            cfg.z0 = r.number("chain.z0");
            if (cfg.steps < 0) result.errors.push_back("chain.steps: must be >= 0");
            if (cfg.z0 <= 0) result.errors.push_back("chain.z0: must be > 0");
            if (cfg.replicas == 0) result.errors.push_back("run.replicas: must be >= 1");
            break;
        }
    }

    if (!result.errors.empty()) return result;

    try {
        cfg.condition = check_contraction_condition(cfg.z, cfg.C, cfg.make_potential());
    } catch (const std::exception& e) {
        result.errors.push_back(std::string("potential: ") + e.what());
        return result;
    }
    // sanity: an operator-core config must be able to host its grid
    try {
        (void)cfg.make_grid_ptr();
    } catch (const std::exception& e) {
        result.errors.push_back(std::string("domain: ") + e.what());
        return result;
    }
    if (static_cast<std::uint32_t>(cfg.n_max) > cfg.make_grid_ptr()->num_sites())
        result.errors.push_back("dynamics.n_max: exceeds the site count");
    if (!result.errors.empty()) return result;

    result.config = std::move(cfg);
    return result;
}

ValidationResult validate_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        ValidationResult r;
        r.errors.push_back("config: cannot open '" + path + "'");
        return r;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return validate_config_text(ss.str());
}

std::string normalized_config_json(const ExperimentConfig& cfg) {
    json j;
    j["experiment"] = experiment_name(cfg.experiment);
    j["domain"] = {{"d", cfg.dim}, {"L", cfg.length}, {"h", cfg.spacing}};
    j["dynamics"] = {{"z", cfg.z}, {"delta", cfg.delta}, {"C", cfg.C}, {"n_max", cfg.n_max}};
    json pot{{"kind", kind_name(cfg.potential_kind)}};
    switch (cfg.potential_kind) {
        case PotentialKind::Zero: break;
        case PotentialKind::TruncatedConstant:
            pot["theta"] = std::isinf(cfg.theta) ? json("inf") : json(cfg.theta);
            pot["range"] = cfg.range;
            break;
        case PotentialKind::Gaussian:
            pot["amplitude"] = cfg.amplitude;
            pot["width"] = cfg.width;
            break;
        case PotentialKind::ExponentialDecay:
            pot["amplitude"] = cfg.amplitude;
            pot["rate"] = cfg.rate;
            break;
    }
    j["potential"] = pot;
    j["run"] = {{"seed", cfg.seed}, {"jobs", cfg.jobs}};
    if (cfg.replicas) j["run"]["replicas"] = cfg.replicas;
    j["condition"] = {{"cond_small", cfg.condition.cond_small},
                      {"cond_verysmall", cfg.condition.cond_verysmall},
                      {"margin_small", cfg.condition.margin_small},
                      {"margin_verysmall", cfg.condition.margin_verysmall},
                      {"c_phi", cfg.condition.c_phi}};
    return j.dump(2);
}

}  // namespace glauber
