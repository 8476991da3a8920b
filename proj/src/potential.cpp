#include "glauber/potential.hpp"

#include <cmath>
#include <limits>

namespace glauber {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ball_volume(int d, double r) {
    // pi^{d/2} / Gamma(d/2 + 1) * r^d
    return std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(r, d);
}

}  // namespace

std::string kind_name(PotentialKind k) {
    switch (k) {
        case PotentialKind::Zero: return "zero";
        case PotentialKind::TruncatedConstant: return "truncated-constant";
        case PotentialKind::Gaussian: return "gaussian";
        case PotentialKind::ExponentialDecay: return "exponential-decay";
    }
    return "?";
}

std::optional<PotentialKind> kind_from_name(const std::string& name) {
    if (name == "zero") return PotentialKind::Zero;
    if (name == "truncated-constant") return PotentialKind::TruncatedConstant;
    if (name == "gaussian") return PotentialKind::Gaussian;
    if (name == "exponential-decay") return PotentialKind::ExponentialDecay;
    return std::nullopt;
}

double PairPotential::evaluate_r(double r) const {
    switch (kind_) {
        case PotentialKind::Zero:
            return 0.0;
        case PotentialKind::TruncatedConstant:
            return r <= b_ ? a_ : 0.0;
        case PotentialKind::Gaussian:
            return a_ * std::exp(-r * r / (2.0 * b_ * b_));
        case PotentialKind::ExponentialDecay:
            return a_ * std::exp(-b_ * r);
    }
    return 0.0;
}

double PairPotential::evaluate(const double* u) const {
    double r2 = 0.0;
    for (int k = 0; k < d_; ++k) r2 += u[k] * u[k];
    return evaluate_r(std::sqrt(r2));
}

PairPotential::PairPotential(PotentialKind k, int d, double a, double b)
    : kind_(k), d_(d), a_(a), b_(b), c_phi_(0.0) {
    if (d_ < 1) throw std::invalid_argument("PairPotential: dimension must be >= 1");
    switch (kind_) {
        case PotentialKind::Zero:
            c_phi_ = 0.0;
            break;
        case PotentialKind::TruncatedConstant: {
            if (a_ < 0) throw std::invalid_argument("truncated-constant: theta must be >= 0");
            if (b_ <= 0) throw std::invalid_argument("truncated-constant: range must be > 0");
            const double depth = std::isinf(a_) ? 1.0 : 1.0 - std::exp(-a_);
            c_phi_ = depth * ball_volume(d_, b_);
            break;
        }
        case PotentialKind::Gaussian:
        case PotentialKind::ExponentialDecay: {
            if (a_ < 0 || !std::isfinite(a_))
                throw std::invalid_argument("potential amplitude must be finite and >= 0");
            if (b_ <= 0 || !std::isfinite(b_))
                throw std::invalid_argument("potential width/rate must be finite and > 0");
            if (a_ == 0.0) { c_phi_ = 0.0; break; }
            CPhiQuadrature quad;
            if (kind_ == PotentialKind::Gaussian) {
                quad.radius = 8.0 * b_;
            } else {
                quad.radius = std::max(1.0, (std::log(std::max(a_, 1.0)) + 40.0) / b_);
            }
            quad.cells_per_axis = d_ == 1 ? 20000 : (d_ == 2 ? 800 : 120);
            quad.tail_tol = 1e-9;
            c_phi_ = glauber::c_phi(*this, quad).value;
            break;
        }
    }
}

PairPotential PairPotential::zero(int dimension) {
    return PairPotential(PotentialKind::Zero, dimension, 0.0, 0.0);
}
PairPotential PairPotential::truncated_constant(int dimension, double theta, double range) {
    return PairPotential(PotentialKind::TruncatedConstant, dimension, theta, range);
}
PairPotential PairPotential::gaussian(int dimension, double amplitude, double sigma) {
    return PairPotential(PotentialKind::Gaussian, dimension, amplitude, sigma);
}
PairPotential PairPotential::exponential_decay(int dimension, double amplitude, double rate) {
    return PairPotential(PotentialKind::ExponentialDecay, dimension, amplitude, rate);
}

double relative_energy(const double* x, const PointConfiguration& gamma, const PairPotential& phi) {
    if (gamma.dim != phi.dimension())
        throw std::invalid_argument("relative_energy: dimension mismatch");
    if (gamma.contains_point(x))
        throw std::invalid_argument("relative_energy: x is an element of gamma");
    double total = 0.0;
    std::vector<double> u(static_cast<std::size_t>(gamma.dim));
    const std::size_t n = gamma.size();
    for (std::size_t p = 0; p < n; ++p) {
        const double* y = gamma.point(p);
        for (int k = 0; k < gamma.dim; ++k) u[static_cast<std::size_t>(k)] = x[k] - y[k];
        const double v = phi.evaluate(u.data());
        if (std::isinf(v)) return kInf;
        total += v;
    }
    return total;
}

double relative_energy(std::uint32_t site, const SiteConfiguration& gamma, const GridDomain& domain,
                       const PairPotential& phi) {
    if (gamma.contains(site))
        throw std::invalid_argument("relative_energy: site is an element of gamma");
    double total = 0.0;
    for (std::uint32_t y : gamma.indices) {
        const std::vector<double> u = domain.displacement(site, y);
        const double v = phi.evaluate(u.data());
        if (std::isinf(v)) return kInf;
        total += v;
    }
    return total;
}

namespace {

// Tail of the box complement bounded through the slabs {|x_k| > R} and
// 1 - e^{-phi} <= phi for the smooth kinds.
double tail_bound_for(const PairPotential& phi, double R) {
    const int d = phi.dimension();
    switch (phi.kind()) {
        case PotentialKind::Zero:
            return 0.0;
        case PotentialKind::TruncatedConstant:
            return R >= phi.range() ? 0.0 : kInf;
        case PotentialKind::Gaussian: {
            if (d > 3) throw NotImplementedError("c_phi: gaussian tail bound implemented for d <= 3");
            const double a = phi.amplitude(), s = phi.width();
            // int_{|t|>R} e^{-t^2/(2s^2)} dt = s*sqrt(2*pi)*erfc(R/(s*sqrt(2)))
            const double slab = s * std::sqrt(2.0 * M_PI) * std::erfc(R / (s * std::sqrt(2.0)));
            const double full = s * std::sqrt(2.0 * M_PI);
            return a * d * slab * std::pow(full, d - 1);
        }
        case PotentialKind::ExponentialDecay: {
            const double a = phi.amplitude(), b = phi.rate();
            // phi(x) <= a e^{-b |x_k|} on the slab {|x_k| > R}; integrate the
            // product bound a e^{-b|x_k|} * 1 over the remaining axes is not
            // integrable, so bound phi <= a e^{-b max_k |x_k|} instead:
            // int_{|x|_inf > R} a e^{-b |x|_inf} dx = a * int_R^inf 2d (2t)^{d-1} e^{-bt} dt.
            if (d > 3) throw NotImplementedError("c_phi: exponential tail bound implemented for d <= 3");
            const double ebR = std::exp(-b * R);
            if (d == 1) return a * 2.0 * ebR / b;
            if (d == 2) return a * 8.0 * ebR * (R / b + 1.0 / (b * b));
            return a * 24.0 * ebR * (R * R / b + 2.0 * R / (b * b) + 2.0 / (b * b * b));
        }
    }
    return 0.0;
}

}  // namespace

CPhiResult c_phi(const PairPotential& phi, const CPhiQuadrature& quad) {
    const int d = phi.dimension();
    if (quad.cells_per_axis < 1 || quad.radius <= 0)
        throw std::invalid_argument("c_phi: bad quadrature parameters");

    CPhiResult res;
    res.tail_bound = tail_bound_for(phi, quad.radius);
    if (!(res.tail_bound <= quad.tail_tol))
        throw ToleranceError("c_phi: tail bound " + std::to_string(res.tail_bound) +
                             " exceeds tolerance; increase the quadrature radius");

    const int n = quad.cells_per_axis;
    const double wcell = 2.0 * quad.radius / n;
    double total_cells = 1;
    for (int k = 0; k < d; ++k) total_cells *= n;
    if (total_cells > 5e8) throw std::invalid_argument("c_phi: quadrature too fine for this dimension");

    std::vector<double> x(static_cast<std::size_t>(d));
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    double sum = 0.0;
    const auto cells = static_cast<long long>(total_cells);
    for (long long c = 0; c < cells; ++c) {
        long long rem = c;
        for (int k = d - 1; k >= 0; --k) {
            idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % n);
            rem /= n;
        }
        for (int k = 0; k < d; ++k)
            x[static_cast<std::size_t>(k)] = -quad.radius + (idx[static_cast<std::size_t>(k)] + 0.5) * wcell;
        const double v = phi.evaluate(x.data());
        sum += std::isinf(v) ? 1.0 : 1.0 - std::exp(-v);
    }
    res.value = sum * std::pow(wcell, d);
    return res;
}

}  // namespace glauber
