#include "glauber/grid.hpp"

#include <algorithm>
#include <cmath>

namespace glauber {

GridDomain::GridDomain(int dimension, double side_length, double spacing)
    : d_(dimension), length_(side_length), h_(spacing) {
    if (d_ < 1) throw std::invalid_argument("GridDomain: dimension must be >= 1");
    if (length_ <= 0 || h_ <= 0) throw std::invalid_argument("GridDomain: L and h must be positive");
    const double ratio = length_ / h_;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 1)
        throw std::invalid_argument("GridDomain: L/h must be a positive integer");
    n_side_ = static_cast<int>(rounded);

    double count = 1;
    for (int k = 0; k < d_; ++k) count *= n_side_;
    if (count > 1e9) throw std::invalid_argument("GridDomain: too many sites");
    n_sites_ = static_cast<std::uint32_t>(count);

    cell_volume_ = std::pow(h_, d_);
    box_volume_ = std::pow(length_, d_);
}

std::vector<int> GridDomain::site_cells(std::uint32_t i) const {
    std::vector<int> cells(static_cast<std::size_t>(d_));
    // axis 0 is the most significant digit
    std::uint32_t rem = i;
    for (int k = d_ - 1; k >= 0; --k) {
        cells[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::uint32_t>(n_side_));
        rem /= static_cast<std::uint32_t>(n_side_);
    }
    return cells;
}

std::vector<double> GridDomain::site_coords(std::uint32_t i) const {
    const std::vector<int> cells = site_cells(i);
    std::vector<double> x(static_cast<std::size_t>(d_));
    for (int k = 0; k < d_; ++k) x[static_cast<std::size_t>(k)] = (cells[static_cast<std::size_t>(k)] + 0.5) * h_;
    return x;
}

std::uint32_t GridDomain::cell_of(const double* x) const {
    std::uint32_t idx = 0;
    for (int k = 0; k < d_; ++k) {
        int c = static_cast<int>(std::floor(x[k] / h_));
        if (c < 0) c = 0;
        if (c >= n_side_) c = n_side_ - 1;
        idx = idx * static_cast<std::uint32_t>(n_side_) + static_cast<std::uint32_t>(c);
    }
    return idx;
}

std::vector<double> GridDomain::displacement(std::uint32_t i, std::uint32_t j) const {
    std::vector<double> a = site_coords(i), b = site_coords(j);
    for (int k = 0; k < d_; ++k) a[static_cast<std::size_t>(k)] -= b[static_cast<std::size_t>(k)];
    return a;
}

bool GridDomain::inside_box(const double* x) const {
    for (int k = 0; k < d_; ++k)
        if (x[k] < 0.0 || x[k] >= length_) return false;
    return true;
}

GridPtr make_grid(int dimension, double side_length, double spacing) {
    return std::make_shared<const GridDomain>(dimension, side_length, spacing);
}

SiteConfiguration::SiteConfiguration(std::vector<std::uint32_t> idx) : indices(std::move(idx)) {
    for (std::size_t i = 1; i < indices.size(); ++i)
        if (indices[i - 1] >= indices[i])
            throw std::invalid_argument("SiteConfiguration: indices must be strictly increasing");
}

bool SiteConfiguration::contains(std::uint32_t site) const {
    return std::binary_search(indices.begin(), indices.end(), site);
}

bool SiteConfiguration::is_subset_of(const SiteConfiguration& other) const {
    return std::includes(other.indices.begin(), other.indices.end(), indices.begin(), indices.end());
}

SiteConfiguration SiteConfiguration::disjoint_union(const SiteConfiguration& other) const {
    SiteConfiguration out;
    out.indices.resize(indices.size() + other.indices.size());
    std::merge(indices.begin(), indices.end(), other.indices.begin(), other.indices.end(), out.indices.begin());
    for (std::size_t i = 1; i < out.indices.size(); ++i)
        if (out.indices[i - 1] == out.indices[i])
            throw std::invalid_argument("disjoint_union: configurations overlap");
    return out;
}

SiteConfiguration SiteConfiguration::with_site(std::uint32_t site) const {
    SiteConfiguration out = *this;
    auto it = std::lower_bound(out.indices.begin(), out.indices.end(), site);
    if (it != out.indices.end() && *it == site)
        throw std::invalid_argument("with_site: site already present");
    out.indices.insert(it, site);
    return out;
}

SiteConfiguration SiteConfiguration::difference(const SiteConfiguration& other) const {
    SiteConfiguration out;
    std::set_difference(indices.begin(), indices.end(), other.indices.begin(), other.indices.end(),
                        std::back_inserter(out.indices));
    return out;
}

bool ConfigOrder::operator()(const SiteConfiguration& a, const SiteConfiguration& b) const {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.indices < b.indices;
}

void PointConfiguration::push_point(const double* x) {
    if (contains_point(x)) throw std::invalid_argument("PointConfiguration: duplicate point");
    coords.insert(coords.end(), x, x + dim);
}

bool PointConfiguration::contains_point(const double* x) const {
    const std::size_t n = size();
    for (std::size_t p = 0; p < n; ++p) {
        const double* y = point(p);
        bool same = true;
        for (int k = 0; k < dim; ++k)
            if (x[k] != y[k]) { same = false; break; }
        if (same) return true;
    }
    return false;
}

PointConfiguration PointConfiguration::filtered(const std::vector<char>& keep) const {
    PointConfiguration out(dim);
    const std::size_t n = size();
    for (std::size_t p = 0; p < n; ++p)
        if (keep[p]) out.push_point(point(p));
    return out;
}

}  // namespace glauber
