#ifndef GLAUBER_GRID_HPP
#define GLAUBER_GRID_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

namespace glauber {

/**
 * Regular lattice discretization of the box [0,L)^d.
 *
 * Sites are the cell centers ((k+1/2)h per axis) of a grid with n_side =
 * L/h cells per axis (L/h must be an integer).  Site indices follow the
 * lexicographic order of the integer cell coordinates, axis 0 most
 * significant, so index order and coordinate order coincide.
 */
class GridDomain {
public:
    GridDomain(int dimension, double side_length, double spacing);

    int dimension() const { return d_; }
    double side_length() const { return length_; }
    double spacing() const { return h_; }
    int cells_per_axis() const { return n_side_; }
    std::uint32_t num_sites() const { return n_sites_; }

    /// h^d, the quadrature weight carried by each site.
    double cell_volume() const { return cell_volume_; }
    double box_volume() const { return box_volume_; }

    /// Coordinates of site i (cell center), length d.
    std::vector<double> site_coords(std::uint32_t i) const;

    /// Integer cell coordinates of site i, length d.
    std::vector<int> site_cells(std::uint32_t i) const;

    /// Site index of the cell containing x (each coordinate in [0,L)).
    std::uint32_t cell_of(const double* x) const;

    /// Displacement vector site_coords(i) - site_coords(j).
    std::vector<double> displacement(std::uint32_t i, std::uint32_t j) const;

    bool inside_box(const double* x) const;

private:
    int d_;
    double length_;
    double h_;
    int n_side_;
    std::uint32_t n_sites_;
    double cell_volume_;
    double box_volume_;
};

using GridPtr = std::shared_ptr<const GridDomain>;

GridPtr make_grid(int dimension, double side_length, double spacing);

/**
 * A finite simple configuration of lattice sites: a strictly increasing
 * list of site indices.  Stand-in for a finite point configuration.
 */
struct SiteConfiguration {
    std::vector<std::uint32_t> indices;

    SiteConfiguration() = default;
    explicit SiteConfiguration(std::vector<std::uint32_t> idx);

    std::size_t order() const { return indices.size(); }
    bool empty() const { return indices.empty(); }
    bool contains(std::uint32_t site) const;
    bool is_subset_of(const SiteConfiguration& other) const;

    /// Union with a disjoint configuration; throws on overlap.
    SiteConfiguration disjoint_union(const SiteConfiguration& other) const;
    SiteConfiguration with_site(std::uint32_t site) const;

    /// Set difference this \ other.
    SiteConfiguration difference(const SiteConfiguration& other) const;

    bool operator==(const SiteConfiguration& other) const { return indices == other.indices; }
    bool operator!=(const SiteConfiguration& other) const { return indices != other.indices; }
};

/// (order, lexicographic) total order; fixes all deterministic iteration.
struct ConfigOrder {
    bool operator()(const SiteConfiguration& a, const SiteConfiguration& b) const;
};

/// All subsets of `of`, emitted as configurations (every subset once).
/// Order of emission: by bitmask of positions (not the canonical order);
/// callers that need the canonical order sort or use enumerate_configurations.
template <typename Fn>
void for_each_subset(const SiteConfiguration& of, Fn&& fn) {
    const std::size_t n = of.order();
    if (n > 25) throw std::invalid_argument("for_each_subset: configuration too large");
    const std::uint32_t total = 1u << n;
    SiteConfiguration sub;
    sub.indices.reserve(n);
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        sub.indices.clear();
        for (std::size_t b = 0; b < n; ++b)
            if (mask & (1u << b)) sub.indices.push_back(of.indices[b]);
        fn(sub);
    }
}

/**
 * A finite configuration of continuum points in [0,L)^d, stored as a flat
 * coordinate array (point p occupies coords[p*d .. p*d+d)).
 */
struct PointConfiguration {
    int dim = 1;
    std::vector<double> coords;

    PointConfiguration() = default;
    explicit PointConfiguration(int d) : dim(d) {}

    std::size_t size() const { return coords.size() / static_cast<std::size_t>(dim); }
    const double* point(std::size_t p) const { return coords.data() + p * static_cast<std::size_t>(dim); }

    void push_point(const double* x);
    /// Exact coordinate equality against an existing point.
    bool contains_point(const double* x) const;

    /// Keep exactly the points whose flags are true (order preserved).
    PointConfiguration filtered(const std::vector<char>& keep) const;
};

}  // namespace glauber

#endif  // GLAUBER_GRID_HPP
