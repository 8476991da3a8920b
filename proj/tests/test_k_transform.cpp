#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "glauber/k_transform.hpp"
#include "glauber/simulator.hpp"

using namespace glauber;

namespace {

QuasiObservable random_quasi(GridPtr dom, int n_max, int support, Rng& rng) {
    const auto basis = enumerate_configurations(*dom, n_max);
    QuasiObservable G(dom, n_max);
    for (int i = 0; i < support; ++i)
        G.set(basis[rng.next_u64() % basis.size()], rng.uniform(-1, 1));
    return G;
}

// deterministic pseudo-random valuation of a configuration triple
double hash_value(const SiteConfiguration& a, const SiteConfiguration& b, const SiteConfiguration& c) {
    std::uint64_t h = 0x243F6A8885A308D3ull;
    auto mix = [&h](std::uint64_t x) {
        h ^= x + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h *= 0xBF58476D1CE4E5B9ull;
        h ^= h >> 31;
    };
    mix(a.order() + 1);
    for (auto s : a.indices) mix(s + 2);
    mix(b.order() + 101);
    for (auto s : b.indices) mix(s + 102);
    mix(c.order() + 201);
    for (auto s : c.indices) mix(s + 202);
    return static_cast<double>(h >> 11) * 0x1.0p-53 * 2.0 - 1.0;
}

}  // namespace

TEST_CASE("k_apply basics") {
    const GridPtr g = make_grid(1, 1.0, 0.125);

    SUBCASE("indicator of empty maps to the constant 1") {
        const QuasiObservable G = QuasiObservable::indicator(g, 3, SiteConfiguration{});
        CHECK(k_apply(G, SiteConfiguration{}) == 1.0);
        CHECK(k_apply(G, SiteConfiguration({0, 2, 5})) == 1.0);
    }
    SUBCASE("singleton support sums f over the configuration") {
        QuasiObservable G(g, 1);
        for (std::uint32_t s = 0; s < 8; ++s) G.set(SiteConfiguration({s}), 0.5 + s);
        CHECK(k_apply(G, SiteConfiguration({1, 4})) == doctest::Approx((0.5 + 1) + (0.5 + 4)));
    }
    SUBCASE("matches brute force over all 2^8 subsets") {
        Rng rng(RngSpec{31, 0});
        const QuasiObservable G = random_quasi(g, 8, 30, rng);
        const SiteConfiguration full({0, 1, 2, 3, 4, 5, 6, 7});
        double brute = 0.0;
        for (const auto& eta : enumerate_configurations(*g, 8)) brute += G.value(eta);
        CHECK(k_apply(G, full) == doctest::Approx(brute).epsilon(1e-12));
    }
    SUBCASE("positivity preservation") {
        Rng rng(RngSpec{32, 0});
        QuasiObservable G(g, 3);
        const auto basis = enumerate_configurations(*g, 3);
        for (int i = 0; i < 20; ++i) G.set(basis[rng.next_u64() % basis.size()], rng.uniform(0, 1));
        for (const auto& gamma : enumerate_configurations(*g, 5)) CHECK(k_apply(G, gamma) >= 0.0);
    }
    SUBCASE("size guardrail at order > 20") {
        const GridPtr big = make_grid(1, 25.0, 1.0);
        const QuasiObservable G = QuasiObservable::indicator(big, 1, SiteConfiguration{});
        std::vector<std::uint32_t> idx(21);
        for (std::uint32_t i = 0; i < 21; ++i) idx[i] = i;
        CHECK_THROWS_AS(k_apply(G, SiteConfiguration(idx)), SizeError);
    }
}

TEST_CASE("k_inverse basics") {
    const GridPtr g = make_grid(1, 1.0, 0.25);

    SUBCASE("constant 1 inverts to the indicator of empty") {
        const QuasiObservable F = QuasiObservable::filled(g, 4, [](const SiteConfiguration&) { return 1.0; });
        CHECK(k_inverse(F, SiteConfiguration{}) == 1.0);
        for (const auto& eta : enumerate_configurations(*g, 4))
            if (eta.order() > 0) CHECK(k_inverse(F, eta) == doctest::Approx(0.0));
    }
    SUBCASE("product observable inverts to the shifted product") {
        // F(eta) = prod a(y)  =>  K^-1 F(eta) = prod (a(y) - 1)
        const auto a = [](std::uint32_t s) { return 0.3 + 0.4 * s; };
        const QuasiObservable F = QuasiObservable::filled(g, 4, [&](const SiteConfiguration& eta) {
            double p = 1;
            for (auto s : eta.indices) p *= a(s);
            return p;
        });
        for (const auto& eta : enumerate_configurations(*g, 4)) {
            double expect = 1;
            for (auto s : eta.indices) expect *= (a(s) - 1.0);
            CHECK(k_inverse(F, eta) == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("K^-1 K = K K^-1 = identity on the truncated space") {
    const GridPtr g = make_grid(1, 1.0, 0.1);  // 10 sites
    Rng rng(RngSpec{33, 0});
    for (int trial = 0; trial < 20; ++trial) {
        const QuasiObservable G = random_quasi(g, 10, 40, rng);
        const QuasiObservable KG = k_apply_all(G, 10);
        const QuasiObservable back = k_inverse_all(KG, 10);
        for (const auto& eta : enumerate_configurations(*g, 10))
            CHECK(back.value(eta) == doctest::Approx(G.value(eta)).epsilon(1e-12).scale(1.0));
        const QuasiObservable KiG = k_inverse_all(G, 10);
        const QuasiObservable fwd = k_apply_all(KiG, 10);
        for (const auto& eta : enumerate_configurations(*g, 10))
            CHECK(fwd.value(eta) == doctest::Approx(G.value(eta)).epsilon(1e-12).scale(1.0));
    }

    SUBCASE("with smaller n_max the identity holds on orders <= n_max") {
        const QuasiObservable G = random_quasi(g, 3, 15, rng);
        const QuasiObservable KG = k_apply_all(G, 3);
        const QuasiObservable back = k_inverse_all(KG, 3);
        for (const auto& eta : enumerate_configurations(*g, 3))
            CHECK(back.value(eta) == doctest::Approx(G.value(eta)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("whole-space transforms agree with the per-configuration definitional route") {
    const GridPtr g = make_grid(1, 1.0, 0.125);
    Rng rng(RngSpec{34, 0});
    for (int n_max : {8, 3}) {
        for (int trial = 0; trial < 10; ++trial) {
            const QuasiObservable G = random_quasi(g, n_max, 12, rng);
            const QuasiObservable KG = k_apply_all(G, n_max);
            const QuasiObservable KiG = k_inverse_all(G, n_max);
            for (const auto& eta : enumerate_configurations(*g, n_max)) {
                CHECK(KG.value(eta) == doctest::Approx(k_apply(G, eta)).epsilon(1e-13).scale(1.0));
                CHECK(KiG.value(eta) == doctest::Approx(k_inverse(G, eta)).epsilon(1e-13).scale(1.0));
            }
        }
    }
}

TEST_CASE("minlos identity is exact under the simple-subset convention") {
    const GridPtr g = make_grid(1, 1.2, 0.2);  // 6 sites

    SUBCASE("empty-stratum indicator gives 1 = 1") {
        const auto [lhs, rhs] = minlos_check(
            [](const SiteConfiguration& xi, const SiteConfiguration& eta, const SiteConfiguration&) {
                return (xi.empty() && eta.empty()) ? 1.0 : 0.0;
            },
            *g, 4);
        CHECK(lhs == 1.0);
        CHECK(rhs == 1.0);
    }
    SUBCASE("product weights c1^|xi| c2^|eta|") {
        const auto [lhs, rhs] = minlos_check(
            [](const SiteConfiguration& xi, const SiteConfiguration& eta, const SiteConfiguration&) {
                return std::pow(1.7, static_cast<double>(xi.order())) *
                       std::pow(-0.6, static_cast<double>(eta.order()));
            },
            *g, 4);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
    SUBCASE("master regression: random H depending on all three slots") {
        for (int trial = 0; trial < 50; ++trial) {
            const double salt = trial * 0.37;
            const auto [lhs, rhs] = minlos_check(
                [&](const SiteConfiguration& xi, const SiteConfiguration& eta, const SiteConfiguration& uni) {
                    return hash_value(xi, eta, uni) + salt * static_cast<double>(uni.order());
                },
                *g, 4);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13).scale(1.0));
        }
    }
}
