#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "glauber/estimation.hpp"
#include "glauber/simulator.hpp"

using namespace glauber;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Wilson-Hilferty approximation of the chi-square 0.99 quantile
double chi2_crit_99(int dof) {
    const double k = dof;
    const double z = 2.3263478740408408;
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    return k * t * t * t;
}

SimulatorParams free_params(double z = 0.5, double delta = 0.05, double L = 10.0) {
    SimulatorParams p;
    p.z = z;
    p.delta = delta;
    p.dim = 1;
    p.length = L;
    p.phi = PairPotential::zero(1);
    return p;
}

}  // namespace

TEST_CASE("rng streams are deterministic and replica-independent") {
    Rng a(RngSpec{123, 0});
    Rng b(RngSpec{123, 0});
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(RngSpec{123, 1});
    bool differs = false;
    Rng a2(RngSpec{123, 0});
    for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);
}

TEST_CASE("uniform01 stays in [0,1); poisson moments") {
    Rng rng(RngSpec{7, 0});
    double sum = 0, sum2 = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    CHECK(sum / N == doctest::Approx(0.5).epsilon(0.01));
    CHECK(sum2 / N == doctest::Approx(1.0 / 3).epsilon(0.01));

    double psum = 0, psum2 = 0;
    const double lam = 3.7;
    for (int i = 0; i < N; ++i) {
        const double k = static_cast<double>(rng.poisson(lam));
        psum += k;
        psum2 += k * k;
    }
    const double mean = psum / N;
    const double var = psum2 / N - mean * mean;
    CHECK(mean == doctest::Approx(lam).epsilon(0.01));
    CHECK(var == doctest::Approx(lam).epsilon(0.02));
}

TEST_CASE("sample_poisson_initial") {
    SimulatorParams sim = free_params();

    SUBCASE("z0 = 0 always yields the empty configuration") {
        Rng rng(RngSpec{60, 0});
        for (int i = 0; i < 50; ++i) CHECK(sample_poisson_initial(0.0, sim, rng).size() == 0);
    }
    SUBCASE("mean count within 3 SE of z0 L^d; all points inside the box") {
        const std::size_t R = 10000;
        double sum = 0, sum2 = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{61, r});
            const PointConfiguration g = sample_poisson_initial(0.5, sim, rng);
            for (std::size_t p = 0; p < g.size(); ++p) {
                CHECK(g.point(p)[0] >= 0.0);
                CHECK(g.point(p)[0] < sim.length);
            }
            sum += static_cast<double>(g.size());
            sum2 += static_cast<double>(g.size()) * static_cast<double>(g.size());
        }
        const double mean = sum / R;
        const double var = sum2 / R - mean * mean;
        const double se = std::sqrt(var / R);
        CHECK(std::abs(mean - 5.0) <= 3.0 * se);
    }
    SUBCASE("count distribution passes a chi-square GOF at significance 0.01") {
        const std::size_t R = 10000;
        const double lam = 5.0;
        std::vector<double> observed(30, 0.0);
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{62, r});
            const std::size_t n = sample_poisson_initial(0.5, sim, rng).size();
            observed[std::min<std::size_t>(n, observed.size() - 1)] += 1.0;
        }
        // expected Poisson(5) bin masses, tail merged into the last cell
        std::vector<double> expected(observed.size(), 0.0);
        double pmf = std::exp(-lam), cdf = 0.0;
        for (std::size_t k = 0; k + 1 < expected.size(); ++k) {
            expected[k] = R * pmf;
            cdf += pmf;
            pmf *= lam / static_cast<double>(k + 1);
        }
        expected.back() = R * (1.0 - cdf);
        // merge cells with expected < 5
        double chi2 = 0;
        int cells = 0;
        double obs_acc = 0, exp_acc = 0;
        for (std::size_t k = 0; k < expected.size(); ++k) {
            obs_acc += observed[k];
            exp_acc += expected[k];
            if (exp_acc >= 5.0) {
                chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
                ++cells;
                obs_acc = exp_acc = 0;
            }
        }
        if (exp_acc > 0) {
            chi2 += (obs_acc - exp_acc) * (obs_acc - exp_acc) / exp_acc;
            ++cells;
        }
        CHECK(chi2 < chi2_crit_99(cells - 1));
    }
}

TEST_CASE("death_step") {
    SUBCASE("delta out of (0,1) rejected; empty stays empty") {
        Rng rng(RngSpec{63, 0});
        PointConfiguration empty(1);
        CHECK(death_step(empty, 0.1, rng).size() == 0);
        CHECK_THROWS_AS(death_step(empty, 0.0, rng), std::invalid_argument);
    }
    SUBCASE("survivor count is Binomial(100, 0.9) in the mean; coordinates survive exactly") {
        PointConfiguration g(1);
        for (int i = 0; i < 100; ++i) {
            double x = 0.05 + 0.099 * i;
            g.push_point(&x);
        }
        const std::size_t R = 10000;
        double sum = 0, sum2 = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{64, r});
            const PointConfiguration s = death_step(g, 0.1, rng);
            sum += static_cast<double>(s.size());
            sum2 += static_cast<double>(s.size()) * static_cast<double>(s.size());
            if (r == 0)
                for (std::size_t p = 0; p < s.size(); ++p) CHECK(g.contains_point(s.point(p)));
        }
        const double mean = sum / R;
        const double var = sum2 / R - mean * mean;
        CHECK(std::abs(mean - 90.0) <= 3.0 * std::sqrt(var / R));
        CHECK(var == doctest::Approx(100 * 0.1 * 0.9).epsilon(0.1));
    }
    SUBCASE("per-position survival frequencies are uniform (chi-square)") {
        PointConfiguration g(1);
        for (int i = 0; i < 20; ++i) {
            double x = 0.25 + 0.45 * i;
            g.push_point(&x);
        }
        const std::size_t R = 10000;
        const double delta = 0.3;
        std::vector<double> survived(20, 0.0);
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{65, r});
            const PointConfiguration s = death_step(g, delta, rng);
            for (std::size_t p = 0; p < s.size(); ++p)
                for (std::size_t i = 0; i < 20; ++i)
                    if (s.point(p)[0] == g.point(i)[0]) survived[i] += 1;
        }
        const double expected = R * (1.0 - delta);
        double chi2 = 0;
        for (double s : survived) chi2 += (s - expected) * (s - expected) / expected;
        CHECK(chi2 < chi2_crit_99(19));
    }
}

TEST_CASE("birth_step") {
    SUBCASE("free case: expected births z delta L^d") {
        SimulatorParams sim = free_params(0.5, 0.05, 10.0);
        const PointConfiguration empty(1);
        const std::size_t R = 100000;
        double sum = 0, sum2 = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{66, r});
            const double n = static_cast<double>(birth_step(empty, sim, rng).size());
            sum += n;
            sum2 += n * n;
        }
        const double mean = sum / R;
        const double se = std::sqrt((sum2 / R - mean * mean) / R);
        CHECK(std::abs(mean - 0.25) <= 3.0 * se);
    }
    SUBCASE("hard core: densely packed configuration blocks every birth") {
        SimulatorParams sim = free_params(0.8, 0.2, 1.0);
        sim.phi = PairPotential::truncated_constant(1, kInf, 0.6);
        PointConfiguration packed(1);
        for (double x : {0.1, 0.5, 0.9}) packed.push_point(&x);  // covers [0,1) within range 0.6
        for (std::size_t r = 0; r < 10000; ++r) {
            Rng rng(RngSpec{67, r});
            CHECK(birth_step(packed, sim, rng).size() == 0);
        }
    }
    SUBCASE("birth intensity profile matches z delta e^{-E(y,gamma)} (chi-square, frozen gamma)") {
        SimulatorParams sim = free_params(2.0, 0.2, 10.0);
        sim.phi = PairPotential::truncated_constant(1, 1.0, 0.5);
        PointConfiguration frozen(1);
        for (double x : {2.0, 2.4, 7.0}) frozen.push_point(&x);

        const int B = 20;
        std::vector<double> observed(B, 0.0);
        const std::size_t R = 100000;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{68, r});
            const PointConfiguration births = birth_step(frozen, sim, rng);
            for (std::size_t p = 0; p < births.size(); ++p) {
                int b = static_cast<int>(births.point(p)[0] / (sim.length / B));
                if (b >= 0 && b < B) observed[static_cast<std::size_t>(b)] += 1.0;
            }
        }
        // fine-quadrature oracle of the per-bin intensity integral
        std::vector<double> expected(B, 0.0);
        const int fine = 4000;
        const double wq = sim.length / fine;
        for (int i = 0; i < fine; ++i) {
            const double y = (i + 0.5) * wq;
            const double e = relative_energy(&y, frozen, sim.phi);
            expected[static_cast<std::size_t>(static_cast<int>(y / (sim.length / B)))] +=
                R * sim.z * sim.delta * std::exp(-e) * wq;
        }
        double chi2 = 0;
        for (int b = 0; b < B; ++b) {
            CHECK(expected[static_cast<std::size_t>(b)] >= 5.0);
            const double d = observed[static_cast<std::size_t>(b)] - expected[static_cast<std::size_t>(b)];
            chi2 += d * d / expected[static_cast<std::size_t>(b)];
        }
        CHECK(chi2 < chi2_crit_99(B));  // Poisson cells: dof = number of cells
    }
}

TEST_CASE("chain_step") {
    SUBCASE("free-case mean-count recursion holds along the chain") {
        SimulatorParams sim = free_params(0.5, 0.05, 10.0);
        const std::size_t R = 4000;
        const int M = 60;
        std::vector<double> sums(M + 1, 0.0), sums2(M + 1, 0.0);
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{69, r});
            PointConfiguration g0 = sample_poisson_initial(0.2, sim, rng);
            ChainState st(std::move(g0), rng);
            sums[0] += static_cast<double>(st.configuration.size());
            sums2[0] += std::pow(static_cast<double>(st.configuration.size()), 2);
            for (int m = 1; m <= M; ++m) {
                st = chain_step(st, sim);
                sums[static_cast<std::size_t>(m)] += static_cast<double>(st.configuration.size());
                sums2[static_cast<std::size_t>(m)] += std::pow(static_cast<double>(st.configuration.size()), 2);
            }
        }
        for (int m : {10, 30, 60}) {
            const double mean = sums[static_cast<std::size_t>(m)] / R;
            const double var = sums2[static_cast<std::size_t>(m)] / R - mean * mean;
            const double se = std::sqrt(var / R);
            const double predict = free_case_k1(0.2, sim, static_cast<std::uint64_t>(m)) * sim.length;
            CHECK(std::abs(mean - predict) <= 3.0 * se);
        }
    }
    SUBCASE("void probability from the empty configuration") {
        SimulatorParams sim = free_params(0.5, 0.05, 10.0);
        const std::size_t R = 20000;
        double empties = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{70, r});
            ChainState st(PointConfiguration(1), rng);
            st = chain_step(st, sim);
            if (st.configuration.size() == 0) empties += 1;
        }
        const double p = empties / R;
        const double expect = std::exp(-sim.z * sim.delta * sim.length);
        const double se = std::sqrt(expect * (1 - expect) / R);
        CHECK(std::abs(p - expect) <= 3.0 * se);
    }
    SUBCASE("one-step expectation matches the lattice transition operator (master check)") {
        // interacting desk case; gamma_0 on grid cells, tolerance 3 SE + c_h h
        const GridPtr grid = make_grid(1, 1.0, 0.125);
        const GridPtr grid_half = make_grid(1, 1.0, 0.0625);
        const DynamicsParams params(0.5, 0.05, 1.0, PairPotential::truncated_constant(1, 1.0, 0.25), grid);
        const DynamicsParams params_half(0.5, 0.05, 1.0, PairPotential::truncated_constant(1, 1.0, 0.25),
                                         grid_half);
        SimulatorParams sim = simulator_params_of(params);

        // gamma_0 at two cell centers
        const SiteConfiguration gamma0({1, 5});
        PointConfiguration g0(1);
        for (std::uint32_t s : gamma0.indices) {
            const std::vector<double> x = grid->site_coords(s);
            g0.push_point(x.data());
        }
        // F = KG for G supported on low strata, built per grid
        const auto make_G = [](GridPtr dom) {
            QuasiObservable G(dom, static_cast<int>(dom->num_sites()));
            G.set(SiteConfiguration{}, 0.3);
            for (std::uint32_t s = 0; s < dom->num_sites(); ++s)
                G.set(SiteConfiguration({s}), dom->site_coords(s)[0] < 0.5 ? 1.0 : -0.5);
            return G;
        };
        const QuasiObservable G = make_G(grid);
        const QuasiObservable F = k_apply_all(G, static_cast<int>(grid->num_sites()));

        const std::size_t R = 30000;
        std::vector<PointConfiguration> finals(R, PointConfiguration(1));
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{71, r});
            ChainState st(g0, rng);
            st = chain_step(st, sim);
            finals[r] = std::move(st.configuration);
        }
        const MeanSE emp = empirical_pairing(G, finals);
        const double det = p_delta_observable(F, gamma0, params, PDeltaForm::Direct).value;

        // h-sensitivity probe of the deterministic side
        const SiteConfiguration gamma0_half({3, 11});  // the same physical points on the halved grid
        const QuasiObservable G_half = make_G(grid_half);
        const QuasiObservable F_half = k_apply_all(G_half, 8);
        const double det_half = p_delta_observable(F_half, gamma0_half, params_half, PDeltaForm::Direct).value;
        const double c_h = 2.0 * std::abs(det - det_half) / grid->spacing();

        CHECK(std::abs(emp.mean - det) <= 3.0 * emp.se + c_h * grid->spacing() + 1e-6);
    }
}

TEST_CASE("run_chain") {
    SimulatorParams sim = free_params(0.5, 0.05, 10.0);

    SUBCASE("zero steps returns the initial state") {
        Rng rng(RngSpec{72, 0});
        PointConfiguration g0 = sample_poisson_initial(0.5, sim, rng);
        const std::size_t n0 = g0.size();
        const TrajectorySummary s = run_chain(ChainState(std::move(g0), rng), 0, sim);
        CHECK(s.final_state.configuration.size() == n0);
        CHECK(s.counts.size() == 1);
        CHECK(s.final_state.step_index == 0);
    }
    SUBCASE("step_index increments by exactly one per step") {
        Rng rng(RngSpec{72, 1});
        PointConfiguration g0 = sample_poisson_initial(0.5, sim, rng);
        const TrajectorySummary s = run_chain(ChainState(std::move(g0), rng), 17, sim);
        CHECK(s.final_state.step_index == 17);
    }
    SUBCASE("identical RngSpec yields bit-identical trajectories") {
        for (int rep = 0; rep < 3; ++rep) {
            Rng rng1(RngSpec{73, static_cast<std::uint64_t>(rep)});
            Rng rng2(RngSpec{73, static_cast<std::uint64_t>(rep)});
            PointConfiguration a0 = sample_poisson_initial(0.5, sim, rng1);
            PointConfiguration b0 = sample_poisson_initial(0.5, sim, rng2);
            const TrajectorySummary a = run_chain(ChainState(std::move(a0), rng1), 50, sim);
            const TrajectorySummary b = run_chain(ChainState(std::move(b0), rng2), 50, sim);
            CHECK(a.counts == b.counts);
            REQUIRE(a.final_state.configuration.coords.size() == b.final_state.configuration.coords.size());
            for (std::size_t i = 0; i < a.final_state.configuration.coords.size(); ++i)
                CHECK(a.final_state.configuration.coords[i] == b.final_state.configuration.coords[i]);
        }
    }
    SUBCASE("long-run mean count approaches z L^d after burn-in") {
        const std::size_t R = 2000;
        const int M = 120;  // beyond the 5/delta = 100 burn-in
        double sum = 0, sum2 = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{74, r});
            PointConfiguration g0 = sample_poisson_initial(0.2, sim, rng);
            const TrajectorySummary s = run_chain(ChainState(std::move(g0), rng), M, sim);
            const double n = static_cast<double>(s.final_state.configuration.size());
            sum += n;
            sum2 += n * n;
        }
        const double mean = sum / R;
        const double se = std::sqrt((sum2 / R - mean * mean) / R);
        CHECK(std::abs(mean - sim.z * sim.length) <= 3.0 * se);
    }
    SUBCASE("monotone blocking: adding a point never raises an acceptance probability") {
        SimulatorParams hard = free_params(0.5, 0.05, 10.0);
        hard.phi = PairPotential::truncated_constant(1, 1.3, 0.8);
        Rng rng(RngSpec{75, 0});
        for (int trial = 0; trial < 200; ++trial) {
            PointConfiguration g(1);
            const int n = static_cast<int>(rng.next_u64() % 6);
            for (int i = 0; i < n; ++i) {
                double p = rng.uniform(0, 10);
                g.push_point(&p);
            }
            double y = rng.uniform(0, 10);
            double extra = rng.uniform(0, 10);
            if (g.contains_point(&y) || g.contains_point(&extra) || y == extra) continue;
            const double before = std::exp(-relative_energy(&y, g, hard.phi));
            PointConfiguration g2 = g;
            g2.push_point(&extra);
            const double after = std::exp(-relative_energy(&y, g2, hard.phi));
            CHECK(after <= before + 1e-15);
        }
    }
    SUBCASE("trajectory dump format") {
        Rng rng(RngSpec{76, 0});
        PointConfiguration g0 = sample_poisson_initial(0.3, sim, rng);
        std::ostringstream os;
        write_trajectory_header(os, sim, RngSpec{76, 0});
        run_chain(ChainState(std::move(g0), rng), 5, sim,
                  [&](const ChainState& st) { write_trajectory_row(os, st); });
        const std::string out = os.str();
        CHECK(out.find("# glauber trajectory v1") == 0);
        CHECK(out.find("z=0.5") != std::string::npos);
        CHECK(out.find("potential=zero") != std::string::npos);
        CHECK(std::count(out.begin(), out.end(), '\n') >= 8);  // header + 6 rows
    }
}

TEST_CASE("two-dimensional chain smoke") {
    SimulatorParams sim;
    sim.z = 0.8;
    sim.delta = 0.1;
    sim.dim = 2;
    sim.length = 3.0;
    sim.phi = PairPotential::gaussian(2, 1.0, 0.4);

    SUBCASE("initial sampling and mean-count recursion in d = 2") {
        SimulatorParams free2 = sim;
        free2.phi = PairPotential::zero(2);
        const std::size_t R = 3000;
        const int M = 20;
        double sum = 0, sum2 = 0;
        for (std::size_t r = 0; r < R; ++r) {
            Rng rng(RngSpec{77, r});
            PointConfiguration g0 = sample_poisson_initial(0.3, free2, rng);
            for (std::size_t p = 0; p < g0.size(); ++p) {
                CHECK(g0.point(p)[0] < free2.length);
                CHECK(g0.point(p)[1] < free2.length);
            }
            const TrajectorySummary s = run_chain(ChainState(std::move(g0), rng), M, free2);
            const double n = static_cast<double>(s.final_state.configuration.size());
            sum += n;
            sum2 += n * n;
        }
        const double mean = sum / R;
        const double se = std::sqrt((sum2 / R - mean * mean) / R);
        const double predict = free_case_k1(0.3, free2, M) * free2.box_volume();
        CHECK(std::abs(mean - predict) <= 3.0 * se);
    }
    SUBCASE("interacting births are suppressed near existing points") {
        PointConfiguration frozen(2);
        const double center[2] = {1.5, 1.5};
        frozen.push_point(center);
        std::size_t near = 0, far = 0, tries = 0;
        for (std::size_t r = 0; r < 40000; ++r) {
            Rng rng(RngSpec{78, r});
            const PointConfiguration births = birth_step(frozen, sim, rng);
            for (std::size_t p = 0; p < births.size(); ++p) {
                ++tries;
                const double dx = births.point(p)[0] - 1.5, dy = births.point(p)[1] - 1.5;
                (std::sqrt(dx * dx + dy * dy) < 0.4 ? near : far) += 1;
            }
        }
        REQUIRE(tries > 500);
        // the disc of radius 0.4 around the occupant covers ~5.6% of the box
        // but carries acceptance < e^{-0.6}; its share must drop well below that
        CHECK(static_cast<double>(near) / static_cast<double>(near + far) < 0.04);
    }
}

TEST_CASE("periodic boundary option wraps displacements") {
    SimulatorParams sim = free_params(0.5, 0.05, 10.0);
    sim.phi = PairPotential::truncated_constant(1, 2.0, 1.0);
    sim.periodic = true;
    PointConfiguration g(1);
    double a = 0.2;
    g.push_point(&a);
    double y = 9.9;  // separation wraps to 0.3 on the torus
    CHECK(sim.energy(&y, g) == doctest::Approx(2.0));
    sim.periodic = false;
    CHECK(sim.energy(&y, g) == doctest::Approx(0.0));
}
