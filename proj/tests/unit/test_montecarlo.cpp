#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "favprop/montecarlo.hpp"
#include "favprop/occupancy.hpp"

using namespace favprop;

namespace {

EnsembleConfig base_config() {
    EnsembleConfig cfg;
    cfg.model = ChannelModelSpec::rayleigh();
    cfg.num_antennas = 64;
    cfg.num_terminals = 6;
    cfg.rho = 1.0;
    cfg.trials = 400;
    cfg.seed = 77;
    cfg.collect = {true, true, true, true, true};
    return cfg;
}

}  // namespace

TEST_CASE("ensemble runs are reproducible and worker-count independent") {
    EnsembleConfig cfg = base_config();
    const EnsembleResult a = run_ensemble(cfg);
    const EnsembleResult b = run_ensemble(cfg);
    CHECK(a.capacity == b.capacity);
    CHECK(a.spectrum == b.spectrum);
    CHECK(a.inner_products == b.inner_products);

    cfg.threads = 4;
    const EnsembleResult c = run_ensemble(cfg);
    CHECK(a.capacity == c.capacity);
    CHECK(a.hadamard == c.hadamard);
    CHECK(a.jensen == c.jensen);
    CHECK(a.delta_c == c.delta_c);
    CHECK(a.condition_number == c.condition_number);
    CHECK(a.spectrum == c.spectrum);
    CHECK(a.inner_products == c.inner_products);

    cfg.threads = 1;
    cfg.seed = 78;
    CHECK(run_ensemble(cfg).capacity != a.capacity);
}

TEST_CASE("pool sizes and ordering") {
    const EnsembleConfig cfg = base_config();
    const EnsembleResult r = run_ensemble(cfg);
    CHECK(r.errors.empty());
    CHECK(r.sorted_pool(Metric::Capacity).size() == cfg.trials);
    CHECK(r.sorted_pool(Metric::DeltaC).size() == cfg.trials);
    CHECK(r.sorted_pool(Metric::Spectrum).size() == cfg.trials * cfg.num_terminals);
    CHECK(r.sorted_pool(Metric::InnerProducts).size() ==
          cfg.trials * cfg.num_terminals * (cfg.num_terminals - 1) / 2);

    const auto pool = r.sorted_pool(Metric::Capacity);
    CHECK(std::is_sorted(pool.begin(), pool.end()));

    const Summary s = r.summary(Metric::DeltaC);
    CHECK(s.count == cfg.trials);
    CHECK(s.q01 <= s.q50);
    CHECK(s.q50 <= s.q99);
}

TEST_CASE("per-trial bound chain holds on every trial") {
    EnsembleConfig cfg = base_config();
    cfg.model = ChannelModelSpec::ur_los();
    cfg.trials = 500;
    const EnsembleResult r = run_ensemble(cfg);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        REQUIRE(r.capacity[t] <= r.hadamard[t] + 1e-9);
        REQUIRE(r.hadamard[t] <= r.jensen[t] + 1e-9);
        REQUIRE(r.delta_c[t] >= -1e-12);
    }
}

TEST_CASE("beam-grid fixed angles give a frozen, perfectly conditioned ensemble") {
    const std::size_t m = 16;
    const BeamGrid grid = beam_grid(m);
    std::vector<double> angles(m);
    for (std::size_t i = 0; i < m; ++i) angles[i] = std::asin(grid.sines[i]);

    EnsembleConfig cfg;
    cfg.model = ChannelModelSpec::fixed_los(angles);
    cfg.num_antennas = m;
    cfg.num_terminals = m;
    cfg.trials = 50;
    cfg.seed = 3;
    cfg.collect = {false, true, true, true, false};
    const EnsembleResult r = run_ensemble(cfg);

    for (std::size_t t = 0; t < cfg.trials; ++t) {
        CHECK(r.capacity[t] == r.capacity[0]);
        CHECK(std::abs(r.condition_number[t] - 1.0) <= 1e-9);
        CHECK(r.delta_c[t] <= 1e-10);
    }
}

TEST_CASE("an all-zero channel fails loudly instead of emitting garbage") {
    EnsembleConfig cfg = base_config();
    cfg.model.betas = std::vector<double>(cfg.num_terminals, 0.0);
    cfg.collect = {false, false, true, false, false};
    CHECK_THROWS_AS(run_ensemble(cfg), std::runtime_error);
}

TEST_CASE("config validation") {
    EnsembleConfig cfg = base_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);

    cfg = base_config();
    cfg.collect = {};
    CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);

    cfg = base_config();
    cfg.rho = -2.0;
    CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);

    cfg = base_config();
    cfg.num_terminals = 0;
    CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);
}

TEST_CASE("variance study reproduces the closed-form laws") {
    SUBCASE("Rayleigh at M = 100 and the degenerate M = 1") {
        const auto rows =
            variance_study(ChannelModel::Rayleigh, {100, 1}, 100000, 21);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].var_ip_predicted == doctest::Approx(0.01));
        CHECK(rows[0].ratio_ip > 0.97);
        CHECK(rows[0].ratio_ip < 1.03);
        CHECK(rows[0].var_ipsq_predicted == doctest::Approx(1.02e-4));

        CHECK(rows[1].var_ip_predicted == doctest::Approx(1.0));
        CHECK(rows[1].ratio_ip > 0.95);
        CHECK(rows[1].ratio_ip < 1.05);
    }
    SUBCASE("UR-LoS at M = 100") {
        const auto rows = variance_study(ChannelModel::UrLos, {100}, 100000, 22);
        CHECK(rows[0].var_ip_predicted == doctest::Approx(0.0099));
        CHECK(rows[0].var_ipsq_predicted == doctest::Approx(6.567e-3));
        CHECK(rows[0].ratio_ipsq > 0.9);
        CHECK(rows[0].ratio_ipsq < 1.1);
    }
    SUBCASE("identical for any worker count") {
        const auto one = variance_study(ChannelModel::UrLos, {32}, 10000, 5, 1);
        const auto four = variance_study(ChannelModel::UrLos, {32}, 10000, 5, 4);
        CHECK(one[0].var_ip_sample == four[0].var_ip_sample);
        CHECK(one[0].var_ipsq_sample == four[0].var_ipsq_sample);
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(variance_study(ChannelModel::FixedLos, {10}, 10000, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(variance_study(ChannelModel::Rayleigh, {10}, 100, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(variance_study(ChannelModel::Rayleigh, {}, 10000, 1),
                        std::invalid_argument);
        CHECK_THROWS_AS(variance_study(ChannelModel::Rayleigh, {0}, 10000, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("typical worst pairwise coupling falls as M grows for both models") {
    for (const ChannelModelSpec& spec :
         {ChannelModelSpec::rayleigh(), ChannelModelSpec::ur_los()}) {
        std::vector<double> medians;
        for (std::size_t m : {32u, 128u, 512u}) {
            EnsembleConfig cfg;
            cfg.model = spec;
            cfg.num_antennas = m;
            cfg.num_terminals = 10;
            cfg.trials = 200;
            cfg.seed = 1001;
            cfg.collect.inner_products = true;
            const EnsembleResult r = run_ensemble(cfg);

            const std::size_t pairs = 45;
            std::vector<double> worst(cfg.trials, 0.0);
            for (std::size_t t = 0; t < cfg.trials; ++t)
                for (std::size_t p = 0; p < pairs; ++p)
                    worst[t] = std::max(worst[t], r.inner_products[t * pairs + p]);
            std::sort(worst.begin(), worst.end());
            medians.push_back(quantile(worst, 0.5));
        }
        CHECK(medians[0] > medians[1]);
        CHECK(medians[1] > medians[2]);
    }
}

TEST_CASE("Rayleigh spreads the spectrum while UR-LoS concentrates it") {
    // interquartile range of the 5th-largest Gramian eigenvalue (per antenna)
    auto iqr_5th_largest = [](const ChannelModelSpec& spec) {
        EnsembleConfig cfg;
        cfg.model = spec;
        cfg.num_antennas = 100;
        cfg.num_terminals = 10;
        cfg.trials = 2000;
        cfg.seed = 404;
        cfg.collect.spectrum = true;
        const EnsembleResult r = run_ensemble(cfg);
        std::vector<double> fifth(cfg.trials);
        for (std::size_t t = 0; t < cfg.trials; ++t)
            fifth[t] = r.spectrum[t * 10 + 5] / 100.0;  // index 5 = 5th largest of 10
        std::sort(fifth.begin(), fifth.end());
        return quantile(fifth, 0.75) - quantile(fifth, 0.25);
    };
    const double rayleigh = iqr_5th_largest(ChannelModelSpec::rayleigh());
    const double urlos = iqr_5th_largest(ChannelModelSpec::ur_los());
    CHECK(rayleigh >= 3.0 * urlos);
}
