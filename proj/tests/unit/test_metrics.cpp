#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "favprop/channel.hpp"
#include "favprop/metrics.hpp"
#include "favprop/occupancy.hpp"
#include "favprop/rng.hpp"
#include "favprop/stats.hpp"
#include "test_oracles.hpp"

using namespace favprop;

namespace {

ChannelMatrix coordinate_columns(std::size_t m, std::initializer_list<double> scales) {
    ChannelMatrix g(m, scales.size());
    std::size_t k = 0;
    for (double s : scales) {
        g(k, k) = s;
        ++k;
    }
    return g;
}

ChannelMatrix random_channel(const ChannelModelSpec& spec, std::size_t m, std::size_t k,
                             std::uint64_t seed, std::uint64_t stream) {
    Rng rng = Rng::substream(seed, stream);
    return generate(spec, m, k, rng).matrix;
}

}  // namespace

TEST_CASE("gramian of coordinate columns") {
    SUBCASE("orthonormal pair gives the identity") {
        const CMatrix w = gramian(coordinate_columns(2, {1.0, 1.0}));
        CHECK(std::abs(w(0, 0) - cplx(1.0, 0.0)) < 1e-15);
        CHECK(std::abs(w(1, 1) - cplx(1.0, 0.0)) < 1e-15);
        CHECK(std::abs(w(0, 1)) < 1e-15);
        CHECK(std::abs(w(1, 0)) < 1e-15);
    }
    SUBCASE("scaled columns give the diagonal of squared norms") {
        const CMatrix w = gramian(coordinate_columns(2, {1.0, 2.0}));
        CHECK(w(0, 0).real() == doctest::Approx(1.0));
        CHECK(w(1, 1).real() == doctest::Approx(4.0));
        CHECK(std::abs(w(0, 1)) < 1e-15);
    }
    SUBCASE("hermitian to rounding for random input") {
        const ChannelMatrix g =
            random_channel(ChannelModelSpec::rayleigh(), 16, 5, 31, 0);
        const CMatrix w = gramian(g);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                CHECK(std::abs(w(i, j) - std::conj(w(j, i))) <=
                      1e-12 * std::abs(w(i, j)) + 1e-300);
    }
}

TEST_CASE("sum capacity on hand-sized inputs") {
    SUBCASE("single column of squared norm 3 at rho 1") {
        ChannelMatrix g(3, 1);
        g(0, 0) = 1.0;
        g(1, 0) = 1.0;
        g(2, 0) = 1.0;
        CHECK(sum_capacity(g, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("orthonormal pair at rho 3") {
        const ChannelMatrix g = coordinate_columns(2, {1.0, 1.0});
        CHECK(sum_capacity(g, 3.0) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(jensen_bound(g, 3.0) == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("spectral evaluation matches the brute-force determinant") {
        const ChannelMatrix g =
            random_channel(ChannelModelSpec::rayleigh(), 8, 3, 77, 0);
        const double direct = testing::log2_det_capacity(g, 1.7);
        CHECK(sum_capacity(g, 1.7) == doctest::Approx(direct).epsilon(1e-10));
    }
    SUBCASE("rejects a bad rho") {
        const ChannelMatrix g = coordinate_columns(2, {1.0, 1.0});
        CHECK_THROWS_AS(sum_capacity(g, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(sum_capacity(g, std::nan("")), std::invalid_argument);
        CHECK_THROWS_AS(hadamard_bound(g, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(jensen_bound(g, std::nan("")), std::invalid_argument);
    }
}

TEST_CASE("hadamard bound") {
    SUBCASE("meets the capacity for orthogonal columns") {
        const ChannelMatrix g = coordinate_columns(3, {1.0, 0.5, 2.0});
        CHECK(std::abs(hadamard_bound(g, 2.0) - sum_capacity(g, 2.0)) <= 1e-10);
    }
    SUBCASE("exceeds the capacity for duplicated columns") {
        ChannelMatrix g(2, 2);
        g(0, 0) = 1.0;
        g(0, 1) = 1.0;
        CHECK(hadamard_bound(g, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(sum_capacity(g, 1.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
    }
    SUBCASE("zero column contributes nothing") {
        ChannelMatrix g(2, 2);
        g(0, 0) = 1.0;
        CHECK(hadamard_bound(g, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("jensen bound") {
    SUBCASE("unequal norms open a gap over the Hadamard bound") {
        const ChannelMatrix g = coordinate_columns(2, {1.0, 2.0});
        const double jensen = jensen_bound(g, 1.0);
        const double hadamard = hadamard_bound(g, 1.0);
        CHECK(jensen == doctest::Approx(2.0 * std::log2(3.5)).epsilon(1e-12));
        CHECK(hadamard == doctest::Approx(1.0 + std::log2(5.0)).epsilon(1e-12));
        CHECK(jensen > hadamard);
    }
    SUBCASE("zero matrix gives zero") {
        CHECK(jensen_bound(ChannelMatrix(3, 2), 1.0) == 0.0);
    }
}

TEST_CASE("condition number") {
    SUBCASE("orthonormal columns give exactly one") {
        CHECK(condition_number(coordinate_columns(4, {1.0, 1.0, 1.0})) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("duplicated column is rank deficient") {
        ChannelMatrix g(3, 2);
        g(0, 0) = 1.0;
        g(0, 1) = 1.0;
        CHECK(std::isinf(condition_number(g)));
    }
    SUBCASE("diagonal Gramian of 1 and 4") {
        CHECK(condition_number(coordinate_columns(2, {1.0, 2.0})) ==
              doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("more terminals than antennas is singular by construction") {
        const ChannelMatrix g =
            random_channel(ChannelModelSpec::rayleigh(), 2, 4, 5, 0);
        CHECK(std::isinf(condition_number(g)));
    }
}

TEST_CASE("distance from favorable propagation") {
    SUBCASE("zero for orthogonal columns") {
        CHECK(distance_from_fp(coordinate_columns(3, {1.0, 2.0, 0.5}), 1.0) <= 1e-10);
    }
    SUBCASE("duplicated unit columns at rho 1") {
        ChannelMatrix g(2, 2);
        g(0, 0) = 1.0;
        g(0, 1) = 1.0;
        const double expected = (2.0 - std::log2(3.0)) / std::log2(3.0);
        CHECK(distance_from_fp(g, 1.0) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(expected == doctest::Approx(0.26186).epsilon(1e-4));
    }
    SUBCASE("invariant to scaling G by c and rho by 1/c^2") {
        const ChannelMatrix g =
            random_channel(ChannelModelSpec::rayleigh(), 12, 4, 8, 0);
        ChannelMatrix scaled = g;
        const double c = 3.7;
        for (std::size_t k = 0; k < scaled.cols(); ++k)
            for (cplx& z : scaled.col(k)) z *= c;
        CHECK(distance_from_fp(scaled, 1.3 / (c * c)) ==
              doctest::Approx(distance_from_fp(g, 1.3)).epsilon(1e-9));
    }
    SUBCASE("undefined for the zero channel") {
        CHECK_THROWS_AS(distance_from_fp(ChannelMatrix(3, 2), 1.0), std::domain_error);
        CHECK_THROWS_AS(analyze(ChannelMatrix(3, 2), 1.0), std::domain_error);
    }
}

TEST_CASE("pairwise inner products") {
    SUBCASE("orthogonal columns vanish") {
        const auto ips = pairwise_inner_products(coordinate_columns(3, {1.0, 1.0, 1.0}),
                                                 IpNormalization::Raw);
        REQUIRE(ips.size() == 3);
        for (const cplx& v : ips) CHECK(std::abs(v) < 1e-14);
    }
    SUBCASE("per-antenna normalization divides by M") {
        ChannelMatrix g(4, 2);
        g(0, 0) = 2.0;
        g(0, 1) = 1.0;
        const auto raw = pairwise_inner_products(g, IpNormalization::Raw);
        const auto scaled = pairwise_inner_products(g, IpNormalization::PerAntenna);
        CHECK(std::abs(raw[0] - cplx(2.0, 0.0)) < 1e-15);
        CHECK(std::abs(scaled[0] - cplx(0.5, 0.0)) < 1e-15);
    }
    SUBCASE("critical pair at M=1000 leaves modulus 2/pi") {
        const auto ips =
            pairwise_inner_products(critical_pair(1000), IpNormalization::PerAntenna);
        REQUIRE(ips.size() == 1);
        CHECK(std::abs(ips[0]) ==
              doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-3));
    }
    SUBCASE("full beam-grid steering family is orthogonal") {
        // geometric series: each off-diagonal inner product sums a full set of
        // M-th roots of unity, which cancels exactly
        const std::size_t m = 16;
        ChannelMatrix g(m, m);
        const BeamGrid grid = beam_grid(m);
        for (std::size_t k = 0; k < m; ++k) {
            const auto v = steering_vector_from_sine(grid.sines[k], m, 0.5);
            std::copy(v.begin(), v.end(), g.col(k).begin());
        }
        for (const cplx& v : pairwise_inner_products(g, IpNormalization::Raw))
            CHECK(std::abs(v) <= 1e-9 * static_cast<double>(m));
    }
    SUBCASE("needs two columns") {
        CHECK_THROWS_AS(pairwise_inner_products(ChannelMatrix(3, 1), IpNormalization::Raw),
                        std::invalid_argument);
    }
}

TEST_CASE("favorability test") {
    CHECK(is_favorable(coordinate_columns(3, {1.0, 2.0, 0.5}), 0.0));
    ChannelMatrix dup(2, 2);
    dup(0, 0) = 1.0;
    dup(0, 1) = 1.0;
    CHECK_FALSE(is_favorable(dup, 0.99));
    CHECK(is_favorable(dup, 1.0));

    ChannelMatrix with_zero(2, 2);
    with_zero(0, 0) = 1.0;
    CHECK_FALSE(is_favorable(with_zero, 1e6));
    CHECK_THROWS_AS(is_favorable(dup, -0.1), std::invalid_argument);
}

TEST_CASE("closed-form variance predictors") {
    CHECK(predicted_ip_variance(ChannelModel::Rayleigh, 100) == doctest::Approx(0.01));
    CHECK(predicted_ip_variance(ChannelModel::UrLos, 100) == doctest::Approx(0.0099));
    CHECK(predicted_ip_variance(ChannelModel::Rayleigh, 1) == doctest::Approx(1.0));

    CHECK(predicted_ip_sq_variance(ChannelModel::Rayleigh, 100) ==
          doctest::Approx(1.02e-4).epsilon(1e-12));
    CHECK(predicted_ip_sq_variance(ChannelModel::UrLos, 100) ==
          doctest::Approx(6.567e-3).epsilon(1e-12));
    CHECK(predicted_ip_sq_variance(ChannelModel::UrLos, 1) == 0.0);

    CHECK_THROWS_AS(predicted_ip_variance(ChannelModel::FixedLos, 10),
                    std::invalid_argument);
    CHECK_THROWS_AS(predicted_ip_sq_variance(ChannelModel::Rayleigh, 0),
                    std::invalid_argument);

    const VariancePredictor pred{ChannelModel::UrLos, 100};
    CHECK(pred.ip_variance() == doctest::Approx(0.0099));
    CHECK(pred.ip_sq_variance() == doctest::Approx(6.567e-3));
}

TEST_CASE("UR-LoS squared-product variance approaches 2/(3M)") {
    const double ratio =
        predicted_ip_sq_variance(ChannelModel::UrLos, 1000) / (2.0 / 3000.0);
    CHECK(std::abs(ratio - 1.0) < 0.002);
}

TEST_CASE("capacity bound chain holds across random ensembles") {
    for (const ChannelModelSpec& spec :
         {ChannelModelSpec::rayleigh(), ChannelModelSpec::ur_los()}) {
        for (std::uint64_t t = 0; t < 5000; ++t) {
            const ChannelMatrix g = random_channel(spec, 100, 10, 314, t);
            const double c = sum_capacity(g, 1.0);
            const double h = hadamard_bound(g, 1.0);
            const double j = jensen_bound(g, 1.0);
            REQUIRE(c <= h + 1e-9);
            REQUIRE(h <= j + 1e-9);
        }
    }
}

TEST_CASE("equality witnesses for diagonal Gramians") {
    SUBCASE("orthogonal unequal norms: delta vanishes, Jensen stays above") {
        const ChannelMatrix g = coordinate_columns(3, {1.0, 2.0, 3.0});
        CHECK(distance_from_fp(g, 1.0) <= 1e-10);
        CHECK(jensen_bound(g, 1.0) >= hadamard_bound(g, 1.0));
    }
    SUBCASE("orthogonal equal norms: all three meet and conditioning is perfect") {
        const ChannelMatrix g = coordinate_columns(4, {2.0, 2.0, 2.0, 2.0});
        CHECK(std::abs(jensen_bound(g, 1.5) - sum_capacity(g, 1.5)) <= 1e-9);
        CHECK(condition_number(g) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("spectral identities against direct evaluation") {
    for (std::uint64_t t = 0; t < 20; ++t) {
        const ChannelMatrix g =
            random_channel(ChannelModelSpec::rayleigh(), 9, 4, 1234, t);
        const auto spectrum = gramian_spectrum(g);
        const double trace = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
        CHECK(trace == doctest::Approx(squared_norm(g.data())).epsilon(1e-10));

        const double via_spectrum = sum_capacity_from_spectrum(spectrum, 0.8);
        CHECK(via_spectrum ==
              doctest::Approx(testing::log2_det_capacity(g, 0.8)).epsilon(1e-10));
    }
}

TEST_CASE("largest pairwise coupling shrinks like 1/sqrt(M) for Rayleigh") {
    const std::vector<std::size_t> antenna_counts{32, 128, 512};
    std::vector<double> medians;
    for (std::size_t mi = 0; mi < antenna_counts.size(); ++mi) {
        const std::size_t m = antenna_counts[mi];
        std::vector<double> max_pair;
        for (std::uint64_t t = 0; t < 200; ++t) {
            const ChannelMatrix g = random_channel(ChannelModelSpec::rayleigh(), m, 10,
                                                   500 + mi, t);
            double worst = 0.0;
            for (const cplx& v :
                 pairwise_inner_products(g, IpNormalization::PerAntenna))
                worst = std::max(worst, std::abs(v));
            max_pair.push_back(worst);
        }
        std::sort(max_pair.begin(), max_pair.end());
        medians.push_back(quantile(max_pair, 0.5));
    }
    // quadrupling M should halve the typical coupling
    for (std::size_t i = 1; i < medians.size(); ++i) {
        const double ratio = medians[i] / medians[i - 1];
        CHECK(ratio > 0.35);
        CHECK(ratio < 0.70);
    }
}

TEST_CASE("analyze assembles a consistent report") {
    const ChannelMatrix g = random_channel(ChannelModelSpec::ur_los(), 64, 6, 21, 3);
    const FavorabilityReport report = analyze(g, 2.0);
    CHECK(report.snr == 2.0);
    CHECK(report.capacity <= report.hadamard_bound + 1e-9);
    CHECK(report.hadamard_bound <= report.jensen_bound + 1e-9);
    CHECK(report.delta_c >= -1e-12);
    CHECK(report.gramian_spectrum.size() == 6);
    CHECK(std::is_sorted(report.gramian_spectrum.begin(), report.gramian_spectrum.end()));
    CHECK(report.condition_number >=
          doctest::Approx(1.0).epsilon(1e-12));
    const double trace =
        std::accumulate(report.gramian_spectrum.begin(), report.gramian_spectrum.end(), 0.0);
    CHECK(trace == doctest::Approx(squared_norm(g.data())).epsilon(1e-10));
}
