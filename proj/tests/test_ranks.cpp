#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "rankfd/errors.hpp"
#include "rankfd/ranks.hpp"

using namespace rankfd;

TEST_SUITE_BEGIN("ranks");

TEST_CASE("midranks: forced tie examples") {
    const std::vector<double> a{1.0, 2.0, 2.0, 3.0};
    CHECK(midranks(a) == std::vector<double>{1.0, 2.5, 2.5, 4.0});

    const std::vector<double> b{5.0, 5.0, 5.0};
    CHECK(midranks(b) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("midranks agrees with the counting oracle on mixed ties") {
    const std::vector<double> v{3.0, 1.5, 3.0, 2.0, 7.0, 1.5, 3.0, 9.0, 2.0, 7.0};
    CHECK(midranks(v) == oracle::midranks_counting(v));

    std::mt19937_64 gen(5);
    std::uniform_int_distribution<int> lattice(-4, 4);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> w(1 + rep % 23);
        for (auto& x : w) x = 0.5 * lattice(gen);
        const auto got = midranks(w);
        const auto want = oracle::midranks_counting(w);
        for (std::size_t k = 0; k < w.size(); ++k)
            CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-14));
        double sum = 0.0;
        for (double r : got) sum += r;
        CHECK(sum == doctest::Approx(0.5 * w.size() * (w.size() + 1)).epsilon(1e-13));
    }
}

TEST_CASE("midranks rejects non-finite input") {
    CHECK_THROWS_AS((void)midranks(std::vector<double>{
                        1.0, std::numeric_limits<double>::quiet_NaN()}),
                    invalid_data_error);
    CHECK_THROWS_AS((void)midranks(std::vector<double>{
                        std::numeric_limits<double>::infinity()}),
                    invalid_data_error);
}

TEST_CASE("midranks permute with the values") {
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> lattice(-3, 3);
    std::vector<double> v(12);
    for (auto& x : v) x = 0.5 * lattice(gen);
    const auto base = midranks(v);

    std::vector<std::size_t> perm(v.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> pv(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) pv[k] = v[perm[k]];
    const auto permuted = midranks(pv);
    for (std::size_t k = 0; k < v.size(); ++k) CHECK(permuted[k] == base[perm[k]]);
}

TEST_CASE("rank tables: separated two-group example") {
    const Dataset data({{1.0, 2.0}, {3.0, 4.0}});
    const RankTables t(data);
    CHECK(t.pooled(0) == std::vector<double>{1.0, 2.0});
    CHECK(t.pooled(1) == std::vector<double>{3.0, 4.0});
    CHECK(t.pairwise(0, 1) == std::vector<double>{3.0, 4.0});
    CHECK(t.pairwise(1, 0) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("rank tables match direct midranks of the pooled vectors") {
    std::mt19937_64 gen(23);
    for (int rep = 0; rep < 30; ++rep) {
        const Dataset data = oracle::random_dataset(gen, 3, 2, 8, rep % 2 == 0);
        const RankTables t(data);
        for (std::size_t l = 0; l < 3; ++l) {
            CHECK(t.within(l) == oracle::midranks_counting(data.group(l)));
            for (std::size_t i = 0; i < 3; ++i) {
                if (l == i) continue;
                std::vector<double> pool(data.group(l));
                pool.insert(pool.end(), data.group(i).begin(), data.group(i).end());
                const auto want = oracle::midranks_counting(pool);
                const auto& got = t.pairwise(l, i);
                for (std::size_t k = 0; k < got.size(); ++k)
                    CHECK(got[k] == want[data.size(l) + k]);
            }
        }
    }
}

TEST_CASE("invariants: rank sums and pairwise mean identity") {
    std::mt19937_64 gen(31);
    for (int rep = 0; rep < 30; ++rep) {
        const Dataset data = oracle::random_dataset(gen, 4, 2, 7, true);
        const RankTables t(data);
        const double n_total = static_cast<double>(data.total_size());
        double pooled_sum = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            double within_sum = 0.0;
            for (double r : t.within(i)) within_sum += r;
            const double ni = static_cast<double>(data.size(i));
            CHECK(within_sum == doctest::Approx(0.5 * ni * (ni + 1)).epsilon(1e-13));
            for (double r : t.pooled(i)) pooled_sum += r;
        }
        CHECK(pooled_sum ==
              doctest::Approx(0.5 * n_total * (n_total + 1)).epsilon(1e-13));

        for (std::size_t l = 0; l < 4; ++l) {
            for (std::size_t i = 0; i < 4; ++i) {
                if (l == i) continue;
                double s = 0.0;
                for (double r : t.pairwise(l, i)) s += r;
                for (double r : t.pairwise(i, l)) s += r;
                const double m = static_cast<double>(data.size(l) + data.size(i));
                CHECK(s == doctest::Approx(0.5 * m * (m + 1)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("monotone transform leaves every table unchanged") {
    std::mt19937_64 gen(37);
    const Dataset data = oracle::random_dataset(gen, 3, 3, 6, true);
    std::vector<Sample> transformed;
    for (const auto& g : data.groups()) {
        Sample t;
        for (double v : g) t.push_back(std::exp(0.7 * v) + v);
        transformed.push_back(t);
    }
    const Dataset tdata{std::move(transformed)};
    const RankTables a(data), b(tdata);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.pooled(i) == b.pooled(i));
        CHECK(a.within(i) == b.within(i));
        for (std::size_t l = 0; l < 3; ++l)
            if (l != i) CHECK(a.pairwise(l, i) == b.pairwise(l, i));
    }
}

TEST_SUITE_END();
