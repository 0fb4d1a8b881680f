#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rankfd/distributions.hpp"
#include "rankfd/errors.hpp"
#include "rankfd/linalg.hpp"
#include "rankfd/matrix.hpp"
#include "rankfd/rng.hpp"

using namespace rankfd;
using namespace rankfd::num;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("symmetric eigenvalues of diagonal and projector matrices") {
    const Matrix d = Matrix::diagonal(std::vector<double>{3.0, 1.0, 0.0});
    const auto ev = symmetric_eigenvalues(d);
    REQUIRE(ev.size() == 3);
    CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(ev[2]) < 1e-12);

    // centering matrix P4: spectrum {1,1,1,0}
    Matrix p4(4, 4, -0.25);
    for (std::size_t i = 0; i < 4; ++i) p4(i, i) += 1.0;
    const auto pev = symmetric_eigenvalues(p4);
    for (int k = 0; k < 3; ++k) CHECK(pev[k] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pev[3]) < 1e-12);
}

TEST_CASE("random symmetric matrices: eigenvalue sum and product") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 25; ++rep) {
        const std::size_t n = 6;
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = nd(gen);
        const auto ev = symmetric_eigenvalues(m);
        double sum = 0.0, prod = 1.0;
        for (double l : ev) {
            sum += l;
            prod *= l;
        }
        CHECK(sum == doctest::Approx(m.trace()).epsilon(1e-9));
        CHECK(prod == doctest::Approx(oracle::lu_determinant(m)).epsilon(1e-7));
    }
}

TEST_CASE("asymmetric input is rejected") {
    Matrix m(2, 2, {1.0, 2.0, 0.5, 1.0});
    CHECK_THROWS_AS((void)symmetric_eigenvalues(m), domain_error);
}

TEST_CASE("svd reconstructs random matrices") {
    std::mt19937_64 gen(7);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t r = 3 + rep % 4, c = 3 + (rep / 2) % 4;
        Matrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = nd(gen);
        const Svd dec = singular_value_decomposition(m);
        Matrix rec(r, c);
        for (std::size_t k = 0; k < dec.sigma.size(); ++k)
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    rec(i, j) += dec.sigma[k] * dec.u(i, k) * dec.v(j, k);
        CHECK((rec - m).max_abs() < 1e-10);
    }
}

TEST_CASE("chi-square and normal reference values") {
    CHECK(chi_square_quantile(0.95, 1.0) == doctest::Approx(3.841459).epsilon(1e-6));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(normal_cdf(normal_quantile(0.31)) == doctest::Approx(0.31).epsilon(1e-12));
    // P(a,x) against closed forms: chi2_2 cdf = 1 - exp(-x/2)
    for (double x : {0.3, 1.0, 2.7, 9.0})
        CHECK(chi_square_cdf(x, 2.0) ==
              doctest::Approx(1.0 - std::exp(-0.5 * x)).epsilon(1e-12));
}

TEST_CASE("quantile round trips, including non-integer df") {
    for (double df : {1.0, 2.5, 7.0, 26.492}) {
        for (double p : {0.01, 0.2, 0.5, 0.9, 0.95, 0.999}) {
            const double x = chi_square_quantile(p, df);
            CHECK(chi_square_cdf(x, df) == doctest::Approx(p).epsilon(1e-9));
        }
    }
    for (double x : {0.3, 1.0, 2.0, 5.0, 42.4997}) {
        const double p = f_cdf(x, 1.0, 26.492);
        CHECK(f_quantile(p, 1.0, 26.492) == doctest::Approx(x).epsilon(1e-7));
    }
}

TEST_CASE("distribution functions are monotone on grids") {
    double prev = -1.0;
    for (int k = 1; k < 60; ++k) {
        const double v = f_cdf(0.25 * k, 3.7, 11.2);
        CHECK(v >= prev);
        prev = v;
    }
    prev = -1.0;
    for (int k = 1; k < 60; ++k) {
        const double v = chi_square_cdf(0.25 * k, 4.4);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("rng: fixed seed reproduces draws, streams differ") {
    RngStream a(42, 3, 1), b(42, 3, 1), c(42, 4, 1);
    bool any_diff = false;
    for (int k = 0; k < 10; ++k) {
        const double x = a.next_uniform();
        CHECK(x == b.next_uniform());
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        if (x != c.next_uniform()) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("rng: variate moments") {
    RngStream rng(2024);
    const int n = 1000000;
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double x = rng.next_double_exponential();
        sum += x;
        sum2 += x * x;
    }
    const double mean = sum / n;
    const double var = sum2 / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(var == doctest::Approx(1.0).epsilon(0.01));

    // lognormal(1): median of exp(N(0,1)) is 1
    std::vector<double> ln(100001);
    RngStream rng2(99, 1);
    for (auto& v : ln) v = rng2.next_lognormal(1.0);
    std::nth_element(ln.begin(), ln.begin() + 50000, ln.end());
    CHECK(ln[50000] == doctest::Approx(1.0).epsilon(0.02));

    RngStream rng3(7, 2);
    double nsum = 0.0, nsum2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double z = rng3.next_normal();
        nsum += z;
        nsum2 += z * z;
    }
    CHECK(std::abs(nsum / n) < 0.005);
    CHECK(nsum2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_SUITE_END();
