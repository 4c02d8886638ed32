#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmtkit/matrix.hpp"
#include "test_support.hpp"

using namespace rmtkit;
using testsupport::Rng;

namespace {

RealGrid random_grid(Rng& rng, int rows, int cols, double lo = -2.0, double hi = 2.0) {
    RealGrid g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) g.at(r, c) = rng.uniform(lo, hi);
    return g;
}

SymmetricMatrix random_symmetric(Rng& rng, int n, double lo = -3.0, double hi = 3.0) {
    SymmetricMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, rng.uniform(lo, hi));
    return m;
}

double column_mean(const RealGrid& g, int c) {
    double s = 0.0;
    for (int r = 0; r < g.rows; ++r) s += g.at(r, c);
    return s / g.rows;
}

double column_var(const RealGrid& g, int c) {
    double m = column_mean(g, c);
    double ss = 0.0;
    for (int r = 0; r < g.rows; ++r) ss += (g.at(r, c) - m) * (g.at(r, c) - m);
    return ss / (g.rows - 1);
}

// definitional Pearson, the test-side oracle
double pearson_oracle(const RealGrid& g, int i, int j) {
    double mi = column_mean(g, i), mj = column_mean(g, j);
    double num = 0.0, di = 0.0, dj = 0.0;
    for (int r = 0; r < g.rows; ++r) {
        num += (g.at(r, i) - mi) * (g.at(r, j) - mj);
        di += (g.at(r, i) - mi) * (g.at(r, i) - mi);
        dj += (g.at(r, j) - mj) * (g.at(r, j) - mj);
    }
    return num / (std::sqrt(di) * std::sqrt(dj));
}

GrowthPanel grid_to_growth(const RealGrid& g) {
    GrowthPanel growth;
    for (int c = 0; c < g.cols; ++c) growth.countries.push_back("c" + std::to_string(c));
    for (int r = 0; r < g.rows; ++r) growth.years.push_back(2000 + r);
    for (int r = 0; r < g.rows; ++r)
        for (int c = 0; c < g.cols; ++c) growth.values.emplace_back(g.at(r, c));
    return growth;
}

} // namespace

TEST_CASE("standardize_columns meets its moment contract") {
    RealGrid g(3, 1);
    g.at(0, 0) = 1.0;
    g.at(1, 0) = 2.0;
    g.at(2, 0) = 3.0;
    auto s = standardize_columns(g);
    CHECK(column_mean(s, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(column_var(s, 0) == doctest::Approx(1.0).epsilon(1e-10));

    // idempotence on already-standardized input
    auto twice = standardize_columns(s);
    for (int r = 0; r < 3; ++r)
        CHECK(twice.at(r, 0) == doctest::Approx(s.at(r, 0)).epsilon(1e-12));

    Rng rng(5);
    auto wide = random_grid(rng, 25, 6);
    auto sw = standardize_columns(wide);
    for (int c = 0; c < 6; ++c) {
        CHECK(std::abs(column_mean(sw, c)) < 1e-12);
        CHECK(column_var(sw, c) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("standardize_columns rejects constant columns and short grids") {
    RealGrid constant(3, 1);
    for (int r = 0; r < 3; ++r) constant.at(r, 0) = 4.2;
    CHECK_THROWS_AS(standardize_columns(constant), DataError);
    CHECK_THROWS_AS(standardize_columns(RealGrid(1, 2)), DataError);
}

TEST_CASE("correlation of identical and opposite columns") {
    RealGrid g(4, 2);
    for (int r = 0; r < 4; ++r) {
        g.at(r, 0) = r + 1.0;
        g.at(r, 1) = r + 1.0;
    }
    auto same = correlation_from_grid(g, {"x", "y"});
    CHECK(same.base.at(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.base.at(0, 0) == 1.0);

    for (int r = 0; r < 4; ++r) g.at(r, 1) = -g.at(r, 0);
    auto opposite = correlation_from_grid(g, {"x", "y"});
    CHECK(opposite.base.at(0, 1) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("correlation matches the covariance-definition oracle") {
    RealGrid g(4, 3);
    const double vals[4][3] = {{1.0, 2.0, 0.5}, {2.0, 2.5, -1.0}, {4.0, 1.0, 0.0}, {3.0, 4.0, 2.0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 3; ++c) g.at(r, c) = vals[r][c];
    auto corr = correlation_from_grid(g, {});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(corr.base.at(i, j) ==
                  doctest::Approx(i == j ? 1.0 : pearson_oracle(g, i, j)).epsilon(1e-12));
}

TEST_CASE("correlation preconditions") {
    RealGrid two_rows(2, 2);
    two_rows.at(0, 0) = 1.0;
    two_rows.at(1, 0) = 2.0;
    two_rows.at(0, 1) = 3.0;
    two_rows.at(1, 1) = 5.0;
    CHECK_THROWS_AS(correlation_from_grid(two_rows, {}), DataError);

    RealGrid constant(4, 2);
    for (int r = 0; r < 4; ++r) {
        constant.at(r, 0) = 1.0 + r;
        constant.at(r, 1) = 7.0;
    }
    CHECK_THROWS_AS(correlation_from_grid(constant, {}), DataError);

    GrowthPanel holed;
    holed.countries = {"a"};
    holed.years = {2000, 2001, 2002};
    holed.values = {1.0, std::nullopt, 2.0};
    CHECK_THROWS_AS(correlation_matrix(holed), DataError);
}

TEST_CASE("correlation is invariant under positive affine transforms") {
    Rng rng(23);
    auto g = random_grid(rng, 20, 5);
    auto base = correlation_from_grid(g, {});
    auto transformed = g;
    for (int c = 0; c < 5; ++c) {
        double a = rng.uniform(0.1, 8.0), b = rng.uniform(-10.0, 10.0);
        for (int r = 0; r < 20; ++r) transformed.at(r, c) = a * transformed.at(r, c) + b;
    }
    auto after = correlation_from_grid(transformed, {});
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(after.base.at(i, j) == doctest::Approx(base.base.at(i, j)).epsilon(1e-10));
}

TEST_CASE("eigen_symmetric on closed-form cases") {
    SymmetricMatrix identity(3);
    for (int i = 0; i < 3; ++i) identity.set(i, i, 1.0);
    auto d = eigen_symmetric(identity);
    for (double ev : d.eigenvalues) CHECK(ev == doctest::Approx(1.0).epsilon(1e-12));

    SymmetricMatrix pair(2);
    pair.set(0, 0, 1.0);
    pair.set(1, 1, 1.0);
    pair.set(0, 1, 0.5);
    auto dp = eigen_symmetric(pair);
    CHECK(dp.eigenvalues[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(dp.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("random 3x3 spectra match the characteristic-cubic oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        auto m = random_symmetric(rng, 3);
        auto d = eigen_symmetric(m);
        auto expected = testsupport::symmetric3_eigen_oracle(m.at(0, 0), m.at(0, 1), m.at(0, 2),
                                                             m.at(1, 1), m.at(1, 2), m.at(2, 2));
        for (int k = 0; k < 3; ++k)
            CHECK(d.eigenvalues[k] == doctest::Approx(expected[k]).epsilon(1e-9));
    }
}

TEST_CASE("eigendecomposition invariants on random matrices") {
    Rng rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        int n = rng.uniform_int(1, 12);
        auto m = random_symmetric(rng, n);
        auto d = eigen_symmetric(m);

        // residuals, normalization, orthogonality, sign convention
        for (int k = 0; k < n; ++k) {
            auto mv = m.apply(d.eigenvectors[k]);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(mv[i] - d.eigenvalues[k] * d.eigenvectors[k][i]) <=
                      1e-8 * std::max(1.0, std::abs(d.eigenvalues[k])));
            double norm = std::sqrt(std::inner_product(d.eigenvectors[k].begin(),
                                                       d.eigenvectors[k].end(),
                                                       d.eigenvectors[k].begin(), 0.0));
            CHECK(norm == doctest::Approx(1.0).epsilon(1e-10));
            double sum = std::accumulate(d.eigenvectors[k].begin(), d.eigenvectors[k].end(), 0.0);
            if (sum != 0.0) CHECK(sum > 0.0);
            for (int l = k + 1; l < n; ++l) {
                double dot = std::inner_product(d.eigenvectors[k].begin(), d.eigenvectors[k].end(),
                                                d.eigenvectors[l].begin(), 0.0);
                CHECK(std::abs(dot) <= 1e-8);
            }
        }

        // descending order and trace conservation
        CHECK(std::is_sorted(d.eigenvalues.begin(), d.eigenvalues.end(), std::greater<>()));
        double sum = std::accumulate(d.eigenvalues.begin(), d.eigenvalues.end(), 0.0);
        CHECK(sum == doctest::Approx(trace(m)).epsilon(1e-10));

        // reconstruction sum_k lambda_k v_k v_k^T
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double rebuilt = 0.0;
                for (int k = 0; k < n; ++k)
                    rebuilt += d.eigenvalues[k] * d.eigenvectors[k][i] * d.eigenvectors[k][j];
                CHECK(std::abs(rebuilt - m.at(i, j)) <= 1e-8);
            }
    }
}

TEST_CASE("eigen output is deterministic for identical input") {
    Rng rng(41);
    auto m = random_symmetric(rng, 9);
    auto a = eigen_symmetric(m);
    auto b = eigen_symmetric(m);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("spectrum is permutation-equivariant") {
    Rng rng(43);
    auto g = random_grid(rng, 18, 6);
    auto corr = correlation_from_grid(g, {});
    auto d = eigen_symmetric(corr.base);

    std::vector<int> perm{3, 0, 5, 1, 4, 2};
    RealGrid shuffled(18, 6);
    for (int c = 0; c < 6; ++c)
        for (int r = 0; r < 18; ++r) shuffled.at(r, c) = g.at(r, perm[c]);
    auto dp = eigen_symmetric(correlation_from_grid(shuffled, {}).base);

    for (int k = 0; k < 6; ++k) {
        CHECK(dp.eigenvalues[k] == doctest::Approx(d.eigenvalues[k]).epsilon(1e-10));
        for (int c = 0; c < 6; ++c)
            CHECK(dp.eigenvectors[k][c] ==
                  doctest::Approx(d.eigenvectors[k][perm[c]]).epsilon(1e-8));
    }
}

TEST_CASE("correlation-matrix spectra are nonnegative and sum to n") {
    Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        int n = rng.uniform_int(2, 10);
        int t = n + rng.uniform_int(3, 30);
        auto corr = correlation_from_grid(random_grid(rng, t, n), {});
        CHECK(trace(corr.base) == doctest::Approx(n).epsilon(1e-12));
        auto d = eigen_symmetric(corr.base);
        for (double ev : d.eigenvalues) CHECK(ev >= -1e-9);
        CHECK(std::accumulate(d.eigenvalues.begin(), d.eigenvalues.end(), 0.0) ==
              doctest::Approx(n).epsilon(1e-10));
    }
}

TEST_CASE("trace basics") {
    SymmetricMatrix z(3);
    CHECK(trace(z) == 0.0);
    SymmetricMatrix diag(2);
    diag.set(0, 0, 2.0);
    diag.set(1, 1, 3.0);
    CHECK(trace(diag) == 5.0);
}

TEST_CASE("correlation from growth panel carries labels through") {
    Rng rng(53);
    auto growth = grid_to_growth(random_grid(rng, 10, 3));
    auto corr = correlation_matrix(growth);
    CHECK(corr.labels == std::vector<std::string>{"c0", "c1", "c2"});
    CHECK(corr.n() == 3);
}
