#include "rmtkit/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rmtkit {

std::vector<double> SymmetricMatrix::apply(std::span<const double> v) const {
    std::vector<double> out(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double sum = 0.0;
        for (int j = 0; j < n_; ++j) sum += at(i, j) * v[j];
        out[i] = sum;
    }
    return out;
}

RealGrid standardize_columns(const RealGrid& grid) {
    if (grid.rows < 2) throw DataError("standardization needs at least 2 rows");
    RealGrid out(grid.rows, grid.cols);
    for (int c = 0; c < grid.cols; ++c) {
        double mean = 0.0;
        for (int r = 0; r < grid.rows; ++r) mean += grid.at(r, c);
        mean /= grid.rows;
        double ss = 0.0;
        for (int r = 0; r < grid.rows; ++r) {
            double d = grid.at(r, c) - mean;
            ss += d * d;
        }
        if (ss == 0.0)
            throw DataError("column " + std::to_string(c) + " is constant; cannot standardize");
        double sd = std::sqrt(ss / (grid.rows - 1));
        for (int r = 0; r < grid.rows; ++r) out.at(r, c) = (grid.at(r, c) - mean) / sd;
    }
    return out;
}

CorrelationMatrix correlation_from_grid(const RealGrid& grid, std::vector<std::string> labels) {
    const int t = grid.rows;
    const int n = grid.cols;
    if (t < 3) throw DataError("correlation needs at least 3 observations, got " +
                               std::to_string(t));
    if (n < 1) throw DataError("correlation needs at least 1 column");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw DataError("label count does not match column count");

    std::vector<double> mean(n, 0.0);
    for (int c = 0; c < n; ++c) {
        double m = 0.0;
        for (int r = 0; r < t; ++r) m += grid.at(r, c);
        mean[c] = m / t;
    }
    // centered copy and per-column sum of squares
    RealGrid centered(t, n);
    std::vector<double> ss(n, 0.0);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < t; ++r) {
            double d = grid.at(r, c) - mean[c];
            centered.at(r, c) = d;
            ss[c] += d * d;
        }
        if (ss[c] == 0.0)
            throw DataError("column '" + (labels.empty() ? std::to_string(c) : labels[c]) +
                            "' is constant; correlation undefined");
    }

    CorrelationMatrix corr;
    corr.base = SymmetricMatrix(n);
    corr.labels = std::move(labels);
    if (corr.labels.empty())
        for (int c = 0; c < n; ++c) corr.labels.push_back("s" + std::to_string(c));

    for (int i = 0; i < n; ++i) {
        corr.base.set(i, i, 1.0);
        for (int j = i + 1; j < n; ++j) {
            double cov = 0.0;
            for (int r = 0; r < t; ++r) cov += centered.at(r, i) * centered.at(r, j);
            double rho = cov / std::sqrt(ss[i] * ss[j]);
            corr.base.set(i, j, std::clamp(rho, -1.0, 1.0));
        }
    }
    return corr;
}

CorrelationMatrix correlation_matrix(const GrowthPanel& growth) {
    RealGrid grid(growth.year_count(), growth.country_count());
    for (int y = 0; y < growth.year_count(); ++y)
        for (int c = 0; c < growth.country_count(); ++c) {
            const auto& v = growth.at(y, c);
            if (!v)
                throw DataError("growth panel has a missing value for '" + growth.countries[c] +
                                "' in " + std::to_string(growth.years[y]));
            grid.at(y, c) = *v;
        }
    return correlation_from_grid(grid, growth.countries);
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagTol = 1e-12;

double off_diag_frobenius(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += a[static_cast<size_t>(i) * n + j] * a[static_cast<size_t>(i) * n + j];
    return std::sqrt(2.0 * s);
}

double frobenius(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (double v : a) s += v * v;
    (void)n;
    return std::sqrt(s);
}

void fix_sign(std::vector<double>& v) {
    double sum = std::accumulate(v.begin(), v.end(), 0.0);
    bool flip = false;
    if (sum < 0.0) {
        flip = true;
    } else if (sum == 0.0) {
        for (double x : v) {
            if (x != 0.0) {
                flip = x < 0.0;
                break;
            }
        }
    }
    if (flip)
        for (double& x : v) x = -x;
}

} // namespace

EigenDecomposition eigen_symmetric(const SymmetricMatrix& m) {
    const int n = m.n();
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = m.at(i, j);
    std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

    auto A = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    auto V = [&](int i, int j) -> double& { return v[static_cast<size_t>(i) * n + j]; };

    const double tol = kOffDiagTol * std::max(1.0, frobenius(a, n));
    int sweep = 0;
    while (off_diag_frobenius(a, n) > tol) {
        if (++sweep > kMaxSweeps)
            throw DataError("jacobi eigensolver did not converge within " +
                            std::to_string(kMaxSweeps) + " sweeps");
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = A(p, q);
                if (apq == 0.0) continue;
                double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                double app = A(p, p), aqq = A(q, q);
                A(p, p) = app - t * apq;
                A(q, q) = aqq + t * apq;
                A(p, q) = 0.0;
                A(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        double arp = A(r, p), arq = A(r, q);
                        A(r, p) = A(p, r) = arp - s * (arq + tau * arp);
                        A(r, q) = A(q, r) = arq + s * (arp - tau * arq);
                    }
                    double vrp = V(r, p), vrq = V(r, q);
                    V(r, p) = vrp - s * (vrq + tau * vrp);
                    V(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return A(x, x) > A(y, y); });

    EigenDecomposition decomp;
    decomp.eigenvalues.reserve(n);
    decomp.eigenvectors.reserve(n);
    for (int k : order) {
        decomp.eigenvalues.push_back(A(k, k));
        std::vector<double> vec(n);
        for (int r = 0; r < n; ++r) vec[r] = V(r, k);
        fix_sign(vec);
        decomp.eigenvectors.push_back(std::move(vec));
    }
    return decomp;
}

double trace(const SymmetricMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.n(); ++i) s += m.at(i, i);
    return s;
}

} // namespace rmtkit
