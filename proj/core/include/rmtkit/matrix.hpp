#pragma once

#include <span>
#include <string>
#include <vector>

#include "rmtkit/error.hpp"
#include "rmtkit/panel.hpp"

namespace rmtkit {

/// Dense T x N grid of reals, row-major. Rows are observations, columns series.
struct RealGrid {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    RealGrid() = default;
    RealGrid(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }
    double& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
};

/// Symmetric matrix stored as the packed upper triangle, so entries(i,j) and
/// entries(j,i) are the same storage and symmetry holds exactly.
class SymmetricMatrix {
public:
    SymmetricMatrix() = default;
    explicit SymmetricMatrix(int n)
        : n_(n), packed_(static_cast<size_t>(n) * (n + 1) / 2, 0.0) {
        if (n < 1) throw DataError("symmetric matrix dimension must be >= 1");
    }

    int n() const { return n_; }
    double at(int i, int j) const { return packed_[index(i, j)]; }
    void set(int i, int j, double v) { packed_[index(i, j)] = v; }

    /// Matrix-vector product.
    std::vector<double> apply(std::span<const double> v) const;

    bool operator==(const SymmetricMatrix&) const = default;

private:
    size_t index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<size_t>(i) * n_ - static_cast<size_t>(i) * (i - 1) / 2 + (j - i);
    }

    int n_ = 0;
    std::vector<double> packed_;
};

/// Pearson correlation matrix with per-index series labels.
/// Unit diagonal, entries in [-1, 1], positive semidefinite up to rounding.
struct CorrelationMatrix {
    SymmetricMatrix base;
    std::vector<std::string> labels;

    int n() const { return base.n(); }
};

/// Full spectrum of a symmetric matrix: eigenvalues descending, eigenvectors
/// orthonormal, eigenvectors[k] paired with eigenvalues[k]. Each vector is
/// sign-fixed so its component sum is >= 0 (first nonzero component positive
/// on an exactly zero sum).
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;

    int n() const { return static_cast<int>(eigenvalues.size()); }
};

/// Rescale every column to sample mean 0 and sample variance 1 (T-1 normalization).
/// Throws DataError on a constant column or fewer than 2 rows.
RealGrid standardize_columns(const RealGrid& grid);

/// Pearson correlation of the grid's columns. Requires >= 3 rows and no
/// constant column. Diagonal is exactly 1; off-diagonals clamped to [-1, 1].
CorrelationMatrix correlation_from_grid(const RealGrid& grid,
                                        std::vector<std::string> labels);

/// Correlation matrix of a complete growth panel (no missing cells).
CorrelationMatrix correlation_matrix(const GrowthPanel& growth);

/// Cyclic Jacobi eigensolver for symmetric matrices. Rotations sweep the
/// upper triangle until the off-diagonal Frobenius norm falls below
/// 1e-12 * max(1, ||m||_F); throws DataError after 100 sweeps without
/// convergence. Output is deterministic for identical input; ties in the
/// descending eigenvalue sort resolve by ascending pre-sort index.
EigenDecomposition eigen_symmetric(const SymmetricMatrix& m);

/// Sum of diagonal entries.
double trace(const SymmetricMatrix& m);

} // namespace rmtkit
