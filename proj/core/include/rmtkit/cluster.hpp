#pragma once

#include <string>
#include <vector>

#include "rmtkit/error.hpp"
#include "rmtkit/matrix.hpp"

namespace rmtkit {

/// Symmetric nonnegative dissimilarities with a zero diagonal, stored in
/// condensed form (strict upper triangle).
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(int n, std::vector<std::string> labels);

    int n() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    double at(int i, int j) const {
        if (i == j) return 0.0;
        return condensed_[index(i, j)];
    }
    void set(int i, int j, double v);

private:
    size_t index(int i, int j) const {
        if (i > j) std::swap(i, j);
        return static_cast<size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
    }

    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> condensed_;
};

/// One agglomeration step. Node ids 0..n-1 are leaves; id n+k is the cluster
/// created by merge step k. left < right.
struct MergeStep {
    int left = 0;
    int right = 0;
    double height = 0.0;
};

/// Ordered merge history of an agglomerative run; merges.size() == n-1 and
/// the last step creates the root.
struct Dendrogram {
    std::vector<std::string> labels;   // per leaf id
    std::vector<MergeStep> merges;

    int leaf_count() const { return static_cast<int>(labels.size()); }
};

/// Dissimilarity used for the default clustering mode: Euclidean distance
/// between rows of the correlation matrix, each row taken as an N-dimensional
/// feature vector (the correlation matrix acts as the data matrix).
DistanceMatrix corr_rows_to_distances(const CorrelationMatrix& c);

/// Conventional correlation distance, d(i,j) = sqrt(2 * (1 - rho_ij)).
DistanceMatrix corr_to_metric_distance(const CorrelationMatrix& c);

/// Average-linkage agglomeration: at every step the pair of clusters with the
/// smallest mean inter-cluster dissimilarity merges, ties broken by the
/// lexicographically smallest (min node id, max node id) pair. Cluster-to-rest
/// distances are maintained with the size-weighted incremental update.
Dendrogram agnes_average(const DistanceMatrix& d);

/// Newick text for a dendrogram under the ultrametric midpoint convention:
/// a node merged at height h sits at elevation h/2 and branch lengths are
/// elevation differences, so every leaf-to-root path sums to half the root
/// height. Labels containing Newick metacharacters are single-quoted.
std::string to_newick(const Dendrogram& dendro);

/// JSON form {labels:[...], merges:[{left,right,height}...]}.
std::string dendrogram_json(const Dendrogram& dendro);

} // namespace rmtkit
