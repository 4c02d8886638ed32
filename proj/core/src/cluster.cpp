#include "rmtkit/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "text_util.hpp"

namespace rmtkit {

DistanceMatrix::DistanceMatrix(int n, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)),
      condensed_(static_cast<size_t>(n) * (n - 1) / 2, 0.0) {
    if (n < 2) throw DataError("distance matrix needs at least 2 points");
    if (labels_.empty())
        for (int i = 0; i < n; ++i) labels_.push_back("p" + std::to_string(i));
    if (static_cast<int>(labels_.size()) != n)
        throw DataError("distance matrix label count does not match dimension");
}

void DistanceMatrix::set(int i, int j, double v) {
    if (i == j) {
        if (v != 0.0) throw DataError("distance matrix diagonal must stay zero");
        return;
    }
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DataError("distances must be finite and nonnegative");
    condensed_[index(i, j)] = v;
}

DistanceMatrix corr_rows_to_distances(const CorrelationMatrix& c) {
    const int n = c.n();
    DistanceMatrix d(n, c.labels);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double ss = 0.0;
            for (int k = 0; k < n; ++k) {
                double diff = c.base.at(i, k) - c.base.at(j, k);
                ss += diff * diff;
            }
            d.set(i, j, std::sqrt(ss));
        }
    return d;
}

DistanceMatrix corr_to_metric_distance(const CorrelationMatrix& c) {
    const int n = c.n();
    DistanceMatrix d(n, c.labels);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double rho = c.base.at(i, j);
            d.set(i, j, std::sqrt(std::max(0.0, 2.0 * (1.0 - rho))));
        }
    return d;
}

Dendrogram agnes_average(const DistanceMatrix& d) {
    const int n = d.n();
    Dendrogram dendro;
    dendro.labels = d.labels();

    // active clusters: node id and member count; dist[a][b] holds the current
    // average dissimilarity between active slots a and b
    struct Cluster {
        int id;
        int size;
    };
    std::vector<Cluster> active;
    active.reserve(n);
    for (int i = 0; i < n; ++i) active.push_back({i, 1});

    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dist[i][j] = d.at(i, j);

    int next_id = n;
    while (active.size() > 1) {
        size_t best_a = 0, best_b = 1;
        double best = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < active.size(); ++a) {
            for (size_t b = a + 1; b < active.size(); ++b) {
                double v = dist[a][b];
                if (v < best) {
                    best = v;
                    best_a = a;
                    best_b = b;
                } else if (v == best) {
                    auto key = [&](size_t x, size_t y) {
                        return std::pair(std::min(active[x].id, active[y].id),
                                         std::max(active[x].id, active[y].id));
                    };
                    if (key(a, b) < key(best_a, best_b)) {
                        best_a = a;
                        best_b = b;
                    }
                }
            }
        }

        MergeStep step;
        step.left = std::min(active[best_a].id, active[best_b].id);
        step.right = std::max(active[best_a].id, active[best_b].id);
        step.height = best;
        dendro.merges.push_back(step);

        // size-weighted average-linkage update, merged cluster replaces slot best_a
        int sa = active[best_a].size, sb = active[best_b].size;
        for (size_t k = 0; k < active.size(); ++k) {
            if (k == best_a || k == best_b) continue;
            double merged =
                (sa * dist[best_a][k] + sb * dist[best_b][k]) / static_cast<double>(sa + sb);
            dist[best_a][k] = merged;
            dist[k][best_a] = merged;
        }
        active[best_a] = {next_id++, sa + sb};

        // drop slot best_b
        size_t last = active.size() - 1;
        if (best_b != last) {
            active[best_b] = active[last];
            for (size_t k = 0; k < active.size(); ++k) {
                dist[best_b][k] = dist[last][k];
                dist[k][best_b] = dist[k][last];
            }
            dist[best_b][best_b] = 0.0;
        }
        active.pop_back();
    }
    return dendro;
}

namespace {

bool needs_quoting(const std::string& label) {
    if (label.empty()) return true;
    for (char ch : label)
        if (ch == '(' || ch == ')' || ch == ',' || ch == ':' || ch == ';' || ch == '\'' ||
            ch == '[' || ch == ']' || std::isspace(static_cast<unsigned char>(ch)))
            return true;
    return false;
}

std::string newick_label(const std::string& label) {
    if (!needs_quoting(label)) return label;
    std::string quoted = "'";
    for (char ch : label) {
        quoted += ch;
        if (ch == '\'') quoted += '\'';
    }
    quoted += '\'';
    return quoted;
}

struct NewickWriter {
    const Dendrogram& dendro;
    int n;

    double elevation(int node) const {
        return node < n ? 0.0 : dendro.merges[node - n].height / 2.0;
    }

    void write(int node, double parent_elevation, std::string& out) const {
        if (node < n) {
            out += newick_label(dendro.labels[node]);
        } else {
            const MergeStep& step = dendro.merges[node - n];
            double elev = elevation(node);
            out += '(';
            write(step.left, elev, out);
            out += ',';
            write(step.right, elev, out);
            out += ')';
        }
        out += ':';
        out += format_double(parent_elevation - elevation(node));
    }
};

} // namespace

std::string to_newick(const Dendrogram& dendro) {
    const int n = dendro.leaf_count();
    if (n < 2 || static_cast<int>(dendro.merges.size()) != n - 1)
        throw DataError("dendrogram must have n >= 2 leaves and n-1 merges");

    NewickWriter writer{dendro, n};
    int root = n + static_cast<int>(dendro.merges.size()) - 1;
    double root_elev = writer.elevation(root);
    const MergeStep& top = dendro.merges.back();

    std::string out = "(";
    writer.write(top.left, root_elev, out);
    out += ',';
    writer.write(top.right, root_elev, out);
    out += ");";
    return out;
}

std::string dendrogram_json(const Dendrogram& dendro) {
    nlohmann::ordered_json doc;
    doc["labels"] = dendro.labels;
    doc["merges"] = nlohmann::ordered_json::array();
    for (const auto& m : dendro.merges)
        doc["merges"].push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}});
    return doc.dump(2) + "\n";
}

} // namespace rmtkit
