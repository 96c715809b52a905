#include "phaseid/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phaseid/errors.hpp"

namespace phaseid {

SquareMatrix pairwise_sq_distances(const std::vector<std::vector<double>>& features) {
    const std::size_t n = features.size();
    if (n == 0) throw SizeError("pairwise_sq_distances: no feature vectors");
    const std::size_t dim = features.front().size();
    for (const auto& f : features) {
        if (f.size() != dim)
            throw SizeError("pairwise_sq_distances: feature dimension mismatch (" +
                            std::to_string(f.size()) + " vs " + std::to_string(dim) + ")");
    }

    SquareMatrix d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                double diff = features[i][c] - features[j][c];
                sq += diff * diff;
            }
            d(i, j) = sq;
            d(j, i) = sq;
        }
    }
    return d;
}

Dendrogram ward_linkage(const std::vector<std::vector<double>>& features,
                        std::vector<std::string> leaf_ids) {
    const std::size_t n = features.size();
    if (n < 2) throw SizeError("ward_linkage needs at least 2 points, got " + std::to_string(n));
    for (const auto& f : features) {
        for (double v : f) {
            if (!std::isfinite(v)) throw NumericError("ward_linkage: non-finite feature value");
        }
    }
    if (leaf_ids.empty()) {
        for (std::size_t i = 0; i < n; ++i) leaf_ids.push_back(std::to_string(i));
    }
    if (leaf_ids.size() != n)
        throw SizeError("ward_linkage: " + std::to_string(leaf_ids.size()) + " leaf ids for " +
                        std::to_string(n) + " points");

    SquareMatrix d2 = pairwise_sq_distances(features);

    std::vector<bool> active(n, true);
    std::vector<int> node_id(n);    // current tree node held by each slot
    std::vector<int> cl_size(n, 1);
    std::iota(node_id.begin(), node_id.end(), 0);

    Dendrogram out;
    out.n_leaves = n;
    out.leaf_order = std::move(leaf_ids);
    out.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Scan for the closest active pair; ties by smallest node-id pair.
        std::size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        int best_lo = 0, best_hi = 0;
        bool found = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!active[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!active[j]) continue;
                double dij = d2(i, j);
                int lo = std::min(node_id[i], node_id[j]);
                int hi = std::max(node_id[i], node_id[j]);
                if (!found || dij < best ||
                    (dij == best && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
                    found = true;
                    best = dij;
                    best_lo = lo;
                    best_hi = hi;
                    bi = i;
                    bj = j;
                }
            }
        }

        const double ni = cl_size[bi];
        const double nj = cl_size[bj];
        const double dij = d2(bi, bj);

        DendrogramMerge m;
        m.left = best_lo;
        m.right = best_hi;
        m.height = std::sqrt(dij);
        m.size = cl_size[bi] + cl_size[bj];
        out.merges.push_back(m);

        // Merged cluster lives in slot bi.
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == bi || k == bj) continue;
            const double nk = cl_size[k];
            double updated =
                ((ni + nk) * d2(bi, k) + (nj + nk) * d2(bj, k) - nk * dij) / (ni + nj + nk);
            d2(bi, k) = updated;
            d2(k, bi) = updated;
        }
        active[bj] = false;
        cl_size[bi] += cl_size[bj];
        node_id[bi] = static_cast<int>(n + step);
    }
    return out;
}

std::string cluster_label(int index) {
    std::string s;
    int v = index;
    do {
        s.insert(s.begin(), static_cast<char>('A' + v % 26));
        v = v / 26 - 1;
    } while (v >= 0);
    return s;
}

ClusterAssignment cut(const Dendrogram& dendrogram, int k, std::string period_id) {
    const int n = static_cast<int>(dendrogram.n_leaves);
    if (k < 1 || k > n)
        throw ParameterError("cut: k must be in 1.." + std::to_string(n) + ", got " +
                             std::to_string(k));
    if (dendrogram.leaf_order.size() != dendrogram.n_leaves)
        throw SizeError("cut: dendrogram leaf_order does not match n_leaves");

    // Union-find over leaves, applying the first n-k merges.
    std::vector<int> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int i = 0; i < n - k; ++i) {
        const auto& m = dendrogram.merges[static_cast<std::size_t>(i)];
        int node = n + i;
        parent[find(m.left)] = node;
        parent[find(m.right)] = node;
    }

    // Order clusters by their smallest leaf index.
    std::map<int, std::vector<int>> groups;  // root -> leaves, leaves ascending
    for (int leaf = 0; leaf < n; ++leaf) groups[find(leaf)].push_back(leaf);
    std::vector<std::vector<int>> ordered;
    ordered.reserve(groups.size());
    for (auto& [root, leaves] : groups) ordered.push_back(std::move(leaves));
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });

    ClusterAssignment out;
    out.k = k;
    out.period_id = std::move(period_id);
    for (std::size_t g = 0; g < ordered.size(); ++g) {
        std::string label = cluster_label(static_cast<int>(g));
        for (int leaf : ordered[g])
            out.labels[dendrogram.leaf_order[static_cast<std::size_t>(leaf)]] = label;
    }
    return out;
}

std::vector<std::vector<double>> standardize_features(std::vector<std::vector<double>> features) {
    if (features.empty()) return features;
    const std::size_t n = features.size();
    const std::size_t dim = features.front().size();
    for (std::size_t c = 0; c < dim; ++c) {
        double mean = 0.0;
        for (const auto& f : features) mean += f[c];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& f : features) {
            double d = f[c] - mean;
            var += d * d;
        }
        double sd = std::sqrt(var / static_cast<double>(n));
        for (auto& f : features) f[c] = sd > 1e-15 ? (f[c] - mean) / sd : 0.0;
    }
    return features;
}

}  // namespace phaseid
