#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "phaseid/matrix.hpp"

namespace phaseid {

// One agglomerative merge. Node ids number leaves 0..n-1 first, then merges
// n..2n-2 in creation order; left < right.
struct DendrogramMerge {
    int left = 0;
    int right = 0;
    double height = 0.0;  // Ward distance at merge time
    int size = 0;         // leaves under the new node
};

struct Dendrogram {
    std::size_t n_leaves = 0;
    std::vector<DendrogramMerge> merges;  // length n_leaves - 1, non-decreasing heights
    std::vector<std::string> leaf_order;  // meter ids by leaf index
};

struct ClusterAssignment {
    std::map<std::string, std::string> labels;  // meter id -> "A", "B", ...
    int k = 0;
    std::string period_id;
};

// Squared Euclidean distances; zero diagonal, symmetric.
SquareMatrix pairwise_sq_distances(const std::vector<std::vector<double>>& features);

// Agglomerative Ward tree via the Lance-Williams update
//   d(i u j, k)^2 = ((n_i+n_k) d(i,k)^2 + (n_j+n_k) d(j,k)^2 - n_k d(i,j)^2)
//                   / (n_i+n_j+n_k)
// on squared Euclidean distances; merge heights are sqrt of the updated
// value, the convention shared by the usual dendrogram tools. Ties go to the
// smallest (left, right) node-id pair, so results are fully deterministic.
// leaf_ids defaults to "0", "1", ... when empty.
Dendrogram ward_linkage(const std::vector<std::vector<double>>& features,
                        std::vector<std::string> leaf_ids = {});

// Undoes the last k-1 merges; the connected components become clusters.
// Clusters are ordered by their smallest leaf index and lettered A, B, C...
ClusterAssignment cut(const Dendrogram& dendrogram, int k, std::string period_id = "");

std::string cluster_label(int index);  // 0 -> "A", 25 -> "Z", 26 -> "AA"

// Optional z-score per feature dimension (clustering uses raw coefficients
// by default). Constant dimensions map to zero.
std::vector<std::vector<double>> standardize_features(std::vector<std::vector<double>> features);

}  // namespace phaseid
