#pragma once

#include <map>
#include <string>
#include <vector>

#include "phaseid/clustering.hpp"
#include "phaseid/ingestion.hpp"

namespace phaseid {

// Contingency of transformers against cluster labels. Meters under one
// transformer are wired to one phase, so a clean clustering keeps every
// transformer inside a single cluster.
struct PurityReport {
    std::vector<std::string> transformer_order;  // display order (numeric-aware)
    std::vector<std::string> cluster_labels;     // column order
    std::map<std::string, std::map<std::string, int>> table;  // transformer -> label -> count
    std::map<std::string, int> cluster_totals;
    std::vector<std::string> impure_transformers;  // spanning more than one cluster
    double purity = 0.0;  // sum of per-transformer majority counts / total meters
    int total_meters = 0;
    std::string period_id;
};

PurityReport transformer_purity(const ClusterAssignment& assignment, const Topology& topology);

// Relabeling of b's clusters (b label -> a-comparable label).
using LabelPermutation = std::map<std::string, std::string>;

// Exhaustive search over label permutations for the one maximizing agreement
// on the shared meters; ties go to the lexicographically smallest
// permutation. Cluster labels are arbitrary, so this is what makes two runs
// comparable at all.
LabelPermutation align_labels(const ClusterAssignment& a, const ClusterAssignment& b);

struct StabilityReport {
    std::vector<std::string> labels;            // row/column order of cross_tab
    std::vector<std::vector<int>> cross_tab;    // [a label][aligned b label]
    LabelPermutation alignment;
    double stable_fraction = 0.0;               // diagonal / common meters
    std::vector<std::string> unstable_meters;
    std::vector<std::string> only_in_a;         // excluded from the cross tab
    std::vector<std::string> only_in_b;
    int common_meters = 0;
    std::string period_a;
    std::string period_b;
};

// Aligns b to a, cross-tabulates the common meters, and reports which meters
// moved. Meters present in only one period are listed separately.
StabilityReport stability(const ClusterAssignment& a, const ClusterAssignment& b);

}  // namespace phaseid
