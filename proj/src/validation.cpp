#include "phaseid/validation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "phaseid/errors.hpp"

namespace phaseid {

namespace {

// Sort "2" before "10" when both ids are plain integers.
bool numeric_aware_less(const std::string& x, const std::string& y) {
    auto all_digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isdigit(c);
        });
    };
    if (all_digits(x) && all_digits(y)) {
        if (x.size() != y.size()) return x.size() < y.size();
    }
    return x < y;
}

std::set<std::string> label_set(const ClusterAssignment& a) {
    std::set<std::string> s;
    for (const auto& [meter, label] : a.labels) {
        (void)meter;
        s.insert(label);
    }
    return s;
}

}  // namespace

PurityReport transformer_purity(const ClusterAssignment& assignment, const Topology& topology) {
    PurityReport report;
    report.period_id = assignment.period_id;

    std::set<std::string> labels;
    for (const auto& [meter, label] : assignment.labels) {
        const std::string& transformer = topology.transformer_of(meter);
        report.table[transformer][label] += 1;
        labels.insert(label);
        report.total_meters += 1;
    }
    report.cluster_labels.assign(labels.begin(), labels.end());

    for (const auto& [transformer, counts] : report.table)
        report.transformer_order.push_back(transformer);
    std::sort(report.transformer_order.begin(), report.transformer_order.end(),
              numeric_aware_less);

    int majority_sum = 0;
    for (const std::string& transformer : report.transformer_order) {
        const auto& counts = report.table[transformer];
        int majority = 0;
        for (const auto& [label, count] : counts) {
            majority = std::max(majority, count);
            report.cluster_totals[label] += count;
        }
        majority_sum += majority;
        if (counts.size() > 1) report.impure_transformers.push_back(transformer);
    }
    report.purity =
        report.total_meters > 0
            ? static_cast<double>(majority_sum) / static_cast<double>(report.total_meters)
            : 1.0;
    return report;
}

LabelPermutation align_labels(const ClusterAssignment& a, const ClusterAssignment& b) {
    std::vector<std::pair<const std::string*, const std::string*>> common;  // (a label, b label)
    for (const auto& [meter, label_a] : a.labels) {
        auto it = b.labels.find(meter);
        if (it != b.labels.end()) common.emplace_back(&label_a, &it->second);
    }
    if (common.empty()) throw AlignmentError("align_labels: assignments share no meters");

    std::set<std::string> all = label_set(a);
    for (const auto& l : label_set(b)) all.insert(l);
    std::vector<std::string> labels(all.begin(), all.end());
    if (labels.size() > 8)
        throw ParameterError("align_labels: exhaustive search supports at most 8 labels, got " +
                             std::to_string(labels.size()));

    std::map<std::string, int> index;
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);

    // next_permutation walks images in lexicographic order, so the first
    // permutation reaching the best agreement is the lexicographically
    // smallest one.
    std::vector<int> image(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) image[i] = static_cast<int>(i);
    std::vector<int> best_image;
    long best_agreement = -1;
    do {
        long agreement = 0;
        for (const auto& [la, lb] : common) {
            if (image[static_cast<std::size_t>(index[*lb])] == index[*la]) ++agreement;
        }
        if (agreement > best_agreement) {
            best_agreement = agreement;
            best_image = image;
        }
    } while (std::next_permutation(image.begin(), image.end()));

    LabelPermutation perm;
    for (std::size_t i = 0; i < labels.size(); ++i)
        perm[labels[i]] = labels[static_cast<std::size_t>(best_image[i])];
    return perm;
}

StabilityReport stability(const ClusterAssignment& a, const ClusterAssignment& b) {
    StabilityReport report;
    report.period_a = a.period_id;
    report.period_b = b.period_id;
    report.alignment = align_labels(a, b);

    std::set<std::string> labels = label_set(a);
    for (const auto& [meter, label] : b.labels) {
        (void)meter;
        labels.insert(report.alignment.at(label));
    }
    report.labels.assign(labels.begin(), labels.end());
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < report.labels.size(); ++i) index[report.labels[i]] = i;

    report.cross_tab.assign(report.labels.size(), std::vector<int>(report.labels.size(), 0));
    int diagonal = 0;
    for (const auto& [meter, label_a] : a.labels) {
        auto it = b.labels.find(meter);
        if (it == b.labels.end()) {
            report.only_in_a.push_back(meter);
            continue;
        }
        const std::string aligned_b = report.alignment.at(it->second);
        report.cross_tab[index.at(label_a)][index.at(aligned_b)] += 1;
        report.common_meters += 1;
        if (label_a == aligned_b) {
            ++diagonal;
        } else {
            report.unstable_meters.push_back(meter);
        }
    }
    for (const auto& [meter, label] : b.labels) {
        (void)label;
        if (!a.labels.count(meter)) report.only_in_b.push_back(meter);
    }

    report.stable_fraction =
        report.common_meters > 0
            ? static_cast<double>(diagonal) / static_cast<double>(report.common_meters)
            : 0.0;
    return report;
}

}  // namespace phaseid
