#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "phaseid/errors.hpp"
#include "phaseid/validation.hpp"

using namespace phaseid;

namespace {

// Feeder F, June: transformer -> (cluster -> meters). Transformer 1 splits
// 1/8 across A/B, everything else is pure; column totals 13/8/5.
struct Fixture {
    ClusterAssignment assignment;
    Topology topology;
};

Fixture feeder_f_june() {
    Fixture fx;
    fx.assignment.k = 3;
    fx.assignment.period_id = "2021-06";
    int meter = 0;
    auto add = [&](const std::string& transformer, const std::string& label, int count) {
        for (int i = 0; i < count; ++i) {
            std::string id = "F" + std::to_string(++meter);
            fx.assignment.labels[id] = label;
            fx.topology.meter_to_transformer[id] = transformer;
            fx.topology.meter_to_feeder[id] = "F";
        }
    };
    add("1", "A", 1);
    add("1", "B", 8);
    add("2", "A", 1);
    add("3", "A", 1);
    add("4", "A", 1);
    add("5", "C", 1);
    add("6", "A", 4);
    add("7", "C", 1);
    add("8", "C", 1);
    add("9", "C", 1);
    add("10", "C", 1);
    add("11", "A", 5);
    return fx;
}

// Feeder D, June: 39 transformers, all pure; totals 39/13/3.
Fixture feeder_d_june() {
    Fixture fx;
    fx.assignment.k = 3;
    fx.assignment.period_id = "2021-06";
    struct Row {
        const char* label;
        int count;
    };
    // One entry per transformer, in table order.
    const Row rows[] = {{"A", 1}, {"A", 1}, {"A", 1}, {"A", 1}, {"A", 2}, {"A", 1}, {"C", 1},
                        {"A", 1}, {"A", 1}, {"A", 4}, {"A", 1}, {"C", 1}, {"C", 1}, {"A", 1},
                        {"B", 1}, {"A", 1}, {"A", 2}, {"A", 1}, {"A", 1}, {"B", 1}, {"B", 1},
                        {"B", 3}, {"B", 1}, {"B", 2}, {"A", 2}, {"B", 1}, {"A", 1}, {"A", 1},
                        {"B", 1}, {"A", 1}, {"A", 2}, {"A", 1}, {"A", 4}, {"A", 1}, {"A", 1},
                        {"B", 1}, {"A", 2}, {"A", 3}, {"B", 1}};
    int meter = 0;
    int transformer = 0;
    for (const Row& row : rows) {
        std::string tid = std::to_string(++transformer);
        for (int i = 0; i < row.count; ++i) {
            std::string id = "D" + std::to_string(++meter);
            fx.assignment.labels[id] = row.label;
            fx.topology.meter_to_transformer[id] = tid;
            fx.topology.meter_to_feeder[id] = "D";
        }
    }
    return fx;
}

ClusterAssignment relabeled(const ClusterAssignment& a,
                            const std::map<std::string, std::string>& rename) {
    ClusterAssignment out = a;
    for (auto& [meter, label] : out.labels) label = rename.at(label);
    return out;
}

long agreement_under(const ClusterAssignment& a, const ClusterAssignment& b,
                     const LabelPermutation& perm) {
    long n = 0;
    for (const auto& [meter, la] : a.labels) {
        auto it = b.labels.find(meter);
        if (it != b.labels.end() && perm.at(it->second) == la) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("feeder F purity reproduces the 25/26 split") {
    Fixture fx = feeder_f_june();
    PurityReport report = transformer_purity(fx.assignment, fx.topology);
    CHECK(report.total_meters == 26);
    CHECK(report.purity == doctest::Approx(25.0 / 26.0).epsilon(1e-12));
    REQUIRE(report.impure_transformers.size() == 1);
    CHECK(report.impure_transformers[0] == "1");
    CHECK(report.cluster_totals.at("A") == 13);
    CHECK(report.cluster_totals.at("B") == 8);
    CHECK(report.cluster_totals.at("C") == 5);
    // Numeric-aware transformer ordering, as in the table.
    CHECK(report.transformer_order.front() == "1");
    CHECK(report.transformer_order.back() == "11");

    // Row sums equal transformer meter counts; grand total is the meter count.
    int grand = 0;
    for (const auto& [transformer, counts] : report.table) {
        for (const auto& [label, count] : counts) grand += count;
    }
    CHECK(grand == 26);
}

TEST_CASE("feeder D purity is perfect") {
    Fixture fx = feeder_d_june();
    PurityReport report = transformer_purity(fx.assignment, fx.topology);
    CHECK(report.total_meters == 55);
    CHECK(report.purity == 1.0);
    CHECK(report.impure_transformers.empty());
    CHECK(report.cluster_totals.at("A") == 39);
    CHECK(report.cluster_totals.at("B") == 13);
    CHECK(report.cluster_totals.at("C") == 3);
}

TEST_CASE("singleton transformers are always pure") {
    ClusterAssignment a;
    Topology topo;
    auto gen = testutil::rng(606);
    for (int i = 0; i < 20; ++i) {
        std::string id = "m" + std::to_string(i);
        a.labels[id] = std::string(1, static_cast<char>('A' + gen() % 3));
        topo.meter_to_transformer[id] = "t" + std::to_string(i);
        topo.meter_to_feeder[id] = "F";
    }
    a.k = 3;
    CHECK(transformer_purity(a, topo).purity == 1.0);
}

TEST_CASE("purity needs every meter in the topology") {
    ClusterAssignment a;
    a.labels["ghost"] = "A";
    Topology topo;
    CHECK_THROWS_AS(transformer_purity(a, topo), TopologyError);
}

TEST_CASE("align_labels undoes a pure relabeling") {
    Fixture fx = feeder_f_june();
    ClusterAssignment b = relabeled(fx.assignment, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
    LabelPermutation perm = align_labels(fx.assignment, b);
    CHECK(perm.at("B") == "A");
    CHECK(perm.at("C") == "B");
    CHECK(perm.at("A") == "C");
    CHECK(agreement_under(fx.assignment, b, perm) == 26);
}

TEST_CASE("align_labels on identical assignments is the identity") {
    Fixture fx = feeder_f_june();
    LabelPermutation perm = align_labels(fx.assignment, fx.assignment);
    for (const auto& [from, to] : perm) CHECK(from == to);
}

TEST_CASE("returned permutation beats or ties every other permutation") {
    auto gen = testutil::rng(707);
    ClusterAssignment a, b;
    a.k = b.k = 3;
    const char* labels[3] = {"A", "B", "C"};
    for (int i = 0; i < 30; ++i) {
        std::string id = "m" + std::to_string(i);
        a.labels[id] = labels[gen() % 3];
        b.labels[id] = labels[gen() % 3];
    }
    LabelPermutation best = align_labels(a, b);
    long best_score = agreement_under(a, b, best);

    std::vector<std::string> image{"A", "B", "C"};
    std::sort(image.begin(), image.end());
    do {
        LabelPermutation perm;
        perm["A"] = image[0];
        perm["B"] = image[1];
        perm["C"] = image[2];
        CHECK(best_score >= agreement_under(a, b, perm));
    } while (std::next_permutation(image.begin(), image.end()));
}

TEST_CASE("align_labels with no shared meters fails") {
    ClusterAssignment a, b;
    a.labels["x"] = "A";
    b.labels["y"] = "A";
    CHECK_THROWS_AS(align_labels(a, b), AlignmentError);
}

TEST_CASE("stability reproduces the diagonal June/July cross tab") {
    // July equals June up to a label swap, so the aligned tab is diagonal.
    Fixture fx = feeder_f_june();
    ClusterAssignment july = relabeled(fx.assignment, {{"A", "C"}, {"B", "A"}, {"C", "B"}});
    july.period_id = "2021-07";

    StabilityReport report = stability(fx.assignment, july);
    REQUIRE(report.labels == std::vector<std::string>{"A", "B", "C"});
    CHECK(report.cross_tab[0][0] == 13);
    CHECK(report.cross_tab[1][1] == 8);
    CHECK(report.cross_tab[2][2] == 5);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            if (i != j) CHECK(report.cross_tab[i][j] == 0);
        }
    }
    CHECK(report.stable_fraction == 1.0);
    CHECK(report.common_meters == 26);
    CHECK(report.unstable_meters.empty());
}

TEST_CASE("feeder D cross tab diagonal is 39/13/3") {
    Fixture fx = feeder_d_june();
    ClusterAssignment july = relabeled(fx.assignment, {{"A", "B"}, {"B", "A"}, {"C", "C"}});
    StabilityReport report = stability(fx.assignment, july);
    CHECK(report.cross_tab[0][0] == 39);
    CHECK(report.cross_tab[1][1] == 13);
    CHECK(report.cross_tab[2][2] == 3);
    CHECK(report.stable_fraction == 1.0);
}

TEST_CASE("one flipped meter shows up as unstable") {
    Fixture fx = feeder_f_june();
    ClusterAssignment b = fx.assignment;
    b.labels["F10"] = b.labels["F10"] == "A" ? "B" : "A";
    StabilityReport report = stability(fx.assignment, b);
    CHECK(report.stable_fraction == doctest::Approx(25.0 / 26.0).epsilon(1e-12));
    REQUIRE(report.unstable_meters.size() == 1);
    CHECK(report.unstable_meters[0] == "F10");
}

TEST_CASE("stability of an assignment with itself is 1") {
    Fixture fx = feeder_d_june();
    CHECK(stability(fx.assignment, fx.assignment).stable_fraction == 1.0);
}

TEST_CASE("stable fraction is direction-independent") {
    auto gen = testutil::rng(808);
    ClusterAssignment a, b;
    const char* labels[3] = {"A", "B", "C"};
    for (int i = 0; i < 40; ++i) {
        std::string id = "m" + std::to_string(i);
        a.labels[id] = labels[gen() % 3];
        b.labels[id] = labels[gen() % 3];
    }
    CHECK(stability(a, b).stable_fraction == doctest::Approx(stability(b, a).stable_fraction));
}

TEST_CASE("meters in only one period are reported, not tabulated") {
    ClusterAssignment a, b;
    a.labels = {{"m1", "A"}, {"m2", "B"}, {"only-a", "A"}};
    b.labels = {{"m1", "A"}, {"m2", "B"}, {"only-b", "B"}};
    StabilityReport report = stability(a, b);
    CHECK(report.common_meters == 2);
    CHECK(report.stable_fraction == 1.0);
    REQUIRE(report.only_in_a.size() == 1);
    CHECK(report.only_in_a[0] == "only-a");
    REQUIRE(report.only_in_b.size() == 1);
    CHECK(report.only_in_b[0] == "only-b");
}
