#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "helpers.hpp"
#include "oracles.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/errors.hpp"

using namespace phaseid;

namespace {

SquareMatrix distances_of(const std::vector<std::array<double, 2>>& points) {
    SquareMatrix d(points.size(), 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = 0; j < points.size(); ++j) {
            double dx = points[i][0] - points[j][0];
            double dy = points[i][1] - points[j][1];
            d(i, j) = std::sqrt(dx * dx + dy * dy);
        }
    }
    return d;
}

double recovered_distance(const Embedding2D& e, std::size_t i, std::size_t j) {
    double dx = e.coords[i][0] - e.coords[j][0];
    double dy = e.coords[i][1] - e.coords[j][1];
    return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::array<double, 2>> random_planar(std::mt19937_64& gen, std::size_t n,
                                                 double scale = 5.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<std::array<double, 2>> pts(n);
    for (auto& p : pts) p = {dist(gen), dist(gen)};
    return pts;
}

}  // namespace

TEST_CASE("three planar points are recovered exactly") {
    std::vector<std::array<double, 2>> pts{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    SquareMatrix d = distances_of(pts);
    Embedding2D e = classical_mds(d);
    CHECK(e.rank == 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(std::fabs(recovered_distance(e, i, j) - d(i, j)) < 1e-9);
    CHECK(e.stress < 1e-6);
}

TEST_CASE("all-zero distances put every point at the origin") {
    SquareMatrix d(5, 0.0);
    Embedding2D e = classical_mds(d);
    CHECK(e.rank == 0);
    CHECK(e.stress == 0.0);
    for (const auto& c : e.coords) {
        CHECK(c[0] == 0.0);
        CHECK(c[1] == 0.0);
    }
}

TEST_CASE("random planar set: distances, stress, and eigenpair oracle") {
    auto gen = testutil::rng(909);
    auto pts = random_planar(gen, 40);
    SquareMatrix d = distances_of(pts);
    Embedding2D e = classical_mds(d);

    double max_input = 0.0;
    for (std::size_t i = 0; i < 40; ++i) {
        for (std::size_t j = 0; j < 40; ++j) {
            max_input = std::max(max_input, d(i, j));
            CHECK(std::fabs(recovered_distance(e, i, j) - d(i, j)) < 1e-6);
        }
    }
    CHECK(e.stress < 1e-6);
    for (std::size_t i = 0; i < 40; ++i)
        for (std::size_t j = 0; j < 40; ++j)
            CHECK(recovered_distance(e, i, j) <= max_input + 1e-9);

    // Re-derive the double-centered Gram matrix and hand it to the Jacobi
    // oracle; the embedding must match eigenvector * sqrt(eigenvalue) up to
    // the fixed orientation.
    const std::size_t n = 40;
    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    std::vector<double> row_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) row_mean[i] += d(i, j) * d(i, j);
        row_mean[i] /= static_cast<double>(n);
        grand += row_mean[i];
    }
    grand /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b[i][j] = -0.5 * (d(i, j) * d(i, j) - row_mean[i] - row_mean[j] + grand);

    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    oracle::jacobi_eigen(b, values, vectors);

    for (std::size_t axis = 0; axis < 2; ++axis) {
        REQUIRE(values[axis] > 0.0);
        std::vector<double> expected(n);
        for (std::size_t i = 0; i < n; ++i)
            expected[i] = vectors[axis][i] * std::sqrt(values[axis]);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::fabs(expected[i]) > std::fabs(expected[peak])) peak = i;
        if (expected[peak] < 0.0) {
            for (double& v : expected) v = -v;
        }
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::fabs(expected[i] - e.coords[i][axis]) < 1e-8);
    }
}

TEST_CASE("matrix validation") {
    SquareMatrix asym(3, 0.0);
    asym(0, 1) = 1.0;
    asym(1, 0) = 2.0;
    CHECK_THROWS_AS(classical_mds(asym), MatrixError);

    SquareMatrix negative(2, 0.0);
    negative(0, 1) = negative(1, 0) = -1.0;
    CHECK_THROWS_AS(classical_mds(negative), MatrixError);

    SquareMatrix diag(2, 0.0);
    diag(0, 0) = 0.5;
    CHECK_THROWS_AS(classical_mds(diag), MatrixError);

    CHECK_THROWS_AS(classical_mds(SquareMatrix()), MatrixError);
    CHECK_THROWS_AS(classical_mds(SquareMatrix(3, 0.0), {"a", "b"}), MatrixError);
}

TEST_CASE("collinear points fall back to one axis") {
    std::vector<std::array<double, 2>> pts{{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {3.5, 0.0}};
    SquareMatrix d = distances_of(pts);
    Embedding2D e = classical_mds(d);
    CHECK(e.rank == 1);
    for (const auto& c : e.coords) CHECK(c[1] == 0.0);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            CHECK(std::fabs(recovered_distance(e, i, j) - d(i, j)) < 1e-6);
}

TEST_CASE("single point embeds at the origin") {
    Embedding2D e = classical_mds(SquareMatrix(1, 0.0), {"only"});
    CHECK(e.coords.size() == 1);
    CHECK(e.coords[0][0] == 0.0);
    CHECK(e.stress == 0.0);
}

TEST_CASE("embedding is invariant under meter reordering") {
    auto gen = testutil::rng(1010);
    const std::size_t n = 15;
    auto pts = random_planar(gen, n);
    SquareMatrix d = distances_of(pts);
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) ids.push_back("m" + std::to_string(i));
    Embedding2D e1 = classical_mds(d, ids);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), gen);
    SquareMatrix d2(n, 0.0);
    std::vector<std::string> ids2;
    for (std::size_t i = 0; i < n; ++i) {
        ids2.push_back(ids[perm[i]]);
        for (std::size_t j = 0; j < n; ++j) d2(i, j) = d(perm[i], perm[j]);
    }
    Embedding2D e2 = classical_mds(d2, ids2);

    std::map<std::string, std::array<double, 2>> by_id;
    for (std::size_t i = 0; i < n; ++i) by_id[e1.ids[i]] = e1.coords[i];
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::fabs(by_id.at(e2.ids[i])[0] - e2.coords[i][0]) < 1e-8);
        CHECK(std::fabs(by_id.at(e2.ids[i])[1] - e2.coords[i][1]) < 1e-8);
    }
}
