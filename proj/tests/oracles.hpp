#pragma once

// Reference implementations used only by tests. Each takes the slow obvious
// route on purpose and stays independent of the library code paths it checks:
// the DFT oracle sums sines directly (no FFT, no complex numbers), the Ward
// oracle recomputes centroids from scratch every step (no Lance-Williams
// update), and the eigensolver is plain cyclic Jacobi (the library uses
// Eigen).

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "phaseid/clustering.hpp"
#include "phaseid/spectral.hpp"

namespace oracle {

inline phaseid::HarmonicSpectrum naive_dft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    const std::size_t half = n / 2;
    const double pi = std::numbers::pi;

    phaseid::HarmonicSpectrum s;
    s.n_samples = n;
    s.period = static_cast<double>(n);
    s.a.assign(half, 0.0);
    s.b.assign(half, 0.0);

    double sum = 0.0;
    for (double v : x) sum += v;
    s.a0 = 2.0 * sum / static_cast<double>(n);

    for (std::size_t k = 1; k <= half; ++k) {
        double ca = 0.0, cb = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            double ang = 2.0 * pi * static_cast<double>(k) * static_cast<double>(t) /
                         static_cast<double>(n);
            ca += x[t] * std::cos(ang);
            cb += x[t] * std::sin(ang);
        }
        if (n % 2 == 0 && k == half) {
            s.a[k - 1] = ca / static_cast<double>(n);
            s.b[k - 1] = 0.0;
        } else {
            s.a[k - 1] = 2.0 * ca / static_cast<double>(n);
            s.b[k - 1] = 2.0 * cb / static_cast<double>(n);
        }
    }
    return s;
}

inline double max_coeff_deviation(const phaseid::HarmonicSpectrum& a,
                                  const phaseid::HarmonicSpectrum& b) {
    double m = std::fabs(a.a0 - b.a0);
    for (std::size_t i = 0; i < a.a.size(); ++i) {
        m = std::max(m, std::fabs(a.a[i] - b.a[i]));
        m = std::max(m, std::fabs(a.b[i] - b.b[i]));
    }
    return m;
}

// Ward clustering where every step recomputes each candidate merge cost
// 2 |A||B| / (|A|+|B|) * ||centroid_A - centroid_B||^2 from the member lists.
// Same tie-break as the library: smallest (left, right) node-id pair.
inline phaseid::Dendrogram naive_ward(const std::vector<std::vector<double>>& features) {
    const std::size_t n = features.size();
    if (n < 2) throw std::invalid_argument("naive_ward: need >= 2 points");
    const std::size_t dim = features.front().size();

    struct Cluster {
        int node_id;
        std::vector<std::size_t> members;
    };
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < n; ++i) clusters.push_back({static_cast<int>(i), {i}});

    phaseid::Dendrogram out;
    out.n_leaves = n;
    for (std::size_t i = 0; i < n; ++i) out.leaf_order.push_back(std::to_string(i));

    auto centroid = [&](const Cluster& c) {
        std::vector<double> mu(dim, 0.0);
        for (std::size_t m : c.members) {
            for (std::size_t d = 0; d < dim; ++d) mu[d] += features[m][d];
        }
        for (double& v : mu) v /= static_cast<double>(c.members.size());
        return mu;
    };

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t bx = 0, by = 1;
        double best = std::numeric_limits<double>::infinity();
        int best_lo = 0, best_hi = 0;
        bool found = false;
        for (std::size_t x = 0; x < clusters.size(); ++x) {
            for (std::size_t y = x + 1; y < clusters.size(); ++y) {
                auto mu_x = centroid(clusters[x]);
                auto mu_y = centroid(clusters[y]);
                double sq = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    double diff = mu_x[d] - mu_y[d];
                    sq += diff * diff;
                }
                const double na = static_cast<double>(clusters[x].members.size());
                const double nb = static_cast<double>(clusters[y].members.size());
                double cost = 2.0 * na * nb / (na + nb) * sq;
                int lo = std::min(clusters[x].node_id, clusters[y].node_id);
                int hi = std::max(clusters[x].node_id, clusters[y].node_id);
                if (!found || cost < best ||
                    (cost == best && (lo < best_lo || (lo == best_lo && hi < best_hi)))) {
                    found = true;
                    best = cost;
                    best_lo = lo;
                    best_hi = hi;
                    bx = x;
                    by = y;
                }
            }
        }

        phaseid::DendrogramMerge m;
        m.left = best_lo;
        m.right = best_hi;
        m.height = std::sqrt(best);
        m.size = static_cast<int>(clusters[bx].members.size() + clusters[by].members.size());
        out.merges.push_back(m);

        clusters[bx].members.insert(clusters[bx].members.end(), clusters[by].members.begin(),
                                    clusters[by].members.end());
        clusters[bx].node_id = static_cast<int>(n + step);
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(by));
    }
    return out;
}

inline bool same_topology(const phaseid::Dendrogram& a, const phaseid::Dendrogram& b) {
    if (a.n_leaves != b.n_leaves || a.merges.size() != b.merges.size()) return false;
    for (std::size_t i = 0; i < a.merges.size(); ++i) {
        if (a.merges[i].left != b.merges[i].left || a.merges[i].right != b.merges[i].right ||
            a.merges[i].size != b.merges[i].size)
            return false;
    }
    return true;
}

inline double max_height_deviation(const phaseid::Dendrogram& a, const phaseid::Dendrogram& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.merges.size(); ++i)
        m = std::max(m, std::fabs(a.merges[i].height - b.merges[i].height));
    return m;
}

// Cyclic Jacobi eigensolver for a symmetric matrix. Eigenpairs come back
// sorted by descending eigenvalue; vectors[i] is the i-th eigenvector.
inline void jacobi_eigen(std::vector<std::vector<double>> a, std::vector<double>& values,
                         std::vector<std::vector<double>>& vectors) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-28 * static_cast<double>(n * n)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
                double c = std::cos(theta), s = std::sin(theta);

                for (std::size_t r = 0; r < n; ++r) {
                    double arp = a[r][p], arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    double apr = a[p][r], aqr = a[q][r];
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    double vrp = v[r][p], vrq = v[r][q];
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });

    values.assign(n, 0.0);
    vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = a[order[i]][order[i]];
        for (std::size_t r = 0; r < n; ++r) vectors[i][r] = v[r][order[i]];
    }
}

}  // namespace oracle
