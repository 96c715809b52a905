#pragma once

#include <random>
#include <string>
#include <vector>

#include "phaseid/ingestion.hpp"

namespace testutil {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

// Positive voltage-like values around 1.
inline std::vector<double> random_series(std::mt19937_64& gen, std::size_t n, double lo = 0.9,
                                         double hi = 1.1) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> out(n);
    for (double& v : out) v = dist(gen);
    return out;
}

inline std::vector<double> normalized(std::vector<double> values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    for (double& v : values) v /= mean;
    return values;
}

inline std::vector<std::vector<double>> random_features(std::mt19937_64& gen, std::size_t n,
                                                        std::size_t dim, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<std::vector<double>> out(n, std::vector<double>(dim));
    for (auto& row : out) {
        for (double& v : row) v = dist(gen);
    }
    return out;
}

inline phaseid::MeterSeries make_series(std::string meter_id, std::vector<double> values,
                                        std::string period_id = "") {
    phaseid::MeterSeries s;
    s.meter_id = std::move(meter_id);
    s.period_id = std::move(period_id);
    if (!s.period_id.empty()) s.start_time = phaseid::period_start(s.period_id);
    s.values = std::move(values);
    return s;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

inline double rel_l2_error(const std::vector<double>& reference, const std::vector<double>& got) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) {
        double d = reference[i] - got[i];
        num += d * d;
        den += reference[i] * reference[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace testutil
