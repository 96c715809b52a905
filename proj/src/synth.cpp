#include "phaseid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "phaseid/errors.hpp"

namespace phaseid {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Largest-remainder split of total into 3 integer parts proportional to
// fractions. Exactly sums to total.
std::array<int, 3> apportion(int total, const std::array<double, 3>& fractions) {
    std::array<int, 3> parts{};
    std::array<double, 3> remainders{};
    int assigned = 0;
    for (int p = 0; p < 3; ++p) {
        double exact = fractions[static_cast<std::size_t>(p)] * total;
        parts[static_cast<std::size_t>(p)] = static_cast<int>(std::floor(exact));
        remainders[static_cast<std::size_t>(p)] = exact - std::floor(exact);
        assigned += parts[static_cast<std::size_t>(p)];
    }
    while (assigned < total) {
        int best = 0;
        for (int p = 1; p < 3; ++p) {
            if (remainders[static_cast<std::size_t>(p)] > remainders[static_cast<std::size_t>(best)])
                best = p;
        }
        parts[static_cast<std::size_t>(best)] += 1;
        remainders[static_cast<std::size_t>(best)] = -1.0;
        ++assigned;
    }
    return parts;
}

std::string padded_id(const char* prefix, int index, int width) {
    std::string digits = std::to_string(index);
    if (static_cast<int>(digits.size()) < width)
        digits.insert(0, static_cast<std::size_t>(width) - digits.size(), '0');
    return prefix + digits;
}

}  // namespace

SynthOutput generate_feeder(const SynthConfig& config) {
    const double fraction_sum = config.phase_fractions[0] + config.phase_fractions[1] +
                                config.phase_fractions[2];
    if (std::fabs(fraction_sum - 1.0) > 1e-12)
        throw ConfigError("phase fractions must sum to 1");
    for (double f : config.phase_fractions) {
        if (f < 0.0) throw ConfigError("phase fractions must be non-negative");
    }
    if (config.n_meters < 1) throw ConfigError("need at least one meter");
    if (config.n_transformers < 1) throw ConfigError("need at least one transformer");
    if (config.n_transformers > config.n_meters)
        throw ConfigError("more transformers (" + std::to_string(config.n_transformers) +
                          ") than meters (" + std::to_string(config.n_meters) + ")");
    if (config.hours < 24 || config.hours % 24 != 0)
        throw ConfigError("hours must be a positive multiple of 24, got " +
                          std::to_string(config.hours));
    if (config.hours != hours_in_period(config.period_id))
        throw ConfigError("hours (" + std::to_string(config.hours) + ") must equal the " +
                          std::to_string(hours_in_period(config.period_id)) + " hours of period " +
                          config.period_id);
    if (config.noise_sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
    if (config.missing_rate < 0.0 || config.missing_rate > 1.0)
        throw ConfigError("missing_rate must be in [0, 1]");

    const int n = config.hours;
    const std::array<int, 3> meters_per_phase = apportion(config.n_meters, config.phase_fractions);

    int nonempty_phases = 0;
    for (int m : meters_per_phase) nonempty_phases += m > 0 ? 1 : 0;
    if (config.n_transformers < nonempty_phases)
        throw ConfigError("transformers cannot stay single-phase: " +
                          std::to_string(nonempty_phases) + " phases have meters but only " +
                          std::to_string(config.n_transformers) + " transformers exist");

    // Transformers per phase: proportional to meter share, at least one per
    // nonempty phase, never more than that phase's meter count.
    std::array<double, 3> transformer_fracs{};
    for (int p = 0; p < 3; ++p)
        transformer_fracs[static_cast<std::size_t>(p)] =
            static_cast<double>(meters_per_phase[static_cast<std::size_t>(p)]) / config.n_meters;
    std::array<int, 3> transformers_per_phase = apportion(config.n_transformers, transformer_fracs);
    for (int p = 0; p < 3; ++p) {
        auto up = static_cast<std::size_t>(p);
        if (meters_per_phase[up] > 0 && transformers_per_phase[up] == 0)
            transformers_per_phase[up] = 1;
        if (transformers_per_phase[up] > meters_per_phase[up])
            transformers_per_phase[up] = meters_per_phase[up];
    }
    // Rebalance to hit the requested transformer total after clamping.
    auto total_transformers = [&]() {
        return transformers_per_phase[0] + transformers_per_phase[1] + transformers_per_phase[2];
    };
    while (total_transformers() < config.n_transformers) {
        int best = -1;
        for (int p = 0; p < 3; ++p) {
            auto up = static_cast<std::size_t>(p);
            if (transformers_per_phase[up] < meters_per_phase[up] &&
                (best < 0 || meters_per_phase[up] - transformers_per_phase[up] >
                                 meters_per_phase[static_cast<std::size_t>(best)] -
                                     transformers_per_phase[static_cast<std::size_t>(best)]))
                best = p;
        }
        if (best < 0) throw ConfigError("cannot place the requested number of transformers");
        transformers_per_phase[static_cast<std::size_t>(best)] += 1;
    }
    while (total_transformers() > config.n_transformers) {
        int best = -1;
        for (int p = 0; p < 3; ++p) {
            auto up = static_cast<std::size_t>(p);
            int spare = transformers_per_phase[up] - (meters_per_phase[up] > 0 ? 1 : 0);
            if (spare > 0 && (best < 0 ||
                              transformers_per_phase[up] >
                                  transformers_per_phase[static_cast<std::size_t>(best)]))
                best = p;
        }
        if (best < 0) throw ConfigError("cannot place the requested number of transformers");
        transformers_per_phase[static_cast<std::size_t>(best)] -= 1;
    }

    // Structure stream: depends on the seed only.
    std::mt19937_64 structure_rng(config.seed);
    std::uniform_real_distribution<double> uniform_angle(0.0, 2.0 * kPi);
    std::array<std::array<double, 6>, 3> offsets{};
    for (auto& phase_offsets : offsets) {
        for (double& o : phase_offsets) o = uniform_angle(structure_rng);
    }

    // Per-phase base signal, mean exactly 1 plus pure daily harmonics.
    const int base_harmonic = n / 24;
    std::array<std::vector<double>, 3> base{};
    for (int p = 0; p < 3; ++p) {
        auto up = static_cast<std::size_t>(p);
        base[up].assign(static_cast<std::size_t>(n), 1.0);
        for (int j = 1; j <= 6; ++j) {
            double amp = config.daily_harmonic_amps[up][static_cast<std::size_t>(j - 1)];
            double off = offsets[up][static_cast<std::size_t>(j - 1)];
            long harmonic = static_cast<long>(base_harmonic) * j;
            for (int t = 0; t < n; ++t) {
                long m = harmonic * t % n;
                double ang = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n) + off;
                base[up][static_cast<std::size_t>(t)] += amp * std::cos(ang);
            }
        }
    }

    // Noise stream: seed plus period, so periods are independently noised.
    std::mt19937_64 noise_rng(config.seed ^ fnv1a64(config.period_id) ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, config.noise_sigma);
    std::uniform_real_distribution<double> uniform01(0.0, 1.0);

    const int meter_width = std::max(3, static_cast<int>(std::to_string(config.n_meters).size()));
    const int transformer_width =
        std::max(2, static_cast<int>(std::to_string(config.n_transformers).size()));

    SynthOutput out;
    out.dataset.feeder_id = config.feeder_id;
    out.dataset.period_id = config.period_id;

    static const char* kPhaseNames[3] = {"A", "B", "C"};
    int meter_index = 0;
    int transformer_index = 0;
    for (int p = 0; p < 3; ++p) {
        auto up = static_cast<std::size_t>(p);
        const int n_phase_meters = meters_per_phase[up];
        const int n_phase_transformers = transformers_per_phase[up];
        if (n_phase_meters == 0) continue;

        std::vector<std::string> transformer_ids;
        for (int t = 0; t < n_phase_transformers; ++t)
            transformer_ids.push_back(padded_id("T", ++transformer_index, transformer_width));

        for (int i = 0; i < n_phase_meters; ++i) {
            std::string meter_id = padded_id("M", ++meter_index, meter_width);
            const std::string& transformer_id =
                transformer_ids[static_cast<std::size_t>(i % n_phase_transformers)];

            MeterSeries s;
            s.meter_id = meter_id;
            s.period_id = config.period_id;
            s.start_time = period_start(config.period_id);
            s.values.resize(static_cast<std::size_t>(n));
            for (int t = 0; t < n; ++t) {
                double noise = config.noise_sigma > 0.0 ? gauss(noise_rng) : 0.0;
                s.values[static_cast<std::size_t>(t)] =
                    base[up][static_cast<std::size_t>(t)] + noise;
            }
            if (config.missing_rate > 0.0 && uniform01(noise_rng) < config.missing_rate) {
                auto hole = static_cast<std::size_t>(uniform01(noise_rng) * n);
                if (hole >= static_cast<std::size_t>(n)) hole = static_cast<std::size_t>(n) - 1;
                s.values[hole] = std::numeric_limits<double>::quiet_NaN();
            }

            out.dataset.series.push_back(std::move(s));
            out.dataset.topology.meter_to_transformer[meter_id] = transformer_id;
            out.dataset.topology.meter_to_feeder[meter_id] = config.feeder_id;
            out.ground_truth[meter_id] = kPhaseNames[p];
        }
    }
    return out;
}

}  // namespace phaseid
