#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "phaseid/ingestion.hpp"

namespace phaseid {

// Synthetic feeder with known phase assignments. Every phase gets a base
// signal of mean 1 with phase-specific amplitudes and offsets on the daily
// harmonics n = N/24 * {1..6}; meters add independent white noise on top.
// Transformers are assigned whole to a single phase.
struct SynthConfig {
    int n_meters = 26;
    int n_transformers = 11;
    std::array<double, 3> phase_fractions{1.0 / 3, 1.0 / 3, 1.0 / 3};  // must sum to 1
    int hours = 720;  // N; divisible by 24 and equal to the period's hour count
    // Kept well above the coefficient noise floor at the default
    // noise_sigma, so every masked harmonic stays informative.
    std::array<std::array<double, 6>, 3> daily_harmonic_amps{{
        {0.020, 0.010, 0.0060, 0.0050, 0.0040, 0.0045},
        {0.016, 0.012, 0.0050, 0.0060, 0.0050, 0.0040},
        {0.024, 0.008, 0.0075, 0.0040, 0.0060, 0.0050},
    }};
    double noise_sigma = 0.01;   // std-dev of per-sample white noise
    double missing_rate = 0.0;   // chance a meter loses one random hour
    std::uint64_t seed = 1;

    std::string period_id = "2021-06";  // drives timestamps and N
    std::string feeder_id = "F1";
};

struct SynthOutput {
    FeederDataset dataset;
    std::map<std::string, std::string> ground_truth;  // meter id -> phase "A"/"B"/"C"
};

// Deterministic for a fixed seed. The phase structure (offsets, membership)
// depends only on the seed; the noise stream is additionally keyed by
// period_id, so two periods of the same seed share ground truth but carry
// independent noise.
SynthOutput generate_feeder(const SynthConfig& config);

}  // namespace phaseid
