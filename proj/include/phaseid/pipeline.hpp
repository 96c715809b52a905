#pragma once

#include <string>
#include <vector>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/ingestion.hpp"
#include "phaseid/spectral.hpp"
#include "phaseid/synth.hpp"
#include "phaseid/validation.hpp"

namespace phaseid {

inline constexpr const char* kToolName = "phaseid";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    std::string readings_path;
    std::string topology_path;
    std::string feeder_id;
    std::vector<std::string> period_ids;  // one for cluster, two for report
    std::string mask_spec = "daily";
    int k = 3;
    bool standardize = false;
    bool dump_spectra = false;  // also write spectra/<meter>.csv (debug)
    std::string out_dir;
};

struct PeriodResult {
    std::string period_id;
    CompressionMask mask;  // resolved against this period's N
    std::vector<std::string> meter_ids;
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> features;  // raw compressed coefficients
    std::vector<HarmonicSpectrum> spectra;      // full, pre-compression
    Dendrogram dendrogram;
    ClusterAssignment assignment;
    Embedding2D embedding;
};

// normalize -> dft -> compress -> feature -> ward -> cut -> mds for one
// dataset whose series are already complete.
PeriodResult run_period_pipeline(const FeederDataset& complete, const std::string& mask_spec,
                                 int k, bool standardize);

// Subcommand bodies; each writes its artifacts under out_dir and returns 0.
// Failures throw, leaving no partial files behind.
int run_cluster(const RunConfig& config);
int run_report(const RunConfig& config);

struct ValidateConfig {
    std::string assignment_a_path;
    std::string assignment_b_path;
    std::string topology_path;
    std::string out_dir;
    std::string period_a = "period-1";  // display names for the reports
    std::string period_b = "period-2";
};
int run_validate(const ValidateConfig& config);

struct EmbedConfig {
    std::string features_path;   // exactly one of features/distances
    std::string distances_path;
    std::string assignment_path;
    std::string out_dir;
};
int run_embed(const EmbedConfig& config);

struct SynthRunConfig {
    SynthConfig synth;                     // period_id/hours overridden per period below
    std::vector<std::string> period_ids;   // one readings.csv covering all of them
    std::string out_dir;
};
int run_synth(const SynthRunConfig& config);

}  // namespace phaseid
