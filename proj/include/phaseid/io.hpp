#pragma once

#include <string>
#include <vector>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/ingestion.hpp"
#include "phaseid/matrix.hpp"
#include "phaseid/spectral.hpp"
#include "phaseid/validation.hpp"

namespace phaseid {

// All numeric output goes through this: 12 significant digits, so reruns
// diff cleanly.
std::string format_double(double v);

// Writes content to path via a temp file and an atomic rename; a failed run
// never leaves a partial file behind.
void atomic_write_file(const std::string& path, const std::string& content);

// --- CSV emitters (return the file content; *_file variants write it) ---

std::string readings_csv(const FeederDataset& dataset);       // missing hours become absent rows
std::string readings_csv(const std::vector<FeederDataset>& per_period);  // one file, many months
std::string topology_csv(const Topology& topology);
std::string ground_truth_csv(const std::map<std::string, std::string>& ground_truth);
std::string assignment_csv(const ClusterAssignment& assignment);
std::string dendrogram_csv(const Dendrogram& dendrogram);
std::string spectrum_csv(const HarmonicSpectrum& spectrum);
std::string feature_matrix_csv(const std::vector<std::string>& meter_ids,
                               const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& rows);
std::string coords_csv(const Embedding2D& embedding, const ClusterAssignment& assignment);

// --- readers ---

ClusterAssignment read_assignment_csv(const std::string& path);

struct FeatureMatrix {
    std::vector<std::string> meter_ids;
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
};
FeatureMatrix read_feature_matrix_csv(const std::string& path);

// Labeled square matrix: header "meter_id,<id1>,<id2>,..." with one labeled
// row per meter.
struct LabeledMatrix {
    std::vector<std::string> ids;
    SquareMatrix matrix;
};
LabeledMatrix read_distance_matrix_csv(const std::string& path);

// --- reports (JSON for machines, aligned text mirroring the table layout) ---

std::string purity_report_json(const PurityReport& report);
std::string purity_report_text(const PurityReport& report);
std::string stability_report_json(const StabilityReport& report);
std::string stability_report_text(const StabilityReport& report);

}  // namespace phaseid
