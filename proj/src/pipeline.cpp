#include "phaseid/pipeline.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>

#include "phaseid/errors.hpp"
#include "phaseid/io.hpp"

namespace phaseid {

namespace {

using nlohmann::json;

json manifest_header(const std::string& command) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    return j;
}

json run_config_json(const RunConfig& config) {
    json j;
    j["readings"] = config.readings_path;
    j["topology"] = config.topology_path;
    j["feeder"] = config.feeder_id;
    j["periods"] = config.period_ids;
    j["mask"] = config.mask_spec;
    j["k"] = config.k;
    j["standardize"] = config.standardize;
    j["dump_spectra"] = config.dump_spectra;
    j["out"] = config.out_dir;
    return j;
}

json period_summary_json(const PeriodResult& r) {
    json j;
    j["period"] = r.period_id;
    j["meters"] = r.meter_ids.size();
    j["resolved_mask"] = r.mask.to_string();
    j["feature_dim"] = r.feature_names.size();
    j["mds_rank"] = r.embedding.rank;
    j["mds_stress"] = json::parse(format_double(r.embedding.stress));
    return j;
}

std::filesystem::path join(const std::string& dir, const std::string& name) {
    return std::filesystem::path(dir) / name;
}

void write_period_artifacts(const std::string& dir, const PeriodResult& r, bool dump_spectra) {
    atomic_write_file(join(dir, "assignment.csv").string(), assignment_csv(r.assignment));
    atomic_write_file(join(dir, "dendrogram.csv").string(), dendrogram_csv(r.dendrogram));
    atomic_write_file(join(dir, "features.csv").string(),
                      feature_matrix_csv(r.meter_ids, r.feature_names, r.features));
    atomic_write_file(join(dir, "coords.csv").string(), coords_csv(r.embedding, r.assignment));
    if (dump_spectra) {
        for (std::size_t i = 0; i < r.meter_ids.size(); ++i)
            atomic_write_file(join(dir, "spectra/" + r.meter_ids[i] + ".csv").string(),
                              spectrum_csv(r.spectra[i]));
    }
    if (r.embedding.rank < 2)
        std::cerr << "warning: distance matrix for period " << r.period_id << " supports only "
                  << r.embedding.rank << "D coordinates; missing axes are zero\n";
}

FeederDataset load_one_period(const RunConfig& config, const std::string& period_id) {
    FeederDataset ds =
        load_readings(config.readings_path, config.topology_path, config.feeder_id, period_id);
    if (ds.series.empty())
        throw Error(Error::Kind::Data, "no readings for feeder '" + config.feeder_id +
                                           "' in period " + period_id);
    return ds;
}

void require_enough_meters(const FeederDataset& complete) {
    if (complete.series.empty())
        throw Error(Error::Kind::Data, "no complete meters for feeder '" + complete.feeder_id +
                                           "' in period " + complete.period_id);
    if (complete.series.size() < 2)
        throw Error(Error::Kind::Data, "clustering needs at least 2 complete meters, feeder '" +
                                           complete.feeder_id + "' period " + complete.period_id +
                                           " has " + std::to_string(complete.series.size()));
}

}  // namespace

PeriodResult run_period_pipeline(const FeederDataset& complete, const std::string& mask_spec,
                                 int k, bool standardize) {
    require_enough_meters(complete);

    PeriodResult result;
    result.period_id = complete.period_id;

    result.spectra.reserve(complete.series.size());
    for (const MeterSeries& s : complete.series) {
        result.meter_ids.push_back(s.meter_id);
        result.spectra.push_back(dft_real(normalize(s)));
    }

    const std::size_t n_samples = result.spectra.front().n_samples;
    CompressionMask requested = CompressionMask::parse(mask_spec, n_samples);
    result.mask = resolve_mask(result.spectra, requested);

    std::vector<CompressedSpectrum> compressed;
    compressed.reserve(result.spectra.size());
    for (const auto& s : result.spectra) compressed.push_back(compress(s, result.mask));
    result.feature_names = feature_names(compressed.front());
    for (const auto& c : compressed) result.features.push_back(feature_vector(c));

    std::vector<std::vector<double>> cluster_input =
        standardize ? standardize_features(result.features) : result.features;

    result.dendrogram = ward_linkage(cluster_input, result.meter_ids);
    result.assignment = cut(result.dendrogram, k, complete.period_id);

    SquareMatrix sq = pairwise_sq_distances(cluster_input);
    SquareMatrix dist(sq.size(), 0.0);
    for (std::size_t i = 0; i < sq.size(); ++i)
        for (std::size_t j = 0; j < sq.size(); ++j) dist(i, j) = std::sqrt(sq(i, j));
    result.embedding = classical_mds(dist, result.meter_ids);

    return result;
}

int run_cluster(const RunConfig& config) {
    if (config.period_ids.size() != 1)
        throw ParameterError("cluster takes exactly one --period");

    FeederDataset raw = load_one_period(config, config.period_ids.front());
    FeederDataset complete = filter_complete(raw);
    PeriodResult result = run_period_pipeline(complete, config.mask_spec, config.k,
                                              config.standardize);

    json manifest = manifest_header("cluster");
    manifest["config"] = run_config_json(config);
    manifest["loaded_meters"] = raw.series.size();
    manifest["periods"] = json::array({period_summary_json(result)});

    write_period_artifacts(config.out_dir, result, config.dump_spectra);
    atomic_write_file(join(config.out_dir, "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int run_report(const RunConfig& config) {
    if (config.period_ids.size() != 2)
        throw ParameterError("report takes exactly two --period values");

    std::vector<FeederDataset> raw;
    for (const auto& period : config.period_ids) raw.push_back(load_one_period(config, period));
    // Meters must be complete in both periods, as in a two-month study.
    std::vector<FeederDataset> complete = filter_complete(raw);

    std::vector<PeriodResult> results;
    for (const auto& ds : complete)
        results.push_back(run_period_pipeline(ds, config.mask_spec, config.k, config.standardize));

    const Topology& topology = complete.front().topology;
    std::vector<PurityReport> purity;
    for (const auto& r : results) purity.push_back(transformer_purity(r.assignment, topology));
    StabilityReport stab = stability(results[0].assignment, results[1].assignment);

    json manifest = manifest_header("report");
    manifest["config"] = run_config_json(config);
    json period_summaries = json::array();
    for (const auto& r : results) period_summaries.push_back(period_summary_json(r));
    manifest["periods"] = period_summaries;
    manifest["stable_fraction"] = json::parse(format_double(stab.stable_fraction));

    for (std::size_t i = 0; i < results.size(); ++i) {
        write_period_artifacts(join(config.out_dir, results[i].period_id).string(), results[i],
                               config.dump_spectra);
        const std::string stem = "purity_" + results[i].period_id;
        atomic_write_file(join(config.out_dir, "validation/" + stem + ".json").string(),
                          purity_report_json(purity[i]));
        atomic_write_file(join(config.out_dir, "validation/" + stem + ".txt").string(),
                          purity_report_text(purity[i]));
    }
    atomic_write_file(join(config.out_dir, "validation/stability.json").string(),
                      stability_report_json(stab));
    atomic_write_file(join(config.out_dir, "validation/stability.txt").string(),
                      stability_report_text(stab));
    atomic_write_file(join(config.out_dir, "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int run_validate(const ValidateConfig& config) {
    ClusterAssignment a = read_assignment_csv(config.assignment_a_path);
    ClusterAssignment b = read_assignment_csv(config.assignment_b_path);
    a.period_id = config.period_a;
    b.period_id = config.period_b;
    Topology topology = load_topology(config.topology_path);

    PurityReport purity_a = transformer_purity(a, topology);
    PurityReport purity_b = transformer_purity(b, topology);
    StabilityReport stab = stability(a, b);

    json manifest = manifest_header("validate");
    manifest["config"] = {{"assignment_a", config.assignment_a_path},
                          {"assignment_b", config.assignment_b_path},
                          {"topology", config.topology_path},
                          {"period_a", config.period_a},
                          {"period_b", config.period_b},
                          {"out", config.out_dir}};
    manifest["purity_a"] = json::parse(format_double(purity_a.purity));
    manifest["purity_b"] = json::parse(format_double(purity_b.purity));
    manifest["stable_fraction"] = json::parse(format_double(stab.stable_fraction));

    atomic_write_file(join(config.out_dir, "purity_1.json").string(), purity_report_json(purity_a));
    atomic_write_file(join(config.out_dir, "purity_1.txt").string(), purity_report_text(purity_a));
    atomic_write_file(join(config.out_dir, "purity_2.json").string(), purity_report_json(purity_b));
    atomic_write_file(join(config.out_dir, "purity_2.txt").string(), purity_report_text(purity_b));
    atomic_write_file(join(config.out_dir, "stability.json").string(),
                      stability_report_json(stab));
    atomic_write_file(join(config.out_dir, "stability.txt").string(),
                      stability_report_text(stab));
    atomic_write_file(join(config.out_dir, "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int run_embed(const EmbedConfig& config) {
    const bool have_features = !config.features_path.empty();
    const bool have_distances = !config.distances_path.empty();
    if (have_features == have_distances)
        throw ParameterError("embed needs exactly one of --features or --distances");

    std::vector<std::string> ids;
    SquareMatrix distances;
    if (have_features) {
        FeatureMatrix fm = read_feature_matrix_csv(config.features_path);
        ids = fm.meter_ids;
        SquareMatrix sq = pairwise_sq_distances(fm.rows);
        distances = SquareMatrix(sq.size(), 0.0);
        for (std::size_t i = 0; i < sq.size(); ++i)
            for (std::size_t j = 0; j < sq.size(); ++j) distances(i, j) = std::sqrt(sq(i, j));
    } else {
        LabeledMatrix lm = read_distance_matrix_csv(config.distances_path);
        ids = lm.ids;
        distances = lm.matrix;
    }

    ClusterAssignment assignment = read_assignment_csv(config.assignment_path);
    Embedding2D embedding = classical_mds(distances, ids);
    if (embedding.rank < 2)
        std::cerr << "warning: distance matrix supports only " << embedding.rank
                  << "D coordinates; missing axes are zero\n";

    json manifest = manifest_header("embed");
    manifest["config"] = {{"features", config.features_path},
                          {"distances", config.distances_path},
                          {"assignment", config.assignment_path},
                          {"out", config.out_dir}};
    manifest["mds_rank"] = embedding.rank;
    manifest["mds_stress"] = json::parse(format_double(embedding.stress));

    atomic_write_file(join(config.out_dir, "coords.csv").string(),
                      coords_csv(embedding, assignment));
    atomic_write_file(join(config.out_dir, "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

int run_synth(const SynthRunConfig& config) {
    std::vector<std::string> periods = config.period_ids;
    if (periods.empty()) periods.push_back(config.synth.period_id);

    std::vector<SynthOutput> outputs;
    for (const std::string& period : periods) {
        SynthConfig cfg = config.synth;
        cfg.period_id = period;
        cfg.hours = hours_in_period(period);
        outputs.push_back(generate_feeder(cfg));
    }
    // Same seed, so structure is shared; only the noise differs by period.
    const SynthOutput& first = outputs.front();
    for (const SynthOutput& o : outputs) {
        if (o.ground_truth != first.ground_truth ||
            o.dataset.topology.meter_to_transformer !=
                first.dataset.topology.meter_to_transformer)
            throw NumericError("synth periods disagree on structure");
    }

    json manifest = manifest_header("synth");
    json cfg;
    cfg["meters"] = config.synth.n_meters;
    cfg["transformers"] = config.synth.n_transformers;
    cfg["phase_fractions"] = {json::parse(format_double(config.synth.phase_fractions[0])),
                              json::parse(format_double(config.synth.phase_fractions[1])),
                              json::parse(format_double(config.synth.phase_fractions[2]))};
    cfg["noise_sigma"] = json::parse(format_double(config.synth.noise_sigma));
    cfg["missing_rate"] = json::parse(format_double(config.synth.missing_rate));
    cfg["seed"] = config.synth.seed;
    cfg["periods"] = periods;
    cfg["feeder"] = config.synth.feeder_id;
    cfg["out"] = config.out_dir;
    manifest["config"] = cfg;

    std::vector<FeederDataset> datasets;
    for (const SynthOutput& o : outputs) datasets.push_back(o.dataset);
    atomic_write_file(join(config.out_dir, "readings.csv").string(), readings_csv(datasets));
    atomic_write_file(join(config.out_dir, "topology.csv").string(),
                      topology_csv(first.dataset.topology));
    atomic_write_file(join(config.out_dir, "ground_truth.csv").string(),
                      ground_truth_csv(first.ground_truth));
    atomic_write_file(join(config.out_dir, "manifest.json").string(), manifest.dump(2) + "\n");
    return 0;
}

}  // namespace phaseid
