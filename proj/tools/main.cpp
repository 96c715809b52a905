#include <CLI11.hpp>

#include <array>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "phaseid/errors.hpp"
#include "phaseid/pipeline.hpp"

namespace {

int exit_code_for(phaseid::Error::Kind kind) {
    switch (kind) {
        case phaseid::Error::Kind::Usage:
            return 2;
        case phaseid::Error::Kind::Data:
            return 3;
        case phaseid::Error::Kind::Numeric:
            return 4;
    }
    return 1;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw phaseid::ParameterError(flag + ": cannot parse '" + item + "' as a number");
        }
    }
    return out;
}

std::array<double, 3> parse_fractions(const std::string& text) {
    auto vals = parse_double_list(text, "--fractions");
    if (vals.size() != 3)
        throw phaseid::ParameterError("--fractions needs exactly 3 comma-separated values");
    double total = vals[0] + vals[1] + vals[2];
    if (!(total > 0.0))
        throw phaseid::ParameterError("--fractions must have a positive sum");
    std::array<double, 3> f{vals[0] / total, vals[1] / total, 0.0};
    f[2] = 1.0 - f[0] - f[1];  // force an exact sum of 1
    return f;
}

std::array<double, 6> parse_amps(const std::string& text, const std::string& flag) {
    auto vals = parse_double_list(text, flag);
    if (vals.size() != 6)
        throw phaseid::ParameterError(flag + " needs exactly 6 comma-separated amplitudes");
    std::array<double, 6> a{};
    std::copy(vals.begin(), vals.end(), a.begin());
    return a;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Identify which smart meters share an electrical phase by clustering "
                 "Fourier-compressed monthly voltage profiles"};
    app.require_subcommand(1);
    app.fallthrough(true);
    app.set_version_flag("--version", std::string(phaseid::kToolName) + " " +
                                          phaseid::kToolVersion);
    // One config file for all subcommands; keys live in a [subcommand]
    // section and command-line flags override them.
    app.set_config("--config", "", "Key-value config file with a [subcommand] section");

    // --- synth ---
    auto* synth = app.add_subcommand("synth", "Generate a synthetic feeder with known phases");
    phaseid::SynthRunConfig synth_cfg;
    std::string fractions_text = "1,1,1";
    std::string amps_a_text, amps_b_text, amps_c_text;
    synth->add_option("--meters", synth_cfg.synth.n_meters, "Number of meters");
    synth->add_option("--transformers", synth_cfg.synth.n_transformers, "Number of transformers");
    synth->add_option("--fractions", fractions_text,
                      "Per-phase meter shares, e.g. 39,13,3 (normalized to sum 1)");
    synth->add_option("--period", synth_cfg.period_ids,
                      "Calendar month(s), YYYY-MM; repeat for a multi-month file");
    synth->add_option("--noise-sigma", synth_cfg.synth.noise_sigma, "White noise std-dev");
    synth->add_option("--missing-rate", synth_cfg.synth.missing_rate,
                      "Chance a meter loses one random hour");
    synth->add_option("--seed", synth_cfg.synth.seed, "RNG seed");
    synth->add_option("--feeder", synth_cfg.synth.feeder_id, "Feeder id to emit");
    synth->add_option("--amps-a", amps_a_text, "Phase A daily-harmonic amplitudes (6 values)");
    synth->add_option("--amps-b", amps_b_text, "Phase B daily-harmonic amplitudes (6 values)");
    synth->add_option("--amps-c", amps_c_text, "Phase C daily-harmonic amplitudes (6 values)");
    synth->add_option("--out", synth_cfg.out_dir, "Output directory")->required();
    synth->callback([&] {
        synth_cfg.synth.phase_fractions = parse_fractions(fractions_text);
        if (!amps_a_text.empty())
            synth_cfg.synth.daily_harmonic_amps[0] = parse_amps(amps_a_text, "--amps-a");
        if (!amps_b_text.empty())
            synth_cfg.synth.daily_harmonic_amps[1] = parse_amps(amps_b_text, "--amps-b");
        if (!amps_c_text.empty())
            synth_cfg.synth.daily_harmonic_amps[2] = parse_amps(amps_c_text, "--amps-c");
        phaseid::run_synth(synth_cfg);
    });

    // --- cluster ---
    auto* cluster = app.add_subcommand("cluster", "Cluster one feeder for one period");
    phaseid::RunConfig cluster_cfg;
    cluster->add_option("--readings", cluster_cfg.readings_path, "Readings CSV")->required();
    cluster->add_option("--topology", cluster_cfg.topology_path, "Topology CSV")->required();
    cluster->add_option("--feeder", cluster_cfg.feeder_id, "Feeder id")->required();
    cluster->add_option("--period", cluster_cfg.period_ids, "Calendar month, YYYY-MM")->required();
    cluster->add_option("--mask", cluster_cfg.mask_spec,
                        "fixed:n1,n2,...|topk:K|threshold:T|daily[:J] (default daily)");
    cluster->add_option("--k", cluster_cfg.k, "Number of clusters (default 3)");
    cluster->add_flag("--standardize", cluster_cfg.standardize,
                      "Z-score feature columns before clustering");
    cluster->add_flag("--dump-spectra", cluster_cfg.dump_spectra,
                      "Also write the full spectrum of each meter (debug)");
    cluster->add_option("--out", cluster_cfg.out_dir, "Output directory")->required();
    cluster->callback([&] { phaseid::run_cluster(cluster_cfg); });

    // --- validate ---
    auto* validate = app.add_subcommand(
        "validate", "Transformer-purity and cross-period stability reports");
    phaseid::ValidateConfig validate_cfg;
    validate->add_option("--assignment-a", validate_cfg.assignment_a_path,
                         "First period assignment CSV")->required();
    validate->add_option("--assignment-b", validate_cfg.assignment_b_path,
                         "Second period assignment CSV")->required();
    validate->add_option("--topology", validate_cfg.topology_path, "Topology CSV")->required();
    validate->add_option("--period-a", validate_cfg.period_a, "Display name of the first period");
    validate->add_option("--period-b", validate_cfg.period_b, "Display name of the second period");
    validate->add_option("--out", validate_cfg.out_dir, "Output directory")->required();
    validate->callback([&] { phaseid::run_validate(validate_cfg); });

    // --- embed ---
    auto* embed = app.add_subcommand("embed", "2D coordinates for cluster visualization");
    phaseid::EmbedConfig embed_cfg;
    embed->add_option("--features", embed_cfg.features_path, "Feature matrix CSV");
    embed->add_option("--distances", embed_cfg.distances_path, "Labeled distance matrix CSV");
    embed->add_option("--assignment", embed_cfg.assignment_path, "Assignment CSV")->required();
    embed->add_option("--out", embed_cfg.out_dir, "Output directory")->required();
    embed->callback([&] { phaseid::run_embed(embed_cfg); });

    // --- report ---
    auto* report = app.add_subcommand(
        "report", "Full two-period study: cluster both months, then validate and embed");
    phaseid::RunConfig report_cfg;
    report->add_option("--readings", report_cfg.readings_path, "Readings CSV")->required();
    report->add_option("--topology", report_cfg.topology_path, "Topology CSV")->required();
    report->add_option("--feeder", report_cfg.feeder_id, "Feeder id")->required();
    report->add_option("--period", report_cfg.period_ids, "Two calendar months")
        ->required()
        ->expected(2);
    report->add_option("--mask", report_cfg.mask_spec,
                       "fixed:n1,n2,...|topk:K|threshold:T|daily[:J] (default daily)");
    report->add_option("--k", report_cfg.k, "Number of clusters (default 3)");
    report->add_flag("--standardize", report_cfg.standardize,
                     "Z-score feature columns before clustering");
    report->add_flag("--dump-spectra", report_cfg.dump_spectra,
                     "Also write the full spectrum of each meter (debug)");
    report->add_option("--out", report_cfg.out_dir, "Output directory")->required();
    report->callback([&] { phaseid::run_report(report_cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the CLI11 diagnostic
        return 2;
    } catch (const phaseid::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
