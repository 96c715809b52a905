#include "phaseid/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "phaseid/errors.hpp"

namespace phaseid {

namespace {

using nlohmann::json;

// Round-trip through the 12-digit text form so JSON carries the same values
// as the CSV outputs.
json json_number(double v) { return json::parse(format_double(v)); }

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

HourStamp add_hours(HourStamp t, long hours) {
    long total = t.hour + hours;
    t.hour = static_cast<int>(total % 24);
    long days = total / 24;
    t.day += static_cast<int>(days);
    while (t.day > days_in_month(t.year, t.month)) {
        t.day -= days_in_month(t.year, t.month);
        if (++t.month > 12) {
            t.month = 1;
            ++t.year;
        }
    }
    return t;
}

std::string pad_left(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s;
    return std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s;
    return s + std::string(width - s.size(), ' ');
}

double parse_double_field(const std::string& text, const std::string& context) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != text.size()) throw ParseError(context + ": non-numeric value '" + text + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.good()) throw IoError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw IoError("cannot move '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

namespace {

void append_reading_rows(std::ostringstream& os, const FeederDataset& dataset) {
    for (const MeterSeries& s : dataset.series) {
        for (std::size_t t = 0; t < s.values.size(); ++t) {
            double v = s.values[t];
            if (!std::isfinite(v)) continue;  // missing hour: absent row
            os << s.meter_id << ',' << add_hours(s.start_time, static_cast<long>(t)).to_string()
               << ',' << format_double(v) << '\n';
        }
    }
}

}  // namespace

std::string readings_csv(const FeederDataset& dataset) {
    std::ostringstream os;
    os << "meter_id,timestamp,voltage\n";
    append_reading_rows(os, dataset);
    return os.str();
}

std::string readings_csv(const std::vector<FeederDataset>& per_period) {
    std::ostringstream os;
    os << "meter_id,timestamp,voltage\n";
    for (const FeederDataset& ds : per_period) append_reading_rows(os, ds);
    return os.str();
}

std::string topology_csv(const Topology& topology) {
    std::ostringstream os;
    os << "meter_id,transformer_id,feeder_id\n";
    for (const auto& [meter, transformer] : topology.meter_to_transformer)
        os << meter << ',' << transformer << ',' << topology.feeder_of(meter) << '\n';
    return os.str();
}

std::string ground_truth_csv(const std::map<std::string, std::string>& ground_truth) {
    std::ostringstream os;
    os << "meter_id,phase\n";
    for (const auto& [meter, phase] : ground_truth) os << meter << ',' << phase << '\n';
    return os.str();
}

std::string assignment_csv(const ClusterAssignment& assignment) {
    std::ostringstream os;
    os << "meter_id,cluster\n";
    for (const auto& [meter, label] : assignment.labels) os << meter << ',' << label << '\n';
    return os.str();
}

std::string dendrogram_csv(const Dendrogram& dendrogram) {
    std::ostringstream os;
    os << "merge_index,left,right,height,size\n";
    for (std::size_t i = 0; i < dendrogram.merges.size(); ++i) {
        const auto& m = dendrogram.merges[i];
        os << dendrogram.n_leaves + i << ',' << m.left << ',' << m.right << ','
           << format_double(m.height) << ',' << m.size << '\n';
    }
    return os.str();
}

std::string spectrum_csv(const HarmonicSpectrum& spectrum) {
    std::ostringstream os;
    os << "n,a,b\n";
    os << "0," << format_double(spectrum.a0) << ",0\n";
    for (std::size_t i = 0; i < spectrum.pair_count(); ++i)
        os << i + 1 << ',' << format_double(spectrum.a[i]) << ',' << format_double(spectrum.b[i])
           << '\n';
    return os.str();
}

std::string feature_matrix_csv(const std::vector<std::string>& meter_ids,
                               const std::vector<std::string>& names,
                               const std::vector<std::vector<double>>& rows) {
    if (meter_ids.size() != rows.size())
        throw SizeError("feature_matrix_csv: id/row count mismatch");
    std::ostringstream os;
    os << "meter_id";
    for (const auto& name : names) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != names.size())
            throw SizeError("feature_matrix_csv: row width mismatch at row " + std::to_string(i));
        os << meter_ids[i];
        for (double v : rows[i]) os << ',' << format_double(v);
        os << '\n';
    }
    return os.str();
}

std::string coords_csv(const Embedding2D& embedding, const ClusterAssignment& assignment) {
    std::ostringstream os;
    os << "meter_id,x,y,cluster\n";
    for (std::size_t i = 0; i < embedding.ids.size(); ++i) {
        auto it = assignment.labels.find(embedding.ids[i]);
        if (it == assignment.labels.end())
            throw AlignmentError("coords_csv: meter '" + embedding.ids[i] +
                                 "' missing from the assignment");
        os << embedding.ids[i] << ',' << format_double(embedding.coords[i][0]) << ','
           << format_double(embedding.coords[i][1]) << ',' << it->second << '\n';
    }
    return os.str();
}

ClusterAssignment read_assignment_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open assignment file '" + path + "'");
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty assignment file");
    ++line_no;
    if (strip_cr(line) != "meter_id,cluster")
        throw ParseError(path + ": line 1: expected header 'meter_id,cluster'");

    ClusterAssignment out;
    std::set<std::string> labels;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
            throw ParseError(path + ": line " + std::to_string(line_no) +
                             ": expected 'meter_id,cluster'");
        if (out.labels.count(fields[0]))
            throw ParseError(path + ": line " + std::to_string(line_no) + ": duplicate meter '" +
                             fields[0] + "'");
        out.labels[fields[0]] = fields[1];
        labels.insert(fields[1]);
    }
    out.k = static_cast<int>(labels.size());
    return out;
}

FeatureMatrix read_feature_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open feature matrix '" + path + "'");
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty feature matrix");
    ++line_no;
    auto header = split_csv_row(strip_cr(line));
    if (header.size() < 2 || header[0] != "meter_id")
        throw ParseError(path + ": line 1: expected header 'meter_id,<feature names>'");

    FeatureMatrix out;
    out.names.assign(header.begin() + 1, header.end());
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != header.size())
            throw ParseError(path + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields");
        out.meter_ids.push_back(fields[0]);
        std::vector<double> row;
        for (std::size_t i = 1; i < fields.size(); ++i)
            row.push_back(
                parse_double_field(fields[i], path + ": line " + std::to_string(line_no)));
        out.rows.push_back(std::move(row));
    }
    return out;
}

LabeledMatrix read_distance_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open distance matrix '" + path + "'");
    std::string line;
    long line_no = 0;
    if (!std::getline(in, line)) throw ParseError(path + ": empty distance matrix");
    ++line_no;
    auto header = split_csv_row(strip_cr(line));
    if (header.size() < 2 || header[0] != "meter_id")
        throw ParseError(path + ": line 1: expected header 'meter_id,<meter ids>'");

    LabeledMatrix out;
    out.ids.assign(header.begin() + 1, header.end());
    const std::size_t n = out.ids.size();
    out.matrix = SquareMatrix(n, 0.0);

    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        if (row >= n) throw ParseError(path + ": line " + std::to_string(line_no) + ": extra row");
        auto fields = split_csv_row(line);
        if (fields.size() != n + 1)
            throw ParseError(path + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(n + 1) + " fields");
        if (fields[0] != out.ids[row])
            throw ParseError(path + ": line " + std::to_string(line_no) + ": row label '" +
                             fields[0] + "' does not match header order");
        for (std::size_t j = 0; j < n; ++j)
            out.matrix(row, j) =
                parse_double_field(fields[j + 1], path + ": line " + std::to_string(line_no));
        ++row;
    }
    if (row != n)
        throw ParseError(path + ": expected " + std::to_string(n) + " rows, got " +
                         std::to_string(row));
    return out;
}

std::string purity_report_json(const PurityReport& report) {
    json j;
    j["period"] = report.period_id;
    j["purity"] = json_number(report.purity);
    j["total_meters"] = report.total_meters;
    j["cluster_labels"] = report.cluster_labels;
    j["impure_transformers"] = report.impure_transformers;
    json table = json::array();
    for (const auto& transformer : report.transformer_order) {
        json row;
        row["transformer"] = transformer;
        json counts = json::object();
        for (const auto& [label, count] : report.table.at(transformer)) counts[label] = count;
        row["counts"] = counts;
        table.push_back(row);
    }
    j["table"] = table;
    json totals = json::object();
    for (const auto& [label, count] : report.cluster_totals) totals[label] = count;
    j["cluster_totals"] = totals;
    return j.dump(2) + "\n";
}

std::string purity_report_text(const PurityReport& report) {
    std::size_t id_width = std::string("transformer").size();
    for (const auto& t : report.transformer_order) id_width = std::max(id_width, t.size());
    std::size_t col_width = 6;
    for (const auto& l : report.cluster_labels) col_width = std::max(col_width, l.size() + 2);

    std::ostringstream os;
    os << "Transformer purity";
    if (!report.period_id.empty()) os << " (period " << report.period_id << ")";
    os << "\n\n";
    os << pad_right("transformer", id_width);
    for (const auto& l : report.cluster_labels) os << pad_left(l, col_width);
    os << '\n';
    for (const auto& transformer : report.transformer_order) {
        os << pad_right(transformer, id_width);
        const auto& counts = report.table.at(transformer);
        for (const auto& label : report.cluster_labels) {
            auto it = counts.find(label);
            os << pad_left(it == counts.end() ? "." : std::to_string(it->second), col_width);
        }
        os << '\n';
    }
    os << pad_right("Total", id_width);
    for (const auto& label : report.cluster_labels) {
        auto it = report.cluster_totals.find(label);
        os << pad_left(it == report.cluster_totals.end() ? "0" : std::to_string(it->second),
                       col_width);
    }
    os << "\n\n";
    os << "meters: " << report.total_meters << '\n';
    os << "purity: " << format_double(report.purity) << '\n';
    os << "impure transformers:";
    if (report.impure_transformers.empty()) {
        os << " none";
    } else {
        for (const auto& t : report.impure_transformers) os << ' ' << t;
    }
    os << '\n';
    return os.str();
}

std::string stability_report_json(const StabilityReport& report) {
    json j;
    j["period_a"] = report.period_a;
    j["period_b"] = report.period_b;
    j["labels"] = report.labels;
    json alignment = json::object();
    for (const auto& [from, to] : report.alignment) alignment[from] = to;
    j["alignment"] = alignment;
    j["cross_tab"] = report.cross_tab;
    j["stable_fraction"] = json_number(report.stable_fraction);
    j["common_meters"] = report.common_meters;
    j["unstable_meters"] = report.unstable_meters;
    j["only_in_a"] = report.only_in_a;
    j["only_in_b"] = report.only_in_b;
    return j.dump(2) + "\n";
}

std::string stability_report_text(const StabilityReport& report) {
    const std::string pa = report.period_a.empty() ? "period 1" : report.period_a;
    const std::string pb = report.period_b.empty() ? "period 2" : report.period_b;
    std::size_t row_width = pa.size() + 2;
    for (const auto& l : report.labels) row_width = std::max(row_width, l.size() + 2);
    std::size_t col_width = 7;
    for (const auto& l : report.labels) col_width = std::max(col_width, l.size() + 2);

    std::ostringstream os;
    os << "Cross-period stability: " << pa << " vs " << pb << "\n\n";
    os << pad_right("", row_width) << pb << '\n';
    os << pad_right(pa, row_width);
    for (const auto& l : report.labels) os << pad_left(l, col_width);
    os << pad_left("Total", col_width) << '\n';

    std::vector<int> col_totals(report.labels.size(), 0);
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        os << pad_right(report.labels[i], row_width);
        int row_total = 0;
        for (std::size_t jx = 0; jx < report.labels.size(); ++jx) {
            int c = report.cross_tab[i][jx];
            row_total += c;
            col_totals[jx] += c;
            os << pad_left(c == 0 ? "." : std::to_string(c), col_width);
        }
        os << pad_left(std::to_string(row_total), col_width) << '\n';
    }
    os << pad_right("Total", row_width);
    int grand = 0;
    for (std::size_t jx = 0; jx < report.labels.size(); ++jx) {
        grand += col_totals[jx];
        os << pad_left(std::to_string(col_totals[jx]), col_width);
    }
    os << pad_left(std::to_string(grand), col_width) << "\n\n";

    os << "common meters: " << report.common_meters << '\n';
    os << "stable fraction: " << format_double(report.stable_fraction) << '\n';
    os << "alignment applied to " << pb << ':';
    for (const auto& [from, to] : report.alignment) os << ' ' << from << "->" << to;
    os << '\n';
    if (!report.unstable_meters.empty()) {
        os << "unstable meters:";
        for (const auto& m : report.unstable_meters) os << ' ' << m;
        os << '\n';
    }
    if (!report.only_in_a.empty()) {
        os << "only in " << pa << ':';
        for (const auto& m : report.only_in_a) os << ' ' << m;
        os << '\n';
    }
    if (!report.only_in_b.empty()) {
        os << "only in " << pb << ':';
        for (const auto& m : report.only_in_b) os << ' ' << m;
        os << '\n';
    }
    return os.str();
}

}  // namespace phaseid
