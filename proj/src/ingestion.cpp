#include "phaseid/ingestion.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "phaseid/errors.hpp"

namespace phaseid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    try {
        out = std::stoi(s);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

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

}  // namespace

int days_in_month(int year, int month) {
    static const int days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12) throw ParseError("invalid month: " + std::to_string(month));
    if (month == 2) {
        bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return days[month - 1];
}

bool is_valid_period_id(const std::string& period_id) {
    if (period_id.size() != 7 || period_id[4] != '-') return false;
    int y = 0, m = 0;
    if (!parse_int(period_id.substr(0, 4), y)) return false;
    if (!parse_int(period_id.substr(5, 2), m)) return false;
    return m >= 1 && m <= 12;
}

int hours_in_period(const std::string& period_id) {
    HourStamp s = period_start(period_id);
    return 24 * days_in_month(s.year, s.month);
}

HourStamp period_start(const std::string& period_id) {
    if (!is_valid_period_id(period_id))
        throw ParseError("invalid period id '" + period_id + "' (expected YYYY-MM)");
    HourStamp s;
    s.year = std::stoi(period_id.substr(0, 4));
    s.month = std::stoi(period_id.substr(5, 2));
    s.day = 1;
    s.hour = 0;
    return s;
}

long hour_index(const std::string& period_id, const HourStamp& t) {
    HourStamp s = period_start(period_id);
    if (t.year != s.year || t.month != s.month) return -1;
    return static_cast<long>(t.day - 1) * 24 + t.hour;
}

HourStamp HourStamp::parse(const std::string& text) {
    // YYYY-MM-DD[T ]HH:MM[:SS]
    auto fail = [&]() -> HourStamp {
        throw ParseError("invalid timestamp '" + text + "'");
    };
    if (text.size() < 16) fail();
    if (text[4] != '-' || text[7] != '-') fail();
    if (text[10] != 'T' && text[10] != ' ') fail();
    if (text[13] != ':') fail();

    HourStamp t;
    int minute = 0;
    if (!parse_int(text.substr(0, 4), t.year) || !parse_int(text.substr(5, 2), t.month) ||
        !parse_int(text.substr(8, 2), t.day) || !parse_int(text.substr(11, 2), t.hour) ||
        !parse_int(text.substr(14, 2), minute))
        fail();
    if (text.size() > 16) {
        int second = 0;
        if (text.size() != 19 || text[16] != ':' || !parse_int(text.substr(17, 2), second)) fail();
        if (second != 0) throw ParseError("sub-hour timestamp '" + text + "'");
    }
    if (minute != 0) throw ParseError("sub-hour timestamp '" + text + "'");
    if (t.month < 1 || t.month > 12 || t.hour < 0 || t.hour > 23) fail();
    if (t.day < 1 || t.day > days_in_month(t.year, t.month)) fail();
    return t;
}

std::string HourStamp::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:00", year, month, day, hour);
    return buf;
}

bool MeterSeries::complete() const {
    if (values.empty()) return false;
    if (is_valid_period_id(period_id) &&
        values.size() != static_cast<std::size_t>(hours_in_period(period_id)))
        return false;
    for (double v : values) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double MeterSeries::mean() const {
    if (values.empty()) return kNaN;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

bool Topology::has_meter(const std::string& meter_id) const {
    return meter_to_transformer.count(meter_id) != 0;
}

const std::string& Topology::transformer_of(const std::string& meter_id) const {
    auto it = meter_to_transformer.find(meter_id);
    if (it == meter_to_transformer.end())
        throw TopologyError("meter '" + meter_id + "' has no transformer entry");
    return it->second;
}

const std::string& Topology::feeder_of(const std::string& meter_id) const {
    auto it = meter_to_feeder.find(meter_id);
    if (it == meter_to_feeder.end())
        throw TopologyError("meter '" + meter_id + "' has no feeder entry");
    return it->second;
}

Topology load_topology(std::istream& in, const std::string& source_name) {
    Topology topo;
    std::unordered_map<std::string, std::string> transformer_feeder;
    std::string line;
    long line_no = 0;

    if (!std::getline(in, line))
        throw ParseError(source_name + ": empty topology file");
    ++line_no;
    if (strip_cr(line) != "meter_id,transformer_id,feeder_id")
        throw ParseError(source_name + ": line 1: expected header 'meter_id,transformer_id,feeder_id'");

    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 3)
            throw ParseError(source_name + ": line " + std::to_string(line_no) +
                             ": expected 3 fields, got " + std::to_string(fields.size()));
        const std::string& meter = fields[0];
        const std::string& transformer = fields[1];
        const std::string& feeder = fields[2];
        if (meter.empty() || transformer.empty() || feeder.empty())
            throw ParseError(source_name + ": line " + std::to_string(line_no) + ": empty field");
        if (topo.meter_to_transformer.count(meter))
            throw ParseError(source_name + ": line " + std::to_string(line_no) +
                             ": duplicate meter '" + meter + "'");

        auto [it, inserted] = transformer_feeder.emplace(transformer, feeder);
        if (!inserted && it->second != feeder)
            throw TopologyError(source_name + ": line " + std::to_string(line_no) +
                                ": transformer '" + transformer + "' assigned to feeders '" +
                                it->second + "' and '" + feeder + "'");

        topo.meter_to_transformer[meter] = transformer;
        topo.meter_to_feeder[meter] = feeder;
    }
    return topo;
}

Topology load_topology(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open topology file '" + path + "'");
    return load_topology(in, path);
}

FeederDataset load_readings(std::istream& readings, const Topology& topology,
                            const std::string& feeder_id, const std::string& period_id,
                            const std::string& source_name) {
    const int n_hours = hours_in_period(period_id);

    FeederDataset ds;
    ds.feeder_id = feeder_id;
    ds.period_id = period_id;
    ds.topology = topology;

    std::unordered_map<std::string, std::size_t> index_of;  // meter -> slot in ds.series
    std::vector<std::vector<bool>> seen;                    // per meter, per hour

    std::string line;
    long line_no = 0;
    if (!std::getline(readings, line))
        throw ParseError(source_name + ": empty readings file");
    ++line_no;
    if (strip_cr(line) != "meter_id,timestamp,voltage")
        throw ParseError(source_name + ": line 1: expected header 'meter_id,timestamp,voltage'");

    while (std::getline(readings, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 3)
            throw ParseError(source_name + ": line " + std::to_string(line_no) +
                             ": expected 3 fields, got " + std::to_string(fields.size()));
        const std::string& meter = fields[0];
        if (meter.empty())
            throw ParseError(source_name + ": line " + std::to_string(line_no) + ": empty meter_id");
        if (!topology.has_meter(meter))
            throw TopologyError(source_name + ": line " + std::to_string(line_no) + ": meter '" +
                                meter + "' not present in topology");

        HourStamp t;
        try {
            t = HourStamp::parse(fields[1]);
        } catch (const ParseError& e) {
            throw ParseError(source_name + ": line " + std::to_string(line_no) + ": " + e.what());
        }

        double voltage = kNaN;  // empty field means a missing sample
        if (!fields[2].empty()) {
            const std::string& text = fields[2];
            std::size_t pos = 0;
            try {
                voltage = std::stod(text, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != text.size())
                throw ParseError(source_name + ": line " + std::to_string(line_no) +
                                 ": non-numeric voltage '" + text + "'");
            if (!std::isfinite(voltage)) voltage = kNaN;  // non-finite reading counts as missing
        }

        if (topology.feeder_of(meter) != feeder_id) continue;
        long idx = hour_index(period_id, t);
        if (idx < 0 || idx >= n_hours) continue;

        auto [it, inserted] = index_of.emplace(meter, ds.series.size());
        if (inserted) {
            MeterSeries s;
            s.meter_id = meter;
            s.period_id = period_id;
            s.start_time = period_start(period_id);
            s.values.assign(static_cast<std::size_t>(n_hours), kNaN);
            ds.series.push_back(std::move(s));
            seen.emplace_back(static_cast<std::size_t>(n_hours), false);
        }
        std::size_t slot = it->second;
        if (seen[slot][static_cast<std::size_t>(idx)])
            throw ParseError(source_name + ": line " + std::to_string(line_no) +
                             ": duplicate timestamp " + t.to_string() + " for meter '" + meter + "'");
        seen[slot][static_cast<std::size_t>(idx)] = true;
        ds.series[slot].values[static_cast<std::size_t>(idx)] = voltage;
    }
    return ds;
}

FeederDataset load_readings(const std::string& readings_path, const std::string& topology_path,
                            const std::string& feeder_id, const std::string& period_id) {
    Topology topo = load_topology(topology_path);
    std::ifstream in(readings_path);
    if (!in) throw IoError("cannot open readings file '" + readings_path + "'");
    return load_readings(in, topo, feeder_id, period_id, readings_path);
}

FeederDataset filter_complete(const FeederDataset& dataset) {
    FeederDataset out;
    out.feeder_id = dataset.feeder_id;
    out.period_id = dataset.period_id;
    out.topology = dataset.topology;
    for (const MeterSeries& s : dataset.series) {
        if (s.complete()) out.series.push_back(s);
    }
    return out;
}

std::vector<FeederDataset> filter_complete(const std::vector<FeederDataset>& per_period) {
    // A meter survives only if it is complete in every period.
    std::set<std::string> keep;
    bool first = true;
    for (const FeederDataset& ds : per_period) {
        std::set<std::string> complete_here;
        for (const MeterSeries& s : ds.series) {
            if (s.complete()) complete_here.insert(s.meter_id);
        }
        if (first) {
            keep = std::move(complete_here);
            first = false;
        } else {
            std::set<std::string> tmp;
            std::set_intersection(keep.begin(), keep.end(), complete_here.begin(),
                                  complete_here.end(), std::inserter(tmp, tmp.begin()));
            keep = std::move(tmp);
        }
    }

    std::vector<FeederDataset> out;
    out.reserve(per_period.size());
    for (const FeederDataset& ds : per_period) {
        FeederDataset f;
        f.feeder_id = ds.feeder_id;
        f.period_id = ds.period_id;
        f.topology = ds.topology;
        for (const MeterSeries& s : ds.series) {
            if (keep.count(s.meter_id)) f.series.push_back(s);
        }
        out.push_back(std::move(f));
    }
    return out;
}

MeterSeries normalize(const MeterSeries& series) {
    double m = series.mean();
    if (!std::isfinite(m))
        throw DegenerateSeriesError("meter '" + series.meter_id +
                                    "': series mean is not finite (missing or non-finite samples)");
    if (m == 0.0)
        throw DegenerateSeriesError("meter '" + series.meter_id + "': series mean is zero");
    MeterSeries out = series;
    for (double& v : out.values) v /= m;
    return out;
}

}  // namespace phaseid
