#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace phaseid {

// Calendar hour without a time zone. Readings are hourly, so minutes and
// seconds must be zero when parsing.
struct HourStamp {
    int year = 0;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;   // 0..23

    // Accepts "YYYY-MM-DDTHH:MM" or "YYYY-MM-DD HH:MM", optionally with ":SS".
    static HourStamp parse(const std::string& text);
    std::string to_string() const;

    auto operator<=>(const HourStamp&) const = default;
};

int days_in_month(int year, int month);

// Period ids are calendar months, "YYYY-MM".
bool is_valid_period_id(const std::string& period_id);
int hours_in_period(const std::string& period_id);  // 720 for 30-day months, 744 for 31-day
HourStamp period_start(const std::string& period_id);

// Hours from the start of the period to t. Negative or >= hours_in_period
// means t lies outside the period.
long hour_index(const std::string& period_id, const HourStamp& t);

// One meter's hourly voltage trace for one calendar month. Freshly loaded
// series may contain NaN where an hour is missing; filter_complete
// establishes the no-gap invariant for everything downstream.
struct MeterSeries {
    std::string meter_id;
    std::string period_id;
    HourStamp start_time;
    std::vector<double> values;

    bool complete() const;  // full month of finite samples
    double mean() const;
};

struct Topology {
    std::map<std::string, std::string> meter_to_transformer;
    std::map<std::string, std::string> meter_to_feeder;

    bool has_meter(const std::string& meter_id) const;
    // Throws TopologyError when the meter is unknown.
    const std::string& transformer_of(const std::string& meter_id) const;
    const std::string& feeder_of(const std::string& meter_id) const;
};

struct FeederDataset {
    std::string feeder_id;
    std::string period_id;
    std::vector<MeterSeries> series;
    Topology topology;
};

Topology load_topology(std::istream& in, const std::string& source_name = "<topology>");
Topology load_topology(const std::string& path);

// Loads every meter of the feeder that has at least one reading inside the
// period. Missing hours stay as NaN; meter order follows first appearance
// in the file.
FeederDataset load_readings(std::istream& readings, const Topology& topology,
                            const std::string& feeder_id, const std::string& period_id,
                            const std::string& source_name = "<readings>");
FeederDataset load_readings(const std::string& readings_path, const std::string& topology_path,
                            const std::string& feeder_id, const std::string& period_id);

// Keeps only meters with a complete series, preserving order.
FeederDataset filter_complete(const FeederDataset& dataset);

// Cross-period form: a meter survives only if its series is complete in
// every dataset (one dataset per period).
std::vector<FeederDataset> filter_complete(const std::vector<FeederDataset>& per_period);

// Divides each value by the arithmetic mean of the series, so the result has
// mean 1. Throws DegenerateSeriesError on zero or non-finite mean.
MeterSeries normalize(const MeterSeries& series);

}  // namespace phaseid
