#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "phaseid/ingestion.hpp"

namespace phaseid {

// Real sine-cosine Fourier coefficients of an N-sample series.
//
// Convention: with c_n the unnormalized forward DFT of the samples,
//   a0 = 2 Re(c_0) / N                         (a0/2 is the series mean)
//   a_n = 2 Re(c_n) / N,  b_n = -2 Im(c_n) / N  for 0 < n < N/2
//   a_{N/2} = Re(c_{N/2}) / N, b_{N/2} = 0      (Nyquist pair, even N only)
// so that  f(t) = a0/2 + sum_n a_n cos(2 pi n t / P) + b_n sin(2 pi n t / P)
// reproduces the samples exactly at t = 0..N-1.
struct HarmonicSpectrum {
    std::size_t n_samples = 0;
    double period = 0.0;      // P in hours; equals n_samples for hourly data
    double a0 = 0.0;
    std::vector<double> a;    // a[i] holds a_{i+1}, i in [0, floor(N/2))
    std::vector<double> b;

    std::size_t pair_count() const { return a.size(); }
    double a_at(int n) const { return a.at(static_cast<std::size_t>(n - 1)); }
    double b_at(int n) const { return b.at(static_cast<std::size_t>(n - 1)); }
};

enum class MaskKind { FixedHarmonics, TopK, Threshold };

// Selects which harmonic pairs survive compression. Index 0 (the mean) is
// never retained; coefficients are always kept as whole (a_n, b_n) pairs,
// ranked by combined magnitude |a_n| + |b_n| where magnitude matters.
struct CompressionMask {
    MaskKind kind = MaskKind::FixedHarmonics;
    std::vector<int> harmonics;  // FixedHarmonics: sorted, unique, ascending
    int k = 0;                   // TopK
    double tau = 0.0;            // Threshold

    static CompressionMask fixed(std::vector<int> ns);
    static CompressionMask top_k(int k);
    static CompressionMask threshold(double tau);

    // Multiples of the daily frequency: n = N/24 * {1..count}. Requires N
    // divisible by 24. count=6 on a 30-day month gives n = 30,60,...,180.
    static CompressionMask daily_harmonics(std::size_t n_samples, int count = 6);

    // "fixed:30,60,90" | "topk:6" | "threshold:0.01" | "daily" | "daily:4".
    // n_samples is needed to expand "daily" into concrete harmonics.
    static CompressionMask parse(const std::string& text, std::size_t n_samples);
    std::string to_string() const;
};

struct CompressedSpectrum {
    std::size_t n_samples = 0;
    double period = 0.0;
    std::map<int, std::pair<double, double>> entries;  // n -> (a_n, b_n), ascending n
    CompressionMask mask;
};

HarmonicSpectrum dft_real(const std::vector<double>& values);
HarmonicSpectrum dft_real(const MeterSeries& series);

// Applies the mask. a0 is dropped unconditionally. TopK keeps the k pairs
// with largest |a_n|+|b_n| (ties to the smaller n); Threshold keeps pairs
// with |a_n|+|b_n| > tau.
CompressedSpectrum compress(const HarmonicSpectrum& spectrum, const CompressionMask& mask);

// Evaluates the truncated series at t = 0..N-1. include_mean adds a0/2 = 1,
// making the result comparable to a normalized series.
MeterSeries reconstruct(const CompressedSpectrum& compressed, bool include_mean);

// || y - y_hat ||_2 / mean(y). The denominator is the plain average (1 for a
// normalized series), not the l2 norm.
double compression_error(const std::vector<double>& original, const std::vector<double>& approx);
double compression_error(const MeterSeries& original, const MeterSeries& approx);

// [a_{n1}, b_{n1}, a_{n2}, b_{n2}, ...] in ascending n.
std::vector<double> feature_vector(const CompressedSpectrum& compressed);
// Matching column names: "a30","b30",...
std::vector<std::string> feature_names(const CompressedSpectrum& compressed);

// Resolves a TopK/Threshold policy against a whole feeder at once: ranks
// harmonics by the mean combined magnitude across the given spectra and
// returns an equivalent FixedHarmonics mask, so every meter ends up with the
// same feature layout. FixedHarmonics masks pass through unchanged.
CompressionMask resolve_mask(const std::vector<HarmonicSpectrum>& spectra,
                             const CompressionMask& mask);

}  // namespace phaseid
