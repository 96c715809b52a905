#include "phaseid/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "phaseid/errors.hpp"

namespace phaseid {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, in place. invert also applies the 1/n scale.
void fft_pow2(std::vector<std::complex<double>>& x, bool invert) {
    const std::size_t n = x.size();
    if (n < 2) return;

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }

    std::vector<std::complex<double>> twiddle(n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (invert ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const std::size_t half = len / 2;
        for (std::size_t j = 0; j < half; ++j)
            twiddle[j] = std::polar(1.0, ang * static_cast<double>(j));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> u = x[i + j];
                std::complex<double> v = x[i + j + half] * twiddle[j];
                x[i + j] = u + v;
                x[i + j + half] = u - v;
            }
        }
    }

    if (invert) {
        for (auto& v : x) v /= static_cast<double>(n);
    }
}

// Bluestein's chirp-z: forward DFT of arbitrary length via one power-of-2
// convolution. The chirp exponent is reduced mod 2N before the trig call so
// the argument stays small.
std::vector<std::complex<double>> fft_bluestein(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    std::vector<std::complex<double>> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        unsigned long long sq = static_cast<unsigned long long>(j) * j % (2 * n);
        chirp[j] = std::polar(1.0, -kPi * static_cast<double>(sq) / static_cast<double>(n));
    }

    std::vector<std::complex<double>> a(m), b(m);
    for (std::size_t j = 0; j < n; ++j) a[j] = x[j] * chirp[j];
    b[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) b[j] = b[m - j] = std::conj(chirp[j]);

    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);

    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
    return out;
}

std::vector<std::complex<double>> forward_dft(const std::vector<double>& values) {
    std::vector<std::complex<double>> x(values.begin(), values.end());
    if (is_pow2(x.size())) {
        fft_pow2(x, false);
        return x;
    }
    return fft_bluestein(x);
}

double combined_magnitude(const HarmonicSpectrum& s, int n) {
    return std::fabs(s.a_at(n)) + std::fabs(s.b_at(n));
}

}  // namespace

CompressionMask CompressionMask::fixed(std::vector<int> ns) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (int n : ns) {
        if (n < 1) throw MaskError("harmonic index must be >= 1, got " + std::to_string(n));
    }
    CompressionMask m;
    m.kind = MaskKind::FixedHarmonics;
    m.harmonics = std::move(ns);
    return m;
}

CompressionMask CompressionMask::top_k(int k) {
    if (k < 0) throw MaskError("topk count must be >= 0, got " + std::to_string(k));
    CompressionMask m;
    m.kind = MaskKind::TopK;
    m.k = k;
    return m;
}

CompressionMask CompressionMask::threshold(double tau) {
    if (!std::isfinite(tau)) throw MaskError("threshold must be finite");
    CompressionMask m;
    m.kind = MaskKind::Threshold;
    m.tau = tau;
    return m;
}

CompressionMask CompressionMask::daily_harmonics(std::size_t n_samples, int count) {
    if (n_samples % 24 != 0)
        throw MaskError("daily mask requires a sample count divisible by 24, got " +
                        std::to_string(n_samples));
    if (count < 1 || count > 12)
        throw MaskError("daily mask supports 1..12 harmonics, got " + std::to_string(count));
    const int base = static_cast<int>(n_samples / 24);
    std::vector<int> ns;
    for (int j = 1; j <= count; ++j) ns.push_back(base * j);
    return fixed(std::move(ns));
}

CompressionMask CompressionMask::parse(const std::string& text, std::size_t n_samples) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    try {
        if (head == "daily") {
            return daily_harmonics(n_samples, rest.empty() ? 6 : std::stoi(rest));
        }
        if (head == "fixed") {
            std::vector<int> ns;
            std::stringstream ss(rest);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) ns.push_back(std::stoi(item));
            }
            if (ns.empty()) throw MaskError("fixed mask needs at least one harmonic index");
            return fixed(std::move(ns));
        }
        if (head == "topk") return top_k(std::stoi(rest));
        if (head == "threshold") return threshold(std::stod(rest));
    } catch (const MaskError&) {
        throw;
    } catch (const std::exception&) {
        throw MaskError("cannot parse mask spec '" + text + "'");
    }
    throw MaskError("unknown mask kind '" + head + "' (expected fixed|topk|threshold|daily)");
}

std::string CompressionMask::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case MaskKind::FixedHarmonics: {
            os << "fixed:";
            for (std::size_t i = 0; i < harmonics.size(); ++i) {
                if (i) os << ',';
                os << harmonics[i];
            }
            break;
        }
        case MaskKind::TopK:
            os << "topk:" << k;
            break;
        case MaskKind::Threshold:
            os << "threshold:" << tau;
            break;
    }
    return os.str();
}

HarmonicSpectrum dft_real(const std::vector<double>& values) {
    const std::size_t n = values.size();
    if (n < 2) throw SizeError("dft_real needs at least 2 samples, got " + std::to_string(n));
    for (double v : values) {
        if (!std::isfinite(v)) throw NumericError("dft_real input contains a non-finite sample");
    }

    auto c = forward_dft(values);
    const std::size_t half = n / 2;

    HarmonicSpectrum s;
    s.n_samples = n;
    s.period = static_cast<double>(n);
    s.a0 = 2.0 * c[0].real() / static_cast<double>(n);
    s.a.resize(half);
    s.b.resize(half);
    for (std::size_t i = 1; i <= half; ++i) {
        if (n % 2 == 0 && i == half) {
            s.a[i - 1] = c[i].real() / static_cast<double>(n);
            s.b[i - 1] = 0.0;
        } else {
            s.a[i - 1] = 2.0 * c[i].real() / static_cast<double>(n);
            s.b[i - 1] = -2.0 * c[i].imag() / static_cast<double>(n);
        }
    }
    return s;
}

HarmonicSpectrum dft_real(const MeterSeries& series) { return dft_real(series.values); }

CompressedSpectrum compress(const HarmonicSpectrum& spectrum, const CompressionMask& mask) {
    const int half = static_cast<int>(spectrum.pair_count());

    CompressedSpectrum out;
    out.n_samples = spectrum.n_samples;
    out.period = spectrum.period;
    out.mask = mask;

    auto keep = [&](int n) {
        out.entries[n] = {spectrum.a_at(n), spectrum.b_at(n)};
    };

    switch (mask.kind) {
        case MaskKind::FixedHarmonics: {
            for (int n : mask.harmonics) {
                if (n < 1 || n > half)
                    throw MaskError("harmonic " + std::to_string(n) + " out of range 1.." +
                                    std::to_string(half));
                keep(n);
            }
            break;
        }
        case MaskKind::TopK: {
            if (mask.k > half)
                throw MaskError("topk " + std::to_string(mask.k) + " exceeds the " +
                                std::to_string(half) + " available pairs");
            std::vector<int> order(static_cast<std::size_t>(half));
            for (int i = 0; i < half; ++i) order[static_cast<std::size_t>(i)] = i + 1;
            std::sort(order.begin(), order.end(), [&](int x, int y) {
                double mx = combined_magnitude(spectrum, x);
                double my = combined_magnitude(spectrum, y);
                if (mx != my) return mx > my;
                return x < y;
            });
            for (int i = 0; i < mask.k; ++i) keep(order[static_cast<std::size_t>(i)]);
            break;
        }
        case MaskKind::Threshold: {
            for (int n = 1; n <= half; ++n) {
                if (combined_magnitude(spectrum, n) > mask.tau) keep(n);
            }
            break;
        }
    }
    return out;
}

MeterSeries reconstruct(const CompressedSpectrum& compressed, bool include_mean) {
    const std::size_t n = compressed.n_samples;
    MeterSeries out;
    out.values.assign(n, include_mean ? 1.0 : 0.0);

    for (const auto& [harmonic, ab] : compressed.entries) {
        const auto [an, bn] = ab;
        const auto h = static_cast<unsigned long long>(harmonic);
        for (std::size_t t = 0; t < n; ++t) {
            // reduce n*t mod N before the trig call; exact in integers
            unsigned long long m = h * t % n;
            double ang = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(n);
            out.values[t] += an * std::cos(ang) + bn * std::sin(ang);
        }
    }
    return out;
}

double compression_error(const std::vector<double>& original, const std::vector<double>& approx) {
    if (original.size() != approx.size())
        throw SizeError("compression_error: length mismatch " + std::to_string(original.size()) +
                        " vs " + std::to_string(approx.size()));
    if (original.empty()) throw SizeError("compression_error: empty series");

    double sum = 0.0;
    for (double v : original) sum += v;
    double mean = sum / static_cast<double>(original.size());
    if (!std::isfinite(mean) || mean == 0.0)
        throw DegenerateSeriesError("compression_error: series mean is zero or non-finite");

    double sq = 0.0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        double d = original[i] - approx[i];
        sq += d * d;
    }
    return std::sqrt(sq) / mean;
}

double compression_error(const MeterSeries& original, const MeterSeries& approx) {
    return compression_error(original.values, approx.values);
}

std::vector<double> feature_vector(const CompressedSpectrum& compressed) {
    if (compressed.entries.empty())
        throw EmptyFeatureError("feature_vector: compression retained no coefficients");
    std::vector<double> v;
    v.reserve(2 * compressed.entries.size());
    for (const auto& [n, ab] : compressed.entries) {
        (void)n;
        v.push_back(ab.first);
        v.push_back(ab.second);
    }
    return v;
}

std::vector<std::string> feature_names(const CompressedSpectrum& compressed) {
    if (compressed.entries.empty())
        throw EmptyFeatureError("feature_names: compression retained no coefficients");
    std::vector<std::string> names;
    names.reserve(2 * compressed.entries.size());
    for (const auto& [n, ab] : compressed.entries) {
        (void)ab;
        names.push_back("a" + std::to_string(n));
        names.push_back("b" + std::to_string(n));
    }
    return names;
}

CompressionMask resolve_mask(const std::vector<HarmonicSpectrum>& spectra,
                             const CompressionMask& mask) {
    if (spectra.empty()) throw SizeError("resolve_mask: no spectra");
    const std::size_t half = spectra.front().pair_count();
    for (const auto& s : spectra) {
        if (s.pair_count() != half || s.n_samples != spectra.front().n_samples)
            throw SizeError("resolve_mask: spectra disagree on sample count");
    }

    if (mask.kind == MaskKind::FixedHarmonics) return mask;

    std::vector<double> mean_mag(half, 0.0);
    for (const auto& s : spectra) {
        for (std::size_t i = 0; i < half; ++i)
            mean_mag[i] += std::fabs(s.a[i]) + std::fabs(s.b[i]);
    }
    for (double& m : mean_mag) m /= static_cast<double>(spectra.size());

    std::vector<int> ns;
    if (mask.kind == MaskKind::TopK) {
        if (mask.k > static_cast<int>(half))
            throw MaskError("topk " + std::to_string(mask.k) + " exceeds the " +
                            std::to_string(half) + " available pairs");
        std::vector<int> order(half);
        for (std::size_t i = 0; i < half; ++i) order[i] = static_cast<int>(i) + 1;
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            double mx = mean_mag[static_cast<std::size_t>(x - 1)];
            double my = mean_mag[static_cast<std::size_t>(y - 1)];
            if (mx != my) return mx > my;
            return x < y;
        });
        ns.assign(order.begin(), order.begin() + mask.k);
    } else {
        for (std::size_t i = 0; i < half; ++i) {
            if (mean_mag[i] > mask.tau) ns.push_back(static_cast<int>(i) + 1);
        }
    }
    std::sort(ns.begin(), ns.end());
    CompressionMask out;
    out.kind = MaskKind::FixedHarmonics;
    out.harmonics = std::move(ns);
    return out;
}

}  // namespace phaseid
