#ifndef ZPD_SIMULATE_HPP_
#define ZPD_SIMULATE_HPP_

// Monte-Carlo generation of Z = sum_{l=1}^{L} X_l * Y_l realizations,
// histogramming, an analytic-CDF cache, and goodness-of-fit statistics
// (KS / chi-square / total variation) against any analytic density.
//
// Determinism contract: a batch is fully determined by (params, seed, n),
// independent of thread count. The index space is partitioned into fixed
// chunks; each chunk owns an mt19937_64 stream seeded from (seed, chunk) and
// normals come from our own Box-Muller, so cross-platform runs agree.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "zpd/errors.hpp"
#include "zpd/model.hpp"
#include "zpd/quad.hpp"

namespace zpd {

// ---------------------------------------------------------------------------
// Deterministic normal generation
// ---------------------------------------------------------------------------

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/// Standard-normal stream: mt19937_64 uniforms + Box-Muller. Both pieces are
/// pinned by the repo (not std::normal_distribution, whose algorithm is
/// implementation-defined), so identical seeds give identical samples on any
/// platform.
class NormalRng {
  public:
    explicit NormalRng(std::uint64_t seed) : gen_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1)
        const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

  private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

/// One correlated pair (X, Y): X has i.i.d. N(0, sigma_x^2/2) components and
/// Y = (sigma_y |mu| / sigma_x) * (rotation of X) + U with U independent,
/// Var(U_R) = Var(U_I) = (sigma_y^2/2)(1 - |mu|^2). This reproduces
/// E[X*Y] = mu sigma_x sigma_y under the plain-product correlation
/// convention. Consumes exactly four normals.
inline std::pair<Complex, Complex> sample_pair(const ModelParams& p, NormalRng& rng) {
    const double x_scale = p.sigma_x / std::numbers::sqrt2;
    const double u_scale = p.sigma_y * std::sqrt(0.5 * p.mu_deficit());
    const double x_r = x_scale * rng.next();
    const double x_i = x_scale * rng.next();
    const double u_r = u_scale * rng.next();
    const double u_i = u_scale * rng.next();
    const double a = p.sigma_y * p.mu_abs / p.sigma_x;
    const double ce = std::cos(p.epsilon), se = std::sin(p.epsilon);
    const double y_r = a * ce * x_r + a * se * x_i + u_r;
    const double y_i = a * se * x_r - a * ce * x_i + u_i;
    return {Complex(x_r, x_i), Complex(y_r, y_i)};
}

inline Complex sample_z_one(const ModelParams& p, NormalRng& rng) {
    Complex z(0.0, 0.0);
    for (int l = 0; l < p.big_l; ++l) {
        const auto [x, y] = sample_pair(p, rng);
        z += x * y;
    }
    return z;
}

/// Fixed chunking of the sample index space; chunk c covers global indices
/// [c*kSampleChunk, ...).
inline constexpr std::size_t kSampleChunk = std::size_t(1) << 14;

/// In-memory batches are capped; larger runs must stream chunk-by-chunk.
inline constexpr std::size_t kMaxBatchSamples = std::size_t(1) << 26;

inline std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
    return detail::splitmix64(seed ^ detail::splitmix64(chunk + 1));
}

/// Generate the `count` samples of chunk `chunk` (count <= kSampleChunk).
inline void sample_z_chunk(const ModelParams& p, std::uint64_t seed, std::size_t chunk, std::size_t count,
                           Complex* out) {
    NormalRng rng(chunk_seed(seed, chunk));
    for (std::size_t i = 0; i < count; ++i) out[i] = sample_z_one(p, rng);
}

struct SampleBatch {
    std::vector<Complex> z;
    ModelParams params;
    std::uint64_t seed = 0;
    std::size_t n() const { return z.size(); }
};

/// Reproducible batch of n realizations of Z. `threads <= 1` runs serially;
/// any thread count produces the identical batch.
inline SampleBatch sample_z(const ModelParams& p, std::size_t n, std::uint64_t seed, int threads = 1) {
    if (n < 1) throw DomainError("sample_z: n must be at least 1");
    if (n > kMaxBatchSamples)
        throw ResourceError("sample_z: n = " + std::to_string(n) + " exceeds the in-memory batch budget (" +
                            std::to_string(kMaxBatchSamples) + "); stream chunks instead");
    SampleBatch batch;
    batch.params = p;
    batch.seed = seed;
    batch.z.resize(n);
    const std::size_t n_chunks = (n + kSampleChunk - 1) / kSampleChunk;
    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * kSampleChunk;
        const std::size_t count = std::min(kSampleChunk, n - begin);
        sample_z_chunk(p, seed, c, count, batch.z.data() + begin);
    };
    if (threads <= 1 || n_chunks <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        const int workers = std::min<std::size_t>(threads, n_chunks);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) run_chunk(c);
            });
        for (auto& t : pool) t.join();
    }
    return batch;
}

struct BatchMoments {
    Complex mean{0.0, 0.0};
    double var_re = 0.0;
    double var_im = 0.0;
    double mean_abs = 0.0;
};

inline BatchMoments compute_moments(std::span<const Complex> z) {
    BatchMoments m;
    if (z.empty()) return m;
    double sr = 0, si = 0, sa = 0;
    for (const auto& v : z) {
        sr += v.real();
        si += v.imag();
        sa += std::abs(v);
    }
    const double n = static_cast<double>(z.size());
    m.mean = Complex(sr / n, si / n);
    m.mean_abs = sa / n;
    double vr = 0, vi = 0;
    for (const auto& v : z) {
        vr += (v.real() - m.mean.real()) * (v.real() - m.mean.real());
        vi += (v.imag() - m.mean.imag()) * (v.imag() - m.mean.imag());
    }
    m.var_re = vr / n;
    m.var_im = vi / n;
    return m;
}

// ---------------------------------------------------------------------------
// Histograms
// ---------------------------------------------------------------------------

struct Histogram1D {
    std::vector<double> edges;  // B+1, strictly increasing
    std::vector<double> mass;   // B densities (normalized) or counts
    bool normalized = false;
    std::size_t clipped = 0;  // samples outside [edges.front(), edges.back()]
};

struct Histogram2D {
    std::vector<double> x_edges, y_edges;
    std::vector<double> mass;  // row-major [iy * Bx + ix]
    bool normalized = false;
    std::size_t clipped = 0;
};

/// Normalized density histogram: sum(mass * width) = 1 over the in-range
/// samples. Samples outside the range are counted in `clipped`.
inline Histogram1D histogram_1d(std::span<const double> values, int bins, double lo, double hi) {
    if (values.empty()) throw DomainError("histogram_1d: empty input");
    if (bins < 1 || !(hi > lo)) throw DomainError("histogram_1d: need bins >= 1 and hi > lo");
    Histogram1D h;
    h.edges.resize(bins + 1);
    for (int i = 0; i <= bins; ++i) h.edges[i] = lo + (hi - lo) * i / bins;
    h.mass.assign(bins, 0.0);
    const double width = (hi - lo) / bins;
    std::size_t in_range = 0;
    for (double v : values) {
        if (v < lo || v > hi) {
            ++h.clipped;
            continue;
        }
        int idx = std::min(bins - 1, static_cast<int>((v - lo) / width));
        h.mass[idx] += 1.0;
        ++in_range;
    }
    if (in_range > 0)
        for (auto& m : h.mass) m /= static_cast<double>(in_range) * width;
    h.normalized = true;
    return h;
}

inline Histogram2D histogram_2d(std::span<const Complex> values, int bins_x, int bins_y, double x_lo,
                                double x_hi, double y_lo, double y_hi) {
    if (values.empty()) throw DomainError("histogram_2d: empty input");
    if (bins_x < 1 || bins_y < 1 || !(x_hi > x_lo) || !(y_hi > y_lo))
        throw DomainError("histogram_2d: invalid bin layout");
    Histogram2D h;
    h.x_edges.resize(bins_x + 1);
    h.y_edges.resize(bins_y + 1);
    for (int i = 0; i <= bins_x; ++i) h.x_edges[i] = x_lo + (x_hi - x_lo) * i / bins_x;
    for (int i = 0; i <= bins_y; ++i) h.y_edges[i] = y_lo + (y_hi - y_lo) * i / bins_y;
    h.mass.assign(static_cast<std::size_t>(bins_x) * bins_y, 0.0);
    const double wx = (x_hi - x_lo) / bins_x, wy = (y_hi - y_lo) / bins_y;
    std::size_t in_range = 0;
    for (const auto& v : values) {
        if (v.real() < x_lo || v.real() > x_hi || v.imag() < y_lo || v.imag() > y_hi) {
            ++h.clipped;
            continue;
        }
        const int ix = std::min(bins_x - 1, static_cast<int>((v.real() - x_lo) / wx));
        const int iy = std::min(bins_y - 1, static_cast<int>((v.imag() - y_lo) / wy));
        h.mass[static_cast<std::size_t>(iy) * bins_x + ix] += 1.0;
        ++in_range;
    }
    if (in_range > 0)
        for (auto& m : h.mass) m /= static_cast<double>(in_range) * wx * wy;
    h.normalized = true;
    return h;
}

// ---------------------------------------------------------------------------
// Analytic CDF cache
// ---------------------------------------------------------------------------

/// Cumulative distribution of an analytic density on [lo, hi], integrated
/// once per panel on a uniform 4096-knot grid and interpolated with a
/// monotone cubic Hermite (knot derivatives are the exact density values).
class CdfTable {
  public:
    CdfTable(const std::function<double(double)>& pdf, double lo, double hi, int knots = 4096) {
        if (!(hi > lo) || knots < 2) throw DomainError("CdfTable: invalid support or knot count");
        lo_ = lo;
        hi_ = hi;
        step_ = (hi - lo) / (knots - 1);
        dens_.resize(knots);
        cum_.resize(knots);
        for (int i = 0; i < knots; ++i) dens_[i] = std::max(0.0, pdf(lo + step_ * i));
        cum_[0] = 0.0;
        QuadSpec spec;
        spec.rel_tol = 1e-9;
        spec.abs_tol = 1e-13;
        spec.max_subdivisions = 64;
        for (int i = 1; i < knots; ++i) {
            const double a = lo + step_ * (i - 1), b = lo + step_ * i;
            cum_[i] = cum_[i - 1] + integrate_finite(pdf, a, b, spec).value;
        }
        total_ = cum_.back();
    }

    double total_mass() const { return total_; }

    /// F(x), clamped to [0, total_mass] outside the support.
    double operator()(double x) const {
        if (x <= lo_) return 0.0;
        if (x >= hi_) return total_;
        const double u = (x - lo_) / step_;
        int i = std::min(static_cast<int>(u), static_cast<int>(cum_.size()) - 2);
        const double t = u - i;
        // Hermite slopes limited to 3x the secant so the cubic stays monotone.
        const double d = (cum_[i + 1] - cum_[i]) / step_;
        const double m0 = std::min(dens_[i], 3.0 * d) * step_;
        const double m1 = std::min(dens_[i + 1], 3.0 * d) * step_;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * cum_[i] + (t3 - 2 * t2 + t) * m0 +
               (-2 * t3 + 3 * t2) * cum_[i + 1] + (t3 - t2) * m1;
    }

    /// Generalized inverse: smallest x with F(x) >= u * total_mass.
    double quantile(double u) const {
        const double target = std::clamp(u, 0.0, 1.0) * total_;
        auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
        if (it == cum_.begin()) return lo_;
        if (it == cum_.end()) return hi_;
        int i = static_cast<int>(it - cum_.begin()) - 1;
        double a = lo_ + step_ * i, b = a + step_;
        for (int iter = 0; iter < 60; ++iter) {  // bisection on the interpolant
            const double mid = 0.5 * (a + b);
            ((*this)(mid) < target ? a : b) = mid;
        }
        return 0.5 * (a + b);
    }

  private:
    double lo_ = 0.0, hi_ = 1.0, step_ = 1.0, total_ = 0.0;
    std::vector<double> dens_, cum_;
};

// ---------------------------------------------------------------------------
// Goodness of fit
// ---------------------------------------------------------------------------

struct GofReport {
    double ks_stat = 0.0;
    double chi2_stat = 0.0;
    int chi2_dof = 0;
    double tv_distance = 0.0;
    std::size_t n = 0;

    /// 1%-level KS critical value 1.63/sqrt(n).
    double ks_critical_1pct() const { return 1.63 / std::sqrt(static_cast<double>(n)); }
    bool ks_pass_1pct() const { return ks_stat < ks_critical_1pct(); }
};

/// KS against the numerically integrated analytic CDF, chi-square on
/// equal-mass bins (>= 20 expected per bin), and total variation between a
/// 100-bin normalized histogram and the bin-averaged analytic density.
inline GofReport gof(std::span<const double> values, const std::function<double(double)>& pdf, double lo,
                     double hi) {
    if (values.empty()) throw DomainError("gof: empty sample");
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("gof: non-finite sample value");
    const CdfTable cdf(pdf, lo, hi);
    GofReport rep;
    rep.n = values.size();

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        ks = std::max(ks, std::fabs((i + 1) / n - f));
        ks = std::max(ks, std::fabs(i / n - f));
    }
    rep.ks_stat = std::min(ks, 1.0);

    // chi-square on equal-mass bins
    const int bins = std::max(1, std::min<int>(256, static_cast<int>(sorted.size() / 20)));
    rep.chi2_dof = bins - 1;
    const double expected = n / bins;
    std::size_t pos = 0;
    double chi2 = 0.0;
    for (int b = 0; b < bins; ++b) {
        const double edge = (b == bins - 1) ? hi : cdf.quantile((b + 1.0) / bins);
        std::size_t count = 0;
        while (pos < sorted.size() && sorted[pos] <= edge) {
            ++pos;
            ++count;
        }
        chi2 += (count - expected) * (count - expected) / expected;
    }
    chi2 += (sorted.size() - pos) * (sorted.size() - pos) / expected;  // mass beyond hi
    rep.chi2_stat = chi2;

    // total variation on the repo-convention 100-bin histogram
    const int tv_bins = 100;
    const auto hist = histogram_1d(values, tv_bins, lo, hi);
    double tv = 0.0;
    const double width = (hi - lo) / tv_bins;
    const double in_range_frac = 1.0 - static_cast<double>(hist.clipped) / n;
    for (int b = 0; b < tv_bins; ++b) {
        const double emp_mass = hist.mass[b] * width * in_range_frac;
        const double ana_mass = cdf(hist.edges[b + 1]) - cdf(hist.edges[b]);
        tv += std::fabs(emp_mass - ana_mass);
    }
    // out-of-range empirical mass vs analytic mass outside [lo, hi]
    tv += std::fabs(static_cast<double>(hist.clipped) / n - std::max(0.0, 1.0 - cdf.total_mass()));
    rep.tv_distance = std::min(1.0, 0.5 * tv);
    return rep;
}

// ---------------------------------------------------------------------------
// Batch export / import
// ---------------------------------------------------------------------------

inline constexpr char kBinaryMagic[4] = {'Z', 'P', 'D', '1'};

/// Incremental sample-file writer; CSV ("re,im" header, 17 significant
/// digits, '\n' endings) or the compact binary format (magic "ZPD1" followed
/// by little-endian 64-bit float pairs).
class SampleWriter {
  public:
    enum class Format { csv, binary };

    SampleWriter(const std::string& path, Format format) : format_(format) {
        out_.open(path, format == Format::binary ? std::ios::binary | std::ios::out : std::ios::out);
        if (!out_) throw IoError("cannot open '" + path + "' for writing");
        if (format_ == Format::csv)
            out_ << "re,im\n";
        else
            out_.write(kBinaryMagic, 4);
    }

    void append(std::span<const Complex> z) {
        if (format_ == Format::csv) {
            char line[64];
            for (const auto& v : z) {
                std::snprintf(line, sizeof(line), "%.17g,%.17g\n", v.real(), v.imag());
                out_ << line;
            }
        } else {
            static_assert(sizeof(Complex) == 2 * sizeof(double));
            out_.write(reinterpret_cast<const char*>(z.data()),
                       static_cast<std::streamsize>(z.size() * sizeof(Complex)));
        }
        if (!out_) throw IoError("write failure on sample file");
    }

    void finish() {
        out_.flush();
        if (!out_) throw IoError("flush failure on sample file");
        out_.close();
    }

  private:
    std::ofstream out_;
    Format format_;
};

inline void write_samples(const std::string& path, std::span<const Complex> z, SampleWriter::Format format) {
    SampleWriter w(path, format);
    w.append(z);
    w.finish();
}

/// Read a sample file, auto-detecting binary (magic "ZPD1") vs CSV.
inline std::vector<Complex> read_samples(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    char head[4] = {0, 0, 0, 0};
    in.read(head, 4);
    if (in.gcount() == 4 && std::memcmp(head, kBinaryMagic, 4) == 0) {
        in.seekg(0, std::ios::end);
        const auto bytes = static_cast<std::size_t>(in.tellg()) - 4;
        if (bytes % sizeof(Complex) != 0)
            throw ParseError("binary sample file '" + path + "': payload is not a whole number of re/im pairs");
        std::vector<Complex> z(bytes / sizeof(Complex));
        in.seekg(4, std::ios::beg);
        in.read(reinterpret_cast<char*>(z.data()), static_cast<std::streamsize>(bytes));
        if (!in) throw IoError("read failure on '" + path + "'");
        for (const auto& v : z)
            if (!is_finite(v)) throw ParseError("binary sample file '" + path + "': non-finite sample");
        return z;
    }
    // CSV route
    in.close();
    std::ifstream text(path);
    if (!text) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(text, line)) throw ParseError("sample file '" + path + "' is empty");
    if (line != "re,im")
        throw ParseError("sample file '" + path + "': expected binary magic \"ZPD1\" or CSV header \"re,im\"");
    std::vector<Complex> z;
    std::size_t line_no = 1;
    while (std::getline(text, line)) {
        ++line_no;
        if (line.empty()) continue;
        char* end = nullptr;
        const double re = std::strtod(line.c_str(), &end);
        if (end == line.c_str() || *end != ',')
            throw ParseError("sample file '" + path + "': malformed row at line " + std::to_string(line_no));
        const char* second = end + 1;
        const double im = std::strtod(second, &end);
        if (end == second) throw ParseError("sample file '" + path + "': malformed row at line " +
                                            std::to_string(line_no));
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError("sample file '" + path + "': non-finite sample at line " + std::to_string(line_no));
        z.emplace_back(re, im);
    }
    return z;
}

}  // namespace zpd

#endif  // ZPD_SIMULATE_HPP_
