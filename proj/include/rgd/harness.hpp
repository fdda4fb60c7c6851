#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rgd/augmented.hpp"
#include "rgd/biased.hpp"
#include "rgd/linebreak.hpp"
#include "rgd/sample.hpp"
#include "rgd/stats.hpp"

#include <boost/math/distributions/normal.hpp>

namespace rgd {

using Params = std::map<std::string, long>;

inline long param(const Params& p, const std::string& key, long fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

inline std::string format_params(const Params& p) {
    std::string out;
    for (auto& [k, v] : p) out += (out.empty() ? "" : " ") + k + "=" + std::to_string(v);
    return out;
}

namespace detail {
inline DegreeSequence runs(const std::vector<std::pair<long, long>>& rs) {
    std::vector<long> d;
    for (auto& [deg, count] : rs) {
        if (count < 0) throw InvalidInput("family parameters give a negative count");
        d.insert(d.end(), count, deg);
    }
    return DegreeSequence::of(d);
}
}  // namespace detail

// subbinary (size m, k):    3^m, 1^(m+2), 2^(km)
// deg3seq (size m, k, s):   3^(m+s), 1^(m+2-s), 2^(km)
// all3 (size n), mixed34 (size n: n/2 threes, n/2 fours)
inline DegreeSequence family_degrees(const std::string& family, long size, const Params& p = {}) {
    if (size < 1) throw InvalidInput("family size must be positive");
    if (family == "subbinary") {
        long k = param(p, "k", 1);
        return detail::runs({{3, size}, {1, size + 2}, {2, k * size}});
    }
    if (family == "deg3seq") {
        long k = param(p, "k", 1), s = param(p, "s", 0);
        return detail::runs({{3, size + s}, {1, size + 2 - s}, {2, k * size}});
    }
    if (family == "all3") {
        if (size % 2 || size < 4) throw InvalidInput("all3 needs an even n >= 4");
        return detail::runs({{3, size}});
    }
    if (family == "mixed34") {
        if (size % 4) throw InvalidInput("mixed34 needs n divisible by 4");
        return detail::runs({{3, size / 2}, {4, size / 2}});
    }
    throw InvalidInput("unknown family " + family);
}

enum class SamplerKind { reject, prufer, mcmc, enumerate };

inline SamplerKind parse_sampler(const std::string& s) {
    if (s == "reject") return SamplerKind::reject;
    if (s == "prufer") return SamplerKind::prufer;
    if (s == "mcmc") return SamplerKind::mcmc;
    if (s == "enumerate") return SamplerKind::enumerate;
    throw InvalidInput("unknown sampler " + s);
}

inline const char* sampler_name(SamplerKind k) {
    switch (k) {
        case SamplerKind::reject: return "reject";
        case SamplerKind::prufer: return "prufer";
        case SamplerKind::mcmc: return "mcmc";
        case SamplerKind::enumerate: return "enumerate";
    }
    return "?";
}

inline bool exact_sampler(SamplerKind k) { return k != SamplerKind::mcmc; }

inline constexpr const char* kMcmcWarning = "mcmc samples are approximate (swap chain, finite burn-in), not exactly uniform";

/// One sampler bound to (d, class); each call draws an independent graph.
class GraphSampler {
public:
    GraphSampler(DegreeSequence d, GraphClass c, SamplerKind kind, SamplerConfig cfg = {})
        : d_(std::move(d)), class_(c), kind_(kind), cfg_(cfg) {
        cfg_.check();
        switch (kind_) {
            case SamplerKind::prufer:
                if (c != GraphClass::connected) throw InvalidInput("prufer samples connected trees only");
                if (d_.total() != 2 * d_.n() - 2) throw InvalidInput("prufer needs degrees summing to 2(n-1)");
                break;
            case SamplerKind::enumerate:
                pool_ = enumerate(d_, c);
                if (pool_.empty()) throw InvalidInput("no graph in the class");
                break;
            case SamplerKind::mcmc:
                start_ = havel_hakimi(d_);
                burnin_ = cfg_.mcmc_burnin ? cfg_.mcmc_burnin : default_burnin(start_);
                break;
            case SamplerKind::reject:
                if (!is_graphical(d_)) throw InvalidInput("degree sequence is not graphical");
                break;
        }
    }

    const DegreeSequence& degrees() const { return d_; }
    SamplerKind kind() const { return kind_; }
    GraphClass graph_class() const { return class_; }

    template <class R>
    LabeledGraph operator()(R& rng) const {
        switch (kind_) {
            case SamplerKind::prufer: return sample_tree_prufer(d_, rng);
            case SamplerKind::enumerate: return pool_[uniform_index(pool_.size(), rng)];
            case SamplerKind::mcmc: {
                // burn-in counts accepted swaps; blocked chains stop at the rejection cap
                SwapChainStats st;
                auto g = start_;
                while (st.accepted < burnin_ && st.proposals < cfg_.max_rejections)
                    g = mcmc_double_swap(g, std::min(burnin_ - st.accepted, cfg_.max_rejections - st.proposals), rng, &st);
                for (std::size_t i = 0; !in_class(g, class_); ++i) {
                    if (i >= cfg_.max_rejections) throw std::runtime_error("swap chain never reached the class");
                    g = mcmc_double_swap(g, cfg_.mcmc_thin, rng);
                }
                return g;
            }
            case SamplerKind::reject: break;
        }
        return sample_configuration_rejection(d_, class_, rng, cfg_.max_rejections);
    }

private:
    DegreeSequence d_;
    GraphClass class_;
    SamplerKind kind_;
    SamplerConfig cfg_;
    std::vector<LabeledGraph> pool_;
    LabeledGraph start_;
    std::size_t burnin_ = 0;
};

/// Stream for sample i of a given size; independent of which other sizes run.
inline Rng sample_stream(std::uint64_t seed, long size, std::size_t i) {
    return make_stream(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(size))), i);
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// f(i) for i in [0, count) over a worker pool; f writes into its own slot.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex guard;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < count;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(guard);
                    if (!error) error = std::current_exception();
                    next = count;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct ExperimentSpec {
    std::string family = "subbinary";
    Params params;
    std::vector<long> sizes;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    SamplerKind sampler = SamplerKind::reject;
    GraphClass graph_class = GraphClass::all;
    SamplerConfig config;
    unsigned threads = 1;

    void check() const {
        if (sizes.empty()) throw InvalidInput("experiment needs at least one size");
        if (samples == 0) throw InvalidInput("experiment needs at least one sample");
        config.check();
    }
};

// CSV

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> comments;

    void write(std::ostream& os) const {
        for (auto& c : comments) os << "# " << c << '\n';
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << '\n';
        };
        line(header);
        for (auto& r : rows) line(r);
    }
};

inline std::string csv_num(double x) {
    if (std::isinf(x)) return "inf";
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

namespace detail {
inline std::vector<std::string> row_head(const ExperimentSpec& s, long size) {
    return {std::to_string(s.seed), sampler_name(s.sampler), s.family, csv_field(format_params(s.params)),
            class_name(s.graph_class), std::to_string(size)};
}
inline const std::vector<std::string> kRowHead = {"seed", "sampler", "family", "params", "class", "size"};

inline double finite_or_inf(std::size_t d) {
    return d == kInfinite ? std::numeric_limits<double>::infinity() : static_cast<double>(d);
}
}  // namespace detail

// diameter scaling

struct DiamRow {
    long size = 0, n = 0;
    std::size_t samples = 0;
    Summary diam;
    double ratio_sqrt_n = 0, ratio_ln_n = 0, ratio_log2_n = 0;
    std::size_t disconnected = 0;
};

inline std::vector<DiamRow> diam_scaling(const ExperimentSpec& spec) {
    spec.check();
    std::vector<DiamRow> out;
    for (long size : spec.sizes) {
        auto d = family_degrees(spec.family, size, spec.params);
        GraphSampler sampler(d, spec.graph_class, spec.sampler, spec.config);
        std::vector<double> diam(spec.samples);
        std::vector<char> conn(spec.samples);
        parallel_for(spec.samples, spec.threads, [&](std::size_t i) {
            auto rng = sample_stream(spec.seed, size, i);
            auto g = sampler(rng);
            diam[i] = static_cast<double>(diameter(g));
            conn[i] = is_connected(g);
        });
        DiamRow r;
        r.size = size;
        r.n = d.n();
        r.samples = spec.samples;
        r.diam = summarize(diam);
        r.ratio_sqrt_n = r.diam.mean / std::sqrt(double(r.n));
        r.ratio_ln_n = r.diam.mean / std::log(double(r.n));
        r.ratio_log2_n = r.diam.mean / std::log2(double(r.n));
        r.disconnected = std::count(conn.begin(), conn.end(), 0);
        out.push_back(r);
    }
    return out;
}

inline CsvTable diam_scaling_csv(const ExperimentSpec& spec, const std::vector<DiamRow>& rows) {
    CsvTable t;
    t.header = detail::kRowHead;
    for (auto h : {"n", "samples", "mean_diam", "stderr", "min", "max", "mean_over_sqrt_n", "mean_over_ln_n", "disconnected"})
        t.header.push_back(h);
    for (auto& r : rows) {
        auto row = detail::row_head(spec, r.size);
        for (auto v : {csv_num(double(r.n)), std::to_string(r.samples), csv_num(r.diam.mean), csv_num(r.diam.stderr_),
                       csv_num(r.diam.min), csv_num(r.diam.max), csv_num(r.ratio_sqrt_n), csv_num(r.ratio_ln_n),
                       std::to_string(r.disconnected)})
            row.push_back(v);
        t.rows.push_back(row);
    }
    if (!exact_sampler(spec.sampler)) t.comments.push_back(kMcmcWarning);
    return t;
}

// kernel diameter

struct KernelDiamRow {
    long size = 0, n = 0;
    std::size_t samples = 0;
    std::size_t connected = 0;
    std::size_t exceed_graph = 0;  // diam⁺(G) >= 1000 ln n
    double mean_diam = 0;          // over connected samples
    double max_ratio_ln_n = 0;     // max diam⁺(G)/ln n, inf when some sample is disconnected
    long twos = 0, kernel_m = 0;
    std::size_t exceed_kernel = 0;  // diam⁺(K) >= 500 ln m
    double kernel_mean_diam = 0, kernel_max_diam = 0;
};

inline double graph_threshold(long n) { return 1000 * std::log(double(n)); }
inline double kernel_threshold(long m) { return 500 * std::log(double(m)); }

/// Graphs from spec.sampler on the family, plus uniform augmented cores on the family
/// degrees with `twos` extra degree-2 labels (param twos, default n/2) for the kernel bound.
inline std::vector<KernelDiamRow> kernel_diam(const ExperimentSpec& spec) {
    spec.check();
    std::vector<KernelDiamRow> out;
    for (long size : spec.sizes) {
        auto d = family_degrees(spec.family, size, spec.params);
        if (d.min_value() < 3) throw InvalidInput("kernel-diam needs minimum degree 3");
        GraphSampler sampler(d, spec.graph_class, spec.sampler, spec.config);
        const long twos = param(spec.params, "twos", d.n() / 2);
        auto e = d.entries();
        for (long i = 1; i <= twos; ++i) e.emplace_back(d.n() + i, 2);
        DegreeSequence core_d(e);
        std::vector<double> gd(spec.samples), kd(spec.samples);
        parallel_for(spec.samples, spec.threads, [&](std::size_t i) {
            auto rng = sample_stream(spec.seed, size, i);
            gd[i] = detail::finite_or_inf(diameter_plus(sampler(rng)));
            auto a = sample_uniform_augmented_core(core_d, rng, spec.config.max_rejections);
            kd[i] = detail::finite_or_inf(diameter_plus(build_kernel(a)));
        });
        KernelDiamRow r;
        r.size = size;
        r.n = d.n();
        r.samples = spec.samples;
        r.twos = twos;
        r.kernel_m = d.total() / 2;
        const double ln_n = std::log(double(r.n)), gt = graph_threshold(r.n), kt = kernel_threshold(r.kernel_m);
        double sum = 0;
        for (double x : gd) {
            if (std::isfinite(x)) {
                ++r.connected;
                sum += x;
            }
            r.exceed_graph += x >= gt;
            r.max_ratio_ln_n = std::max(r.max_ratio_ln_n, x / ln_n);
        }
        r.mean_diam = r.connected ? sum / r.connected : 0;
        double ksum = 0;
        for (double x : kd) {
            r.exceed_kernel += x >= kt;
            ksum += x;
            r.kernel_max_diam = std::max(r.kernel_max_diam, x);
        }
        r.kernel_mean_diam = ksum / spec.samples;
        out.push_back(r);
    }
    return out;
}

inline CsvTable kernel_diam_csv(const ExperimentSpec& spec, const std::vector<KernelDiamRow>& rows) {
    CsvTable t;
    t.header = detail::kRowHead;
    for (auto h : {"n", "samples", "connected_freq", "mean_diam_plus", "max_diam_plus_over_ln_n", "exceed_1000_ln_n",
                   "twos", "kernel_m", "kernel_mean_diam_plus", "kernel_max_diam_plus", "exceed_500_ln_m"})
        t.header.push_back(h);
    for (auto& r : rows) {
        auto row = detail::row_head(spec, r.size);
        for (auto v : {std::to_string(r.n), std::to_string(r.samples), csv_num(double(r.connected) / r.samples),
                       csv_num(r.mean_diam), csv_num(r.max_ratio_ln_n), std::to_string(r.exceed_graph),
                       std::to_string(r.twos), std::to_string(r.kernel_m), csv_num(r.kernel_mean_diam),
                       csv_num(r.kernel_max_diam), std::to_string(r.exceed_kernel)})
            row.push_back(v);
        t.rows.push_back(row);
    }
    if (!exact_sampler(spec.sampler)) t.comments.push_back(kMcmcWarning);
    return t;
}

// forest height tails

inline double forest_tail_bound(double x) { return 4 * std::exp(-x * x / 256); }

/// 1-free forest child sequence on labels 1..S: j vertices with b children, the
/// rest leaves, with j·b = S − roots.
inline ChildSequence forest_child_sequence(long s, long roots, long b) {
    if (b < 2) throw InvalidInput("1-free forests need internal child counts >= 2");
    if (roots < 1 || roots > s || (s - roots) % b) throw InvalidInput("S - roots must be a multiple of b");
    const long j = (s - roots) / b;
    std::vector<ChildSequence::Entry> e;
    for (long v = 1; v <= s; ++v) e.emplace_back(v, v <= j ? b : 0);
    return ChildSequence(std::move(e));
}

struct TailRow {
    std::string kind;  // "forest" or "biased"
    long size = 0, m = 0;
    double x = 0, threshold = 0, empirical = 0, stderr_ = 0, bound = 0;
    std::size_t samples = 0;
    bool within() const { return empirical <= bound + 3 * stderr_; }
};

/// Forest part: sizes are |S|, params roots (default 2) and b (default 2).
inline std::vector<TailRow> forest_tail(const ExperimentSpec& spec, const std::vector<double>& xs) {
    spec.check();
    std::vector<TailRow> out;
    for (long s : spec.sizes) {
        auto c = forest_child_sequence(s, param(spec.params, "roots", 2), param(spec.params, "b", 2));
        std::vector<long> h(spec.samples);
        parallel_for(spec.samples, spec.threads, [&](std::size_t i) {
            auto rng = sample_stream(spec.seed, s, i);
            h[i] = random_forest(c, rng).height();
        });
        for (double x : xs) {
            TailRow r;
            r.kind = "forest";
            r.size = s;
            r.x = x;
            r.threshold = x * std::sqrt(double(s));
            r.samples = spec.samples;
            r.empirical = double(std::count_if(h.begin(), h.end(), [&](long v) { return v > r.threshold; })) / spec.samples;
            r.stderr_ = proportion_stderr(r.empirical, spec.samples);
            r.bound = forest_tail_bound(x);
            out.push_back(r);
        }
    }
    return out;
}

/// Biased binary tree on [0, n]: P(ht(0) >= 2√(mn) + x√n) against exp(−x²/3 + 4).
inline std::vector<TailRow> biased_tail(long n, const std::vector<long>& ms, const std::vector<double>& xs, std::size_t samples,
                                        std::uint64_t seed, unsigned threads = 1) {
    std::vector<TailRow> out;
    for (long m : ms) {
        if (n < 64 * m) throw InvalidInput("tail bound needs n >= 64 m");
        BiasedTreeSampler sampler(binary_child_sequence(n), m);
        std::vector<long> h(samples);
        parallel_for(samples, threads, [&](std::size_t i) {
            auto rng = sample_stream(seed, n * 1000 + m, i);
            h[i] = sampler.height(rng);
        });
        for (double x : xs) {
            TailRow r;
            r.kind = "biased";
            r.size = n;
            r.m = m;
            r.x = x;
            r.threshold = tail_threshold(n, m, x);
            r.samples = samples;
            r.empirical = double(std::count_if(h.begin(), h.end(), [&](long v) { return v >= r.threshold; })) / samples;
            r.stderr_ = proportion_stderr(r.empirical, samples);
            r.bound = tail_bound(x);
            out.push_back(r);
        }
    }
    return out;
}

/// (n/2)^(-1/2) (ht(0) - √(mn)) for the biased binary tree on [0, n], binned on
/// [lo, hi) next to standard normal bin masses. Reported, not asserted.
struct HistogramBin {
    double lo = 0, hi = 0, freq = 0, normal = 0;
};

inline std::vector<HistogramBin> standardized_height_histogram(long n, long m, std::size_t samples, std::uint64_t seed,
                                                               double lo = -4, double hi = 4, int bins = 16,
                                                               unsigned threads = 1) {
    if (bins < 1 || !(lo < hi)) throw InvalidInput("histogram needs bins >= 1 and lo < hi");
    BiasedTreeSampler sampler(binary_child_sequence(n), m);
    std::vector<double> z(samples);
    const double centre = std::sqrt(double(m) * n), scale = std::sqrt(n / 2.0);
    parallel_for(samples, threads, [&](std::size_t i) {
        auto rng = sample_stream(seed, n * 1000 + m, i);
        z[i] = (sampler.height(rng) - centre) / scale;
    });
    boost::math::normal_distribution<double> gauss;
    const double w = (hi - lo) / bins;
    std::vector<HistogramBin> out(bins);
    for (int b = 0; b < bins; ++b) {
        out[b].lo = lo + b * w;
        out[b].hi = lo + (b + 1) * w;
        out[b].normal = boost::math::cdf(gauss, out[b].hi) - boost::math::cdf(gauss, out[b].lo);
    }
    for (double x : z)
        if (x >= lo && x < hi) out[std::min(bins - 1, static_cast<int>((x - lo) / w))].freq += 1.0 / samples;
    return out;
}

inline CsvTable histogram_csv(long n, long m, std::size_t samples, std::uint64_t seed, const std::vector<HistogramBin>& hs) {
    CsvTable t;
    t.header = {"seed", "n", "m", "samples", "bin_lo", "bin_hi", "freq", "normal_mass"};
    for (auto& h : hs)
        t.rows.push_back({std::to_string(seed), std::to_string(n), std::to_string(m), std::to_string(samples), csv_num(h.lo),
                          csv_num(h.hi), csv_num(h.freq), csv_num(h.normal)});
    return t;
}

inline CsvTable tail_csv(const ExperimentSpec& spec, const std::vector<TailRow>& rows) {
    CsvTable t;
    t.header = {"seed", "kind", "family", "params", "size", "m", "x", "threshold", "samples", "empirical", "stderr", "bound", "within"};
    for (auto& r : rows)
        t.rows.push_back({std::to_string(spec.seed), r.kind, r.kind == "forest" ? "forest" : "binary",
                          csv_field(r.kind == "forest" ? format_params(spec.params) : ""), std::to_string(r.size),
                          std::to_string(r.m), csv_num(r.x), csv_num(r.threshold), std::to_string(r.samples),
                          csv_num(r.empirical), csv_num(r.stderr_), csv_num(r.bound), r.within() ? "1" : "0"});
    return t;
}

}  // namespace rgd
