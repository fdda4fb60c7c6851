#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "rgd/distribution.hpp"
#include "rgd/linebreak.hpp"
#include "rgd/random.hpp"

namespace rgd {

/// b on [0, n]: labels 1..n/2 have two children, the rest none.
inline ChildSequence binary_child_sequence(long n) {
    if (n < 0 || n % 2 != 0) throw InvalidInput("binary child sequence needs an even n");
    std::vector<long> c(n + 1, 0);
    for (long v = 1; v <= n / 2; ++v) c[v] = 2;
    return ChildSequence::of(c);
}

/// Exact pmf of ht_T(0) for the composition-biased binary tree on [0, n].
inline DiscreteDistribution binary_height_pmf(long n, long m) {
    if (n < 2 || n % 2 != 0) throw InvalidInput("binary_height_pmf needs an even n >= 2");
    if (m < 1) throw InvalidInput("binary_height_pmf needs m >= 1");
    std::map<long, Rational> w;
    Rational prod = 1;  // ∏_{i<h} (1 − i/(n−i))
    for (long h = 1; h <= n / 2; ++h) {
        if (h > 1) prod *= Rational(1) - Rational(h - 1, n - (h - 1));
        w[h] = Rational(falling_factorial(h + m - 1, m - 1)) * Rational(h, n - h) * prod;
    }
    return DiscreteDistribution::from_weights(w);
}

namespace detail {
// h!(n−h)! e_h(c) for h = 0..n+1, i.e. |{V : r(V) > h}| · ∏ c_v!.
inline std::vector<BigInt> scaled_tail_counts(const ChildSequence& c) {
    const long n = c.total();
    auto nz = nonzero_counts(c);
    const long top = static_cast<long>(nz.size());
    std::vector<BigInt> e;
    bool homogeneous = !nz.empty() && std::all_of(nz.begin(), nz.end(), [&](long x) { return x == nz.front(); });
    if (homogeneous) {
        e.assign(top + 1, BigInt(0));
        BigInt kpow = 1;
        for (long h = 0; h <= top; ++h) {
            e[h] = kpow * binomial(top, h);
            kpow *= nz.front();
        }
    } else {
        e = elementary_symmetric(nz, top);
    }
    std::vector<BigInt> fact(n + 1);
    fact[0] = 1;
    for (long i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
    std::vector<BigInt> out(n + 2, BigInt(0));
    for (long h = 0; h <= std::min(n, top); ++h) out[h] = fact[h] * fact[n - h] * e[h];
    return out;
}
}  // namespace detail

/// Exact law of r(V) for V uniform in V_c.
inline DiscreteDistribution first_repetition_law(const ChildSequence& c) {
    auto t = detail::scaled_tail_counts(c);
    std::map<long, BigInt> w;
    for (long h = 1; h + 1 < static_cast<long>(t.size()); ++h) w[h + 1] = t[h] - t[h + 1];
    return DiscreteDistribution::from_weights(w);
}

/// Exact law of ht_T(0) for (T, P) uniform with P ∈ P_{m, ht_T(0)}; c must have c_0 = 0
/// and 0 as its smallest leaf.
inline DiscreteDistribution biased_height_law(const ChildSequence& c, long m) {
    if (!c.contains(0) || c.at(0) != 0) throw InvalidInput("vertex 0 must be a leaf");
    auto t = detail::scaled_tail_counts(c);
    std::map<long, BigInt> w;
    for (long h = 1; h + 1 < static_cast<long>(t.size()); ++h) {
        BigInt x = (t[h] - t[h + 1]) * count_compositions(m, h);
        if (x != 0) w[h] = x;
    }
    return DiscreteDistribution::from_weights(w);
}

/// Law of max A for A uniform in ([k] choose j), j ≥ 1.
inline DiscreteDistribution max_subset_law(long j, long k) {
    if (j < 1 || j > k) throw InvalidInput("max_subset_law needs 1 <= j <= k");
    std::map<long, BigInt> w;
    for (long x = j; x <= k; ++x) w[x] = binomial(x - 1, j - 1);
    return DiscreteDistribution::from_weights(w);
}

/// The shift X = max A − m + 1 for A uniform in ([N] choose m−1); constant 0 when m = 1.
inline DiscreteDistribution index_threshold_law(long total, long m) {
    if (m == 1) return DiscreteDistribution::point(0);
    return max_subset_law(m - 1, total).shifted(1 - m);
}

/// A ⪯_st B (cdf of A pointwise above that of B).
inline bool check_stochastic_dominance(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    return stochastically_le(a, b);
}

struct ConditionalDominance {
    bool x_hypothesis = false;   // (X1 | X1 ≤ x) ⪯ (X2 | X2 ≤ x) for all x
    bool y_hypothesis = false;   // (Y1 | Y1 ≥ y) ⪯ (Y2 | Y2 ≥ y) for all y
    bool conclusion = false;     // (Y1 | Y1 ≥ X1) ⪯ (Y2 | Y2 ≥ X2)
    DiscreteDistribution left, right;

    explicit operator bool() const { return conclusion; }
};

inline bool x_hypothesis_holds(const DiscreteDistribution& x1, const DiscreteDistribution& x2) {
    std::set<long> pts;
    for (auto& kv : x1.masses()) pts.insert(kv.first);
    for (auto& kv : x2.masses()) pts.insert(kv.first);
    for (long x : pts) {
        if (x1.cdf(x) == 0 || x2.cdf(x) == 0) continue;
        if (!stochastically_le(x1.given_at_most(x), x2.given_at_most(x))) return false;
    }
    return true;
}

inline bool y_hypothesis_holds(const DiscreteDistribution& y1, const DiscreteDistribution& y2) {
    std::set<long> pts;
    for (auto& kv : y1.masses()) pts.insert(kv.first);
    for (auto& kv : y2.masses()) pts.insert(kv.first);
    for (long y : pts) {
        if (y1.at_least(y) == 0 || y2.at_least(y) == 0) continue;
        if (!stochastically_le(y1.given_at_least(y), y2.given_at_least(y))) return false;
    }
    return true;
}

/// Exact check of the conditional domination statement for independent pairs.
inline ConditionalDominance check_conditional_dominance(const DiscreteDistribution& x1, const DiscreteDistribution& y1,
                                                        const DiscreteDistribution& x2, const DiscreteDistribution& y2) {
    ConditionalDominance r;
    r.x_hypothesis = x_hypothesis_holds(x1, x2);
    r.y_hypothesis = y_hypothesis_holds(y1, y2);
    r.left = given_at_least_independent(y1, x1);
    r.right = given_at_least_independent(y2, x2);
    r.conclusion = stochastically_le(r.left, r.right);
    return r;
}

struct BiasedPair {
    RootedForest tree;
    Composition composition;
};

/// Exact sampler of (T, P) uniform over {T ∈ T_c, P ∈ P_{m, ht_T(0)}}.
/// Sequences whose positive entries all agree are drawn by first picking the height
/// from its exact law and then a uniform sequence with that first repetition; other
/// sequences go through rejection on the composition count.
class BiasedTreeSampler {
public:
    BiasedTreeSampler(ChildSequence c, long m, std::size_t max_iterations = 10'000'000)
        : c_(std::move(c)), m_(m), max_iterations_(max_iterations) {
        if (m_ < 1) throw InvalidInput("m must be positive");
        if (!c_.is_tree_sequence()) throw InvalidInput("not a tree child sequence");
        if (!c_.one_free()) throw InvalidInput("child sequence must be 1-free");
        if (!c_.contains(0) || c_.at(0) != 0) throw InvalidInput("vertex 0 must be a leaf");
        for (auto& [v, k] : c_.entries())
            if (k > 0) {
                positive_.push_back(v);
                if (common_ == 0) common_ = k;
                else if (common_ != k) common_ = -1;
            }
        if (positive_.empty()) throw InvalidInput("child sequence has no internal vertex");
        if (common_ > 0) {
            auto t = detail::scaled_tail_counts(c_);
            BigInt run = 0;
            for (long h = 1; h + 1 < static_cast<long>(t.size()); ++h) {
                run += (t[h] - t[h + 1]) * count_compositions(m_, h);
                cumulative_.push_back(run);
            }
        } else {
            envelope_ = count_compositions(m_, static_cast<long>(positive_.size()));
        }
    }

    bool direct() const { return common_ > 0; }
    const ChildSequence& child_sequence() const { return c_; }
    long m() const { return m_; }

    template <class R>
    BiasedPair operator()(R& rng) const {
        Sequence v = direct() ? conditioned_sequence(draw_height(rng), rng) : rejection_sequence(rng);
        RootedForest t = sequence_to_tree(v, c_);
        long h = t.height(0);
        return BiasedPair{std::move(t), random_composition(m_, h, rng)};
    }

    /// Only ht_T(0) (the tree is still built from a sequence).
    template <class R>
    long height(R& rng) const {
        return (*this)(rng).tree.height(0);
    }

private:
    template <class R>
    long draw_height(R& rng) const {
        BigInt u = uniform_below(cumulative_.back(), rng);
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return static_cast<long>(it - cumulative_.begin()) + 1;
    }

    // Uniform V with r(V) = h + 1 when all positive counts equal common_.
    template <class R>
    Sequence conditioned_sequence(long h, R& rng) const {
        std::vector<Label> sym = positive_;
        for (long i = 0; i < h; ++i) std::swap(sym[i], sym[i + uniform_index(sym.size() - i, rng)]);
        Sequence v(sym.begin(), sym.begin() + h);
        std::size_t rep = uniform_index(h, rng);
        v.push_back(sym[rep]);
        Sequence rest;
        rest.reserve(c_.total());
        for (std::size_t i = 0; i < sym.size(); ++i) {
            long copies = static_cast<long>(i) < h ? common_ - 1 : common_;
            if (i == rep) --copies;
            rest.insert(rest.end(), copies, sym[i]);
        }
        std::shuffle(rest.begin(), rest.end(), rng);
        v.insert(v.end(), rest.begin(), rest.end());
        return v;
    }

    template <class R>
    Sequence rejection_sequence(R& rng) const {
        Sequence v = c_.multiset();
        for (std::size_t it = 0; it < max_iterations_; ++it) {
            std::shuffle(v.begin(), v.end(), rng);
            long h = static_cast<long>(*first_repetition(v)) - 1;
            if (uniform_below(envelope_, rng) < count_compositions(m_, h)) return v;
        }
        throw std::runtime_error("biased sampler exceeded its rejection cap");
    }

    ChildSequence c_;
    long m_;
    std::size_t max_iterations_;
    std::vector<Label> positive_;
    long common_ = 0;
    std::vector<BigInt> cumulative_;
    BigInt envelope_;
};

template <class R>
BiasedPair sample_biased_pair(const ChildSequence& c, long m, R& rng) {
    return BiasedTreeSampler(c, m)(rng);
}

struct TailEstimate {
    long n = 0, m = 0;
    double x = 0, threshold = 0;
    double empirical = 0, stderr_ = 0, bound = 0;
    std::size_t samples = 0;

    bool within_bound() const { return empirical <= bound + 3 * stderr_; }
};

inline double tail_threshold(long n, long m, double x) { return 2 * std::sqrt(double(m) * n) + x * std::sqrt(double(n)); }
inline double tail_bound(double x) { return std::exp(-x * x / 3 + 4); }

/// Monte Carlo tails of ht_T(0) for the biased binary tree on [0, n], one
/// estimate per x from a shared set of samples.
template <class R>
std::vector<TailEstimate> tail_bound_table(long n, long m, const std::vector<double>& xs, std::size_t samples, R& rng) {
    if (n < 64 * m) throw InvalidInput("tail bound needs n >= 64 m");
    BiasedTreeSampler sampler(binary_child_sequence(n), m);
    std::vector<long> heights(samples);
    for (auto& h : heights) h = sampler.height(rng);
    std::vector<TailEstimate> out;
    for (double x : xs) {
        TailEstimate t;
        t.n = n;
        t.m = m;
        t.x = x;
        t.threshold = tail_threshold(n, m, x);
        std::size_t hits = std::count_if(heights.begin(), heights.end(), [&](long h) { return h >= t.threshold; });
        t.samples = samples;
        t.empirical = double(hits) / samples;
        t.stderr_ = std::sqrt(t.empirical * (1 - t.empirical) / samples);
        t.bound = tail_bound(x);
        out.push_back(t);
    }
    return out;
}

template <class R>
TailEstimate tail_bound_check(long n, long m, double x, std::size_t samples, R& rng) {
    return tail_bound_table(n, m, {x}, samples, rng).front();
}

}  // namespace rgd
