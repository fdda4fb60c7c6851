#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

namespace rgd {

struct ChiSquare {
    double statistic = 0;
    long dof = 0;
    double p_value = 1;
};

/// Goodness of fit of observed counts to expected probabilities (same order).
inline ChiSquare chi_square(const std::vector<double>& observed, const std::vector<double>& probs) {
    if (observed.size() != probs.size() || observed.empty()) throw std::invalid_argument("chi-square size mismatch");
    double n = 0;
    for (double o : observed) n += o;
    ChiSquare r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double e = n * probs[i];
        if (e <= 0) {
            if (observed[i] > 0) return {INFINITY, static_cast<long>(observed.size()) - 1, 0.0};
            continue;
        }
        r.statistic += (observed[i] - e) * (observed[i] - e) / e;
        ++r.dof;
    }
    --r.dof;
    if (r.dof <= 0) return {r.statistic, 0, 1.0};
    boost::math::chi_squared dist(static_cast<double>(r.dof));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

/// Uniformity over `cells` categories given counts per category.
template <class K>
ChiSquare chi_square_uniform(const std::map<K, long>& counts, std::size_t cells) {
    if (counts.size() > cells) throw std::invalid_argument("more observed categories than cells");
    std::vector<double> obs, probs(cells, 1.0 / static_cast<double>(cells));
    for (auto& [k, c] : counts) obs.push_back(static_cast<double>(c));
    obs.resize(cells, 0.0);
    return chi_square(obs, probs);
}

struct Summary {
    std::size_t count = 0;
    double mean = 0, stddev = 0, stderr_ = 0, min = 0, max = 0;
};

inline Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.count = xs.size();
    if (xs.empty()) return s;
    s.min = s.max = xs.front();
    for (double x : xs) {
        s.mean += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
        s.stderr_ = s.stddev / std::sqrt(static_cast<double>(xs.size()));
    }
    return s;
}

/// Standard error of a proportion p over n trials.
inline double proportion_stderr(double p, std::size_t n) { return n ? std::sqrt(p * (1 - p) / static_cast<double>(n)) : 0.0; }

/// Least-squares slope of log y against log x.
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= x.size();
    my /= y.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = std::log(x[i]) - mx;
        sxy += a * (std::log(y[i]) - my);
        sxx += a * a;
    }
    return sxy / sxx;
}

/// Multiple chi-square tests: each p against alpha/N, and the number of raw
/// p <= alpha hits against the upper alpha quantile of Binomial(N, alpha).
struct FamilyVerdict {
    std::size_t tests = 0, raw_hits = 0, allowed_hits = 0;
    double min_p = 1, per_test_level = 0;
    bool passed = true;
};

inline FamilyVerdict family_wise(const std::vector<double>& ps, double alpha) {
    FamilyVerdict v;
    v.tests = ps.size();
    if (ps.empty()) return v;
    v.per_test_level = alpha / static_cast<double>(ps.size());
    boost::math::binomial_distribution<double> hits(static_cast<double>(ps.size()), alpha);
    v.allowed_hits = static_cast<std::size_t>(boost::math::quantile(boost::math::complement(hits, alpha)));
    for (double p : ps) {
        v.min_p = std::min(v.min_p, p);
        v.raw_hits += p <= alpha;
    }
    v.passed = v.min_p > v.per_test_level && v.raw_hits <= v.allowed_hits;
    return v;
}

}  // namespace rgd
