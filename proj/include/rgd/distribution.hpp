#pragma once

#include <map>
#include <set>
#include <sstream>
#include <string>

#include "rgd/bigint.hpp"
#include "rgd/degseq.hpp"

namespace rgd {

/// Finitely supported law on the integers with exact rational masses.
class DiscreteDistribution {
public:
    DiscreteDistribution() = default;

    template <class W>
    static DiscreteDistribution from_weights(const std::map<long, W>& weights) {
        Rational total = 0;
        for (auto& [v, w] : weights) {
            if (w < 0) throw InvalidInput("negative weight");
            total += Rational(w);
        }
        if (total == 0) throw InvalidInput("all weights are zero");
        DiscreteDistribution d;
        for (auto& [v, w] : weights)
            if (w != 0) d.mass_.emplace(v, Rational(w) / total);
        return d;
    }
    static DiscreteDistribution point(long v) {
        DiscreteDistribution d;
        d.mass_.emplace(v, Rational(1));
        return d;
    }

    const std::map<long, Rational>& masses() const { return mass_; }
    bool empty() const { return mass_.empty(); }
    long min() const { return mass_.begin()->first; }
    long max() const { return mass_.rbegin()->first; }
    Rational prob(long v) const {
        auto it = mass_.find(v);
        return it == mass_.end() ? Rational(0) : it->second;
    }
    /// P(X ≤ t)
    Rational cdf(long t) const {
        Rational s = 0;
        for (auto it = mass_.begin(); it != mass_.end() && it->first <= t; ++it) s += it->second;
        return s;
    }
    /// P(X ≥ t)
    Rational at_least(long t) const {
        Rational s = 0;
        for (auto it = mass_.lower_bound(t); it != mass_.end(); ++it) s += it->second;
        return s;
    }
    Rational at_most(long t) const { return cdf(t); }

    DiscreteDistribution shifted(long k) const {
        DiscreteDistribution d;
        for (auto& [v, p] : mass_) d.mass_.emplace(v + k, p);
        return d;
    }
    /// (X | X ≥ a)
    DiscreteDistribution given_at_least(long a) const {
        std::map<long, Rational> w(mass_.lower_bound(a), mass_.end());
        if (w.empty()) throw InvalidInput("conditioning on an event of probability zero");
        return from_weights(w);
    }
    /// (X | X ≤ a)
    DiscreteDistribution given_at_most(long a) const {
        std::map<long, Rational> w(mass_.begin(), mass_.upper_bound(a));
        if (w.empty()) throw InvalidInput("conditioning on an event of probability zero");
        return from_weights(w);
    }
    double mean() const {
        Rational s = 0;
        for (auto& [v, p] : mass_) s += p * v;
        return to_double(s);
    }
    std::string str() const {
        std::ostringstream out;
        out << '{';
        bool first = true;
        for (auto& [v, p] : mass_) {
            out << (first ? "" : ", ") << v << ": " << p;
            first = false;
        }
        out << '}';
        return out.str();
    }

    friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;

private:
    std::map<long, Rational> mass_;
};

/// A ⪯_st B: P(A ≥ t) ≤ P(B ≥ t) for every t.
inline bool stochastically_le(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    std::set<long> points;
    for (auto& kv : a.masses()) points.insert(kv.first);
    for (auto& kv : b.masses()) points.insert(kv.first);
    Rational ca = 0, cb = 0;  // running cdfs
    auto ia = a.masses().begin(), ib = b.masses().begin();
    for (long t : points) {
        if (ia != a.masses().end() && ia->first == t) ca += (ia++)->second;
        if (ib != b.masses().end() && ib->first == t) cb += (ib++)->second;
        if (ca < cb) return false;
    }
    return true;
}

/// (Y | Y ≥ X) for independent X, Y.
inline DiscreteDistribution given_at_least_independent(const DiscreteDistribution& y, const DiscreteDistribution& x) {
    std::map<long, Rational> w;
    for (auto& [v, p] : y.masses()) {
        Rational q = p * x.cdf(v);
        if (q != 0) w.emplace(v, q);
    }
    if (w.empty()) throw InvalidInput("conditioning on an event of probability zero");
    return DiscreteDistribution::from_weights(w);
}

}  // namespace rgd
