#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rgd/bigint.hpp"

namespace rgd {

using Label = std::int64_t;

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Labelled sequence of non-negative counts, kept sorted by label.
class LabelledCounts {
public:
    using Entry = std::pair<Label, long>;

    LabelledCounts() = default;
    explicit LabelledCounts(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end());
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i].first == entries_[i - 1].first)
                throw InvalidInput("duplicate label " + std::to_string(entries_[i].first));
        for (auto& [v, c] : entries_)
            if (c < 0) throw InvalidInput("negative entry at label " + std::to_string(v));
    }

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    long total() const {
        long s = 0;
        for (auto& e : entries_) s += e.second;
        return s;
    }
    bool contains(Label v) const { return find(v) != entries_.end(); }
    long at(Label v) const {
        auto it = find(v);
        if (it == entries_.end()) throw InvalidInput("unknown label " + std::to_string(v));
        return it->second;
    }
    /// Number of entries equal to b.
    long count(long b) const {
        return std::count_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.second == b; });
    }
    std::vector<Label> labels() const {
        std::vector<Label> out;
        out.reserve(entries_.size());
        for (auto& e : entries_) out.push_back(e.first);
        return out;
    }
    long max_value() const {
        long m = 0;
        for (auto& e : entries_) m = std::max(m, e.second);
        return m;
    }
    long min_value() const {
        long m = entries_.empty() ? 0 : entries_.front().second;
        for (auto& e : entries_) m = std::min(m, e.second);
        return m;
    }
    bool dense_from(Label first) const {
        return entries_.empty() ||
               (entries_.front().first == first &&
                entries_.back().first == first + static_cast<Label>(entries_.size()) - 1);
    }

    friend bool operator==(const LabelledCounts&, const LabelledCounts&) = default;

protected:
    std::vector<Entry>::const_iterator find(Label v) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, LONG_MIN});
        return (it != entries_.end() && it->first == v) ? it : entries_.end();
    }
    std::vector<Entry> entries_;
};

class DegreeSequence : public LabelledCounts {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<Entry> entries) : LabelledCounts(std::move(entries)) { check(); }
    /// Degrees for labels 1..n.
    static DegreeSequence of(const std::vector<long>& degrees) {
        std::vector<Entry> e;
        for (std::size_t i = 0; i < degrees.size(); ++i) e.emplace_back(static_cast<Label>(i + 1), degrees[i]);
        return DegreeSequence(std::move(e));
    }

    long n() const { return static_cast<long>(size()); }
    DegreeSequence restrict_to(const std::vector<Label>& keep) const {
        std::vector<Entry> e;
        for (Label v : keep) e.emplace_back(v, at(v));
        return DegreeSequence(std::move(e));
    }

private:
    void check() const {
        for (auto& [v, d] : entries_) {
            if (v < 1) throw InvalidInput("degree sequence labels must be positive");
            if (d < 1) throw InvalidInput("degree of " + std::to_string(v) + " must be at least 1");
        }
        if (total() % 2 != 0) throw InvalidInput("degree sum must be even");
    }
};

class ChildSequence : public LabelledCounts {
public:
    ChildSequence() = default;
    explicit ChildSequence(std::vector<Entry> entries) : LabelledCounts(std::move(entries)) {
        for (auto& e : entries_)
            if (e.first < 0) throw InvalidInput("child sequence labels must be non-negative");
        if (!entries_.empty() && total() > static_cast<long>(size()) - 1)
            throw InvalidInput("child counts exceed vertex count minus one");
    }
    /// Counts for labels 0..n.
    static ChildSequence of(const std::vector<long>& counts) {
        std::vector<Entry> e;
        for (std::size_t i = 0; i < counts.size(); ++i) e.emplace_back(static_cast<Label>(i), counts[i]);
        return ChildSequence(std::move(e));
    }

    bool is_tree_sequence() const { return !empty() && total() == static_cast<long>(size()) - 1; }
    bool one_free() const { return count(1) == 0; }
    bool binary() const {
        return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.second == 0 || e.second == 2; });
    }
    bool sub_binary() const { return max_value() <= 2; }

    ChildSequence restrict_to(const std::vector<Label>& keep) const {
        std::vector<Entry> e;
        for (Label v : keep) e.emplace_back(v, at(v));
        return ChildSequence(std::move(e));
    }
    /// c⁺: m−1 fresh one-child labels after the largest label.
    ChildSequence extended(long m) const {
        std::vector<Entry> e = entries_;
        Label next = entries_.empty() ? 1 : entries_.back().first + 1;
        for (long i = 0; i + 1 < m; ++i) e.emplace_back(next + i, 1);
        return ChildSequence(std::move(e));
    }
    /// The multiset {v repeated c_v times} in label order.
    std::vector<Label> multiset() const {
        std::vector<Label> out;
        for (auto& [v, c] : entries_) out.insert(out.end(), c, v);
        return out;
    }
    /// n!/∏ c_v!
    BigInt multinomial() const {
        BigInt r = factorial(total());
        for (auto& e : entries_) r /= factorial(e.second);
        return r;
    }
};

struct Composition {
    std::vector<long> parts;

    long total() const { return std::accumulate(parts.begin(), parts.end(), 0L); }
    std::size_t size() const { return parts.size(); }
    friend auto operator<=>(const Composition&, const Composition&) = default;
};

inline long surplus(const DegreeSequence& d) { return 1 + d.total() / 2 - d.n(); }

inline long count_degree(const DegreeSequence& d, long b) { return d.count(b); }

inline bool is_graphical(const DegreeSequence& d) {
    std::vector<long> deg;
    for (auto& e : d.entries()) deg.push_back(e.second);
    std::sort(deg.rbegin(), deg.rend());
    const long n = static_cast<long>(deg.size());
    long sum = std::accumulate(deg.begin(), deg.end(), 0L);
    if (sum % 2) return false;
    long left = 0;
    for (long k = 1; k <= n; ++k) {
        left += deg[k - 1];
        long right = k * (k - 1);
        for (long i = k; i < n; ++i) right += std::min(deg[i], k);
        if (left > right) return false;
    }
    return true;
}

/// |P_{m,h}| = C(h+m−1, m−1); zero parts only compose zero.
inline BigInt count_compositions(long m, long h) {
    if (h < 0 || m < 0) return 0;
    if (m == 0) return h == 0 ? 1 : 0;
    return binomial(h + m - 1, m - 1);
}

// Steps to the lexicographic successor; false after the last one.
inline bool next_composition(Composition& p) {
    auto& a = p.parts;
    const std::size_t m = a.size();
    if (m < 2) return false;
    // find i: largest i < m-1 such that sum(a[i+1..]) > 0
    long suffix = 0;
    for (std::size_t i = m - 1; i-- > 0;) {
        suffix += a[i + 1];
        if (suffix > 0) {
            a[i] += 1;
            for (std::size_t k = i + 1; k < m; ++k) a[k] = 0;
            a[m - 1] = suffix - 1;
            return true;
        }
    }
    return false;
}

inline void for_each_composition(long m, long h, const std::function<void(const Composition&)>& f) {
    if (m == 0) {
        if (h == 0) f(Composition{});
        return;
    }
    Composition p{std::vector<long>(m, 0)};
    p.parts.back() = h;
    do f(p);
    while (next_composition(p));
}

inline std::vector<Composition> all_compositions(long m, long h) {
    std::vector<Composition> out;
    for_each_composition(m, h, [&](const Composition& p) { out.push_back(p); });
    return out;
}

/// Uniform over P_{m,h} (stars and bars).
template <class R>
Composition random_composition(long m, long h, R& rng) {
    if (m <= 0) {
        if (h == 0 && m == 0) return Composition{};
        throw InvalidInput("no composition with zero parts of a positive total");
    }
    // choose m-1 bar positions among h+m-1 slots, Floyd's algorithm
    const long slots = h + m - 1;
    std::vector<long> bars;
    bars.reserve(m - 1);
    for (long j = slots - (m - 1); j < slots; ++j) {
        long t = std::uniform_int_distribution<long>(0, j)(rng);
        if (std::find(bars.begin(), bars.end(), t) != bars.end()) bars.push_back(j);
        else bars.push_back(t);
    }
    std::sort(bars.begin(), bars.end());
    Composition p{std::vector<long>(m, 0)};
    long prev = -1;
    for (long i = 0; i < m - 1; ++i) {
        p.parts[i] = bars[i] - prev - 1;
        prev = bars[i];
    }
    p.parts[m - 1] = slots - prev - 1;
    return p;
}

namespace detail {
inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}
inline long parse_long(const std::string& s) {
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw InvalidInput("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw InvalidInput("not an integer: '" + s + "'");
    return v;
}
}  // namespace detail

// "3,3,2", "1:3,5:2" or run-length "3^5,1^7". Unlabelled entries get labels 1,2,...
// in order of appearance.
inline DegreeSequence parse_degrees(const std::string& text) {
    std::vector<LabelledCounts::Entry> e;
    Label next = 1;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = detail::trim(tok);
        if (tok.empty()) continue;
        if (auto c = tok.find(':'); c != std::string::npos) {
            e.emplace_back(detail::parse_long(detail::trim(tok.substr(0, c))),
                           detail::parse_long(detail::trim(tok.substr(c + 1))));
            next = std::max(next, e.back().first + 1);
        } else if (auto r = tok.find('^'); r != std::string::npos) {
            long deg = detail::parse_long(detail::trim(tok.substr(0, r)));
            long reps = detail::parse_long(detail::trim(tok.substr(r + 1)));
            if (reps < 0) throw InvalidInput("negative repeat count");
            for (long i = 0; i < reps; ++i) e.emplace_back(next++, deg);
        } else {
            e.emplace_back(next++, detail::parse_long(tok));
        }
    }
    return DegreeSequence(std::move(e));
}

inline std::string format_degrees(const DegreeSequence& d) {
    std::string out;
    bool plain = d.dense_from(1);
    for (auto& [v, k] : d.entries()) {
        if (!out.empty()) out += ',';
        out += plain ? std::to_string(k) : std::to_string(v) + ":" + std::to_string(k);
    }
    return out;
}

inline std::string format_child_sequence(const ChildSequence& c) {
    std::string out;
    for (auto& [v, k] : c.entries()) {
        if (!out.empty()) out += ',';
        out += std::to_string(v) + ":" + std::to_string(k);
    }
    return out;
}

}  // namespace rgd
