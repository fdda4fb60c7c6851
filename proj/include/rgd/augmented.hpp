#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rgd/decompose.hpp"
#include "rgd/random.hpp"

namespace rgd {

/// Port `port` (1-based) at a kernel vertex.
struct HalfEdge {
    Label vertex = 0;
    long port = 0;
    friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

/// One matched pair with the degree-two vertices on its path, read from a to b.
struct CoreRecord {
    HalfEdge a, b;
    std::vector<Label> internal;
    friend bool operator==(const CoreRecord&, const CoreRecord&) = default;
};

enum class CoreRule {
    ok,
    bad_degrees,
    port_out_of_range,
    not_a_perfect_matching,
    internal_not_a_partition,
    short_loop,
    parallel_unsubdivided,
};

inline const char* rule_name(CoreRule r) {
    switch (r) {
        case CoreRule::ok: return "ok";
        case CoreRule::bad_degrees: return "degrees must be 2 or at least 3";
        case CoreRule::port_out_of_range: return "half-edge port out of range";
        case CoreRule::not_a_perfect_matching: return "pairs are not a perfect matching of kernel half-edges";
        case CoreRule::internal_not_a_partition: return "internal sequences do not partition the degree-2 labels";
        case CoreRule::short_loop: return "loop with fewer than two internal vertices";
        case CoreRule::parallel_unsubdivided: return "two unsubdivided records join the same vertex pair";
    }
    return "?";
}

struct InvalidAugmentedCore : InvalidInput {
    CoreRule rule;
    explicit InvalidAugmentedCore(CoreRule r) : InvalidInput(rule_name(r)), rule(r) {}
};

class AugmentedCore {
public:
    // Records are normalised so that a < b; a swapped record has its internal
    // sequence reversed (input sequences are read from the first half-edge given).
    AugmentedCore(DegreeSequence d, std::vector<CoreRecord> records) {
        CoreRule r = init(std::move(d), std::move(records));
        if (r != CoreRule::ok) throw InvalidAugmentedCore(r);
    }

    static std::pair<std::optional<AugmentedCore>, CoreRule> make(DegreeSequence d, std::vector<CoreRecord> records) {
        AugmentedCore a;
        CoreRule r = a.init(std::move(d), std::move(records));
        if (r != CoreRule::ok) return {std::nullopt, r};
        return {std::move(a), r};
    }

    const DegreeSequence& degrees() const { return d_; }
    const std::vector<Label>& kernel_vertices() const { return kernel_; }
    std::vector<Label> subdividers() const {
        std::vector<Label> out;
        for (auto& [v, k] : d_.entries())
            if (k == 2) out.push_back(v);
        return out;
    }
    const std::vector<CoreRecord>& records() const { return records_; }
    std::size_t num_records() const { return records_.size(); }
    long degree(Label v) const { return d_.at(v); }

    std::size_t record_of(HalfEdge h) const {
        std::size_t s = slot(h);
        if (s == kNoVertex) throw InvalidInput("unknown half-edge");
        return slot_record_[s];
    }
    HalfEdge partner(HalfEdge h) const {
        const CoreRecord& r = records_[record_of(h)];
        return r.a == h ? r.b : r.a;
    }
    /// Internal vertices met walking from h to its partner.
    std::vector<Label> path_from(HalfEdge h) const {
        const CoreRecord& r = records_[record_of(h)];
        if (r.a == h) return r.internal;
        return {r.internal.rbegin(), r.internal.rend()};
    }
    bool subdivided(std::size_t record) const { return !records_[record].internal.empty(); }

    friend bool operator==(const AugmentedCore& x, const AugmentedCore& y) { return x.d_ == y.d_ && x.records_ == y.records_; }
    friend bool operator<(const AugmentedCore& x, const AugmentedCore& y) {
        auto key = [](const CoreRecord& r) { return std::tie(r.a, r.b, r.internal); };
        return std::lexicographical_compare(x.records_.begin(), x.records_.end(), y.records_.begin(), y.records_.end(),
                                            [&](const CoreRecord& p, const CoreRecord& q) { return key(p) < key(q); });
    }

private:
    AugmentedCore() = default;

    std::size_t slot(HalfEdge h) const {
        auto it = std::lower_bound(kernel_.begin(), kernel_.end(), h.vertex);
        if (it == kernel_.end() || *it != h.vertex) return kNoVertex;
        std::size_t k = it - kernel_.begin();
        if (h.port < 1 || h.port > static_cast<long>(offset_[k + 1] - offset_[k])) return kNoVertex;
        return offset_[k] + h.port - 1;
    }

    CoreRule init(DegreeSequence d, std::vector<CoreRecord> records) {
        d_ = std::move(d);
        records_ = std::move(records);
        kernel_.clear();
        offset_.assign(1, 0);
        std::vector<Label> twos;
        for (auto& [v, k] : d_.entries()) {
            if (k >= 3) {
                kernel_.push_back(v);
                offset_.push_back(offset_.back() + k);
            } else if (k == 2) {
                twos.push_back(v);
            } else {
                return CoreRule::bad_degrees;
            }
        }
        for (auto& r : records_)
            if (r.b < r.a) {
                std::swap(r.a, r.b);
                std::reverse(r.internal.begin(), r.internal.end());
            }
        std::sort(records_.begin(), records_.end(), [](const CoreRecord& p, const CoreRecord& q) { return p.a < q.a; });
        slot_record_.assign(offset_.back(), kNoVertex);
        for (std::size_t i = 0; i < records_.size(); ++i)
            for (HalfEdge h : {records_[i].a, records_[i].b}) {
                std::size_t s = slot(h);
                if (s == kNoVertex) return CoreRule::port_out_of_range;
                if (slot_record_[s] != kNoVertex) return CoreRule::not_a_perfect_matching;
                slot_record_[s] = i;
            }
        if (std::find(slot_record_.begin(), slot_record_.end(), kNoVertex) != slot_record_.end())
            return CoreRule::not_a_perfect_matching;
        std::vector<Label> used;
        for (auto& r : records_) used.insert(used.end(), r.internal.begin(), r.internal.end());
        std::sort(used.begin(), used.end());
        if (used != twos) return CoreRule::internal_not_a_partition;
        std::vector<std::pair<Label, Label>> bare;
        for (auto& r : records_) {
            if (r.a.vertex == r.b.vertex && r.internal.size() < 2) return CoreRule::short_loop;
            if (r.internal.empty()) bare.emplace_back(r.a.vertex, r.b.vertex);
        }
        std::sort(bare.begin(), bare.end());
        if (std::adjacent_find(bare.begin(), bare.end()) != bare.end()) return CoreRule::parallel_unsubdivided;
        return CoreRule::ok;
    }

    DegreeSequence d_;
    std::vector<CoreRecord> records_;
    std::vector<Label> kernel_;
    std::vector<std::size_t> offset_;
    std::vector<std::size_t> slot_record_;
};

/// C(A)
inline LabeledGraph build_core(const AugmentedCore& a) {
    std::vector<Edge> es;
    for (auto& r : a.records()) {
        Label prev = r.a.vertex;
        for (Label x : r.internal) {
            es.emplace_back(prev, x);
            prev = x;
        }
        es.emplace_back(prev, r.b.vertex);
    }
    return LabeledGraph(a.degrees().labels(), es);
}

/// K(A): one edge per record, in record order.
inline MultiGraph build_kernel(const AugmentedCore& a) {
    std::vector<Edge> es;
    for (auto& r : a.records()) es.emplace_back(r.a.vertex, r.b.vertex);
    return MultiGraph(a.kernel_vertices(), es);
}

/// Kernel edges of C(A) in the canonical order used by kernel().
inline std::vector<KernelEdge> kernel_paths(const AugmentedCore& a) {
    std::vector<KernelEdge> out;
    for (auto& r : a.records()) {
        KernelEdge k{r.a.vertex, r.b.vertex, r.internal};
        if (k.is_loop() && k.internal.front() > k.internal.back()) std::reverse(k.internal.begin(), k.internal.end());
        out.push_back(std::move(k));
    }
    std::sort(out.begin(), out.end(), kernel_edge_before);
    return out;
}

/// (ui, vj): the record {ui, vj} traversed from u to v.
struct OrientedEdge {
    HalfEdge tail, head;
    friend auto operator<=>(const OrientedEdge&, const OrientedEdge&) = default;
};

inline OrientedEdge reversed(OrientedEdge e) { return {e.head, e.tail}; }

enum class SwitchRule { ok, not_a_record, same_record, short_loop, parallel_unsubdivided };

inline const char* rule_name(SwitchRule r) {
    switch (r) {
        case SwitchRule::ok: return "ok";
        case SwitchRule::not_a_record: return "oriented edge is not a matched pair";
        case SwitchRule::same_record: return "both oriented edges use the same record";
        case SwitchRule::short_loop: return "result has a loop with fewer than two internal vertices";
        case SwitchRule::parallel_unsubdivided: return "result has two unsubdivided records on one vertex pair";
    }
    return "?";
}

struct InvalidSwitch : InvalidInput {
    SwitchRule rule;
    explicit InvalidSwitch(SwitchRule r) : InvalidInput(rule_name(r)), rule(r) {}
};

struct SwitchResult {
    std::optional<AugmentedCore> core;
    SwitchRule rule = SwitchRule::ok;
    explicit operator bool() const { return core.has_value(); }
};

/// Replace {ui,vj},{xk,yl} by {ui,xk},{vj,yl}; the u→v path now runs u→x, the
/// x→y path now runs v→y.
inline SwitchResult try_switch(const AugmentedCore& a, OrientedEdge e, OrientedEdge f) {
    auto is_pair = [&](OrientedEdge o) {
        try {
            return a.partner(o.tail) == o.head;
        } catch (const InvalidInput&) {
            return false;
        }
    };
    if (!is_pair(e) || !is_pair(f)) return {std::nullopt, SwitchRule::not_a_record};
    std::size_t re = a.record_of(e.tail), rf = a.record_of(f.tail);
    if (re == rf) return {std::nullopt, SwitchRule::same_record};
    std::vector<CoreRecord> recs;
    for (std::size_t i = 0; i < a.num_records(); ++i)
        if (i != re && i != rf) recs.push_back(a.records()[i]);
    recs.push_back(CoreRecord{e.tail, f.tail, a.path_from(e.tail)});
    recs.push_back(CoreRecord{e.head, f.head, a.path_from(f.tail)});
    auto [core, rule] = AugmentedCore::make(a.degrees(), std::move(recs));
    if (core) return {std::move(core), SwitchRule::ok};
    return {std::nullopt, rule == CoreRule::short_loop ? SwitchRule::short_loop : SwitchRule::parallel_unsubdivided};
}

inline AugmentedCore switch_pair(const AugmentedCore& a, OrientedEdge e, OrientedEdge f) {
    auto r = try_switch(a, e, f);
    if (!r) throw InvalidSwitch(r.rule);
    return std::move(*r.core);
}

/// The pair undoing switch_pair(a, e, f).
inline std::pair<OrientedEdge, OrientedEdge> reversal_pair(OrientedEdge e, OrientedEdge f) {
    return {OrientedEdge{e.tail, f.tail}, OrientedEdge{e.head, f.head}};
}

inline void check_core_degrees(const DegreeSequence& d) {
    long half = 0;
    for (auto& [v, k] : d.entries()) {
        if (k == 1) throw InvalidInput("augmented cores need degrees 2 or at least 3");
        if (k >= 3) half += k;
    }
    if (half == 0) throw InvalidInput("augmented cores need a vertex of degree at least 3");
    if (half % 2) throw InvalidInput("kernel half-edges must pair up");
}

/// Uniform matching plus uniform ordered placement of degree-2 labels, proposed
/// once; nullopt when the result is not simple.
template <class R>
std::optional<AugmentedCore> propose_augmented_core(const DegreeSequence& d, R& rng) {
    std::vector<HalfEdge> halves;
    std::vector<Label> twos;
    for (auto& [v, k] : d.entries()) {
        if (k >= 3)
            for (long i = 1; i <= k; ++i) halves.push_back({v, i});
        else twos.push_back(v);
    }
    std::shuffle(halves.begin(), halves.end(), rng);
    std::shuffle(twos.begin(), twos.end(), rng);
    std::vector<CoreRecord> recs;
    for (std::size_t i = 0; i < halves.size(); i += 2) {
        HalfEdge p = halves[i], q = halves[i + 1];
        recs.push_back(CoreRecord{std::min(p, q), std::max(p, q), {}});
    }
    std::sort(recs.begin(), recs.end(), [](const CoreRecord& p, const CoreRecord& q) { return p.a < q.a; });
    Composition parts = random_composition(static_cast<long>(recs.size()), static_cast<long>(twos.size()), rng);
    std::size_t at = 0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        recs[i].internal.assign(twos.begin() + at, twos.begin() + at + parts.parts[i]);
        at += parts.parts[i];
    }
    return AugmentedCore::make(d, std::move(recs)).first;
}

/// Uniform on A_d by rejection.
template <class R>
AugmentedCore sample_uniform_augmented_core(const DegreeSequence& d, R& rng, std::size_t max_rejections = 1'000'000) {
    check_core_degrees(d);
    for (std::size_t i = 0; i < max_rejections; ++i)
        if (auto a = propose_augmented_core(d, rng)) return std::move(*a);
    throw std::runtime_error("augmented-core sampler rejected " + std::to_string(max_rejections) +
                             " proposals; acceptance rate below " + std::to_string(1.0 / max_rejections));
}

/// (2m−1)!! · t! · |P_{m,t}|: the proposals behind every A ∈ A_d.
inline BigInt count_core_proposals(const DegreeSequence& d) {
    long half = 0, t = 0;
    for (auto& [v, k] : d.entries()) {
        if (k >= 3) half += k;
        else if (k == 2) ++t;
    }
    BigInt r = factorial(t) * count_compositions(half / 2, t);
    for (long i = half - 1; i > 1; i -= 2) r *= i;
    return r;
}

/// Every A ∈ A_d: matchings of the kernel half-edges times ordered placements of
/// the degree-2 labels, keeping the simple ones.
inline void for_each_augmented_core(const DegreeSequence& d, const std::function<void(const AugmentedCore&)>& f) {
    check_core_degrees(d);
    std::vector<HalfEdge> halves;
    std::vector<Label> twos;
    for (auto& [v, k] : d.entries()) {
        if (k >= 3)
            for (long i = 1; i <= k; ++i) halves.push_back({v, i});
        else twos.push_back(v);
    }
    const long m = static_cast<long>(halves.size() / 2);
    std::vector<char> used(halves.size(), 0);
    std::vector<CoreRecord> recs;
    std::function<void()> rec = [&]() {
        std::size_t i = 0;
        while (i < halves.size() && used[i]) ++i;
        if (i == halves.size()) {
            auto perm = twos;
            do {
                for_each_composition(m, static_cast<long>(perm.size()), [&](const Composition& p) {
                    auto r = recs;
                    std::size_t at = 0;
                    for (std::size_t k = 0; k < r.size(); ++k) {
                        r[k].internal.assign(perm.begin() + at, perm.begin() + at + p.parts[k]);
                        at += p.parts[k];
                    }
                    if (auto a = AugmentedCore::make(d, std::move(r)).first) f(*a);
                });
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        used[i] = 1;
        for (std::size_t j = i + 1; j < halves.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            recs.push_back(CoreRecord{halves[i], halves[j], {}});
            rec();
            recs.pop_back();
            used[j] = 0;
        }
        used[i] = 0;
    };
    rec();
}

// One record per line: "u:i v:j | p1,p2,...".
inline std::string format_augmented_core(const AugmentedCore& a) {
    std::ostringstream out;
    for (auto& r : a.records()) {
        out << r.a.vertex << ':' << r.a.port << ' ' << r.b.vertex << ':' << r.b.port << " |";
        for (std::size_t i = 0; i < r.internal.size(); ++i) out << (i ? "," : " ") << r.internal[i];
        out << '\n';
    }
    return out.str();
}

inline AugmentedCore parse_augmented_core(const DegreeSequence& d, const std::string& text) {
    std::vector<CoreRecord> recs;
    std::istringstream in(text);
    std::string line;
    auto half = [](const std::string& s) {
        auto c = s.find(':');
        if (c == std::string::npos) throw InvalidInput("half-edge must be v:i, got " + s);
        return HalfEdge{detail::parse_long(s.substr(0, c)), detail::parse_long(s.substr(c + 1))};
    };
    while (std::getline(in, line)) {
        line = detail::trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto bar = line.find('|');
        if (bar == std::string::npos) throw InvalidInput("record line needs '|': " + line);
        std::istringstream hs(line.substr(0, bar));
        std::string x, y;
        if (!(hs >> x >> y)) throw InvalidInput("record line needs two half-edges: " + line);
        CoreRecord r{half(x), half(y), {}};
        std::stringstream ps(line.substr(bar + 1));
        std::string tok;
        while (std::getline(ps, tok, ',')) {
            tok = detail::trim(tok);
            if (!tok.empty()) r.internal.push_back(detail::parse_long(tok));
        }
        recs.push_back(std::move(r));
    }
    return AugmentedCore(d, std::move(recs));
}

}  // namespace rgd
