#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "rgd/decompose.hpp"
#include "rgd/random.hpp"

namespace rgd {

enum class GraphClass { all, connected, no_cycle_components };

inline GraphClass parse_graph_class(const std::string& s) {
    if (s == "all") return GraphClass::all;
    if (s == "connected") return GraphClass::connected;
    if (s == "nocycle" || s == "no_cycle_components") return GraphClass::no_cycle_components;
    throw InvalidInput("unknown graph class " + s);
}

inline const char* class_name(GraphClass c) {
    switch (c) {
        case GraphClass::all: return "all";
        case GraphClass::connected: return "connected";
        case GraphClass::no_cycle_components: return "nocycle";
    }
    return "?";
}

inline bool in_class(const LabeledGraph& g, GraphClass c) {
    switch (c) {
        case GraphClass::all: return true;
        case GraphClass::connected: return is_connected(g);
        case GraphClass::no_cycle_components: return cycle_vertex_count(g) == 0;
    }
    return false;
}

struct SamplerConfig {
    std::uint64_t seed = 1;
    std::size_t max_rejections = 10'000'000;
    std::size_t mcmc_burnin = 0;  // 0: 10·e·ln e accepted swaps
    std::size_t mcmc_thin = 1;

    void check() const {
        if (max_rejections == 0 || mcmc_thin == 0) throw InvalidInput("sampler caps must be positive");
    }
};

inline constexpr long kEnumerateGuard = 18;

/// Calls f on every simple realisation of d in class c, in a fixed order.
inline void for_each_graph(const DegreeSequence& d, GraphClass c, const std::function<void(const LabeledGraph&)>& f) {
    if (d.total() > kEnumerateGuard)
        throw InvalidInput("enumeration guard: |d|_1 = " + std::to_string(d.total()) + " exceeds " + std::to_string(kEnumerateGuard));
    const auto labels = d.labels();
    const std::size_t n = labels.size();
    std::vector<long> rem(n);
    for (std::size_t i = 0; i < n; ++i) rem[i] = d.at(labels[i]);
    std::vector<Edge> es;
    // vertex i picks all its remaining partners among j > i
    std::function<void(std::size_t)> vertex;
    std::function<void(std::size_t, std::size_t)> pick = [&](std::size_t i, std::size_t from) {
        if (rem[i] == 0) {
            vertex(i + 1);
            return;
        }
        long avail = 0;
        for (std::size_t j = from; j < n; ++j) avail += rem[j] > 0;
        if (avail < rem[i]) return;
        for (std::size_t j = from; j < n; ++j) {
            if (rem[j] == 0) continue;
            --rem[i];
            --rem[j];
            es.emplace_back(labels[i], labels[j]);
            pick(i, j + 1);
            es.pop_back();
            ++rem[i];
            ++rem[j];
        }
    };
    vertex = [&](std::size_t i) {
        if (i == n) {
            LabeledGraph g(labels, es);
            if (in_class(g, c)) f(g);
            return;
        }
        pick(i, i + 1);
    };
    if (d.total() % 2 == 0) vertex(0);
}

inline std::vector<LabeledGraph> enumerate(const DegreeSequence& d, GraphClass c) {
    std::vector<LabeledGraph> out;
    for_each_graph(d, c, [&](const LabeledGraph& g) { out.push_back(g); });
    return out;
}

/// Every d = (d_1..d_n) with 1 <= n <= max_n, entries >= min_degree, even sum <= max_sum.
inline void for_each_degree_sequence(long max_n, long max_sum, const std::function<void(const DegreeSequence&)>& f,
                                     long min_degree = 1) {
    std::vector<long> d;
    std::function<void(long)> rec = [&](long sum) {
        if (!d.empty() && sum % 2 == 0) f(DegreeSequence::of(d));
        if (static_cast<long>(d.size()) == max_n) return;
        for (long k = min_degree; sum + k <= max_sum; ++k) {
            d.push_back(k);
            rec(sum + k);
            d.pop_back();
        }
    };
    rec(0);
}

/// One configuration-model proposal; nullopt on a loop or parallel pair.
template <class R>
std::optional<LabeledGraph> propose_configuration(const DegreeSequence& d, R& rng) {
    std::vector<Label> stubs;
    for (auto& [v, k] : d.entries()) stubs.insert(stubs.end(), k, v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<Edge> es;
    es.reserve(stubs.size() / 2);
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
        if (stubs[i] == stubs[i + 1]) return std::nullopt;
        es.emplace_back(stubs[i], stubs[i + 1]);
    }
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) return std::nullopt;
    return LabeledGraph(d.labels(), es);
}

/// Uniform on the simple realisations of d in class c.
template <class R>
LabeledGraph sample_configuration_rejection(const DegreeSequence& d, GraphClass c, R& rng,
                                            std::size_t max_rejections = 10'000'000) {
    if (!is_graphical(d)) throw InvalidInput("degree sequence is not graphical");
    std::size_t simple = 0;
    for (std::size_t i = 0; i < max_rejections; ++i) {
        auto g = propose_configuration(d, rng);
        if (!g) continue;
        ++simple;
        if (in_class(*g, c)) return std::move(*g);
    }
    throw std::runtime_error("configuration sampler hit its cap of " + std::to_string(max_rejections) +
                             " proposals; simple fraction " + std::to_string(double(simple) / max_rejections) +
                             ", class acceptance below " + std::to_string(1.0 / max_rejections));
}

/// Uniform tree with the given degrees, via a uniform Prüfer arrangement.
template <class R>
LabeledGraph sample_tree_prufer(const DegreeSequence& d, R& rng) {
    const auto labels = d.labels();
    const std::size_t n = labels.size();
    if (d.total() != 2 * static_cast<long>(n) - 2) throw InvalidInput("degrees must sum to 2(n-1) for a tree");
    if (n == 2) return LabeledGraph(labels, {Edge(labels[0], labels[1])});
    std::vector<std::size_t> code;
    std::vector<long> deg(n);
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = d.at(labels[i]);
        code.insert(code.end(), deg[i] - 1, i);
    }
    std::shuffle(code.begin(), code.end(), rng);
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
    for (std::size_t i = 0; i < n; ++i)
        if (deg[i] == 1) leaves.push(i);
    std::vector<Edge> es;
    for (std::size_t x : code) {
        std::size_t leaf = leaves.top();
        leaves.pop();
        es.emplace_back(labels[leaf], labels[x]);
        if (--deg[x] == 1) leaves.push(x);
    }
    std::size_t a = leaves.top();
    leaves.pop();
    es.emplace_back(labels[a], labels[leaves.top()]);
    return LabeledGraph(labels, es);
}

/// Deterministic realisation (Havel-Hakimi, ties to the smaller label); starts the swap chain.
inline LabeledGraph havel_hakimi(const DegreeSequence& d) {
    if (!is_graphical(d)) throw InvalidInput("degree sequence is not graphical");
    std::vector<std::pair<long, Label>> left;
    for (auto& [v, k] : d.entries()) left.emplace_back(k, v);
    std::vector<Edge> es;
    auto order = [](const std::pair<long, Label>& a, const std::pair<long, Label>& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    };
    while (true) {
        std::sort(left.begin(), left.end(), order);
        while (!left.empty() && left.back().first == 0) left.pop_back();
        if (left.empty()) break;
        auto [k, v] = left.front();
        for (long i = 1; i <= k; ++i) {
            --left[i].first;
            es.emplace_back(v, left[i].second);
        }
        left.front().first = 0;
    }
    return LabeledGraph(d.labels(), es);
}

struct SwapChainStats {
    std::size_t proposals = 0, accepted = 0;
};

/// Double-edge swap chain: {u,v},{x,y} → {u,x},{v,y}; invalid proposals leave the state.
template <class R>
LabeledGraph mcmc_double_swap(const LabeledGraph& g, std::size_t steps, R& rng, SwapChainStats* stats = nullptr) {
    auto es = g.edges();
    if (es.size() < 2) return g;
    auto key = [](Label a, Label b) {
        Edge e(a, b);
        return (static_cast<std::uint64_t>(e.u) << 32) ^ static_cast<std::uint64_t>(e.v);
    };
    std::unordered_set<std::uint64_t> present;
    for (auto& e : es) present.insert(key(e.u, e.v));
    std::size_t acc = 0;
    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t i = uniform_index(es.size(), rng), j = uniform_index(es.size(), rng);
        if (i == j) continue;
        Label u = es[i].u, v = es[i].v, x = es[j].u, y = es[j].v;
        if (rng() & 1) std::swap(x, y);
        if (u == x || v == y || present.count(key(u, x)) || present.count(key(v, y))) continue;
        present.erase(key(u, v));
        present.erase(key(x, y));
        present.insert(key(u, x));
        present.insert(key(v, y));
        es[i] = Edge(u, x);
        es[j] = Edge(v, y);
        ++acc;
    }
    if (stats) {
        stats->proposals += steps;
        stats->accepted += acc;
    }
    return LabeledGraph(g.vertices(), es);
}

inline std::size_t default_burnin(const LabeledGraph& g) {
    double e = static_cast<double>(std::max<std::size_t>(g.num_edges(), 2));
    return static_cast<std::size_t>(10.0 * e * std::log(e));
}

}  // namespace rgd
