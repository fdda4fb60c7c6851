#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "rgd/augmented.hpp"
#include "rgd/bigint.hpp"
#include "rgd/decompose.hpp"
#include "rgd/linebreak.hpp"

namespace rgd {

/// (F, T, P): forest rooted at V(K*), tree holding leaf 0, composition of ht_T(0).
struct KernelCodeTriple {
    RootedForest forest;
    RootedForest tree;
    Composition composition;
    friend bool operator==(const KernelCodeTriple&, const KernelCodeTriple&) = default;
};

/// (C, σ, P): cycle components, suppressed path vertices in order, path lengths.
struct HomeoCodeTriple {
    LabeledGraph cycles;
    std::vector<Label> placement;
    Composition composition;
    friend bool operator==(const HomeoCodeTriple&, const HomeoCodeTriple&) = default;
};

namespace detail {

inline bool s_one(const SimpleKernel& ks) {
    return ks.kernel.graph.num_vertices() == 1 && ks.kernel.graph.num_edges() == 1;
}

// v*: the triangle vertex off the mutable edge.
inline Label triangle_apex(const SimpleKernel& ks) { return ks.kernel.graph.vertices().front(); }

inline std::optional<Label> min_leaf(const LabeledGraph& g) {
    for (std::size_t i = 0; i < g.num_vertices(); ++i)
        if (g.degree_at(i) == 1) return g.label(i);
    return std::nullopt;
}

}  // namespace detail

/// c_v = 0 at 0, d_v − 1 off K*, d_v − deg_K*(v) on K*.
inline ChildSequence kernel_child_sequence(const DegreeSequence& d, const SimpleKernel& ks) {
    std::vector<std::pair<Label, long>> es{{0, 0}};
    for (auto& [v, k] : d.entries())
        es.emplace_back(v, ks.graph.has_vertex(v) ? k - static_cast<long>(ks.graph.degree(v)) : k - 1);
    return ChildSequence(es);
}

/// `own` is the simple kernel of g as computed by the caller.
inline KernelCodeTriple encode_given_kernel(const LabeledGraph& g, const SimpleKernel& ks, const SimpleKernel& own) {
    if (ks.graph.num_vertices() == 0) throw InvalidInput("simple kernel is empty");
    if (g.has_vertex(0)) throw InvalidInput("label 0 is reserved");
    if (!is_connected(g)) throw InvalidInput("graph is not connected");
    if (!own.same_shape(ks)) throw InvalidInput("graph has a different simple kernel");
    if (detail::s_one(ks) && !detail::min_leaf(g)) throw InvalidInput("unicyclic graph without a leaf");
    auto in_core = detail::core_mask(g);
    auto att = detail::attach_to_core(g, in_core);

    std::vector<Label> path;
    for (auto& m : own.mutable_edges) path.insert(path.end(), m.internal.begin(), m.internal.end());
    std::map<Label, std::size_t> path_pos;
    for (std::size_t i = 0; i < path.size(); ++i) path_pos[path[i]] = i;

    std::vector<Label> fv = ks.graph.vertices(), tv{0};
    std::map<Label, Label> fp, tp;
    tv.insert(tv.end(), path.begin(), path.end());
    for (std::size_t i = 1; i < path.size(); ++i) tp[path[i]] = path[i - 1];
    if (!path.empty()) tp[0] = path.back();
    for (std::size_t i = 0; i < g.num_vertices(); ++i) {
        if (in_core[i]) continue;
        Label v = g.label(i), a = g.label(att.anchor[i]), p = g.label(att.parent[i]);
        if (ks.graph.has_vertex(a)) {
            fv.push_back(v);
            fp[v] = p;
        } else {
            tv.push_back(v);
            tp[v] = p;
        }
    }
    Composition comp{own.path_lengths()};
    return KernelCodeTriple{RootedForest(fv, fp), RootedForest(tv, tp), comp};
}

inline KernelCodeTriple encode_given_kernel(const LabeledGraph& g, const SimpleKernel& ks) {
    if (!is_connected(g)) throw InvalidInput("graph is not connected");
    return encode_given_kernel(g, ks, simple_kernel(g));
}

inline LabeledGraph decode_given_kernel(const KernelCodeTriple& code, const SimpleKernel& ks) {
    const auto& f = code.forest;
    const auto& t = code.tree;
    if (ks.graph.num_vertices() == 0) throw InvalidInput("simple kernel is empty");
    if (f.roots() != ks.graph.vertices()) throw InvalidInput("forest roots must be exactly V(K*)");
    if (!t.contains(0) || t.child_count(0) != 0) throw InvalidInput("tree must contain 0 as a leaf");
    if (t.roots().size() != 1) throw InvalidInput("tree part must be a single tree");
    if (code.composition.size() != ks.num_mutable()) throw InvalidInput("composition has the wrong number of parts");
    auto w = t.path_from_root(0);
    w.pop_back();
    if (code.composition.total() != static_cast<long>(w.size())) throw InvalidInput("composition total differs from ht_T(0)");
    for (Label v : f.vertices())
        if (t.contains(v)) throw InvalidInput("forest and tree share a vertex");

    std::vector<Edge> es = ks.immutable_edges();
    for (auto& e : f.edges()) es.push_back(e);
    std::set<Edge> spine;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) spine.insert(Edge(w[i], w[i + 1]));
    if (!w.empty()) spine.insert(Edge(w.back(), 0));
    for (auto& e : t.edges())
        if (!spine.count(e)) es.push_back(e);
    std::size_t at = 0;
    for (std::size_t i = 0; i < ks.num_mutable(); ++i) {
        Label prev = ks.mutable_edges[i].edge.u;
        for (long k = 0; k < code.composition.parts[i]; ++k, ++at) {
            es.emplace_back(prev, w[at]);
            prev = w[at];
        }
        es.emplace_back(prev, ks.mutable_edges[i].edge.v);
    }
    std::vector<Label> vs = f.vertices();
    for (Label v : t.vertices())
        if (v != 0) vs.push_back(v);
    LabeledGraph g(vs, es);
    if (detail::s_one(ks)) {
        auto leaf = detail::min_leaf(g);
        if (!leaf || !f.contains(*leaf) || f.root_of(*leaf) != detail::triangle_apex(ks))
            throw InvalidInput("minimum leaf must hang from the triangle apex");
    }
    return g;
}

inline HomeoCodeTriple encode_given_H(const LabeledGraph& g, const HomeoReduction& h, const HomeoReduction& own) {
    if (!own.same_shape(h)) throw InvalidInput("graph has a different homeomorphic reduction");
    auto cyc = detail::cycle_mask(g);
    std::vector<Label> cv;
    for (std::size_t i = 0; i < g.num_vertices(); ++i)
        if (cyc[i]) cv.push_back(g.label(i));
    HomeoCodeTriple code{g.induced(cv), {}, Composition{own.path_lengths()}};
    for (auto& m : own.mutable_edges) code.placement.insert(code.placement.end(), m.internal.begin(), m.internal.end());
    return code;
}

inline HomeoCodeTriple encode_given_H(const LabeledGraph& g, const HomeoReduction& h) {
    return encode_given_H(g, h, simple_homeo_reduction(g));
}

inline LabeledGraph decode_given_H(const HomeoCodeTriple& code, const HomeoReduction& h) {
    const auto& c = code.cycles;
    for (std::size_t i = 0; i < c.num_vertices(); ++i)
        if (c.degree_at(i) != 2) throw InvalidInput("cycle part is not 2-regular");
    std::vector<Label> rest = c.vertices();
    rest.insert(rest.end(), code.placement.begin(), code.placement.end());
    std::sort(rest.begin(), rest.end());
    if (rest != h.suppressed) throw InvalidInput("cycles and placement must partition the suppressed labels");
    if (code.composition.size() != h.num_mutable()) throw InvalidInput("composition has the wrong number of parts");
    if (code.composition.total() != static_cast<long>(code.placement.size()))
        throw InvalidInput("composition total differs from the placement length");
    auto mset = h.mutable_set();
    std::set<Edge> mut(mset.begin(), mset.end());
    std::vector<Edge> es = c.edges();
    for (auto& e : h.graph.edges())
        if (!mut.count(e)) es.push_back(e);
    std::size_t at = 0;
    for (std::size_t i = 0; i < h.num_mutable(); ++i) {
        Label prev = h.mutable_edges[i].edge.u;
        for (long k = 0; k < code.composition.parts[i]; ++k, ++at) {
            es.emplace_back(prev, code.placement[at]);
            prev = code.placement[at];
        }
        es.emplace_back(prev, h.mutable_edges[i].edge.v);
    }
    std::vector<Label> vs = h.graph.vertices();
    vs.insert(vs.end(), h.suppressed.begin(), h.suppressed.end());
    return LabeledGraph(vs, es);
}

/// Number of 2-regular graphs on k labels.
inline BigInt two_regular_count(long k) {
    if (k < 0) throw InvalidInput("k must be non-negative");
    std::vector<BigInt> c(k + 1);
    c[0] = 1;
    for (long i = 1; i <= k; ++i)
        for (long j = 3; j <= i; ++j) c[i] += binomial(i - 1, j - 1) * factorial(j - 1) / 2 * c[i - j];
    return c[k];
}

/// All 2-regular graphs on the given labels.
inline void for_each_two_regular(const std::vector<Label>& labels, const std::function<void(const std::vector<Edge>&)>& f) {
    std::vector<Edge> es;
    std::vector<char> used(labels.size(), 0);
    // cycle through the smallest unused label, then the rest
    std::function<void()> rec = [&]() {
        std::size_t first = 0;
        while (first < labels.size() && used[first]) ++first;
        if (first == labels.size()) {
            f(es);
            return;
        }
        used[first] = 1;
        std::vector<std::size_t> cyc{first};
        std::function<void()> grow = [&]() {
            std::size_t last = cyc.back();
            if (cyc.size() >= 3 && cyc[1] < last) {
                std::size_t base = es.size();
                for (std::size_t i = 0; i < cyc.size(); ++i) es.emplace_back(labels[cyc[i]], labels[cyc[(i + 1) % cyc.size()]]);
                rec();
                es.resize(base);
            }
            for (std::size_t x = first + 1; x < labels.size(); ++x)
                if (!used[x]) {
                    used[x] = 1;
                    cyc.push_back(x);
                    grow();
                    cyc.pop_back();
                    used[x] = 0;
                }
        };
        grow();
        used[first] = 0;
    };
    rec();
}

/// σ_u: port i of u ↦ the neighbour of u in C(A) reached through ui.
inline std::map<Label, std::vector<Label>> core_to_port_maps(const AugmentedCore& a) {
    std::map<Label, std::vector<Label>> out;
    for (Label u : a.kernel_vertices()) {
        auto& s = out[u];
        for (long i = 1; i <= a.degree(u); ++i) {
            HalfEdge h{u, i};
            auto p = a.path_from(h);
            s.push_back(p.empty() ? a.partner(h).vertex : p.front());
        }
    }
    return out;
}

inline AugmentedCore port_maps_to_core(const DegreeSequence& d, const LabeledGraph& c,
                                       const std::map<Label, std::vector<Label>>& sigma) {
    auto port = [&](Label u, Label nb) -> long {
        auto it = sigma.find(u);
        if (it == sigma.end()) throw InvalidInput("missing port map");
        auto pos = std::find(it->second.begin(), it->second.end(), nb);
        if (pos == it->second.end()) throw InvalidInput("port map misses a neighbour");
        return (pos - it->second.begin()) + 1;
    };
    for (auto& [u, s] : sigma) {
        auto nb = c.neighbours(u);
        auto sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != nb) throw InvalidInput("port map is not a bijection onto the neighbours");
    }
    Kernel k = kernel(c);
    std::vector<CoreRecord> recs;
    for (auto& e : k.paths) {
        Label first = e.internal.empty() ? e.hi : e.internal.front();
        Label last = e.internal.empty() ? e.lo : e.internal.back();
        long i = port(e.lo, first), j = port(e.hi, last);
        auto internal = e.internal;
        if (e.is_loop() && j < i) {
            std::swap(i, j);
            std::reverse(internal.begin(), internal.end());
        }
        recs.push_back(CoreRecord{{e.lo, i}, {e.hi, j}, internal});
    }
    return AugmentedCore(d, std::move(recs));
}

}  // namespace rgd
