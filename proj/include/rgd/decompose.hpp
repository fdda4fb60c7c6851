#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rgd/forest.hpp"
#include "rgd/graph.hpp"

namespace rgd {

/// A kernel edge and the internal vertices of its core path, listed from lo to hi.
/// Loops list their path so that the first internal label is below the last.
struct KernelEdge {
    Label lo = 0, hi = 0;
    std::vector<Label> internal;

    bool is_loop() const { return lo == hi; }
    friend bool operator==(const KernelEdge&, const KernelEdge&) = default;
};

// Lexicographic on endpoints; parallel copies by their smallest internal label,
// an unsubdivided copy first.
inline bool kernel_edge_before(const KernelEdge& a, const KernelEdge& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.hi != b.hi) return a.hi < b.hi;
    auto key = [](const KernelEdge& e) {
        return e.internal.empty() ? std::optional<Label>{} : std::optional<Label>{*std::min_element(e.internal.begin(), e.internal.end())};
    };
    return key(a) < key(b);
}

struct Kernel {
    MultiGraph graph;
    std::vector<KernelEdge> paths;  // paths[id] belongs to graph edge id
};

struct CoreDecomposition {
    LabeledGraph core;
    RootedForest forest;
    std::vector<Label> removed_leaves;
    std::map<Label, Label> nearest_core;  // α, only off tree components
};

/// Edge e* of a simple kernel or homeomorphic reduction, with the internal vertices
/// of the path it stands for, listed from e*.u to e*.v.
struct MutableEdge {
    Edge edge;
    std::vector<Label> internal;
    friend bool operator==(const MutableEdge&, const MutableEdge&) = default;
};

struct SimpleKernel {
    LabeledGraph graph;
    std::vector<MutableEdge> mutable_edges;  // lexicographic
    Kernel kernel;

    std::size_t num_mutable() const { return mutable_edges.size(); }
    bool is_mutable(Label a, Label b) const {
        Edge e(a, b);
        return std::any_of(mutable_edges.begin(), mutable_edges.end(), [&](const MutableEdge& m) { return m.edge == e; });
    }
    std::vector<Edge> mutable_set() const {
        std::vector<Edge> out;
        for (auto& m : mutable_edges) out.push_back(m.edge);
        return out;
    }
    std::vector<Edge> immutable_edges() const {
        std::vector<Edge> out;
        for (const Edge& e : graph.edges())
            if (!is_mutable(e.u, e.v)) out.push_back(e);
        return out;
    }
    std::vector<long> path_lengths() const {
        std::vector<long> out;
        for (auto& m : mutable_edges) out.push_back(static_cast<long>(m.internal.size()));
        return out;
    }
    /// Same K* and the same mutable edges (path data ignored).
    bool same_shape(const SimpleKernel& o) const { return graph == o.graph && mutable_set() == o.mutable_set(); }
};

struct HomeoReduction {
    LabeledGraph graph;
    std::vector<MutableEdge> mutable_edges;  // lexicographic, internal = G(e*)
    std::vector<Label> suppressed;           // sorted; includes cycle-component vertices

    std::size_t num_mutable() const { return mutable_edges.size(); }
    std::vector<Edge> mutable_set() const {
        std::vector<Edge> out;
        for (auto& m : mutable_edges) out.push_back(m.edge);
        return out;
    }
    std::vector<long> path_lengths() const {
        std::vector<long> out;
        for (auto& m : mutable_edges) out.push_back(static_cast<long>(m.internal.size()));
        return out;
    }
    bool same_shape(const HomeoReduction& o) const {
        return graph == o.graph && mutable_set() == o.mutable_set() && suppressed == o.suppressed;
    }
};

namespace detail {

inline std::vector<char> core_mask(const LabeledGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<char> alive(n, 1);
    std::vector<std::size_t> deg(n), stack;
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] = g.degree_at(i);
        if (deg[i] <= 1) stack.push_back(i);
    }
    while (!stack.empty()) {
        std::size_t i = stack.back();
        stack.pop_back();
        if (!alive[i]) continue;
        alive[i] = 0;
        for (std::size_t j : g.adjacent(i))
            if (alive[j] && --deg[j] == 1) stack.push_back(j);
    }
    return alive;
}

inline bool is_cycle_component(const LabeledGraph& g, const std::vector<std::size_t>& comp) {
    return comp.size() >= 3 && std::all_of(comp.begin(), comp.end(), [&](std::size_t i) { return g.degree_at(i) == 2; });
}

inline std::vector<char> cycle_mask(const LabeledGraph& g) {
    std::vector<char> mask(g.num_vertices(), 0);
    for (auto& comp : components(g))
        if (is_cycle_component(g, comp))
            for (std::size_t i : comp) mask[i] = 1;
    return mask;
}

// BFS from the core: for non-core vertices of components meeting the core,
// the parent towards the core and the core vertex reached.
struct Attachment {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> anchor;
};

inline Attachment attach_to_core(const LabeledGraph& g, const std::vector<char>& in_core) {
    const std::size_t n = g.num_vertices();
    Attachment a{std::vector<std::size_t>(n, kNoVertex), std::vector<std::size_t>(n, kNoVertex)};
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < n; ++i)
        if (in_core[i]) {
            a.anchor[i] = i;
            queue.push_back(i);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t u = queue[head];
        for (std::size_t w : g.adjacent(u))
            if (a.anchor[w] == kNoVertex) {
                a.anchor[w] = a.anchor[u];
                a.parent[w] = u;
                queue.push_back(w);
            }
    }
    return a;
}

// Walks maximal paths between "stop" vertices through the others; every
// non-stop vertex on a walk must have exactly two usable neighbours.
struct PathWalk {
    std::size_t from, to;
    std::vector<std::size_t> internal;
};

template <class Usable>
std::vector<PathWalk> walk_paths(const LabeledGraph& g, const std::vector<std::size_t>& stops, const std::vector<char>& is_stop,
                                 Usable usable) {
    std::set<std::pair<std::size_t, std::size_t>> used;
    std::vector<PathWalk> out;
    for (std::size_t u : stops)
        for (std::size_t x : g.adjacent(u)) {
            if (!usable(x) || used.count({u, x})) continue;
            PathWalk w{u, kNoVertex, {}};
            std::size_t prev = u, cur = x;
            while (!is_stop[cur]) {
                w.internal.push_back(cur);
                std::size_t next = kNoVertex;
                for (std::size_t y : g.adjacent(cur))
                    if (usable(y) && y != prev) {
                        next = y;
                        break;
                    }
                // a two-vertex path back to prev cannot happen in a simple graph
                if (next == kNoVertex) throw std::logic_error("path walk reached a dead end");
                prev = cur;
                cur = next;
            }
            w.to = cur;
            used.insert({u, x});
            used.insert({cur, w.internal.empty() ? u : w.internal.back()});
            out.push_back(std::move(w));
        }
    return out;
}

inline std::vector<Label> labels_of(const LabeledGraph& g, const std::vector<std::size_t>& idx) {
    std::vector<Label> out;
    for (std::size_t i : idx) out.push_back(g.label(i));
    return out;
}

}  // namespace detail

/// C(G): iteratively delete vertices of degree at most one.
inline LabeledGraph core(const LabeledGraph& g) {
    auto mask = detail::core_mask(g);
    std::vector<Label> keep;
    for (std::size_t i = 0; i < g.num_vertices(); ++i)
        if (mask[i]) keep.push_back(g.label(i));
    return g.induced(keep);
}

inline CoreDecomposition decompose_core(const LabeledGraph& g) {
    const std::size_t n = g.num_vertices();
    auto in_core = detail::core_mask(g);
    auto att = detail::attach_to_core(g, in_core);
    CoreDecomposition out;
    std::vector<Label> core_labels, forest_labels;
    std::map<Label, Label> parent;
    for (std::size_t i = 0; i < n; ++i) {
        if (in_core[i]) {
            core_labels.push_back(g.label(i));
            out.nearest_core.emplace(g.label(i), g.label(i));
        } else if (att.anchor[i] != kNoVertex) {
            forest_labels.push_back(g.label(i));
            out.nearest_core.emplace(g.label(i), g.label(att.anchor[i]));
            if (!in_core[att.parent[i]]) parent.emplace(g.label(i), g.label(att.parent[i]));
        }
    }
    // tree components: drop the smallest leaf, root at its neighbour
    for (auto& comp : components(g)) {
        if (in_core[comp.front()] || att.anchor[comp.front()] != kNoVertex) continue;
        std::size_t leaf = kNoVertex;
        for (std::size_t i : comp)
            if (g.degree_at(i) <= 1) {
                leaf = i;
                break;
            }
        out.removed_leaves.push_back(g.label(leaf));
        if (comp.size() == 1) continue;
        std::size_t root = g.adjacent(leaf).front();
        std::vector<std::size_t> queue{root};
        std::vector<char> seen(n, 0);
        seen[leaf] = seen[root] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t u = queue[head];
            forest_labels.push_back(g.label(u));
            for (std::size_t w : g.adjacent(u))
                if (!seen[w]) {
                    seen[w] = 1;
                    parent.emplace(g.label(w), g.label(u));
                    queue.push_back(w);
                }
        }
    }
    out.core = g.induced(core_labels);
    out.forest = RootedForest(forest_labels, parent);
    return out;
}

/// F(G)
inline RootedForest attached_forest(const LabeledGraph& g) { return decompose_core(g).forest; }

/// Vertices lying in components that are cycles.
inline long cycle_vertex_count(const LabeledGraph& g) {
    auto mask = detail::cycle_mask(g);
    return std::count(mask.begin(), mask.end(), 1);
}

/// K(G), with the core path behind every kernel edge.
inline Kernel kernel(const LabeledGraph& g) {
    const std::size_t n = g.num_vertices();
    auto in_core = detail::core_mask(g);
    auto att = detail::attach_to_core(g, in_core);
    std::vector<std::size_t> core_deg(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        if (in_core[i])
            for (std::size_t j : g.adjacent(i)) core_deg[i] += in_core[j];

    std::vector<KernelEdge> paths;
    std::vector<Label> kernel_vertices;
    auto usable = [&](std::size_t i) { return in_core[i] != 0; };
    for (auto& comp : components(g)) {
        std::size_t e = detail::edges_within(g, comp);
        if (e + 1 == comp.size() || detail::is_cycle_component(g, comp)) continue;
        long s = 1 + static_cast<long>(e) - static_cast<long>(comp.size());
        std::vector<std::size_t> stops;
        std::vector<char> is_stop(n, 0);
        if (s == 1) {
            std::size_t leaf = kNoVertex;
            for (std::size_t i : comp)
                if (g.degree_at(i) == 1) {
                    leaf = i;
                    break;
                }
            std::size_t a = att.anchor[leaf];
            stops.push_back(a);
            is_stop[a] = 1;
            auto walks = detail::walk_paths(g, stops, is_stop, usable);
            // both directions around the cycle start at a; keep one
            auto& w = walks.front();
            KernelEdge k{g.label(a), g.label(a), detail::labels_of(g, w.internal)};
            if (k.internal.front() > k.internal.back()) std::reverse(k.internal.begin(), k.internal.end());
            paths.push_back(std::move(k));
            kernel_vertices.push_back(g.label(a));
            continue;
        }
        for (std::size_t i : comp)
            if (in_core[i] && core_deg[i] >= 3) {
                stops.push_back(i);
                is_stop[i] = 1;
                kernel_vertices.push_back(g.label(i));
            }
        for (auto& w : detail::walk_paths(g, stops, is_stop, usable)) {
            KernelEdge k{g.label(w.from), g.label(w.to), detail::labels_of(g, w.internal)};
            if (k.lo > k.hi) {
                std::swap(k.lo, k.hi);
                std::reverse(k.internal.begin(), k.internal.end());
            } else if (k.lo == k.hi && k.internal.front() > k.internal.back()) {
                std::reverse(k.internal.begin(), k.internal.end());
            }
            paths.push_back(std::move(k));
        }
    }
    std::sort(paths.begin(), paths.end(), kernel_edge_before);
    std::vector<Edge> es;
    for (auto& p : paths) es.emplace_back(p.lo, p.hi);
    return Kernel{MultiGraph(kernel_vertices, es), std::move(paths)};
}

/// K*(G) with explicit mutable edges.
inline SimpleKernel simple_kernel(const LabeledGraph& g) {
    Kernel k = kernel(g);
    std::map<std::pair<Label, Label>, int> mult;
    for (auto& p : k.paths) ++mult[{p.lo, p.hi}];
    std::vector<Edge> edges;
    std::vector<MutableEdge> mut;
    auto add_mutable = [&](Label a, Label b, std::vector<Label> internal) {
        if (a > b) {
            std::swap(a, b);
            std::reverse(internal.begin(), internal.end());
        }
        edges.emplace_back(a, b);
        mut.push_back(MutableEdge{Edge(a, b), std::move(internal)});
    };
    for (auto& p : k.paths) {
        const auto& in = p.internal;
        if (p.is_loop()) {
            if (in.size() < 2) throw InvalidInput("loop with fewer than two internal vertices in a simple graph");
            edges.emplace_back(p.lo, in.front());
            edges.emplace_back(in.back(), p.lo);
            add_mutable(in.front(), in.back(), std::vector<Label>(in.begin() + 1, in.end() - 1));
        } else if (mult[{p.lo, p.hi}] == 1) {
            add_mutable(p.lo, p.hi, in);
        } else if (!in.empty()) {
            add_mutable(p.lo, in.back(), std::vector<Label>(in.begin(), in.end() - 1));
            edges.emplace_back(in.back(), p.hi);
        } else {
            edges.emplace_back(p.lo, p.hi);
        }
    }
    std::vector<Label> vs = k.graph.vertices();
    for (auto& e : edges) {
        vs.push_back(e.u);
        vs.push_back(e.v);
    }
    std::sort(mut.begin(), mut.end(), [](const MutableEdge& a, const MutableEdge& b) { return a.edge < b.edge; });
    return SimpleKernel{LabeledGraph(vs, edges), std::move(mut), std::move(k)};
}

/// H(G): cycle components dropped, degree-two vertices off K* suppressed.
inline HomeoReduction simple_homeo_reduction(const LabeledGraph& g, const SimpleKernel& ks) {
    const std::size_t n = g.num_vertices();
    auto cyc = detail::cycle_mask(g);
    std::vector<char> keep(n, 0);
    std::vector<std::size_t> stops;
    HomeoReduction h;
    std::vector<Label> kept;
    for (std::size_t i = 0; i < n; ++i) {
        if (cyc[i]) {
            h.suppressed.push_back(g.label(i));
            continue;
        }
        if (ks.graph.has_vertex(g.label(i)) || g.degree_at(i) != 2) {
            keep[i] = 1;
            stops.push_back(i);
            kept.push_back(g.label(i));
        } else {
            h.suppressed.push_back(g.label(i));
        }
    }
    std::vector<Edge> edges;
    auto usable = [&](std::size_t i) { return cyc[i] == 0; };
    for (auto& w : detail::walk_paths(g, stops, keep, usable)) {
        Label a = g.label(w.from), b = g.label(w.to);
        if (a == b) throw std::logic_error("suppressed path closes on itself");
        auto internal = detail::labels_of(g, w.internal);
        if (a > b) {
            std::swap(a, b);
            std::reverse(internal.begin(), internal.end());
        }
        edges.emplace_back(a, b);
        bool immutable = internal.empty() && ks.graph.has_edge(a, b) && !ks.is_mutable(a, b);
        if (!immutable) h.mutable_edges.push_back(MutableEdge{Edge(a, b), std::move(internal)});
    }
    std::sort(h.mutable_edges.begin(), h.mutable_edges.end(), [](const MutableEdge& a, const MutableEdge& b) { return a.edge < b.edge; });
    h.graph = LabeledGraph(kept, edges);
    return h;
}

inline HomeoReduction simple_homeo_reduction(const LabeledGraph& g) { return simple_homeo_reduction(g, simple_kernel(g)); }

struct DiameterBoundParts {
    long forest_height = 0;
    bool forest_empty = true;
    std::size_t core_diameter = 0;
    std::size_t kernel_diameter = 0;
    std::size_t max_path = 0;  // max over kernel edges of |C(e)| + 1

    std::size_t first_bound() const { return 2 * (forest_height + 1) + core_diameter; }
    std::size_t second_bound() const { return 2 * (forest_height + 1) + (kernel_diameter + 2) * max_path; }
};

/// Parts of the chained diameter bound; nullopt when the kernel is empty.
inline std::optional<DiameterBoundParts> diameter_bound_parts(const LabeledGraph& g) {
    if (!is_connected(g)) throw InvalidInput("diameter bound needs a connected graph");
    Kernel k = kernel(g);
    if (k.paths.empty()) return std::nullopt;
    auto dec = decompose_core(g);
    DiameterBoundParts p;
    p.forest_empty = dec.forest.empty();
    p.forest_height = dec.forest.height();
    p.core_diameter = diameter(dec.core);
    p.kernel_diameter = diameter(k.graph);
    for (auto& e : k.paths) p.max_path = std::max(p.max_path, e.internal.size() + 1);
    return p;
}

}  // namespace rgd
