#pragma once

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rgd/degseq.hpp"

namespace rgd {

/// Undirected edge; normalised so that u < v (loops: u == v, multigraphs only).
struct Edge {
    Label u = 0, v = 0;
    Edge() = default;
    Edge(Label a, Label b) : u(std::min(a, b)), v(std::max(a, b)) {}
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr std::size_t kNoVertex = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kInfinite = std::numeric_limits<std::size_t>::max();

namespace detail {
class LabelIndex {
public:
    LabelIndex() = default;
    explicit LabelIndex(std::vector<Label> labels) : labels_(std::move(labels)) {
        std::sort(labels_.begin(), labels_.end());
        labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
        dense_ = labels_.empty() || labels_.back() - labels_.front() + 1 == static_cast<Label>(labels_.size());
    }
    std::size_t size() const { return labels_.size(); }
    const std::vector<Label>& labels() const { return labels_; }
    Label label(std::size_t i) const { return labels_[i]; }
    std::size_t index(Label v) const {
        if (labels_.empty()) return kNoVertex;
        if (dense_) {
            if (v < labels_.front() || v > labels_.back()) return kNoVertex;
            return static_cast<std::size_t>(v - labels_.front());
        }
        auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
        return (it != labels_.end() && *it == v) ? static_cast<std::size_t>(it - labels_.begin()) : kNoVertex;
    }
    bool contains(Label v) const { return index(v) != kNoVertex; }
    friend bool operator==(const LabelIndex& a, const LabelIndex& b) { return a.labels_ == b.labels_; }
    friend bool operator<(const LabelIndex& a, const LabelIndex& b) { return a.labels_ < b.labels_; }

private:
    std::vector<Label> labels_;
    bool dense_ = true;
};
}  // namespace detail

/// Simple graph on an ordered label set.
class LabeledGraph {
public:
    LabeledGraph() = default;
    LabeledGraph(std::vector<Label> vertices, const std::vector<Edge>& edges) : index_(std::move(vertices)) {
        adj_.assign(index_.size(), {});
        for (const Edge& e : edges) {
            if (e.u == e.v) throw InvalidInput("loop at " + std::to_string(e.u) + " in a simple graph");
            std::size_t a = index_.index(e.u), b = index_.index(e.v);
            if (a == kNoVertex || b == kNoVertex) throw InvalidInput("edge endpoint outside the vertex set");
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        for (auto& nb : adj_) {
            std::sort(nb.begin(), nb.end());
            if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) throw InvalidInput("parallel edge in a simple graph");
        }
        edge_count_ = edges.size();
    }
    static LabeledGraph from_edges(const std::vector<Edge>& edges) {
        std::vector<Label> vs;
        for (auto& e : edges) {
            vs.push_back(e.u);
            vs.push_back(e.v);
        }
        return LabeledGraph(std::move(vs), edges);
    }

    std::size_t num_vertices() const { return index_.size(); }
    std::size_t num_edges() const { return edge_count_; }
    bool empty() const { return index_.size() == 0; }
    const std::vector<Label>& vertices() const { return index_.labels(); }
    Label label(std::size_t i) const { return index_.label(i); }
    std::size_t index(Label v) const { return index_.index(v); }
    bool has_vertex(Label v) const { return index_.contains(v); }

    const std::vector<std::size_t>& adjacent(std::size_t i) const { return adj_[i]; }
    std::size_t degree_at(std::size_t i) const { return adj_[i].size(); }
    std::size_t degree(Label v) const { return adj_.at(checked(v)).size(); }
    std::vector<Label> neighbours(Label v) const {
        std::vector<Label> out;
        for (std::size_t j : adj_.at(checked(v))) out.push_back(index_.label(j));
        return out;
    }
    bool has_edge(Label a, Label b) const {
        std::size_t i = index_.index(a), j = index_.index(b);
        if (i == kNoVertex || j == kNoVertex) return false;
        return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
    }
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (std::size_t i = 0; i < adj_.size(); ++i)
            for (std::size_t j : adj_[i])
                if (i < j) out.emplace_back(index_.label(i), index_.label(j));
        return out;
    }
    DegreeSequence degrees() const {
        std::vector<LabelledCounts::Entry> e;
        for (std::size_t i = 0; i < adj_.size(); ++i) e.emplace_back(index_.label(i), static_cast<long>(adj_[i].size()));
        return DegreeSequence(std::move(e));
    }
    LabeledGraph induced(const std::vector<Label>& keep) const {
        detail::LabelIndex k(keep);
        std::vector<Edge> es;
        for (const Edge& e : edges())
            if (k.contains(e.u) && k.contains(e.v)) es.push_back(e);
        return LabeledGraph(k.labels(), es);
    }

    friend bool operator==(const LabeledGraph& a, const LabeledGraph& b) {
        return a.index_ == b.index_ && a.adj_ == b.adj_;
    }
    friend bool operator<(const LabeledGraph& a, const LabeledGraph& b) {
        return std::tie(a.index_, a.adj_) < std::tie(b.index_, b.adj_);
    }

private:
    std::size_t checked(Label v) const {
        std::size_t i = index_.index(v);
        if (i == kNoVertex) throw InvalidInput("unknown vertex " + std::to_string(v));
        return i;
    }

    detail::LabelIndex index_;
    std::vector<std::vector<std::size_t>> adj_;
    std::size_t edge_count_ = 0;
};

/// Multigraph (V, E, ι): edge ids are positions in edges().
class MultiGraph {
public:
    MultiGraph() = default;
    MultiGraph(std::vector<Label> vertices, std::vector<Edge> edges) : index_(std::move(vertices)), edges_(std::move(edges)) {
        incident_.assign(index_.size(), {});
        for (std::size_t id = 0; id < edges_.size(); ++id) {
            std::size_t a = index_.index(edges_[id].u), b = index_.index(edges_[id].v);
            if (a == kNoVertex || b == kNoVertex) throw InvalidInput("edge endpoint outside the vertex set");
            incident_[a].push_back(id);
            if (b != a) incident_[b].push_back(id);
        }
    }

    std::size_t num_vertices() const { return index_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    bool empty() const { return index_.size() == 0; }
    const std::vector<Label>& vertices() const { return index_.labels(); }
    Label label(std::size_t i) const { return index_.label(i); }
    std::size_t index(Label v) const { return index_.index(v); }
    bool has_vertex(Label v) const { return index_.contains(v); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& endpoints(std::size_t id) const { return edges_.at(id); }
    Label lower(std::size_t id) const { return edges_.at(id).u; }
    Label upper(std::size_t id) const { return edges_.at(id).v; }
    bool is_loop(std::size_t id) const { return edges_.at(id).u == edges_.at(id).v; }
    std::size_t multiplicity(std::size_t id) const {
        return std::count(edges_.begin(), edges_.end(), edges_.at(id));
    }
    const std::vector<std::size_t>& incident(std::size_t i) const { return incident_[i]; }
    std::size_t degree(Label v) const {
        std::size_t i = index_.index(v);
        if (i == kNoVertex) throw InvalidInput("unknown vertex");
        std::size_t d = 0;
        for (std::size_t id : incident_[i]) d += is_loop(id) ? 2 : 1;
        return d;
    }
    // Neighbour index across edge id from vertex index i.
    std::size_t other(std::size_t id, std::size_t i) const {
        std::size_t a = index_.index(edges_[id].u);
        return a == i ? index_.index(edges_[id].v) : a;
    }

    friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
        return a.index_ == b.index_ && a.edges_ == b.edges_;
    }

private:
    detail::LabelIndex index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> incident_;
};

namespace detail {
template <class F>
void for_each_neighbour(const LabeledGraph& g, std::size_t i, F&& f) {
    for (std::size_t j : g.adjacent(i)) f(j);
}
template <class F>
void for_each_neighbour(const MultiGraph& g, std::size_t i, F&& f) {
    for (std::size_t id : g.incident(i)) f(g.other(id, i));
}
}  // namespace detail

/// BFS distances by vertex index; kInfinite where unreachable.
template <class G>
std::vector<std::size_t> bfs_distances(const G& g, const std::vector<std::size_t>& sources) {
    std::vector<std::size_t> dist(g.num_vertices(), kInfinite);
    std::vector<std::size_t> queue;
    queue.reserve(g.num_vertices());
    for (std::size_t s : sources)
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t u = queue[head];
        detail::for_each_neighbour(g, u, [&](std::size_t w) {
            if (dist[w] == kInfinite) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        });
    }
    return dist;
}

template <class G>
std::vector<std::size_t> bfs_distances(const G& g, std::size_t source) {
    return bfs_distances(g, std::vector<std::size_t>{source});
}

/// Connected components as lists of vertex indices, ordered by smallest member.
template <class G>
std::vector<std::vector<std::size_t>> components(const G& g) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<char> seen(g.num_vertices(), 0);
    for (std::size_t s = 0; s < g.num_vertices(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            detail::for_each_neighbour(g, comp[head], [&](std::size_t w) {
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
            });
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

namespace detail {
template <class G>
std::size_t edges_within(const G& g, const std::vector<std::size_t>& comp);

template <>
inline std::size_t edges_within(const LabeledGraph& g, const std::vector<std::size_t>& comp) {
    std::size_t d = 0;
    for (std::size_t i : comp) d += g.degree_at(i);
    return d / 2;
}
template <>
inline std::size_t edges_within(const MultiGraph& g, const std::vector<std::size_t>& comp) {
    std::size_t c = 0;
    for (std::size_t i : comp)
        for (std::size_t id : g.incident(i))
            if (g.index(g.lower(id)) == i) ++c;
    return c;
}

template <class G>
std::size_t component_diameter(const G& g, const std::vector<std::size_t>& comp) {
    if (comp.size() <= 1) return 0;
    auto farthest = [&](std::size_t s) {
        auto d = bfs_distances(g, s);
        std::size_t best = s;
        for (std::size_t i : comp)
            if (d[i] > d[best]) best = i;
        return std::pair{best, d[best]};
    };
    if (edges_within(g, comp) + 1 == comp.size()) {
        // trees: the double sweep is exact
        auto [a, da] = farthest(comp.front());
        (void)da;
        return farthest(a).second;
    }
    std::size_t best = 0;
    for (std::size_t s : comp) best = std::max(best, farthest(s).second);
    return best;
}
}  // namespace detail

/// Largest diameter of a component; 0 for the empty graph.
template <class G>
std::size_t diameter(const G& g) {
    std::size_t best = 0;
    for (auto& comp : components(g)) best = std::max(best, detail::component_diameter(g, comp));
    return best;
}

/// diam⁺: kInfinite when g is disconnected.
template <class G>
std::size_t diameter_plus(const G& g) {
    auto comps = components(g);
    if (comps.size() > 1) return kInfinite;
    return comps.empty() ? 0 : detail::component_diameter(g, comps.front());
}

template <class G>
bool is_connected(const G& g) {
    return components(g).size() <= 1;
}

/// B_K(L, r): ids of edges whose endpoints both lie within distance r of L.
inline std::vector<std::size_t> edge_ball(const MultiGraph& k, const std::vector<Label>& centre, std::size_t r) {
    std::vector<std::size_t> src;
    for (Label v : centre) {
        std::size_t i = k.index(v);
        if (i == kNoVertex) throw InvalidInput("ball centre outside the graph");
        src.push_back(i);
    }
    auto dist = bfs_distances(k, src);
    std::vector<std::size_t> out;
    for (std::size_t id = 0; id < k.num_edges(); ++id) {
        std::size_t a = k.index(k.lower(id)), b = k.index(k.upper(id));
        if (dist[a] <= r && dist[b] <= r) out.push_back(id);
    }
    return out;
}

// Edge lists: "u v" per line; '#' starts a comment. Isolated vertices may be
// listed alone on a line.
inline LabeledGraph read_edge_list(std::istream& in) {
    std::vector<Label> vs;
    std::vector<Edge> es;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::vector<Label> tok;
        Label x;
        while (ls >> x) tok.push_back(x);
        if (tok.empty()) continue;
        if (tok.size() == 1) vs.push_back(tok[0]);
        else if (tok.size() == 2) {
            vs.push_back(tok[0]);
            vs.push_back(tok[1]);
            es.emplace_back(tok[0], tok[1]);
        } else throw InvalidInput("edge list line must hold one or two labels: " + line);
    }
    return LabeledGraph(std::move(vs), es);
}

inline void write_edge_list(std::ostream& out, const LabeledGraph& g) {
    for (std::size_t i = 0; i < g.num_vertices(); ++i)
        if (g.degree_at(i) == 0) out << g.label(i) << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

// Multigraph lines: "id u v".
inline MultiGraph read_multigraph(std::istream& in) {
    std::vector<std::tuple<long, Label, Label>> rows;
    std::vector<Label> vs;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        long id;
        Label a, b;
        if (!(ls >> id)) continue;
        if (!(ls >> a >> b)) throw InvalidInput("multigraph line must be 'id u v': " + line);
        rows.emplace_back(id, a, b);
        vs.push_back(a);
        vs.push_back(b);
    }
    std::sort(rows.begin(), rows.end());
    std::vector<Edge> es;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::get<0>(rows[i]) != static_cast<long>(i)) throw InvalidInput("multigraph edge ids must be 0..e-1");
        es.emplace_back(std::get<1>(rows[i]), std::get<2>(rows[i]));
    }
    return MultiGraph(std::move(vs), std::move(es));
}

inline void write_multigraph(std::ostream& out, const MultiGraph& k) {
    for (std::size_t id = 0; id < k.num_edges(); ++id) out << id << ' ' << k.lower(id) << ' ' << k.upper(id) << '\n';
}

}  // namespace rgd
