#pragma once

#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "rgd/augmented.hpp"

namespace rgd {

/// (K_t, Q_t) of the breadth-first kernel exploration, plus bookkeeping.
struct ExplorationState {
    Label start = 0;
    std::size_t t = 0;
    std::size_t radius = 0;
    std::map<Label, std::size_t> distance;            // vertices of K_t
    std::vector<std::size_t> explored;                // record ids, in exploration order
    std::set<std::pair<std::size_t, HalfEdge>> queue;  // (distance of vertex, half-edge)
    bool last_back_edge = false;
    bool last_loop = false;

    std::size_t queue_size() const { return queue.size(); }
    std::size_t explored_edges() const { return explored.size(); }
    bool finished() const { return queue.empty(); }
    bool discovered(Label v) const { return distance.count(v) > 0; }
    std::vector<HalfEdge> queue_half_edges() const {
        std::vector<HalfEdge> out;
        for (auto& [d, h] : queue) out.push_back(h);
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline ExplorationState start_exploration(const AugmentedCore& a, Label v) {
    if (!std::binary_search(a.kernel_vertices().begin(), a.kernel_vertices().end(), v))
        throw InvalidInput("start must be a kernel vertex");
    ExplorationState s;
    s.start = v;
    s.distance[v] = 0;
    for (long i = 1; i <= a.degree(v); ++i) s.queue.emplace(0, HalfEdge{v, i});
    return s;
}

/// One step in place; returns false at the fixpoint.
inline bool advance(const AugmentedCore& a, ExplorationState& s) {
    s.last_back_edge = s.last_loop = false;
    if (s.queue.empty()) return false;
    auto [du, ui] = *s.queue.begin();
    s.queue.erase(s.queue.begin());
    HalfEdge wj = a.partner(ui);
    Label w = wj.vertex;
    s.explored.push_back(a.record_of(ui));
    ++s.t;
    if (s.discovered(w)) {
        s.last_back_edge = true;
        s.last_loop = (w == ui.vertex);
        s.queue.erase({s.distance[w], wj});
    } else {
        std::size_t dw = du + 1;
        s.distance[w] = dw;
        s.radius = std::max(s.radius, dw);
        for (long k = 1; k <= a.degree(w); ++k)
            if (k != wj.port) s.queue.emplace(dw, HalfEdge{w, k});
    }
    return true;
}

inline ExplorationState bf_explore_step(const AugmentedCore& a, ExplorationState s) {
    advance(a, s);
    return s;
}

/// K_t as a multigraph on the discovered vertices.
inline MultiGraph explored_subgraph(const AugmentedCore& a, const ExplorationState& s) {
    std::vector<Label> vs;
    for (auto& [v, d] : s.distance) vs.push_back(v);
    std::vector<Edge> es;
    for (std::size_t r : s.explored) es.emplace_back(a.records()[r].a.vertex, a.records()[r].b.vertex);
    return MultiGraph(vs, es);
}

struct TraceRow {
    std::size_t t, queue_size, radius;
    bool back_edge, loop;
    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

inline TraceRow trace_row(const ExplorationState& s) {
    return {s.t, s.queue_size(), s.radius, s.last_back_edge, s.last_loop};
}

struct ExplorationTrace {
    std::vector<TraceRow> rows;  // rows[0] is t = 0
    ExplorationState final_state;
    bool predicate_met = false;
};

/// Steps until pred(state) holds or the queue empties.
inline ExplorationTrace explore_until(const AugmentedCore& a, Label start,
                                      const std::function<bool(const ExplorationState&)>& pred) {
    ExplorationTrace out;
    ExplorationState s = start_exploration(a, start);
    out.rows.push_back(trace_row(s));
    while (!(out.predicate_met = pred(s)) && advance(a, s)) out.rows.push_back(trace_row(s));
    out.final_state = std::move(s);
    return out;
}

inline void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "t,queue_size,radius,back_edge,loop\n";
    for (auto& r : rows) out << r.t << ',' << r.queue_size << ',' << r.radius << ',' << r.back_edge << ',' << r.loop << '\n';
}

}  // namespace rgd
