#include "wsnsim/adaptive_routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace wsnsim {

std::optional<double> link_cost(const LinkQuality& lq, double queue_frac,
                                const TrustRecord& trust, const RoutingParams& params) {
    if (trust.quarantined) return std::nullopt;
    double p = std::max(lq.p, params.p_min);
    return 1.0 / p + params.beta * queue_frac + params.gamma * (1.0 - trust.trust);
}

RouteTable compute_routes(const Topology& topo, const EdgeCostFn& cost_of, NodeId sink,
                          SimTime now) {
    const std::size_t n = topo.node_count();
    constexpr double kInf = std::numeric_limits<double>::infinity();

    // Phase 1: exact distances to the sink, Dijkstra over reversed edges.
    // cost_of(v, li) prices v forwarding over link li; all costs are >= 1,
    // so distances strictly decrease along chosen next hops.
    std::vector<double> dist(n, kInf);
    using QItem = std::pair<double, NodeId>;
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
    dist[sink] = 0.0;
    pq.push({0.0, sink});
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (std::uint32_t li : topo.adjacency[u]) {
            NodeId v = topo.neighbor(li, u);
            auto c = cost_of(v, li);
            if (!c) continue;
            double nd = d + *c;
            if (nd < dist[v]) {
                dist[v] = nd;
                pq.push({nd, v});
            }
        }
    }

    // Phase 2: deterministic next-hop selection; equal-cost ties go to the
    // lower neighbor id.
    RouteTable table;
    table.computed_at = now;
    table.cost[sink] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        NodeId v = static_cast<NodeId>(i);
        if (v == sink || dist[v] == kInf) continue;
        std::optional<NodeId> best;
        double best_cost = kInf;
        for (std::uint32_t li : topo.adjacency[v]) {
            NodeId u = topo.neighbor(li, v);
            auto c = cost_of(v, li);
            if (!c || dist[u] == kInf) continue;
            double cand = dist[u] + *c;
            if (cand < best_cost - 1e-12 ||
                (std::abs(cand - best_cost) <= 1e-12 && best && u < *best)) {
                best_cost = cand;
                best = u;
            }
        }
        if (best) {
            table.next_hop[v] = *best;
            table.cost[v] = dist[v];
        }
    }
    return table;
}

} // namespace wsnsim
