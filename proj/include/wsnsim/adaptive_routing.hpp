#ifndef WSNSIM_ADAPTIVE_ROUTING_HPP
#define WSNSIM_ADAPTIVE_ROUTING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "wsnsim/net_model.hpp"

namespace wsnsim {

// EWMA of per-attempt delivery (data out and ACK back), the ETX-style signal.
struct LinkQuality {
    double p = 1.0;
    SimTime last_update = 0;
};

struct TrustRecord {
    double trust = 1.0;
    bool quarantined = false;
    SimTime since = 0;
};

struct RoutingParams {
    double lambda = 0.9;       // EWMA smoothing
    double beta = 2.0;         // queue-occupancy weight
    double gamma = 10.0;       // distrust weight
    double p_min = 0.05;       // delivery-probability floor
    std::uint64_t beacon_period = 50;
};

// p' = lambda*p + (1-lambda)*(success ? 1 : 0); stays in [0,1].
inline LinkQuality update_link_quality(LinkQuality lq, bool success, double lambda,
                                       SimTime now) {
    lq.p = lambda * lq.p + (1.0 - lambda) * (success ? 1.0 : 0.0);
    lq.last_update = now;
    return lq;
}

// cost = 1/max(p, p_min) + beta*queue_frac + gamma*(1 - trust);
// a quarantined endpoint excludes the edge entirely.
std::optional<double> link_cost(const LinkQuality& lq, double queue_frac,
                                const TrustRecord& trust, const RoutingParams& params);

struct RouteTable {
    std::map<NodeId, NodeId> next_hop;  // toward the sink; absent = unroutable
    std::map<NodeId, double> cost;
    SimTime computed_at = 0;
};

// Directed edge costs for compute_routes: cost_of(from, link_index) returns
// nullopt when the edge is excluded.
using EdgeCostFn = std::function<std::optional<double>(NodeId from, std::uint32_t link_idx)>;

// Single-source shortest paths to the sink (Dijkstra), ties broken by the
// lower neighbor id. Nodes with no path are simply absent from the table.
RouteTable compute_routes(const Topology& topo, const EdgeCostFn& cost_of, NodeId sink,
                          SimTime now);

} // namespace wsnsim

#endif
