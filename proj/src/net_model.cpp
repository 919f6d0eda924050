#include "wsnsim/net_model.hpp"

#include <queue>
#include <set>

namespace wsnsim {

namespace {

void add_link(Topology& topo, NodeId a, NodeId b, double base_loss,
              std::uint32_t latency, std::uint32_t capacity) {
    if (a == b) throw BadSpec("self-loop link at node " + std::to_string(a));
    Link l{a, b, base_loss, latency, capacity};
    std::uint32_t idx = static_cast<std::uint32_t>(topo.links.size());
    topo.links.push_back(l);
    topo.adjacency[a].push_back(idx);
    topo.adjacency[b].push_back(idx);
}

} // namespace

Topology build_topology(const TopologySpec& spec, double base_loss,
                        std::uint32_t latency, std::uint32_t capacity) {
    if (latency < 1) throw BadSpec("link latency must be >= 1");
    if (capacity < 1) throw BadSpec("link capacity must be >= 1");
    Topology topo;
    std::size_t n = 0;
    switch (spec.kind) {
        case TopologySpec::Kind::Grid:
            if (spec.width == 0 || spec.height == 0) throw BadSpec("grid dimensions must be positive");
            n = static_cast<std::size_t>(spec.width) * spec.height;
            break;
        case TopologySpec::Kind::Line:
            if (spec.count == 0) throw BadSpec("line length must be positive");
            n = spec.count;
            break;
        case TopologySpec::Kind::Explicit:
            if (spec.count == 0) throw BadSpec("explicit node count must be positive");
            n = spec.count;
            break;
    }
    if (spec.sink >= n) throw BadSpec("sink id " + std::to_string(spec.sink) + " out of range");

    topo.nodes.resize(n);
    topo.adjacency.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        topo.nodes[i].id = static_cast<NodeId>(i);
        topo.nodes[i].role = NodeRole::Sensor;
    }
    topo.sink = spec.sink;
    topo.nodes[spec.sink].role = NodeRole::Sink;

    switch (spec.kind) {
        case TopologySpec::Kind::Grid:
            for (std::uint32_t y = 0; y < spec.height; ++y) {
                for (std::uint32_t x = 0; x < spec.width; ++x) {
                    NodeId id = y * spec.width + x;
                    if (x + 1 < spec.width) add_link(topo, id, id + 1, base_loss, latency, capacity);
                    if (y + 1 < spec.height) add_link(topo, id, id + spec.width, base_loss, latency, capacity);
                }
            }
            break;
        case TopologySpec::Kind::Line:
            for (std::uint32_t i = 0; i + 1 < spec.count; ++i) {
                add_link(topo, i, i + 1, base_loss, latency, capacity);
            }
            break;
        case TopologySpec::Kind::Explicit: {
            std::set<std::pair<NodeId, NodeId>> seen;
            for (auto [a, b] : spec.edges) {
                if (a >= n || b >= n) {
                    throw BadSpec("edge endpoint out of range: (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
                }
                auto key = std::minmax(a, b);
                if (!seen.insert(key).second) {
                    throw BadSpec("duplicate edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
                }
                add_link(topo, a, b, base_loss, latency, capacity);
            }
            break;
        }
    }

    auto hops = bfs_hops(topo, topo.sink);
    for (std::size_t i = 0; i < n; ++i) {
        if (hops[i] < 0) {
            throw Disconnected("node " + std::to_string(i) + " cannot reach the sink");
        }
    }
    return topo;
}

std::vector<std::int64_t> bfs_hops(const Topology& topo, NodeId target) {
    std::vector<std::int64_t> dist(topo.node_count(), -1);
    std::queue<NodeId> q;
    dist[target] = 0;
    q.push(target);
    while (!q.empty()) {
        NodeId u = q.front();
        q.pop();
        for (std::uint32_t li : topo.adjacency[u]) {
            NodeId v = topo.neighbor(li, u);
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
        }
    }
    return dist;
}

std::vector<AppPacket> generate_traffic(NodeId origin, NodeId sink, std::uint64_t& app_seq,
                                        const TrafficSpec& cfg, SimTime now, Rng& rng) {
    std::vector<AppPacket> out;
    out.reserve(cfg.rate);
    for (std::uint32_t i = 0; i < cfg.rate; ++i) {
        AppPacket p;
        p.origin = origin;
        p.dest = sink;
        p.app_seq = app_seq++;
        p.priority = rng.bernoulli(cfg.critical_fraction) ? Priority::Critical : Priority::Normal;
        rng.fill_bytes(p.payload, cfg.payload_len);
        p.created_at = now;
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace wsnsim
