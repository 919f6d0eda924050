#ifndef WSNSIM_NET_MODEL_HPP
#define WSNSIM_NET_MODEL_HPP

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnsim/event_log.hpp"
#include "wsnsim/rng.hpp"
#include "wsnsim/secure_protocol.hpp"

namespace wsnsim {

enum class NodeRole : std::uint8_t { Sensor, Sink };

// Origination budget: at most `cap` frames per `per` ticks (aligned windows).
// A per-tick cap is the special case per == 1.
struct RateLimit {
    std::uint64_t cap = 0;
    std::uint64_t per = 1;
};

struct Node {
    NodeId id = 0;
    NodeRole role = NodeRole::Sensor;
    bool compromised = false;
    std::optional<RateLimit> rate_limit;
    std::uint64_t key = 0;
};

struct Link {
    NodeId a = 0;
    NodeId b = 0;
    double base_loss = 0.0;
    std::uint32_t latency = 1;
    std::uint32_t capacity = 1;  // queue slots and in-flight bound, per direction
};

struct BadSpec : std::runtime_error {
    explicit BadSpec(const std::string& what) : std::runtime_error(what) {}
};

struct Disconnected : std::runtime_error {
    explicit Disconnected(const std::string& what) : std::runtime_error(what) {}
};

struct TopologySpec {
    enum class Kind { Grid, Line, Explicit } kind = Kind::Grid;
    std::uint32_t width = 0;   // grid
    std::uint32_t height = 0;  // grid
    std::uint32_t count = 0;   // line / explicit node count
    std::vector<std::pair<NodeId, NodeId>> edges;  // explicit
    NodeId sink = 0;
};

struct Topology {
    std::vector<Node> nodes;
    std::vector<Link> links;
    std::vector<std::vector<std::uint32_t>> adjacency;  // node -> link indices
    NodeId sink = 0;

    std::size_t node_count() const { return nodes.size(); }
    NodeId neighbor(std::uint32_t link_idx, NodeId from) const {
        const Link& l = links[link_idx];
        return l.a == from ? l.b : l.a;
    }
};

// Grid uses 4-adjacency (id = y*width + x); line connects i to i+1; explicit
// uses the given edges verbatim. Connectivity to the sink is verified.
Topology build_topology(const TopologySpec& spec, double base_loss,
                        std::uint32_t latency, std::uint32_t capacity);

// Hop distances from every node to `target` ignoring link costs; used both by
// topology validation and as the routing test oracle.
std::vector<std::int64_t> bfs_hops(const Topology& topo, NodeId target);

struct AppPacket {
    NodeId origin = 0;
    NodeId dest = 0;
    std::uint64_t app_seq = 0;
    Priority priority = Priority::Normal;
    std::vector<std::uint8_t> payload;
    SimTime created_at = 0;
};

struct TrafficSpec {
    std::uint32_t rate = 1;            // packets per TrafficTick
    std::uint32_t period = 1;          // ticks between TrafficTicks
    std::uint32_t payload_len = 24;
    double critical_fraction = 0.0;
};

// Emits `rate` packets toward the sink; each is Critical with probability
// critical_fraction and carries deterministic bytes from the node's stream.
std::vector<AppPacket> generate_traffic(NodeId origin, NodeId sink, std::uint64_t& app_seq,
                                        const TrafficSpec& cfg, SimTime now, Rng& rng);

// Two-level FIFO: Critical dequeues strictly before Normal.
template <typename T>
class PriorityQueue {
public:
    void push(Priority p, T v) {
        (p == Priority::Critical ? critical_ : normal_).push_back(std::move(v));
    }
    bool empty() const { return critical_.empty() && normal_.empty(); }
    std::size_t size() const { return critical_.size() + normal_.size(); }
    T pop() {
        auto& q = critical_.empty() ? normal_ : critical_;
        T v = std::move(q.front());
        q.pop_front();
        return v;
    }

private:
    std::deque<T> critical_;
    std::deque<T> normal_;
};

// One direction of a link: a bounded transmission queue plus an in-flight
// counter. A frame is accepted while flying < capacity (transmit now) or
// queued while queue size < capacity; otherwise it is a congestion drop.
struct TransmitOutcome {
    enum class Kind { DeliverAt, LostLinkError, DroppedQueueFull } kind;
    SimTime deliver_at = 0;
};

struct LinkDirState {
    std::uint32_t flying = 0;

    // Direct channel access: loss draw against base_loss, capacity check
    // against the in-flight count.
    TransmitOutcome transmit(const Link& link, SimTime now, Rng& rng) {
        if (flying >= link.capacity) {
            return {TransmitOutcome::Kind::DroppedQueueFull, 0};
        }
        ++flying;
        if (rng.bernoulli(link.base_loss)) {
            return {TransmitOutcome::Kind::LostLinkError, now + link.latency};
        }
        return {TransmitOutcome::Kind::DeliverAt, now + link.latency};
    }
};

} // namespace wsnsim

#endif
