#ifndef WSNSIM_ATTACK_INJECTOR_HPP
#define WSNSIM_ATTACK_INJECTOR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "wsnsim/net_model.hpp"

namespace wsnsim {

enum class AttackKind : std::uint8_t { Flood = 0, Blackhole = 1, Tamper = 2 };

const char* attack_kind_name(AttackKind k);

enum class Selective : std::uint8_t {
    All,       // drops data and goes mute on hop ACKs
    DataOnly,  // drops data silently but keeps ACKing (stealthy)
};

struct AttackSpec {
    AttackKind kind = AttackKind::Blackhole;
    NodeId attacker = 0;
    std::optional<NodeId> victim;  // flood target; defaults to the sink
    SimTime start = 0;
    SimTime end = 0;
    std::uint32_t flood_rate = 0;    // frames per tick
    double drop_prob = 1.0;
    Selective selective = Selective::DataOnly;
    double flip_prob = 1.0;

    bool active_at(SimTime t) const { return t >= start && t < end; }
};

struct GroundTruthInterval {
    NodeId node = 0;
    AttackKind kind{};
    SimTime start = 0;
    SimTime end = 0;
};

struct GroundTruth {
    std::vector<GroundTruthInterval> intervals;
};

// One labeled interval per spec; derived purely from configuration.
GroundTruth ground_truth(const std::vector<AttackSpec>& attacks);

} // namespace wsnsim

#endif
