#include "wsnsim/attack_injector.hpp"

namespace wsnsim {

const char* attack_kind_name(AttackKind k) {
    switch (k) {
        case AttackKind::Flood: return "flood";
        case AttackKind::Blackhole: return "blackhole";
        case AttackKind::Tamper: return "tamper";
    }
    return "unknown";
}

GroundTruth ground_truth(const std::vector<AttackSpec>& attacks) {
    GroundTruth gt;
    gt.intervals.reserve(attacks.size());
    for (const AttackSpec& a : attacks) {
        gt.intervals.push_back({a.attacker, a.kind, a.start, a.end});
    }
    return gt;
}

} // namespace wsnsim
