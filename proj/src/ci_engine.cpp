#include "wsnsim/ci_engine.hpp"

#include <algorithm>
#include <cmath>

namespace wsnsim {

const char* feature_name(std::size_t f) {
    switch (f) {
        case kTxRate: return "tx_rate";
        case kRxRate: return "rx_rate";
        case kFwdRatio: return "fwd_ratio";
        case kDropCount: return "drop_count";
        case kAuthFailCount: return "auth_fail_count";
        case kDupRatio: return "dup_ratio";
        case kQueueFrac: return "queue_frac";
    }
    return "unknown";
}

const char* threat_label_name(ThreatLabel l) {
    switch (l) {
        case ThreatLabel::Benign: return "benign";
        case ThreatLabel::Flood: return "flood";
        case ThreatLabel::Blackhole: return "blackhole";
        case ThreatLabel::Tamper: return "tamper";
    }
    return "unknown";
}

const char* mitigation_kind_name(MitigationKind k) {
    switch (k) {
        case MitigationKind::Quarantine: return "quarantine";
        case MitigationKind::RateLimit: return "rate_limit";
        case MitigationKind::Rekey: return "rekey";
        case MitigationKind::RecomputeRoutes: return "recompute_routes";
    }
    return "unknown";
}

FeatureVector extract_features(std::span<const Record> slice, NodeId node,
                               SimTime window_end, std::uint64_t window_len) {
    FeatureVector fv;
    fv.node = node;
    fv.window_end = window_end;

    std::uint64_t sent_first = 0;       // first transmissions by the node
    std::uint64_t sent_all = 0;         // all transmissions by the node
    std::uint64_t sent_retx = 0;        // retransmissions by the node
    std::uint64_t originated = 0;       // first transmissions of own frames
    std::uint64_t forwarded = 0;        // first transmissions of others' frames
    std::uint64_t received = 0;         // accepted deliveries at the node
    std::uint64_t recv_for_fwd = 0;     // accepted deliveries destined elsewhere
    std::uint64_t self_drops = 0;       // congestion and rate-limit drops here
    std::uint64_t auth_fails = 0;       // failures attributed to this hop_src
    double queue_frac = 0.0;

    for (const Record& r : slice) {
        switch (r.kind) {
            case RecordKind::FrameSent:
                if (r.a == node) {
                    ++sent_all;
                    if (r.d == 1) {
                        ++sent_first;
                        if (r.b == node) ++originated; else ++forwarded;
                    } else {
                        ++sent_retx;
                    }
                }
                break;
            case RecordKind::FrameDelivered:
                if (r.a == node) {
                    ++received;
                    if (r.x != 0) ++recv_for_fwd;
                }
                break;
            case RecordKind::FrameDropped:
                if (r.a == node) {
                    auto cause = static_cast<DropCause>(r.x);
                    if (cause == DropCause::Congestion || cause == DropCause::RateLimited) {
                        ++self_drops;
                    }
                }
                break;
            case RecordKind::TamperNotice:
                if (r.b == node) ++auth_fails;
                break;
            case RecordKind::QueueStat:
                if (r.a == node) queue_frac = static_cast<double>(r.b) * 1e-6;
                break;
            default:
                break;
        }
    }

    double w = static_cast<double>(window_len);
    fv.v[kTxRate] = static_cast<double>(originated) / w;
    fv.v[kRxRate] = static_cast<double>(received) / w;
    fv.v[kFwdRatio] = recv_for_fwd == 0
                          ? 1.0
                          : std::clamp(static_cast<double>(forwarded) /
                                           static_cast<double>(recv_for_fwd),
                                       0.0, 1.0);
    // Observable disappearance: frames accepted for forwarding but never sent
    // on, plus the node's own reportable queue and rate-limit drops.
    std::uint64_t vanished = recv_for_fwd > forwarded ? recv_for_fwd - forwarded : 0;
    fv.v[kDropCount] = static_cast<double>(vanished + self_drops);
    fv.v[kAuthFailCount] = static_cast<double>(auth_fails);
    fv.v[kDupRatio] = sent_all == 0 ? 0.0
                                    : static_cast<double>(sent_retx) /
                                          static_cast<double>(sent_all);
    fv.v[kQueueFrac] = std::clamp(queue_frac, 0.0, 1.0);
    (void)sent_first;
    return fv;
}

void update_baseline(BaselineStats& bs, const FeatureVector& fv) {
    if (bs.frozen) throw FrozenBaseline("update_baseline called on a frozen baseline");
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        auto& w = bs.per_feature[f];
        w.count += 1;
        double delta = fv.v[f] - w.mean;
        w.mean += delta / static_cast<double>(w.count);
        w.m2 += delta * (fv.v[f] - w.mean);
    }
}

std::array<double, kFeatureCount> score(const FeatureVector& fv, const BaselineStats& bs,
                                        const DetectorParams& params) {
    std::array<double, kFeatureCount> z{};
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const auto& w = bs.per_feature[f];
        double sigma = std::max(std::sqrt(w.variance()), params.sigma_min);
        z[f] = (fv.v[f] - w.mean) / sigma;
    }
    return z;
}

ThreatAssessment classify(const FeatureVector& fv, const std::array<double, kFeatureCount>& z,
                          const DetectorParams& params, bool hard_rules_only) {
    ThreatAssessment a;
    a.node = fv.node;
    a.window_end = fv.window_end;
    a.z = z;
    for (double v : z) a.score = std::max(a.score, std::abs(v));

    if (fv.v[kAuthFailCount] >= 1.0) {
        a.label = ThreatLabel::Tamper;
        return a;
    }
    if (!hard_rules_only) {
        if (z[kFwdRatio] <= -params.theta) {
            a.label = ThreatLabel::Blackhole;
            return a;
        }
        if (z[kTxRate] >= params.theta || z[kRxRate] >= params.theta) {
            a.label = ThreatLabel::Flood;
            return a;
        }
    }
    a.label = ThreatLabel::Benign;
    return a;
}

std::vector<MitigationAction> decide_mitigation(const ThreatAssessment& a,
                                                const BaselineStats& bs,
                                                const DetectorParams& params,
                                                const ActiveActions& active, SimTime now) {
    std::vector<MitigationAction> out;
    auto quarantined = [&] {
        return a.node < active.quarantined.size() && active.quarantined[a.node];
    };
    auto rate_limited = [&] {
        return a.node < active.rate_limited.size() && active.rate_limited[a.node];
    };
    auto rekeyed = [&] {
        return a.node < active.rekeyed.size() && active.rekeyed[a.node];
    };

    switch (a.label) {
        case ThreatLabel::Benign:
            break;
        case ThreatLabel::Blackhole:
            if (!quarantined()) {
                out.push_back({MitigationKind::Quarantine, a.node, 0, now});
            }
            break;
        case ThreatLabel::Flood:
            if (!rate_limited()) {
                double base = bs.per_feature[kTxRate].mean;
                auto cap = static_cast<std::uint64_t>(
                    std::ceil(base * static_cast<double>(params.window)));
                if (cap == 0) cap = 1;
                out.push_back({MitigationKind::RateLimit, a.node, cap, now});
            }
            break;
        case ThreatLabel::Tamper:
            if (!rekeyed()) {
                out.push_back({MitigationKind::Rekey, a.node, 0, now});
            }
            if (!quarantined()) {
                out.push_back({MitigationKind::Quarantine, a.node, 0, now});
            }
            break;
    }
    if (!out.empty()) {
        out.push_back({MitigationKind::RecomputeRoutes, a.node, 0, now});
    }
    return out;
}

double predict_risk(std::span<const double> history, const DetectorParams& params) {
    if (history.empty()) return 0.0;
    double last = history.back();
    std::size_t n = history.size();
    if (n < 2) return std::max(0.0, last);
    double mean_i = static_cast<double>(n - 1) / 2.0;
    double mean_s = 0.0;
    for (double s : history) mean_s += s;
    mean_s /= static_cast<double>(n);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double di = static_cast<double>(i) - mean_i;
        num += di * (history[i] - mean_s);
        den += di * di;
    }
    double slope = den > 0 ? num / den : 0.0;
    return std::max(0.0, last + slope * static_cast<double>(params.horizon));
}

} // namespace wsnsim
