#ifndef WSNSIM_CI_ENGINE_HPP
#define WSNSIM_CI_ENGINE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wsnsim/attack_injector.hpp"
#include "wsnsim/event_log.hpp"
#include "wsnsim/net_model.hpp"

namespace wsnsim {

// Per-node, per-window observation extracted from the event log. The
// detector sees only what a network observer could: transmissions, accepted
// deliveries, self-reportable drops, and authentication failures. It never
// reads attack ground truth; a blackhole's silent drops show up only as the
// gap between what the node received for forwarding and what it sent on.
enum Feature : std::size_t {
    kTxRate = 0,
    kRxRate = 1,
    kFwdRatio = 2,
    kDropCount = 3,
    kAuthFailCount = 4,
    kDupRatio = 5,
    kQueueFrac = 6,
    kFeatureCount = 7,
};

const char* feature_name(std::size_t f);

struct FeatureVector {
    NodeId node = 0;
    SimTime window_end = 0;
    std::array<double, kFeatureCount> v{};

    double tx_rate() const { return v[kTxRate]; }
    double rx_rate() const { return v[kRxRate]; }
    double fwd_ratio() const { return v[kFwdRatio]; }
    double drop_count() const { return v[kDropCount]; }
    double auth_fail_count() const { return v[kAuthFailCount]; }
    double dup_ratio() const { return v[kDupRatio]; }
    double queue_frac() const { return v[kQueueFrac]; }
};

// Computes the feature vector for `node` over a window of `window_len` ticks
// ending at `window_end`, from the given log slice. fwd_ratio is 1.0 when the
// node received nothing to forward; ratios are clamped to [0,1].
FeatureVector extract_features(std::span<const Record> slice, NodeId node,
                               SimTime window_end, std::uint64_t window_len);

struct FrozenBaseline : std::runtime_error {
    explicit FrozenBaseline(const std::string& what) : std::runtime_error(what) {}
};

// Welford accumulators per feature; frozen when warm-up ends.
struct BaselineStats {
    struct Welford {
        std::uint64_t count = 0;
        double mean = 0.0;
        double m2 = 0.0;

        double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
    };

    std::array<Welford, kFeatureCount> per_feature{};
    bool frozen = false;
};

void update_baseline(BaselineStats& bs, const FeatureVector& fv);

struct DetectorParams {
    std::uint64_t window = 50;   // W ticks
    std::uint32_t warmup = 5;    // windows before the baseline freezes
    double theta = 4.0;          // z threshold
    double sigma_min = 0.1;      // stdev floor
    std::uint32_t horizon = 3;   // prediction look-ahead in windows
};

// z_f = (x_f - mean_f) / max(sqrt(var_f), sigma_min), signed.
std::array<double, kFeatureCount> score(const FeatureVector& fv, const BaselineStats& bs,
                                        const DetectorParams& params);

enum class ThreatLabel : std::uint8_t { Benign = 0, Flood = 1, Blackhole = 2, Tamper = 3 };

const char* threat_label_name(ThreatLabel l);

struct ThreatAssessment {
    NodeId node = 0;
    SimTime window_end = 0;
    std::array<double, kFeatureCount> z{};
    ThreatLabel label = ThreatLabel::Benign;
    double score = 0.0;  // max |z|
};

// Rules in priority order: Tamper on any authentication failure evidence
// (categorical), then Blackhole on a collapsed forwarding ratio, then Flood
// on a transmit or receive rate spike. hard_rules_only suppresses the
// z-based rules (used while the baseline re-learns after mitigation).
ThreatAssessment classify(const FeatureVector& fv, const std::array<double, kFeatureCount>& z,
                          const DetectorParams& params, bool hard_rules_only = false);

enum class MitigationKind : std::uint8_t {
    Quarantine = 0,
    RateLimit = 1,
    Rekey = 2,
    RecomputeRoutes = 3,
};

const char* mitigation_kind_name(MitigationKind k);

struct MitigationAction {
    MitigationKind kind{};
    NodeId target = 0;
    std::uint64_t param = 0;  // RateLimit: cap per detector window
    SimTime issued_at = 0;
};

// Tracks which node-level actions are already in force so replaying the same
// assessment stream is idempotent.
struct ActiveActions {
    std::vector<bool> quarantined;
    std::vector<bool> rate_limited;
    std::vector<bool> rekeyed;

    explicit ActiveActions(std::size_t n = 0)
        : quarantined(n, false), rate_limited(n, false), rekeyed(n, false) {}
};

// Blackhole -> quarantine; Flood -> origination rate limit at the node's
// learned baseline; Tamper -> rekey plus quarantine. RecomputeRoutes rides
// along only when something new was issued.
std::vector<MitigationAction> decide_mitigation(const ThreatAssessment& a,
                                                const BaselineStats& bs,
                                                const DetectorParams& params,
                                                const ActiveActions& active, SimTime now);

// Least-squares trend over the recent anomaly scores, extrapolated `horizon`
// windows ahead and floored at zero. Fewer than two points: the last score
// (zero when empty).
double predict_risk(std::span<const double> history, const DetectorParams& params);

} // namespace wsnsim

#endif
