#ifndef WSNSIM_EVENT_LOG_HPP
#define WSNSIM_EVENT_LOG_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsnsim {

using SimTime = std::uint64_t;

// One append-only record stream is the single source of truth for metrics,
// detection features, and cross-run equality (via the rolling digest).
enum class RecordKind : std::uint8_t {
    PacketGenerated = 1,   // a=origin, b=app_seq, c=dest, x=priority, d=payload_len
    PacketDelivered = 2,   // a=origin, b=app_seq, c=latency_ticks
    PacketDuplicate = 3,   // a=origin, b=app_seq
    PacketDropped = 4,     // a=origin, b=app_seq, c=at_node, x=cause (terminal, refined)
    FrameSent = 5,         // a=sender, b=origin, c=app_seq, d=attempt, x=priority
    FrameDelivered = 6,    // a=receiver, b=sender, c=origin, d=app_seq, x=forwarding(0/1)
    FrameDropped = 7,      // a=at_node, b=origin, c=app_seq, x=cause (frame-level)
    TamperNotice = 8,      // a=at_node, b=suspect(hop_src), c=origin, d=app_seq
    QueueStat = 9,         // a=node, b=occupancy_ppm (mean over detector window)
    Alert = 10,            // a=node, b=score_milli, x=label, y=action_mask
    MitigationApplied = 11,// a=target, b=param, x=action_kind
    AttackStarted = 12,    // a=node, x=attack_kind
    AttackEnded = 13,      // a=node, x=attack_kind
    NodeUnroutable = 14,   // a=node
    RouteComputed = 15,    // a=changed_entries
    RiskAdvisory = 16,     // a=node, b=risk_milli
    RunSummary = 17,       // a=in_flight census at run end (dual-route conservation check)
};

// Drop causes. Every dropped frame carries exactly one.
enum class DropCause : std::uint8_t {
    LinkError = 0,
    Congestion = 1,
    RateLimited = 2,
    RetryExhausted = 3,
    AttackDrop = 4,
    TtlExpired = 5,
    AuthFail = 6,
    CrcFail = 7,
};

constexpr int kDropCauseCount = 8;
const char* drop_cause_name(DropCause c);

struct Record {
    RecordKind kind{};
    SimTime time = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;
    std::uint8_t x = 0;
    std::uint8_t y = 0;
};

// Canonical little-endian encoding, shared by the digest and the log file.
void encode_record(const Record& r, std::vector<std::uint8_t>& out);

constexpr std::uint64_t kFnvOffsetBasis = 0xCBF29CE484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x00000100000001B3ULL;

inline std::uint64_t fnv1a64(std::uint64_t h, const std::uint8_t* data, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= kFnvPrime;
    }
    return h;
}

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t len) {
    return fnv1a64(kFnvOffsetBasis, data, len);
}

class EventLog {
public:
    using Observer = std::function<void(const Record&)>;

    void append(const Record& r);

    const std::vector<Record>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    std::uint64_t digest() const { return digest_; }

    std::span<const Record> slice(std::size_t from) const {
        return std::span<const Record>(records_).subspan(from);
    }

    // Observer sees each record as it is appended (console echo hook).
    void set_observer(Observer obs) { observer_ = std::move(obs); }

    // Binary round-trip. save() writes exactly the digest input bytes plus a
    // header and trailing digest; load() recomputes and verifies.
    void save(const std::string& path) const;
    static EventLog load(const std::string& path);  // throws CorruptLog

private:
    std::vector<Record> records_;
    std::uint64_t digest_ = kFnvOffsetBasis;
    Observer observer_;
};

struct CorruptLog : std::runtime_error {
    explicit CorruptLog(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wsnsim

#endif
