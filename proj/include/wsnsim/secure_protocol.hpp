#ifndef WSNSIM_SECURE_PROTOCOL_HPP
#define WSNSIM_SECURE_PROTOCOL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "wsnsim/event_log.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

using NodeId = std::uint32_t;

enum class Priority : std::uint8_t { Critical = 0, Normal = 1 };

// Reflected CRC-32, polynomial 0xEDB88320, init 0xFFFFFFFF, final xor
// 0xFFFFFFFF. crc32("123456789") == 0xCBF43926.
std::uint32_t crc32(const std::uint8_t* data, std::size_t len);
inline std::uint32_t crc32(const std::vector<std::uint8_t>& v) {
    return crc32(v.data(), v.size());
}

// Keystream block source: splitmix64 finalizer over key, nonce and the block
// index. Pure; prf64(0,0,0) == 0 by construction of the finalizer.
inline std::uint64_t prf64(std::uint64_t key, std::uint64_t nonce, std::uint64_t block) {
    return mix64(key ^ nonce ^ (block * kGolden));
}

// Frame header. hop_* fields, ttl and hop_seq are rewritten at every hop and
// are covered by the CRC only; the authentication tag covers the end-to-end
// stable fields (origin, dest, app_seq, priority, nonce) plus the ciphertext,
// which is what lets intermediate nodes forward without the origin's key.
struct FrameHeader {
    NodeId origin = 0;
    NodeId dest = 0;
    NodeId hop_src = 0;
    NodeId hop_dst = 0;
    std::uint64_t app_seq = 0;
    std::uint64_t hop_seq = 0;
    Priority priority = Priority::Normal;
    std::uint32_t ttl = 0;
    std::uint64_t nonce = 0;

    bool operator==(const FrameHeader&) const = default;
};

struct WirePacket {
    FrameHeader header;
    std::vector<std::uint8_t> ciphertext;
    std::uint64_t tag = 0;
    std::uint32_t crc = 0;

    bool operator==(const WirePacket&) const = default;
};

// Canonical encodings: all integers little-endian, header fields in
// declaration order, the ciphertext length as a 32-bit prefix.
void encode_header(const FrameHeader& h, std::vector<std::uint8_t>& out);
std::vector<std::uint8_t> encode_packet(const WirePacket& w);
std::optional<WirePacket> decode_packet(const std::uint8_t* data, std::size_t len);

// CRC input: header || len(ciphertext) || ciphertext || tag.
std::uint32_t packet_crc(const WirePacket& w);
// Tag input: key || nonce || end-to-end header fields || ciphertext.
std::uint64_t packet_tag(const FrameHeader& h, const std::vector<std::uint8_t>& ct,
                         std::uint64_t key);

struct PayloadTooLarge : std::runtime_error {
    explicit PayloadTooLarge(const std::string& what) : std::runtime_error(what) {}
};

constexpr std::size_t kDefaultPayloadMax = 64;

// Seals payload under the origin's key: XOR keystream, tag, CRC.
// Pure: identical inputs give a byte-identical WirePacket.
WirePacket seal(const FrameHeader& header, const std::vector<std::uint8_t>& payload,
                std::uint64_t key, std::size_t payload_max = kDefaultPayloadMax);

enum class OpenStatus : std::uint8_t { Ok, CrcError, AuthError, ReplayError };

struct OpenResult {
    OpenStatus status = OpenStatus::Ok;
    std::vector<std::uint8_t> payload;  // valid when status == Ok
};

// Anti-replay state per origin, enforced at the final destination only.
// Tracks the highest accepted app_seq plus a bitmap of recently accepted
// sequence numbers, so legitimate out-of-order arrivals from retransmission
// timing are not rejected while true duplicates are.
class ReplayWindow {
public:
    explicit ReplayWindow(std::uint32_t span = 64) : span_(span) {}

    bool seen(NodeId origin, std::uint64_t app_seq) const;
    void accept(NodeId origin, std::uint64_t app_seq);
    std::optional<std::uint64_t> highest(NodeId origin) const;

private:
    struct PerOrigin {
        bool any = false;
        std::uint64_t highest = 0;
        std::uint64_t bitmap = 0;  // bit k = (highest - k) accepted
    };
    std::uint32_t span_;
    std::map<NodeId, PerOrigin> per_origin_;
};

// Checks run cheapest-first: CRC, then tag, then (at the final destination)
// replay. A passing open() at the destination updates the window.
OpenResult open(const WirePacket& w, std::uint64_t key, ReplayWindow* rw,
                bool at_final_destination);

// Keystream identical to seal()'s; exposed for tests.
void apply_keystream(std::vector<std::uint8_t>& data, std::uint64_t key,
                     std::uint64_t nonce);

// --- Per-hop stop-and-wait ARQ -------------------------------------------

struct ArqParams {
    std::uint32_t retry_limit = 3;  // r: retransmissions after the first send
    std::uint32_t ack_timeout = 4;  // ticks to wait for the hop ACK
};

struct ArqState {
    std::uint32_t attempts = 0;  // transmissions performed so far
    SimTime timeout_at = 0;
};

enum class ArqEvent : std::uint8_t { AckReceived, Timeout };
enum class ArqAction : std::uint8_t { CancelTimer, Retransmit, GiveUp };

// AckReceived cancels the timer. Timeout retransmits while attempts <= r and
// gives up (drop cause retry_exhausted) once attempts == r + 1.
inline ArqAction arq_step(ArqState& st, ArqEvent ev, const ArqParams& p, SimTime now) {
    if (ev == ArqEvent::AckReceived) return ArqAction::CancelTimer;
    if (st.attempts <= p.retry_limit) {
        st.attempts += 1;
        st.timeout_at = now + p.ack_timeout;
        return ArqAction::Retransmit;
    }
    return ArqAction::GiveUp;
}

} // namespace wsnsim

#endif
