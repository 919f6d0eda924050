#include "wsnsim/secure_protocol.hpp"

namespace wsnsim {

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i) {
        crc ^= data[i];
        for (int k = 0; k < 8; ++k) {
            crc = (crc >> 1) ^ (0xEDB88320u & (0u - (crc & 1u)));
        }
    }
    return crc ^ 0xFFFFFFFFu;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return v;
}

constexpr std::size_t kHeaderBytes = 4 + 4 + 4 + 4 + 8 + 8 + 1 + 4 + 8;

// End-to-end header fields, the portion the tag covers.
void encode_sealed_fields(const FrameHeader& h, std::vector<std::uint8_t>& out) {
    put_u32(out, h.origin);
    put_u32(out, h.dest);
    put_u64(out, h.app_seq);
    out.push_back(static_cast<std::uint8_t>(h.priority));
    put_u64(out, h.nonce);
}

} // namespace

void encode_header(const FrameHeader& h, std::vector<std::uint8_t>& out) {
    put_u32(out, h.origin);
    put_u32(out, h.dest);
    put_u32(out, h.hop_src);
    put_u32(out, h.hop_dst);
    put_u64(out, h.app_seq);
    put_u64(out, h.hop_seq);
    out.push_back(static_cast<std::uint8_t>(h.priority));
    put_u32(out, h.ttl);
    put_u64(out, h.nonce);
}

std::uint64_t packet_tag(const FrameHeader& h, const std::vector<std::uint8_t>& ct,
                         std::uint64_t key) {
    std::vector<std::uint8_t> buf;
    buf.reserve(16 + 33 + ct.size());
    put_u64(buf, key);
    put_u64(buf, h.nonce);
    encode_sealed_fields(h, buf);
    buf.insert(buf.end(), ct.begin(), ct.end());
    return fnv1a64(buf.data(), buf.size());
}

std::uint32_t packet_crc(const WirePacket& w) {
    std::vector<std::uint8_t> buf;
    buf.reserve(kHeaderBytes + 4 + w.ciphertext.size() + 8);
    encode_header(w.header, buf);
    put_u32(buf, static_cast<std::uint32_t>(w.ciphertext.size()));
    buf.insert(buf.end(), w.ciphertext.begin(), w.ciphertext.end());
    put_u64(buf, w.tag);
    return crc32(buf);
}

std::vector<std::uint8_t> encode_packet(const WirePacket& w) {
    std::vector<std::uint8_t> buf;
    buf.reserve(kHeaderBytes + 4 + w.ciphertext.size() + 8 + 4);
    encode_header(w.header, buf);
    put_u32(buf, static_cast<std::uint32_t>(w.ciphertext.size()));
    buf.insert(buf.end(), w.ciphertext.begin(), w.ciphertext.end());
    put_u64(buf, w.tag);
    put_u32(buf, w.crc);
    return buf;
}

std::optional<WirePacket> decode_packet(const std::uint8_t* data, std::size_t len) {
    if (len < kHeaderBytes + 4 + 8 + 4) return std::nullopt;
    WirePacket w;
    const std::uint8_t* p = data;
    w.header.origin = get_u32(p); p += 4;
    w.header.dest = get_u32(p); p += 4;
    w.header.hop_src = get_u32(p); p += 4;
    w.header.hop_dst = get_u32(p); p += 4;
    w.header.app_seq = get_u64(p); p += 8;
    w.header.hop_seq = get_u64(p); p += 8;
    w.header.priority = static_cast<Priority>(*p); p += 1;
    w.header.ttl = get_u32(p); p += 4;
    w.header.nonce = get_u64(p); p += 8;
    std::uint32_t ct_len = get_u32(p); p += 4;
    std::size_t need = kHeaderBytes + 4 + static_cast<std::size_t>(ct_len) + 8 + 4;
    if (len != need) return std::nullopt;
    w.ciphertext.assign(p, p + ct_len); p += ct_len;
    w.tag = get_u64(p); p += 8;
    w.crc = get_u32(p);
    return w;
}

void apply_keystream(std::vector<std::uint8_t>& data, std::uint64_t key,
                     std::uint64_t nonce) {
    for (std::size_t j = 0; j < data.size(); ++j) {
        std::uint64_t block = prf64(key, nonce, j / 8);
        data[j] ^= static_cast<std::uint8_t>(block >> (8 * (j % 8)));
    }
}

WirePacket seal(const FrameHeader& header, const std::vector<std::uint8_t>& payload,
                std::uint64_t key, std::size_t payload_max) {
    if (payload.size() > payload_max) {
        throw PayloadTooLarge("payload of " + std::to_string(payload.size()) +
                              " bytes exceeds payload_max " + std::to_string(payload_max));
    }
    WirePacket w;
    w.header = header;
    w.ciphertext = payload;
    apply_keystream(w.ciphertext, key, header.nonce);
    w.tag = packet_tag(w.header, w.ciphertext, key);
    w.crc = packet_crc(w);
    return w;
}

bool ReplayWindow::seen(NodeId origin, std::uint64_t app_seq) const {
    auto it = per_origin_.find(origin);
    if (it == per_origin_.end() || !it->second.any) return false;
    const PerOrigin& po = it->second;
    if (app_seq > po.highest) return false;
    std::uint64_t back = po.highest - app_seq;
    if (back >= span_) return true;  // below the window: treat as replayed
    return (po.bitmap >> back) & 1u;
}

void ReplayWindow::accept(NodeId origin, std::uint64_t app_seq) {
    PerOrigin& po = per_origin_[origin];
    if (!po.any) {
        po.any = true;
        po.highest = app_seq;
        po.bitmap = 1;
        return;
    }
    if (app_seq > po.highest) {
        std::uint64_t shift = app_seq - po.highest;
        po.bitmap = shift >= 64 ? 0 : po.bitmap << shift;
        po.bitmap |= 1u;
        po.highest = app_seq;
    } else {
        std::uint64_t back = po.highest - app_seq;
        if (back < 64) po.bitmap |= (1ull << back);
    }
}

std::optional<std::uint64_t> ReplayWindow::highest(NodeId origin) const {
    auto it = per_origin_.find(origin);
    if (it == per_origin_.end() || !it->second.any) return std::nullopt;
    return it->second.highest;
}

OpenResult open(const WirePacket& w, std::uint64_t key, ReplayWindow* rw,
                bool at_final_destination) {
    if (packet_crc(w) != w.crc) return {OpenStatus::CrcError, {}};
    if (packet_tag(w.header, w.ciphertext, key) != w.tag) return {OpenStatus::AuthError, {}};
    if (at_final_destination && rw) {
        if (rw->seen(w.header.origin, w.header.app_seq)) return {OpenStatus::ReplayError, {}};
        rw->accept(w.header.origin, w.header.app_seq);
    }
    OpenResult res;
    res.status = OpenStatus::Ok;
    res.payload = w.ciphertext;
    apply_keystream(res.payload, key, w.header.nonce);
    return res;
}

} // namespace wsnsim
