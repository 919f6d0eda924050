#include "wsnsim/event_log.hpp"

#include <cstdio>
#include <cstring>

namespace wsnsim {

const char* drop_cause_name(DropCause c) {
    switch (c) {
        case DropCause::LinkError: return "link_error";
        case DropCause::Congestion: return "congestion";
        case DropCause::RateLimited: return "rate_limited";
        case DropCause::RetryExhausted: return "retry_exhausted";
        case DropCause::AttackDrop: return "attack_drop";
        case DropCause::TtlExpired: return "ttl_expired";
        case DropCause::AuthFail: return "auth_fail";
        case DropCause::CrcFail: return "crc_fail";
    }
    return "unknown";
}

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

} // namespace

void encode_record(const Record& r, std::vector<std::uint8_t>& out) {
    out.push_back(static_cast<std::uint8_t>(r.kind));
    put_u64(out, r.time);
    put_u64(out, r.a);
    put_u64(out, r.b);
    put_u64(out, r.c);
    put_u64(out, r.d);
    out.push_back(r.x);
    out.push_back(r.y);
}

void EventLog::append(const Record& r) {
    records_.push_back(r);
    std::vector<std::uint8_t> buf;
    buf.reserve(36);
    encode_record(r, buf);
    digest_ = fnv1a64(digest_, buf.data(), buf.size());
    if (observer_) observer_(r);
}

namespace {
constexpr char kMagic[8] = {'W', 'S', 'N', 'L', 'O', 'G', '1', '\0'};
}

void EventLog::save(const std::string& path) const {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw std::runtime_error("cannot open log file for writing: " + path);
    std::fwrite(kMagic, 1, 8, f);
    std::uint64_t n = records_.size();
    std::fwrite(&n, sizeof n, 1, f);
    std::vector<std::uint8_t> buf;
    for (const Record& r : records_) {
        buf.clear();
        encode_record(r, buf);
        std::fwrite(buf.data(), 1, buf.size(), f);
    }
    std::fwrite(&digest_, sizeof digest_, 1, f);
    std::fclose(f);
}

EventLog EventLog::load(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (!f) throw CorruptLog("cannot open log file: " + path);
    char magic[8];
    if (std::fread(magic, 1, 8, f) != 8 || std::memcmp(magic, kMagic, 8) != 0) {
        std::fclose(f);
        throw CorruptLog("bad log header: " + path);
    }
    std::uint64_t n = 0;
    if (std::fread(&n, sizeof n, 1, f) != 1) {
        std::fclose(f);
        throw CorruptLog("truncated log header: " + path);
    }
    EventLog log;
    constexpr std::size_t kRecBytes = 1 + 5 * 8 + 2;
    std::uint8_t buf[kRecBytes];
    for (std::uint64_t i = 0; i < n; ++i) {
        if (std::fread(buf, 1, kRecBytes, f) != kRecBytes) {
            std::fclose(f);
            throw CorruptLog("truncated log record stream: " + path);
        }
        Record r;
        r.kind = static_cast<RecordKind>(buf[0]);
        auto get_u64 = [&](int off) {
            std::uint64_t v = 0;
            for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(buf[off + k]) << (8 * k);
            return v;
        };
        r.time = get_u64(1);
        r.a = get_u64(9);
        r.b = get_u64(17);
        r.c = get_u64(25);
        r.d = get_u64(33);
        r.x = buf[41];
        r.y = buf[42];
        log.append(r);
    }
    std::uint64_t stored = 0;
    bool have_digest = std::fread(&stored, sizeof stored, 1, f) == 1;
    std::fclose(f);
    if (!have_digest || stored != log.digest()) {
        throw CorruptLog("log digest mismatch: " + path);
    }
    return log;
}

} // namespace wsnsim
