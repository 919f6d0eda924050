#ifndef WSNSIM_SIM_KERNEL_HPP
#define WSNSIM_SIM_KERNEL_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "wsnsim/event_log.hpp"

namespace wsnsim {

enum class EventKind : std::uint8_t {
    PacketSend,
    PacketArrive,
    AckTimeout,
    TrafficTick,
    DetectorTick,
    BeaconTick,
    AttackStart,
    AttackEnd,
    MitigationApply,
};

struct SimEvent {
    SimTime fire_at = 0;
    std::uint64_t seq = 0;  // global insertion counter; assigned by schedule()
    EventKind kind{};
    std::uint64_t subject = 0;
    std::uint64_t aux = 0;
};

struct PastTimeError : std::runtime_error {
    explicit PastTimeError(const std::string& what) : std::runtime_error(what) {}
};

struct HandlerFault : std::runtime_error {
    explicit HandlerFault(const std::string& what) : std::runtime_error(what) {}
};

struct RunSummaryInfo {
    std::uint64_t events_processed = 0;
    SimTime final_clock = 0;
    std::uint64_t log_digest = 0;
};

// Deterministic discrete-event engine. Dispatch order is strictly ascending
// (fire_at, seq); events scheduled at the current tick during dispatch run in
// the same pass, after already-queued same-tick events.
class Simulator {
public:
    using Handler = std::function<void(const SimEvent&)>;

    SimTime now() const { return clock_; }

    std::uint64_t schedule(SimTime fire_at, EventKind kind, std::uint64_t subject = 0,
                           std::uint64_t aux = 0) {
        if (fire_at < clock_) {
            throw PastTimeError("schedule: fire_at " + std::to_string(fire_at) +
                                " is before current clock " + std::to_string(clock_));
        }
        SimEvent ev{fire_at, next_seq_++, kind, subject, aux};
        queue_.push(ev);
        return ev.seq;
    }

    void set_handler(Handler h) { handler_ = std::move(h); }

    // Processes every event with fire_at <= until; leaves the clock at `until`.
    RunSummaryInfo run(SimTime until, const EventLog& log) {
        std::uint64_t processed = 0;
        while (!queue_.empty() && queue_.top().fire_at <= until) {
            SimEvent ev = queue_.top();
            queue_.pop();
            clock_ = ev.fire_at;
            try {
                if (handler_) handler_(ev);
            } catch (const HandlerFault&) {
                throw;
            } catch (const std::exception& e) {
                throw HandlerFault(std::string("handler failed: ") + e.what());
            }
            ++processed;
        }
        clock_ = until;
        return RunSummaryInfo{processed, clock_, log.digest()};
    }

    bool empty() const { return queue_.empty(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    SimTime clock_ = 0;
    std::uint64_t next_seq_ = 0;
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> queue_;
    Handler handler_;
};

} // namespace wsnsim

#endif
