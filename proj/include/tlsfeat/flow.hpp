// SPDX-License-Identifier: Apache-2.0
//
// flow.hpp - bidirectional TCP flow table with Wireshark-style stream
// indexes and per-direction sequence reassembly

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <unordered_map>
#include <vector>

#include "tlsfeat/decode.hpp"
#include "tlsfeat/ip.hpp"

namespace tlsfeat {

enum class Direction : uint8_t { Outbound = 0, Inbound = 1 };

// Canonical endpoint pair: the lexicographically smaller (ip, port) first,
// so a packet and its reversed-direction twin map to the same key.
struct FlowKey {
    Endpoint a;
    Endpoint b;

    static FlowKey of(const Endpoint& src, const Endpoint& dst) {
        if (dst < src)
            return {dst, src};
        return {src, dst};
    }

    bool operator==(const FlowKey&) const = default;
};

struct FlowKeyHash {
    size_t operator()(const FlowKey& k) const {
        uint64_t h = 1469598103934665603ull;
        auto mix = [&h](const uint8_t* p, size_t n) {
            for (size_t i = 0; i < n; ++i) {
                h ^= p[i];
                h *= 1099511628211ull;
            }
        };
        auto ep = [&](const Endpoint& e) {
            uint8_t v6 = e.ip.v6;
            mix(&v6, 1);
            mix(e.ip.bytes.data(), e.ip.v6 ? 16 : 4);
            uint8_t pb[2] = {uint8_t(e.port >> 8), uint8_t(e.port)};
            mix(pb, 2);
        };
        ep(k.a);
        ep(k.b);
        return size_t(h);
    }
};

// One packet observed on a flow. Wire length feeds the statistical
// features; payload length feeds SPLT.
struct PacketEvent {
    int64_t ts_sec = 0;
    uint32_t ts_nsec = 0;
    Direction dir = Direction::Outbound;
    uint32_t payload_len = 0;
    uint32_t wire_len = 0;
};

// A contiguous run of reassembled payload. `after_gap` marks runs that
// follow missing bytes (lost segments, dropped reorder buffers).
struct StreamSegment {
    bool after_gap = false;
    ByteVec bytes;
};

struct DirStream {
    bool seq_init = false;
    uint64_t base_seq = 0;     // 64-bit unwrapped seq of stream offset 0
    uint64_t next_seq = 0;     // next expected unwrapped seq
    std::map<uint64_t, ByteVec> pending; // out-of-order segments, keyed by seq
    size_t pending_bytes = 0;

    std::vector<StreamSegment> segments;
    uint64_t released_bytes = 0; // total bytes across segments
    bool gapped = false;
    bool fin_seen = false;
    uint64_t dup_segments = 0;
    uint64_t overflow_drops = 0;

    uint64_t stream_offset() const { return next_seq - base_seq; }
};

struct Flow {
    uint32_t stream_index = 0;
    Endpoint initiator;
    Endpoint responder;
    bool initiator_pinned = false; // set once by SYN/first packet
    int64_t first_sec = 0;
    uint32_t first_nsec = 0;
    int64_t last_sec = 0;
    uint32_t last_nsec = 0;
    bool closed = false; // FIN both ways or RST seen
    bool rst_seen = false;

    std::vector<PacketEvent> events;
    DirStream dir[2]; // indexed by Direction

    Direction direction_of(const Endpoint& src) const {
        return src == initiator ? Direction::Outbound : Direction::Inbound;
    }

    double duration() const {
        return double(last_sec - first_sec) + (double(last_nsec) - double(first_nsec)) * 1e-9;
    }
};

struct FlowTableConfig {
    // Per-direction cap on buffered out-of-order bytes. When exceeded the
    // oldest buffer is dropped and the direction is marked gapped.
    size_t max_reorder_bytes = 8 * 1024 * 1024;
    // Retained reassembled bytes per direction handed to the dissector.
    // 0 means unlimited.
    size_t max_stream_bytes = 0;
};

class FlowTable {
public:
    explicit FlowTable(FlowTableConfig cfg = {}) : cfg_(cfg) {}

    // Routes one decoded packet to its flow, creating/reopening flows and
    // assigning stream indexes in first-seen order. Returns the stream
    // index the packet landed in.
    uint32_t ingest(const Packet& pkt);

    // Drains all reorder buffers (end of capture). Call once before
    // reading flows().
    void finish();

    std::deque<Flow>& flows() { return flows_; }
    const std::deque<Flow>& flows() const { return flows_; }

    uint64_t tcp_packets() const { return tcp_packets_; }

private:
    Flow& lookup(const Packet& pkt);
    void ingest_segment(DirStream& ds, const Packet& pkt);
    void release(DirStream& ds, ByteSpan bytes, bool after_gap);
    void drain_pending(DirStream& ds);

    FlowTableConfig cfg_;
    std::deque<Flow> flows_;
    std::unordered_map<FlowKey, uint32_t, FlowKeyHash> active_;
    uint64_t tcp_packets_ = 0;
};

// Nearest 64-bit representative of a 32-bit sequence number relative to a
// reference point; implements mod-2^32 arithmetic with a 2^31 window.
uint64_t unwrap_seq(uint32_t seq, uint64_t ref);

} // namespace tlsfeat
