// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/flow.hpp"

#include <algorithm>

namespace tlsfeat {

uint64_t unwrap_seq(uint32_t seq, uint64_t ref) {
    uint64_t base = ref & ~0xffffffffull;
    uint64_t cand = base | seq;
    if (cand + (1ull << 31) < ref + 1)
        return cand + (1ull << 32);
    if (ref + (1ull << 31) < cand && cand >= (1ull << 32))
        return cand - (1ull << 32);
    return cand;
}

Flow& FlowTable::lookup(const Packet& pkt) {
    FlowKey key = FlowKey::of(pkt.src, pkt.dst);
    auto it = active_.find(key);
    if (it != active_.end()) {
        Flow& flow = flows_[it->second];
        // A fresh SYN (not SYN+ACK) on a closed key opens a new flow with
        // the next index; anything else still belongs to the old flow.
        if (!(flow.closed && pkt.flags.syn && !pkt.flags.ack))
            return flow;
    }

    Flow& flow = flows_.emplace_back();
    flow.stream_index = uint32_t(flows_.size() - 1);
    if (pkt.flags.syn && pkt.flags.ack) {
        // Capture starts at the SYN-ACK: the peer sent the first SYN.
        flow.initiator = pkt.dst;
        flow.responder = pkt.src;
    } else {
        flow.initiator = pkt.src;
        flow.responder = pkt.dst;
    }
    flow.initiator_pinned = true;
    flow.first_sec = pkt.ts_sec;
    flow.first_nsec = pkt.ts_nsec;
    if (it != active_.end())
        it->second = flow.stream_index;
    else
        active_.emplace(key, flow.stream_index);
    return flow;
}

uint32_t FlowTable::ingest(const Packet& pkt) {
    ++tcp_packets_;
    Flow& flow = lookup(pkt);
    Direction dir = flow.direction_of(pkt.src);

    flow.last_sec = pkt.ts_sec;
    flow.last_nsec = pkt.ts_nsec;
    flow.events.push_back(PacketEvent{pkt.ts_sec, pkt.ts_nsec, dir,
                                      uint32_t(pkt.payload.size()), pkt.wire_len});

    DirStream& ds = flow.dir[size_t(dir)];
    ingest_segment(ds, pkt);

    if (pkt.flags.rst) {
        flow.rst_seen = true;
        flow.closed = true;
    }
    if (pkt.flags.fin)
        ds.fin_seen = true;
    if (flow.dir[0].fin_seen && flow.dir[1].fin_seen)
        flow.closed = true;
    return flow.stream_index;
}

void FlowTable::release(DirStream& ds, ByteSpan bytes, bool after_gap) {
    if (bytes.empty())
        return;
    if (cfg_.max_stream_bytes && ds.released_bytes >= cfg_.max_stream_bytes) {
        ds.released_bytes += bytes.size();
        return;
    }
    size_t take = bytes.size();
    if (cfg_.max_stream_bytes)
        take = std::min(take, cfg_.max_stream_bytes - size_t(ds.released_bytes));
    if (after_gap || ds.segments.empty()) {
        StreamSegment seg;
        seg.after_gap = after_gap;
        seg.bytes.assign(bytes.begin(), bytes.begin() + take);
        ds.segments.push_back(std::move(seg));
    } else {
        ByteVec& tail = ds.segments.back().bytes;
        tail.insert(tail.end(), bytes.begin(), bytes.begin() + take);
    }
    ds.released_bytes += bytes.size();
}

void FlowTable::ingest_segment(DirStream& ds, const Packet& pkt) {
    if (!ds.seq_init) {
        ds.seq_init = true;
        // SYN consumes one sequence number; data starts right after it.
        uint64_t seq = (1ull << 32) | pkt.tcp_seq; // headroom for wraparound below the ISN
        ds.base_seq = pkt.flags.syn ? seq + 1 : seq;
        ds.next_seq = ds.base_seq;
    }

    if (pkt.payload.empty())
        return;

    uint64_t seq = unwrap_seq(pkt.tcp_seq, ds.next_seq);
    if (pkt.flags.syn)
        seq += 1; // data carried on a SYN sits after the ISN
    uint64_t end = seq + pkt.payload.size();

    if (end <= ds.next_seq) {
        // Entirely old bytes: exact or overlapping retransmission.
        ++ds.dup_segments;
        return;
    }

    ByteSpan data = pkt.payload;
    if (seq < ds.next_seq) {
        // Leading bytes were already released; first-arrival wins.
        data = data.subspan(size_t(ds.next_seq - seq));
        seq = ds.next_seq;
    }

    if (seq == ds.next_seq && ds.pending.empty()) {
        // Fast path: in-order segment.
        release(ds, data, false);
        ds.next_seq = end;
        return;
    }

    // Clip the new segment against buffered ones (first arrival wins) and
    // insert the surviving pieces.
    uint64_t cur = seq;
    auto it = ds.pending.upper_bound(cur);
    if (it != ds.pending.begin()) {
        auto prev = std::prev(it);
        uint64_t prev_end = prev->first + prev->second.size();
        if (prev_end > cur) {
            if (prev_end >= end) {
                ++ds.dup_segments;
                return;
            }
            data = data.subspan(size_t(prev_end - cur));
            cur = prev_end;
        }
    }
    while (!data.empty()) {
        it = ds.pending.lower_bound(cur);
        uint64_t piece_end = end;
        if (it != ds.pending.end() && it->first < end)
            piece_end = it->first;
        if (piece_end > cur) {
            size_t n = size_t(piece_end - cur);
            ds.pending.emplace(cur, ByteVec(data.begin(), data.begin() + n));
            ds.pending_bytes += n;
            data = data.subspan(n);
            cur = piece_end;
        }
        if (it == ds.pending.end() || it->first >= end)
            break;
        // Skip the overlap covered by the already-buffered segment.
        uint64_t existing_end = it->first + it->second.size();
        uint64_t skip_to = std::min(existing_end, end);
        size_t n = size_t(skip_to - cur);
        data = data.subspan(n);
        cur = skip_to;
    }

    // Release any run that just became contiguous.
    while (!ds.pending.empty() && ds.pending.begin()->first == ds.next_seq) {
        auto first = ds.pending.begin();
        release(ds, first->second, false);
        ds.next_seq += first->second.size();
        ds.pending_bytes -= first->second.size();
        ds.pending.erase(first);
    }

    // Reorder buffer cap: drop the oldest buffer and mark the gap.
    while (ds.pending_bytes > cfg_.max_reorder_bytes && !ds.pending.empty()) {
        auto first = ds.pending.begin();
        ds.pending_bytes -= first->second.size();
        ds.pending.erase(first);
        ds.gapped = true;
        ++ds.overflow_drops;
    }
}

void FlowTable::drain_pending(DirStream& ds) {
    // End of capture: hand leftover out-of-order runs to the dissector,
    // marking every discontinuity.
    uint64_t expected = ds.next_seq;
    while (!ds.pending.empty()) {
        auto first = ds.pending.begin();
        bool gap = first->first != expected;
        if (gap)
            ds.gapped = true;
        release(ds, first->second, gap);
        expected = first->first + first->second.size();
        ds.pending_bytes -= first->second.size();
        ds.pending.erase(first);
    }
    ds.next_seq = std::max(ds.next_seq, expected);
}

void FlowTable::finish() {
    for (Flow& flow : flows_) {
        drain_pending(flow.dir[0]);
        drain_pending(flow.dir[1]);
    }
}

} // namespace tlsfeat
