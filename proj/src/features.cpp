// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/features.hpp"

#include <cmath>

namespace tlsfeat {

namespace {

double ts_delta(const PacketEvent& later, const PacketEvent& earlier) {
    return double(later.ts_sec - earlier.ts_sec) +
           (double(later.ts_nsec) - double(earlier.ts_nsec)) * 1e-9;
}

StatGroup group_of(const std::vector<double>& xs) {
    StatGroup g;
    if (xs.empty())
        return g;
    double sum = 0, sum_sq = 0;
    g.min = xs[0];
    g.max = xs[0];
    for (double x : xs) {
        sum += x;
        sum_sq += x * x;
        if (x < g.min)
            g.min = x;
        if (x > g.max)
            g.max = x;
    }
    g.sum = sum;
    g.mean = sum / double(xs.size());
    double var = sum_sq / double(xs.size()) - g.mean * g.mean;
    g.std_dev = var > 0 ? std::sqrt(var) : 0; // population std
    return g;
}

DirStats stats_of(const std::vector<const PacketEvent*>& events) {
    DirStats s;
    s.pkt_count = events.size();
    std::vector<double> lens;
    std::vector<double> iats;
    lens.reserve(events.size());
    for (size_t i = 0; i < events.size(); ++i) {
        lens.push_back(double(events[i]->wire_len));
        if (i > 0)
            iats.push_back(ts_delta(*events[i], *events[i - 1]));
    }
    s.pkt_len = group_of(lens);
    s.iat = group_of(iats);
    return s;
}

} // namespace

StatFeatures compute_stats(const Flow& flow) {
    std::vector<const PacketEvent*> out, in, both;
    both.reserve(flow.events.size());
    for (const PacketEvent& ev : flow.events) {
        both.push_back(&ev);
        (ev.dir == Direction::Outbound ? out : in).push_back(&ev);
    }
    StatFeatures f;
    f.out = stats_of(out);
    f.in = stats_of(in);
    f.bidir = stats_of(both);
    return f;
}

Splt compute_splt(const Flow& flow, size_t cap) {
    Splt splt;
    const PacketEvent* prev = nullptr;
    for (const PacketEvent& ev : flow.events) {
        if (ev.payload_len == 0)
            continue;
        if (splt.lengths.size() >= cap) {
            splt.truncated = true;
            break;
        }
        int32_t len = int32_t(ev.payload_len);
        splt.lengths.push_back(ev.dir == Direction::Outbound ? len : -len);
        splt.iats.push_back(prev ? ts_delta(ev, *prev) : 0.0);
        prev = &ev;
    }
    return splt;
}

ByteDist compute_byte_dist(const Flow& flow) {
    ByteDist bd;
    for (int d = 0; d < 2; ++d)
        for (const StreamSegment& seg : flow.dir[d].segments)
            for (uint8_t b : seg.bytes)
                ++bd.counts[b];

    uint64_t total = 0;
    for (uint64_t c : bd.counts)
        total += c;
    if (total == 0)
        return bd;

    double mean = 0, mean_sq = 0, entropy = 0;
    for (int b = 0; b < 256; ++b) {
        if (bd.counts[b] == 0)
            continue;
        double p = double(bd.counts[b]) / double(total);
        mean += b * p;
        mean_sq += double(b) * double(b) * p;
        entropy -= p * std::log2(p);
    }
    bd.mean = mean;
    double var = mean_sq - mean * mean;
    bd.std_dev = var > 0 ? std::sqrt(var) : 0;
    bd.entropy = entropy > 0 ? entropy : 0;
    return bd;
}

MetaFeatures compute_meta(const Flow& flow, const std::string& pcap_name) {
    MetaFeatures m;
    m.stream_index = flow.stream_index;
    m.src_ip = flow.initiator.ip.str();
    m.src_port = flow.initiator.port;
    m.dst_ip = flow.responder.ip.str();
    m.dst_port = flow.responder.port;
    m.start_time = double(flow.first_sec) + double(flow.first_nsec) * 1e-9;
    m.duration = flow.duration();
    m.pcap_name = pcap_name;
    return m;
}

} // namespace tlsfeat
