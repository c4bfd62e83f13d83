// SPDX-License-Identifier: Apache-2.0
//
// features.hpp - meta, statistical, SPLT and byte-distribution features
// computed over one closed flow

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tlsfeat/flow.hpp"

namespace tlsfeat {

struct MetaFeatures {
    uint32_t stream_index = 0;
    std::string src_ip; // initiator side
    uint16_t src_port = 0;
    std::string dst_ip;
    uint16_t dst_port = 0;
    double start_time = 0; // epoch seconds
    double duration = 0;
    std::string pcap_name;
};

// sum/max/min/mean/std of one quantity; degenerate groups stay all-zero.
struct StatGroup {
    double sum = 0, max = 0, min = 0, mean = 0, std_dev = 0;
};

struct DirStats {
    uint64_t pkt_count = 0;
    StatGroup pkt_len; // wire lengths, every TCP packet of the flow
    StatGroup iat;     // inter-arrival seconds within this packet sequence
};

// 33 values: {out, in, bidir} x (count + 5 length stats + 5 IAT stats).
struct StatFeatures {
    DirStats out;
    DirStats in;
    DirStats bidir;
};

struct Splt {
    std::vector<int32_t> lengths; // payload bytes, signed: + outbound, - inbound
    std::vector<double> iats;     // seconds since previous entry; first is 0
    bool truncated = false;
};

struct ByteDist {
    std::array<uint64_t, 256> counts{};
    double mean = 0;    // of byte values, 0..255
    double std_dev = 0; // population
    double entropy = 0; // bits, 0..8
};

StatFeatures compute_stats(const Flow& flow);
Splt compute_splt(const Flow& flow, size_t cap);
ByteDist compute_byte_dist(const Flow& flow);
MetaFeatures compute_meta(const Flow& flow, const std::string& pcap_name);

} // namespace tlsfeat
