// SPDX-License-Identifier: Apache-2.0
//
// corpus.hpp - whole-pcap scenario builders shared by tests, the
// acceptance suite and the benchmark

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "session_builder.hpp"

namespace tlsfeat::testfix {

struct ScenarioOptions {
    size_t tls_sessions = 3;
    size_t plain_sessions = 2;     // HTTP-ish TCP flows
    size_t noise_frames = 4;       // ARP/UDP
    uint32_t seed = 7;
    bool nanosecond_magic = false;
};

// A deterministic mixed-traffic capture; every TLS session uses frozen
// fixture certificates so downstream counts are predictable.
ByteVec build_mixed_pcap(const ScenarioOptions& opts);

// Large benchmark capture of roughly `target_bytes` with a TLS/plain mix.
// Returns the bytes; the caller writes them to disk.
ByteVec build_benchmark_pcap(size_t target_bytes, uint32_t seed);

// One scripted TLS session rendered into its own pcap with custom
// segmentation/reordering; used by the invariance tests.
struct VariantOptions {
    size_t mss = 1400;
    bool reorder = false;
    bool duplicate = false;
    uint32_t seed = 1;
};

ByteVec render_session_pcap(const TlsSessionSpec& spec, const SessionEndpoints& eps,
                            const VariantOptions& vopts);

SessionEndpoints default_endpoints(uint16_t client_port = 40000, uint16_t server_port = 443);

} // namespace tlsfeat::testfix
