// SPDX-License-Identifier: Apache-2.0
//
// report.hpp - per-stream feature report and per-pcap summary, plus their
// stable JSON encodings (the feature dictionary in docs/FEATURES.md names
// every field)

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tlsfeat/features.hpp"
#include "tlsfeat/tls.hpp"
#include "tlsfeat/x509.hpp"

namespace tlsfeat {

struct StreamFeatureReport {
    MetaFeatures meta;
    StatFeatures stats;
    Splt splt;
    ByteDist byte_dist;
    TlsFlowInfo tls;
    std::vector<CertificateInfo> certificates;
};

nlohmann::ordered_json report_json(const StreamFeatureReport& report);
nlohmann::ordered_json certificate_json(const CertificateInfo& cert);

// One line of JSON (no trailing newline); pretty=true indents instead.
std::string emit_stream_json(const StreamFeatureReport& report, bool pretty = false);

struct ErrorCounters {
    uint64_t malformed_packets = 0;
    uint64_t truncated_messages = 0;
    uint64_t desyncs = 0;
    uint64_t gapped_directions = 0;
    uint64_t reorder_overflows = 0;

    void operator+=(const ErrorCounters& o) {
        malformed_packets += o.malformed_packets;
        truncated_messages += o.truncated_messages;
        desyncs += o.desyncs;
        gapped_directions += o.gapped_directions;
        reorder_overflows += o.reorder_overflows;
    }
};

struct PcapSummary {
    std::string pcap_name;
    uint64_t file_bytes = 0;
    double analysis_seconds = 0;
    uint64_t records = 0;
    uint64_t tcp_packets = 0;
    uint64_t not_tcp_packets = 0;
    uint64_t tcp_flow_count = 0;
    uint64_t tls_stream_count = 0;
    uint64_t certificates_seen = 0;
    uint64_t certificates_parsed = 0;
    uint64_t unique_certificates = 0; // distinct digests among parsed
    ErrorCounters errors;
    bool truncated_capture = false; // pcap record structure cut short
};

nlohmann::ordered_json summary_json(const PcapSummary& s);

// Round to at most 9 fractional digits; values too large for exact
// nanosecond arithmetic in a double pass through unchanged.
double round9(double x);

} // namespace tlsfeat
