// SPDX-License-Identifier: Apache-2.0
//
// pipeline.hpp - per-file extraction pipeline: sequential packet ingest,
// per-flow analysis kernels (serial reference and OpenMP), ordered output

#pragma once

#include <deque>
#include <iosfwd>
#include <string>
#include <unordered_set>
#include <vector>

#include "tlsfeat/flow.hpp"
#include "tlsfeat/report.hpp"

namespace tlsfeat {

struct PipelineConfig {
    size_t splt_cap = 100;
    size_t max_reorder_bytes = 8 * 1024 * 1024;
    size_t max_stream_bytes = 0; // 0 = keep whole streams
    bool pretty = false;
    bool parallel = true; // OpenMP kernel; false = serial reference
    int threads = 0;      // 0 = runtime default / TLSFEAT_THREADS
};

// Result of analyzing one closed flow, ready for the ordered writer.
struct FlowOutput {
    uint32_t stream_index = 0;
    bool is_tls = false;
    std::string json_line;
    uint32_t certs_seen = 0;
    uint32_t certs_parsed = 0;
    std::vector<std::string> parsed_digests;
    uint32_t truncated_messages = 0;
    bool desync = false;
    uint32_t gapped_directions = 0;
};

// Analysis of one closed flow: dissect, compute features, serialize.
FlowOutput analyze_flow(const Flow& flow, const std::string& pcap_name,
                        const PipelineConfig& cfg);

// The two kernels. Both produce identical output for identical input; the
// serial one is the reference the parallel one is tested against.
std::vector<FlowOutput> analyze_flows_serial(const std::deque<Flow>& flows,
                                             const std::string& pcap_name,
                                             const PipelineConfig& cfg);
std::vector<FlowOutput> analyze_flows_parallel(const std::deque<Flow>& flows,
                                               const std::string& pcap_name,
                                               const PipelineConfig& cfg);

// Full pipeline over one pcap. Feature lines go to `features_out` in
// stream-index order. Throws PcapError for unusable files. When
// `global_digests` is given, parsed-certificate digests are also merged
// into it so callers can dedup across a whole batch.
PcapSummary run_file(const std::string& path, const PipelineConfig& cfg,
                     std::ostream& features_out,
                     std::unordered_set<std::string>* global_digests = nullptr);

// Number of worker threads the parallel kernel will use.
int effective_threads(const PipelineConfig& cfg);

} // namespace tlsfeat
