// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "tlsfeat/decode.hpp"
#include "tlsfeat/pcap.hpp"

namespace tlsfeat {

FlowOutput analyze_flow(const Flow& flow, const std::string& pcap_name,
                        const PipelineConfig& cfg) {
    FlowOutput out;
    out.stream_index = flow.stream_index;
    out.gapped_directions = (flow.dir[0].gapped ? 1 : 0) + (flow.dir[1].gapped ? 1 : 0);

    TlsFlowInfo tls = dissect_flow(flow);
    out.is_tls = tls.is_tls;
    out.truncated_messages = tls.truncated_messages;
    out.desync = tls.desync;
    if (!tls.is_tls)
        return out;

    StreamFeatureReport report;
    report.meta = compute_meta(flow, pcap_name);
    report.stats = compute_stats(flow);
    report.splt = compute_splt(flow, cfg.splt_cap);
    report.byte_dist = compute_byte_dist(flow);

    for (const ByteVec& der : tls.certificates) {
        CertificateInfo cert = parse_certificate(ByteSpan(der));
        ++out.certs_seen;
        if (cert.parsed) {
            ++out.certs_parsed;
            out.parsed_digests.push_back(cert.der_digest);
        }
        report.certificates.push_back(std::move(cert));
    }
    report.tls = std::move(tls);

    out.json_line = emit_stream_json(report, cfg.pretty);
    return out;
}

std::vector<FlowOutput> analyze_flows_serial(const std::deque<Flow>& flows,
                                             const std::string& pcap_name,
                                             const PipelineConfig& cfg) {
    std::vector<FlowOutput> out(flows.size());
    for (size_t i = 0; i < flows.size(); ++i)
        out[i] = analyze_flow(flows[i], pcap_name, cfg);
    return out;
}

int effective_threads(const PipelineConfig& cfg) {
#ifdef _OPENMP
    if (cfg.threads > 0)
        return cfg.threads;
    if (const char* env = std::getenv("TLSFEAT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    return omp_get_max_threads();
#else
    (void)cfg;
    return 1;
#endif
}

std::vector<FlowOutput> analyze_flows_parallel(const std::deque<Flow>& flows,
                                               const std::string& pcap_name,
                                               const PipelineConfig& cfg) {
    std::vector<FlowOutput> out(flows.size());
    const int threads = effective_threads(cfg);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#endif
    for (long i = 0; i < long(flows.size()); ++i)
        out[size_t(i)] = analyze_flow(flows[size_t(i)], pcap_name, cfg);
    (void)threads;
    return out;
}

PcapSummary run_file(const std::string& path, const PipelineConfig& cfg,
                     std::ostream& features_out,
                     std::unordered_set<std::string>* global_digests) {
    auto t0 = std::chrono::steady_clock::now();

    PcapSummary summary;
    summary.pcap_name = std::filesystem::path(path).filename().string();
    std::error_code ec;
    summary.file_bytes = std::filesystem::file_size(path, ec);
    if (ec)
        summary.file_bytes = 0;

    PcapReader reader(path);
    FlowTableConfig ft_cfg;
    ft_cfg.max_reorder_bytes = cfg.max_reorder_bytes;
    ft_cfg.max_stream_bytes = cfg.max_stream_bytes;
    FlowTable table(ft_cfg);

    uint64_t ordinal = 0;
    while (auto rec = reader.next()) {
        ++summary.records;
        DecodeResult result = decode_packet(*rec, reader.header().link_type);
        if (auto* pkt = std::get_if<Packet>(&result)) {
            pkt->ordinal = ordinal++;
            table.ingest(*pkt);
        } else if (std::holds_alternative<Malformed>(result)) {
            ++summary.errors.malformed_packets;
        } else {
            ++summary.not_tcp_packets;
        }
    }
    summary.truncated_capture = reader.truncation().has_value();
    table.finish();

    summary.tcp_packets = table.tcp_packets();
    summary.tcp_flow_count = table.flows().size();

    std::vector<FlowOutput> outputs =
        cfg.parallel ? analyze_flows_parallel(table.flows(), summary.pcap_name, cfg)
                     : analyze_flows_serial(table.flows(), summary.pcap_name, cfg);

    std::unordered_set<std::string> digests;
    for (FlowOutput& fo : outputs) {
        if (fo.is_tls) {
            ++summary.tls_stream_count;
            features_out << fo.json_line << '\n';
        }
        summary.certificates_seen += fo.certs_seen;
        summary.certificates_parsed += fo.certs_parsed;
        for (std::string& d : fo.parsed_digests) {
            if (global_digests)
                global_digests->insert(d);
            digests.insert(std::move(d));
        }
        summary.errors.truncated_messages += fo.truncated_messages;
        summary.errors.desyncs += fo.desync ? 1 : 0;
        summary.errors.gapped_directions += fo.gapped_directions;
    }
    for (const Flow& flow : table.flows())
        summary.errors.reorder_overflows +=
            flow.dir[0].overflow_drops + flow.dir[1].overflow_drops;
    summary.unique_certificates = digests.size();

    summary.analysis_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

} // namespace tlsfeat
