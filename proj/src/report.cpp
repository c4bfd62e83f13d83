// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/report.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace tlsfeat {

using nlohmann::ordered_json;

double round9(double x) {
    if (!std::isfinite(x) || std::fabs(x) >= 4.0e6)
        return x;
    return std::nearbyint(x * 1e9) / 1e9;
}

namespace {

ordered_json stat_group_json(const DirStats& d, bool seconds) {
    ordered_json j;
    j["pkt_count"] = d.pkt_count;
    j["pkt_len_sum"] = d.pkt_len.sum;
    j["pkt_len_max"] = d.pkt_len.max;
    j["pkt_len_min"] = d.pkt_len.min;
    j["pkt_len_mean"] = round9(d.pkt_len.mean);
    j["pkt_len_std"] = round9(d.pkt_len.std_dev);
    j["iat_sum"] = seconds ? round9(d.iat.sum) : d.iat.sum;
    j["iat_max"] = round9(d.iat.max);
    j["iat_min"] = round9(d.iat.min);
    j["iat_mean"] = round9(d.iat.mean);
    j["iat_std"] = round9(d.iat.std_dev);
    return j;
}

ordered_json suite_json(uint16_t code) {
    ordered_json j;
    j["code"] = code;
    if (const char* name = cipher_suite_name(code))
        j["name"] = name;
    return j;
}

ordered_json extensions_json(const std::vector<std::pair<uint16_t, ByteVec>>& exts) {
    ordered_json arr = ordered_json::array();
    for (const auto& [type, data] : exts) {
        ordered_json e;
        e["type"] = type;
        e["length"] = data.size();
        arr.push_back(std::move(e));
    }
    return arr;
}

ordered_json client_hello_json(const ClientHelloInfo& ch) {
    ordered_json j;
    j["version_code"] = ch.client_version;
    if (const char* name = tls_version_name(ch.client_version))
        j["version"] = name;
    ordered_json suites = ordered_json::array();
    for (uint16_t code : ch.cipher_suites)
        suites.push_back(suite_json(code));
    j["cipher_suites"] = std::move(suites);
    j["compression_methods"] = ch.compression_methods;
    j["extensions"] = extensions_json(ch.extensions);
    if (ch.sni)
        j["sni"] = *ch.sni;
    if (ch.parse_error)
        j["parse_error"] = true;
    return j;
}

ordered_json server_hello_json(const ServerHelloInfo& sh) {
    ordered_json j;
    j["version_code"] = sh.server_version;
    if (const char* name = tls_version_name(sh.server_version))
        j["version"] = name;
    j["cipher_suite"] = suite_json(sh.cipher_suite);
    if (sh.supported_version)
        j["supported_version"] = *sh.supported_version;
    j["extensions"] = extensions_json(sh.extensions);
    if (sh.parse_error)
        j["parse_error"] = true;
    return j;
}

ordered_json tls_json(const TlsFlowInfo& tls) {
    ordered_json j;
    if (tls.negotiated_version != 0) {
        j["version_code"] = tls.negotiated_version;
        if (const char* name = tls_version_name(tls.negotiated_version))
            j["version"] = name;
    }
    if (tls.client_hello)
        j["client_hello"] = client_hello_json(*tls.client_hello);
    if (tls.server_hello)
        j["server_hello"] = server_hello_json(*tls.server_hello);
    ordered_json counts = ordered_json::object();
    for (const auto& [type, count] : tls.handshake_type_counts)
        counts[std::to_string(type)] = count;
    j["handshake_types"] = std::move(counts);
    j["complete_records"] = tls.complete_records;

    ordered_json flags = ordered_json::array();
    if (tls.desync)
        flags.push_back("desync");
    if (tls.gapped)
        flags.push_back("gapped");
    if (tls.truncated_messages > 0)
        flags.push_back("truncated");
    if (tls.certs_encrypted)
        flags.push_back("certs_encrypted");
    j["flags"] = std::move(flags);
    return j;
}

} // namespace

ordered_json certificate_json(const CertificateInfo& cert) {
    ordered_json j;
    j["parsed"] = cert.parsed;
    j["version"] = cert.version;
    j["serial"] = cert.serial_hex;
    j["not_before"] = cert.not_before.iso8601();
    j["not_after"] = cert.not_after.iso8601();
    auto name_json = [](const std::vector<RdnEntry>& name) {
        ordered_json arr = ordered_json::array();
        for (const RdnEntry& e : name) {
            ordered_json o;
            o["oid"] = e.oid;
            o["value"] = e.value;
            arr.push_back(std::move(o));
        }
        return arr;
    };
    j["issuer"] = name_json(cert.issuer);
    j["subject"] = name_json(cert.subject);
    j["public_key_type"] = cert.public_key_type;
    j["public_key_bits"] = cert.public_key_bits;
    j["signature_algorithm"] = cert.signature_algorithm;
    j["extension_count"] = cert.extension_count;
    j["der_sha256"] = cert.der_digest;
    j["der_length"] = cert.der_length;
    if (!cert.warnings.empty())
        j["warnings"] = cert.warnings;
    return j;
}

ordered_json report_json(const StreamFeatureReport& report) {
    ordered_json j;

    ordered_json meta;
    meta["pcap"] = report.meta.pcap_name;
    meta["stream_index"] = report.meta.stream_index;
    meta["src_ip"] = report.meta.src_ip;
    meta["src_port"] = report.meta.src_port;
    meta["dst_ip"] = report.meta.dst_ip;
    meta["dst_port"] = report.meta.dst_port;
    meta["start_time"] = report.meta.start_time;
    meta["duration"] = round9(report.meta.duration);
    j["meta"] = std::move(meta);

    ordered_json stats;
    stats["out"] = stat_group_json(report.stats.out, true);
    stats["in"] = stat_group_json(report.stats.in, true);
    stats["bidir"] = stat_group_json(report.stats.bidir, true);
    j["stats"] = std::move(stats);

    ordered_json splt;
    splt["lengths"] = report.splt.lengths;
    ordered_json iats = ordered_json::array();
    for (double v : report.splt.iats)
        iats.push_back(round9(v));
    splt["iats"] = std::move(iats);
    splt["truncated"] = report.splt.truncated;
    j["splt"] = std::move(splt);

    ordered_json bd;
    bd["counts"] = report.byte_dist.counts;
    bd["mean"] = round9(report.byte_dist.mean);
    bd["std"] = round9(report.byte_dist.std_dev);
    bd["entropy"] = round9(report.byte_dist.entropy);
    j["byte_dist"] = std::move(bd);

    j["tls"] = tls_json(report.tls);

    ordered_json certs = ordered_json::array();
    for (const CertificateInfo& cert : report.certificates)
        certs.push_back(certificate_json(cert));
    j["certificates"] = std::move(certs);

    return j;
}

std::string emit_stream_json(const StreamFeatureReport& report, bool pretty) {
    return report_json(report).dump(pretty ? 2 : -1);
}

ordered_json summary_json(const PcapSummary& s) {
    ordered_json j;
    j["pcap"] = s.pcap_name;
    j["file_bytes"] = s.file_bytes;
    j["analysis_seconds"] = round9(s.analysis_seconds);
    j["records"] = s.records;
    j["tcp_packets"] = s.tcp_packets;
    j["not_tcp_packets"] = s.not_tcp_packets;
    j["tcp_flows"] = s.tcp_flow_count;
    j["tls_streams"] = s.tls_stream_count;
    j["certificates_seen"] = s.certificates_seen;
    j["certificates_parsed"] = s.certificates_parsed;
    j["unique_certificates"] = s.unique_certificates;
    ordered_json errors;
    errors["malformed_packets"] = s.errors.malformed_packets;
    errors["truncated_messages"] = s.errors.truncated_messages;
    errors["desyncs"] = s.errors.desyncs;
    errors["gapped_directions"] = s.errors.gapped_directions;
    errors["reorder_overflows"] = s.errors.reorder_overflows;
    j["errors"] = std::move(errors);
    if (s.truncated_capture)
        j["truncated_capture"] = true;
    return j;
}

} // namespace tlsfeat
