// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cert_fixtures.hpp"
#include "corpus.hpp"
#include "tlsfeat/pipeline.hpp"

using namespace tlsfeat;
using namespace tlsfeat::testfix;
using nlohmann::json;

namespace {

std::string write_temp(const ByteVec& bytes, const char* tag) {
    static int counter = 0;
    auto path = std::filesystem::temp_directory_path() /
                ("tlsfeat_pipe_" + std::string(tag) + "_" + std::to_string(counter++) + ".pcap");
    std::ofstream f(path, std::ios::binary);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    return path.string();
}

} // namespace

TEST_CASE("pipeline end to end on a mixed capture") {
    ScenarioOptions opts;
    opts.tls_sessions = 3;
    opts.plain_sessions = 2;
    opts.noise_frames = 4;
    std::string path = write_temp(build_mixed_pcap(opts), "mixed");

    PipelineConfig cfg;
    std::ostringstream features;
    PcapSummary s = run_file(path, cfg, features);

    CHECK(s.tls_stream_count == 3);
    CHECK(s.tcp_flow_count == 5);
    // Two sessions carry a 2-cert chain, one a single cert.
    CHECK(s.certificates_seen == 5);
    CHECK(s.certificates_parsed == 5);
    CHECK(s.unique_certificates == 2);
    CHECK(s.errors.malformed_packets == 0);
    CHECK(s.not_tcp_packets == 4);

    // One line per TLS stream, strictly increasing stream index.
    std::istringstream lines(features.str());
    std::string line;
    int count = 0;
    int prev = -1;
    while (std::getline(lines, line)) {
        json j = json::parse(line);
        int idx = j["meta"]["stream_index"];
        CHECK(idx > prev);
        prev = idx;
        ++count;
    }
    CHECK(count == 3);
}

TEST_CASE("serial and parallel kernels produce identical output") {
    ScenarioOptions opts;
    opts.tls_sessions = 6;
    opts.plain_sessions = 3;
    opts.seed = 99;
    std::string path = write_temp(build_mixed_pcap(opts), "kern");

    PipelineConfig serial;
    serial.parallel = false;
    PipelineConfig parallel;
    parallel.parallel = true;
    parallel.threads = 4;

    std::ostringstream a, b;
    PcapSummary sa = run_file(path, serial, a);
    PcapSummary sb = run_file(path, parallel, b);
    CHECK(a.str() == b.str());
    CHECK(sa.tls_stream_count == sb.tls_stream_count);
    CHECK(sa.certificates_seen == sb.certificates_seen);
    CHECK(sa.unique_certificates == sb.unique_certificates);
}

TEST_CASE("determinism: two runs give byte-identical features") {
    ScenarioOptions opts;
    opts.tls_sessions = 2;
    std::string path = write_temp(build_mixed_pcap(opts), "det");
    PipelineConfig cfg;
    std::ostringstream a, b;
    run_file(path, cfg, a);
    run_file(path, cfg, b);
    CHECK(a.str() == b.str());
    CHECK(!a.str().empty());
}

TEST_CASE("nanosecond and microsecond magics give identical features") {
    ScenarioOptions us;
    us.tls_sessions = 1;
    us.plain_sessions = 0;
    us.noise_frames = 0;
    ScenarioOptions ns = us;
    ns.nanosecond_magic = true;
    auto dir_us = std::filesystem::temp_directory_path() / "tlsfeat_us";
    auto dir_ns = std::filesystem::temp_directory_path() / "tlsfeat_ns";
    std::filesystem::create_directories(dir_us);
    std::filesystem::create_directories(dir_ns);
    auto dump = [](const std::filesystem::path& p, const ByteVec& b) {
        std::ofstream f(p, std::ios::binary);
        f.write(reinterpret_cast<const char*>(b.data()), std::streamsize(b.size()));
    };
    std::string p_us = (dir_us / "same.pcap").string();
    std::string p_ns = (dir_ns / "same.pcap").string();
    dump(p_us, build_mixed_pcap(us));
    dump(p_ns, build_mixed_pcap(ns));
    PipelineConfig cfg;
    std::ostringstream a, b;
    run_file(p_us, cfg, a);
    run_file(p_ns, cfg, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("zero TLS flows yields an empty features file") {
    ScenarioOptions opts;
    opts.tls_sessions = 0;
    opts.plain_sessions = 2;
    opts.noise_frames = 2;
    std::string path = write_temp(build_mixed_pcap(opts), "notls");
    PipelineConfig cfg;
    std::ostringstream features;
    PcapSummary s = run_file(path, cfg, features);
    CHECK(s.tls_stream_count == 0);
    CHECK(features.str().empty());
    CHECK(s.tcp_flow_count == 2);
}

TEST_CASE("summary arithmetic invariants") {
    ScenarioOptions opts;
    opts.tls_sessions = 4;
    opts.seed = 3;
    std::string path = write_temp(build_mixed_pcap(opts), "arith");
    PipelineConfig cfg;
    std::ostringstream features;
    PcapSummary s = run_file(path, cfg, features);
    CHECK(s.unique_certificates <= s.certificates_parsed);
    CHECK(s.certificates_parsed <= s.certificates_seen);
    size_t lines = 0;
    std::istringstream ls(features.str());
    std::string line;
    while (std::getline(ls, line))
        ++lines;
    CHECK(lines == s.tls_stream_count);
    CHECK(s.records == s.tcp_packets + s.not_tcp_packets + s.errors.malformed_packets);
}

TEST_CASE("golden schema snapshot stays frozen") {
    // Freezes the field names of the JSON contract. Adding fields is a
    // deliberate change: update the list below and docs/FEATURES.md.
    ScenarioOptions opts;
    opts.tls_sessions = 1;
    opts.plain_sessions = 0;
    opts.noise_frames = 0;
    std::string path = write_temp(build_mixed_pcap(opts), "golden");
    PipelineConfig cfg;
    std::ostringstream features;
    run_file(path, cfg, features);
    std::string line = features.str();
    line = line.substr(0, line.find('\n'));
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(line);

    auto keys = [](const nlohmann::ordered_json& obj) {
        std::vector<std::string> out;
        for (auto it = obj.begin(); it != obj.end(); ++it)
            out.push_back(it.key());
        return out;
    };
    CHECK(keys(j) == std::vector<std::string>{"meta", "stats", "splt", "byte_dist", "tls",
                                              "certificates"});
    CHECK(keys(j["meta"]) ==
          std::vector<std::string>{"pcap", "stream_index", "src_ip", "src_port", "dst_ip",
                                   "dst_port", "start_time", "duration"});
    CHECK(keys(j["stats"]) == std::vector<std::string>{"out", "in", "bidir"});
    CHECK(keys(j["stats"]["out"]) ==
          std::vector<std::string>{"pkt_count", "pkt_len_sum", "pkt_len_max", "pkt_len_min",
                                   "pkt_len_mean", "pkt_len_std", "iat_sum", "iat_max",
                                   "iat_min", "iat_mean", "iat_std"});
    CHECK(keys(j["splt"]) == std::vector<std::string>{"lengths", "iats", "truncated"});
    CHECK(keys(j["byte_dist"]) == std::vector<std::string>{"counts", "mean", "std", "entropy"});
    CHECK(j["tls"].contains("handshake_types"));
    CHECK(j["tls"].contains("flags"));
    REQUIRE(!j["certificates"].empty());
    CHECK(keys(j["certificates"][0]) ==
          std::vector<std::string>{"parsed", "version", "serial", "not_before", "not_after",
                                   "issuer", "subject", "public_key_type", "public_key_bits",
                                   "signature_algorithm", "extension_count", "der_sha256",
                                   "der_length"});
}

TEST_CASE("tls 1.3 stream without certificates sets certs_encrypted") {
    TlsSessionSpec spec;
    spec.client.supported_versions = 0x0304;
    spec.server.supported_version = 0x0304;
    spec.send_certificate = false; // encrypted in real 1.3 exchanges
    SessionEndpoints eps = default_endpoints();
    VariantOptions v;
    std::string path = write_temp(render_session_pcap(spec, eps, v), "tls13");
    PipelineConfig cfg;
    std::ostringstream features;
    PcapSummary s = run_file(path, cfg, features);
    CHECK(s.tls_stream_count == 1);
    CHECK(s.certificates_seen == 0);
    json j = json::parse(features.str());
    CHECK(j["tls"]["version"] == "TLS1.3");
    CHECK(j["tls"]["version_code"] == 0x0304);
    bool flagged = false;
    for (const auto& f : j["tls"]["flags"])
        if (f == "certs_encrypted")
            flagged = true;
    CHECK(flagged);
    CHECK(j["certificates"].empty());
}

TEST_CASE("mid-stream application-data-only flow still counts as TLS") {
    // Capture begins after the handshake: only app-data records visible.
    ByteVec client = tls_record(23, 0x0303, random_bytes(400, 1));
    ByteVec server = tls_record(23, 0x0303, random_bytes(1200, 2));
    ByteVec more = tls_record(23, 0x0303, random_bytes(800, 3));
    server.insert(server.end(), more.begin(), more.end());
    PacketizeOptions popts;
    popts.with_handshake = false; // no SYN: mid-stream capture
    std::vector<SynthPacket> packets = packetize(client, server, popts);
    PcapWriter w;
    SessionEndpoints eps = default_endpoints();
    render_packets(w, eps, packets, 1700000000);
    std::string path = write_temp(w.bytes(), "midstream");
    PipelineConfig cfg;
    std::ostringstream features;
    PcapSummary s = run_file(path, cfg, features);
    CHECK(s.tls_stream_count == 1);
    json j = json::parse(features.str());
    CHECK(!j["tls"].contains("client_hello"));
    CHECK(j["tls"]["handshake_types"].empty());
}
