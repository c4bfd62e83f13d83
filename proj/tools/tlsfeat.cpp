// SPDX-License-Identifier: Apache-2.0
//
// tlsfeat - offline TLS traffic feature extractor CLI

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tlsfeat/pipeline.hpp"
#include "tlsfeat/x509.hpp"

namespace fs = std::filesystem;
using namespace tlsfeat;

namespace {

std::vector<std::string> expand_inputs(const std::vector<std::string>& paths,
                                       std::vector<std::string>& errors) {
    std::vector<std::string> files;
    for (const std::string& p : paths) {
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(p, ec)) {
                if (!entry.is_regular_file())
                    continue;
                std::string ext = entry.path().extension().string();
                if (ext == ".pcap" || ext == ".cap")
                    found.push_back(entry.path().string());
            }
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::exists(p, ec)) {
            files.push_back(p);
        } else {
            errors.push_back(p + ": no such file or directory");
        }
    }
    return files;
}

// <out>/<stem>.features.jsonl with numeric suffixes on stem collisions.
std::string output_stem(const std::string& input, const fs::path& out_dir,
                        std::set<std::string>& used) {
    std::string stem = fs::path(input).stem().string();
    std::string candidate = stem;
    int n = 2;
    while (!used.insert(candidate).second)
        candidate = stem + "_" + std::to_string(n++);
    return (out_dir / candidate).string();
}

ByteVec read_cert_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error(path + ": cannot open");
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    // Base64-armored (PEM) input: strip the armor and decode.
    if (data.find("-----BEGIN") != std::string::npos) {
        std::string b64;
        std::istringstream lines(data);
        std::string line;
        bool in_block = false;
        while (std::getline(lines, line)) {
            if (line.rfind("-----BEGIN", 0) == 0) {
                in_block = true;
                continue;
            }
            if (line.rfind("-----END", 0) == 0)
                break;
            if (in_block)
                b64 += line;
        }
        auto val = [](char c) -> int {
            if (c >= 'A' && c <= 'Z') return c - 'A';
            if (c >= 'a' && c <= 'z') return c - 'a' + 26;
            if (c >= '0' && c <= '9') return c - '0' + 52;
            if (c == '+') return 62;
            if (c == '/') return 63;
            return -1;
        };
        ByteVec out;
        int acc = 0, bits = 0;
        for (char c : b64) {
            int v = val(c);
            if (v < 0)
                continue;
            acc = acc << 6 | v;
            bits += 6;
            if (bits >= 8) {
                bits -= 8;
                out.push_back(uint8_t(acc >> bits));
            }
        }
        return out;
    }
    return ByteVec(data.begin(), data.end());
}

int run_cert_debug(const std::string& path) {
    try {
        ByteVec der = read_cert_file(path);
        CertificateInfo info = parse_certificate(ByteSpan(der));
        std::cout << certificate_json(info).dump(2) << "\n";
        return info.parsed ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "tlsfeat cert: " << e.what() << "\n";
        return 2;
    }
}

struct BenchRow {
    std::string name;
    uint64_t bytes = 0;
    std::vector<double> seconds;

    double mean() const {
        double s = 0;
        for (double x : seconds)
            s += x;
        return seconds.empty() ? 0 : s / double(seconds.size());
    }
};

void print_table(const std::vector<std::vector<std::string>>& rows, std::ostream& os) {
    std::vector<size_t> width;
    for (const auto& row : rows)
        for (size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i)
                width.resize(i + 1, 0);
            width[i] = std::max(width[i], row[i].size());
        }
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << std::left << std::setw(int(width[i]) + 2) << row[i];
        os << "\n";
    }
}

std::string fmt_seconds(double s) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << s << "s";
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tlsfeat - offline TLS traffic feature extractor"};
    app.set_version_flag("--version", "tlsfeat 1.0.0");

    std::vector<std::string> inputs;
    std::string out_dir = ".";
    PipelineConfig cfg;
    bool bench = false;
    int repeats = 5;
    std::string summary_mode = "table";
    bool serial = false;

    app.add_option("paths", inputs, "pcap files or directories");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--splt-cap", cfg.splt_cap, "max SPLT entries per stream")
        ->capture_default_str();
    app.add_flag("--pretty", cfg.pretty, "indent JSON output");
    app.add_flag("--bench", bench, "benchmark mode: repeat runs, report timings");
    app.add_option("--repeats", repeats, "benchmark repetitions per file")
        ->capture_default_str();
    app.add_option("--summary", summary_mode, "final summary format: table|csv")
        ->check(CLI::IsMember({"table", "csv"}))
        ->capture_default_str();
    app.add_option("--max-reorder-buffer", cfg.max_reorder_bytes,
                   "per-direction out-of-order buffer cap in bytes")
        ->capture_default_str();
    app.add_option("--max-stream-bytes", cfg.max_stream_bytes,
                   "retained reassembled bytes per direction (0 = unlimited)")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads,
                   "worker threads (default: TLSFEAT_THREADS or all cores)");
    app.add_flag("--serial", serial, "use the serial reference pipeline");

    auto* cert_cmd = app.add_subcommand("cert", "parse one certificate file (DER or PEM) "
                                                "and print its fields as JSON");
    std::string cert_path;
    cert_cmd->add_option("file", cert_path, "certificate file")->required();

    CLI11_PARSE(app, argc, argv);

    if (cert_cmd->parsed())
        return run_cert_debug(cert_path);

    if (inputs.empty()) {
        std::cerr << app.help();
        return 2;
    }
    cfg.parallel = !serial;

    std::vector<std::string> errors;
    std::vector<std::string> files = expand_inputs(inputs, errors);
    for (const std::string& err : errors)
        std::cerr << "tlsfeat: " << err << "\n";
    if (files.empty()) {
        std::cerr << "tlsfeat: no input files\n";
        return 2;
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);

    std::vector<PcapSummary> summaries;
    std::vector<BenchRow> bench_rows;
    std::set<std::string> used_stems;
    std::unordered_set<std::string> all_digests; // batch-wide dedup
    bool any_failed = !errors.empty();

    for (const std::string& file : files) {
        std::string stem = output_stem(file, out_dir, used_stems);
        BenchRow row;
        row.name = fs::path(file).filename().string();
        int rounds = bench ? std::max(1, repeats) : 1;
        try {
            PcapSummary last;
            for (int i = 0; i < rounds; ++i) {
                std::ofstream features(stem + ".features.jsonl",
                                       std::ios::binary | std::ios::trunc);
                if (!features)
                    throw std::runtime_error("cannot write " + stem + ".features.jsonl");
                last = run_file(file, cfg, features, &all_digests);
                row.seconds.push_back(last.analysis_seconds);
            }
            row.bytes = last.file_bytes;
            std::ofstream summary(stem + ".summary.json", std::ios::trunc);
            summary << summary_json(last).dump(2) << "\n";
            summaries.push_back(last);
            bench_rows.push_back(row);
        } catch (const std::exception& e) {
            std::cerr << "tlsfeat: " << file << ": " << e.what() << "\n";
            any_failed = true;
        }
    }

    if (summaries.empty())
        return 2;

    // Dataset-level summary over all analyzed files.
    PcapSummary total;
    total.pcap_name = "Total";
    for (const PcapSummary& s : summaries) {
        total.file_bytes += s.file_bytes;
        total.analysis_seconds += s.analysis_seconds;
        total.records += s.records;
        total.tcp_packets += s.tcp_packets;
        total.not_tcp_packets += s.not_tcp_packets;
        total.tcp_flow_count += s.tcp_flow_count;
        total.tls_stream_count += s.tls_stream_count;
        total.certificates_seen += s.certificates_seen;
        total.certificates_parsed += s.certificates_parsed;
        total.errors += s.errors;
    }
    // Unique certificates dedup across the whole batch, not per file.
    total.unique_certificates = all_digests.size();

    if (summary_mode == "csv") {
        std::cout << "pcap,seconds,tls_streams,certificates_seen,certificates_parsed,"
                     "unique_certificates,tcp_flows\n";
        auto csv_row = [](const PcapSummary& s) {
            std::cout << s.pcap_name << "," << std::fixed << std::setprecision(3)
                      << s.analysis_seconds << "," << s.tls_stream_count << ","
                      << s.certificates_seen << "," << s.certificates_parsed << ","
                      << s.unique_certificates << "," << s.tcp_flow_count << "\n";
        };
        for (const PcapSummary& s : summaries)
            csv_row(s);
        csv_row(total);
    } else {
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"pcap", "time", "TLS streams", "certs seen", "certs parsed",
                        "unique certs", "TCP flows"});
        auto table_row = [&rows](const PcapSummary& s) {
            rows.push_back({s.pcap_name, fmt_seconds(s.analysis_seconds),
                            std::to_string(s.tls_stream_count),
                            std::to_string(s.certificates_seen),
                            std::to_string(s.certificates_parsed),
                            std::to_string(s.unique_certificates),
                            std::to_string(s.tcp_flow_count)});
        };
        for (const PcapSummary& s : summaries)
            table_row(s);
        table_row(total);
        print_table(rows, std::cout);
    }

    if (bench) {
        std::ofstream csv(fs::path(out_dir) / "bench.csv");
        csv << "pcap,bytes,repeats,mean_seconds,mb_per_s\n";
        std::vector<std::vector<std::string>> rows;
        rows.push_back({"pcap", "bytes", "repeats", "mean time", "MB/s"});
        double total_mean = 0;
        uint64_t total_bytes = 0;
        for (const BenchRow& row : bench_rows) {
            double mean = row.mean();
            total_mean += mean;
            total_bytes += row.bytes;
            double rate = mean > 0 ? double(row.bytes) / 1e6 / mean : 0;
            csv << row.name << "," << row.bytes << "," << row.seconds.size() << ","
                << std::fixed << std::setprecision(4) << mean << "," << std::setprecision(1)
                << rate << "\n";
            std::ostringstream r;
            r << std::fixed << std::setprecision(1) << rate;
            rows.push_back({row.name, std::to_string(row.bytes),
                            std::to_string(row.seconds.size()), fmt_seconds(mean), r.str()});
        }
        std::ostringstream r;
        r << std::fixed << std::setprecision(1)
          << (total_mean > 0 ? double(total_bytes) / 1e6 / total_mean : 0);
        rows.push_back({"Total", std::to_string(total_bytes), "-", fmt_seconds(total_mean),
                        r.str()});
        std::cout << "\n";
        print_table(rows, std::cout);
    }

    return any_failed ? 1 : 0;
}
