// SPDX-License-Identifier: Apache-2.0

#include "session_builder.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace tlsfeat::testfix {

namespace {

void push16(ByteVec& v, uint16_t x) {
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x));
}

void push24(ByteVec& v, uint32_t x) {
    v.push_back(uint8_t(x >> 16));
    v.push_back(uint8_t(x >> 8));
    v.push_back(uint8_t(x));
}

} // namespace

ByteVec random_bytes(size_t n, uint32_t seed) {
    std::mt19937 rng(seed);
    ByteVec v(n);
    for (size_t i = 0; i < n; ++i)
        v[i] = uint8_t(rng());
    return v;
}

ByteVec tls_record(uint8_t content_type, uint16_t version, ByteSpan body) {
    ByteVec v;
    v.reserve(5 + body.size());
    v.push_back(content_type);
    push16(v, version);
    push16(v, uint16_t(body.size()));
    v.insert(v.end(), body.begin(), body.end());
    return v;
}

ByteVec handshake_msg(uint8_t msg_type, ByteSpan body) {
    ByteVec v;
    v.reserve(4 + body.size());
    v.push_back(msg_type);
    push24(v, uint32_t(body.size()));
    v.insert(v.end(), body.begin(), body.end());
    return v;
}

ByteVec client_hello_body(const ClientHelloSpec& spec) {
    ByteVec v;
    push16(v, spec.version);
    ByteVec rnd = random_bytes(32, 0xc11e)
        ;
    v.insert(v.end(), rnd.begin(), rnd.end());
    v.push_back(0); // empty session id

    std::vector<uint16_t> suites = spec.cipher_suites;
    if (spec.grease)
        suites.insert(suites.begin(), 0x0a0a);
    push16(v, uint16_t(suites.size() * 2));
    for (uint16_t s : suites)
        push16(v, s);

    v.push_back(1); // one compression method
    v.push_back(0); // null

    ByteVec exts;
    if (spec.grease) {
        push16(exts, 0x1a1a);
        push16(exts, 0);
    }
    if (spec.sni) {
        ByteVec sni;
        push16(sni, uint16_t(spec.sni->size() + 3)); // server_name_list length
        sni.push_back(0);                            // host_name
        push16(sni, uint16_t(spec.sni->size()));
        sni.insert(sni.end(), spec.sni->begin(), spec.sni->end());
        push16(exts, 0); // extension type
        push16(exts, uint16_t(sni.size()));
        exts.insert(exts.end(), sni.begin(), sni.end());
    }
    if (spec.supported_versions) {
        push16(exts, 43);
        push16(exts, 3);
        exts.push_back(2);
        push16(exts, *spec.supported_versions);
    }
    push16(v, uint16_t(exts.size()));
    v.insert(v.end(), exts.begin(), exts.end());
    return v;
}

ByteVec server_hello_body(const ServerHelloSpec& spec) {
    ByteVec v;
    push16(v, spec.version);
    ByteVec rnd = random_bytes(32, 0x5e12);
    v.insert(v.end(), rnd.begin(), rnd.end());
    v.push_back(0); // empty session id
    push16(v, spec.cipher_suite);
    v.push_back(0); // null compression

    ByteVec exts;
    if (spec.supported_version) {
        push16(exts, 43);
        push16(exts, 2);
        push16(exts, *spec.supported_version);
    }
    push16(v, uint16_t(exts.size()));
    v.insert(v.end(), exts.begin(), exts.end());
    return v;
}

ByteVec certificate_msg_body(const std::vector<ByteVec>& chain) {
    size_t total = 0;
    for (const ByteVec& der : chain)
        total += 3 + der.size();
    ByteVec v;
    push24(v, uint32_t(total));
    for (const ByteVec& der : chain) {
        push24(v, uint32_t(der.size()));
        v.insert(v.end(), der.begin(), der.end());
    }
    return v;
}

std::vector<ByteVec> records_for_stream(ByteSpan stream, const std::vector<size_t>& sizes,
                                        uint16_t version) {
    std::vector<ByteVec> records;
    size_t pos = 0;
    for (size_t size : sizes) {
        size_t n = size == 0 ? stream.size() - pos : size;
        if (pos + n > stream.size())
            throw std::runtime_error("record sizes overrun stream");
        records.push_back(tls_record(22, version, stream.subspan(pos, n)));
        pos += n;
    }
    if (pos < stream.size())
        records.push_back(tls_record(22, version, stream.subspan(pos)));
    return records;
}

TlsStreams build_tls_streams(const TlsSessionSpec& spec) {
    TlsStreams out;

    // Client: ClientHello, ChangeCipherSpec, encrypted Finished, app data.
    ByteVec ch = handshake_msg(1, client_hello_body(spec.client));
    ByteVec rec = tls_record(22, 0x0301, ch); // hello commonly rides TLS1.0 framing
    out.client.insert(out.client.end(), rec.begin(), rec.end());

    uint8_t ccs_body[1] = {1};
    rec = tls_record(20, spec.server.version, ByteSpan(ccs_body, 1));
    out.client.insert(out.client.end(), rec.begin(), rec.end());

    ByteVec finished = random_bytes(40, spec.seed ^ 0xf1);
    rec = tls_record(22, spec.server.version, finished); // encrypted, opaque
    out.client.insert(out.client.end(), rec.begin(), rec.end());

    if (spec.appdata_client > 0) {
        ByteVec data = random_bytes(spec.appdata_client, spec.seed ^ 0xa1);
        rec = tls_record(23, spec.server.version, data);
        out.client.insert(out.client.end(), rec.begin(), rec.end());
    }

    // Server handshake stream: ServerHello [Certificate] ServerHelloDone.
    ByteVec hs = handshake_msg(2, server_hello_body(spec.server));
    if (spec.send_certificate) {
        ByteVec cert = handshake_msg(11, certificate_msg_body(spec.chain));
        hs.insert(hs.end(), cert.begin(), cert.end());
    }
    ByteVec done = handshake_msg(14, {});
    hs.insert(hs.end(), done.begin(), done.end());

    std::vector<ByteVec> hs_records;
    if (spec.server_record_sizes.empty()) {
        // One record per message boundary is the common layout; emit the
        // whole stream as a single record when it fits.
        hs_records = records_for_stream(ByteSpan(hs), {hs.size()}, spec.server.version);
    } else {
        hs_records = records_for_stream(ByteSpan(hs), spec.server_record_sizes,
                                        spec.server.version);
    }
    for (const ByteVec& r : hs_records)
        out.server.insert(out.server.end(), r.begin(), r.end());

    rec = tls_record(20, spec.server.version, ByteSpan(ccs_body, 1));
    out.server.insert(out.server.end(), rec.begin(), rec.end());
    finished = random_bytes(40, spec.seed ^ 0xf2);
    rec = tls_record(22, spec.server.version, finished);
    out.server.insert(out.server.end(), rec.begin(), rec.end());

    size_t remaining = spec.appdata_server;
    uint32_t chunk_seed = spec.seed ^ 0xa2;
    while (remaining > 0) {
        size_t n = std::min<size_t>(remaining, 16000);
        ByteVec data = random_bytes(n, chunk_seed++);
        rec = tls_record(23, spec.server.version, data);
        out.server.insert(out.server.end(), rec.begin(), rec.end());
        remaining -= n;
    }
    return out;
}

std::vector<SynthPacket> packetize(const ByteVec& client_stream, const ByteVec& server_stream,
                                   const PacketizeOptions& opts) {
    std::vector<SynthPacket> packets;
    uint32_t cseq = opts.client_isn;
    uint32_t sseq = opts.server_isn;

    if (opts.with_handshake) {
        packets.push_back({true, cseq, 0, kSyn, {}});
        cseq += 1;
        packets.push_back({false, sseq, cseq, uint8_t(kSyn | kAck), {}});
        sseq += 1;
        packets.push_back({true, cseq, sseq, kAck, {}});
    }

    auto send = [&packets, &opts](bool from_client, uint32_t& seq, uint32_t ack,
                                  ByteSpan data) {
        size_t pos = 0;
        while (pos < data.size()) {
            size_t n = std::min(opts.mss, data.size() - pos);
            SynthPacket p;
            p.from_client = from_client;
            p.seq = seq;
            p.ack = ack;
            p.flags = uint8_t(kAck | kPsh);
            p.payload.assign(data.begin() + pos, data.begin() + pos + n);
            packets.push_back(std::move(p));
            seq += uint32_t(n);
            pos += n;
        }
    };

    // Client speaks first (hello), then the server floods, then the rest
    // of the client stream. Mirrors a typical TLS exchange well enough.
    size_t client_first = std::min<size_t>(client_stream.size(), opts.mss);
    send(true, cseq, sseq, ByteSpan(client_stream.data(), client_first));
    send(false, sseq, cseq, ByteSpan(server_stream));
    send(true, cseq, sseq,
         ByteSpan(client_stream.data() + client_first, client_stream.size() - client_first));

    if (opts.with_fin) {
        packets.push_back({true, cseq, sseq, uint8_t(kFin | kAck), {}});
        cseq += 1;
        packets.push_back({false, sseq, cseq, uint8_t(kFin | kAck), {}});
        sseq += 1;
        packets.push_back({true, cseq, sseq, kAck, {}});
    }
    return packets;
}

void shuffle_segments(std::vector<SynthPacket>& packets, std::mt19937& rng, size_t window,
                      double dup_prob) {
    if (packets.size() < 2)
        return;

    // Keep the opening SYN and the closing FIN/ACK tail in place.
    size_t lo = 0;
    while (lo < packets.size() && (packets[lo].flags & kSyn))
        ++lo;
    size_t hi = packets.size();
    while (hi > lo && (packets[hi - 1].flags & kFin || packets[hi - 1].payload.empty()))
        --hi;

    if (hi > lo + 1) {
        for (size_t i = lo; i + 1 < hi; ++i) {
            size_t span = std::min(window, hi - i);
            size_t j = i + rng() % span;
            std::swap(packets[i], packets[j]);
        }
    }

    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<SynthPacket> with_dups;
    with_dups.reserve(packets.size() + 8);
    for (size_t i = 0; i < packets.size(); ++i) {
        with_dups.push_back(packets[i]);
        if (i >= lo && i < hi && !packets[i].payload.empty() && uni(rng) < dup_prob)
            with_dups.push_back(packets[i]); // exact retransmission
    }
    packets = std::move(with_dups);
}

void render_packets(PcapWriter& w, const SessionEndpoints& eps,
                    const std::vector<SynthPacket>& packets, int64_t t0_sec, uint32_t t0_nsec,
                    uint32_t step_nsec) {
    int64_t sec = t0_sec;
    uint64_t nsec = t0_nsec;
    for (const SynthPacket& p : packets) {
        const Endpoint& src = p.from_client ? eps.client : eps.server;
        const Endpoint& dst = p.from_client ? eps.server : eps.client;
        TcpHeaderSpec tcp;
        tcp.src_port = src.port;
        tcp.dst_port = dst.port;
        tcp.seq = p.seq;
        tcp.ack = p.ack;
        tcp.flags = p.flags;
        ByteVec seg = tcp_segment(tcp, ByteSpan(p.payload));
        ByteVec ip = ipv4_packet(src.ip, dst.ip, 6, ByteSpan(seg));
        ByteVec frame = ether_frame(0x0800, ByteSpan(ip));
        w.add_record(sec, uint32_t(nsec), ByteSpan(frame));
        nsec += step_nsec;
        sec += int64_t(nsec / 1000000000ull);
        nsec %= 1000000000ull;
    }
}

} // namespace tlsfeat::testfix
