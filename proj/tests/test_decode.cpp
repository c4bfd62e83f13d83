// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "pcap_builder.hpp"
#include "tlsfeat/decode.hpp"

using namespace tlsfeat;
using namespace tlsfeat::testfix;

namespace {

RawRecord as_record(const ByteVec& frame) {
    RawRecord rec;
    rec.ts_sec = 1700000000;
    rec.ts_nsec = 42;
    rec.orig_len = uint32_t(frame.size());
    rec.frame = ByteSpan(frame);
    return rec;
}

ByteVec tcp_ipv4_frame(int ip_option_words, int tcp_option_words, size_t payload_len) {
    TcpHeaderSpec tcp;
    tcp.src_port = 1234;
    tcp.dst_port = 443;
    tcp.seq = 77;
    tcp.flags = kAck | kPsh;
    tcp.option_words = tcp_option_words;
    ByteVec payload(payload_len, 0x61);
    ByteVec seg = tcp_segment(tcp, ByteSpan(payload));
    ByteVec ip = ipv4_packet(ip4(10, 0, 0, 1), ip4(10, 0, 0, 2), 6, ByteSpan(seg),
                             ip_option_words);
    return ether_frame(0x0800, ByteSpan(ip));
}

} // namespace

TEST_CASE("decode ipv4 tcp payload") {
    ByteVec frame = tcp_ipv4_frame(0, 0, 3);
    auto res = decode_packet(as_record(frame), kLinkEthernet);
    auto* pkt = std::get_if<Packet>(&res);
    REQUIRE(pkt != nullptr);
    CHECK(pkt->src.port == 1234);
    CHECK(pkt->dst.port == 443);
    CHECK(pkt->tcp_seq == 77);
    CHECK(pkt->payload.size() == 3);
    CHECK(pkt->src.ip.str() == "10.0.0.1");
    CHECK(pkt->flags.ack);
    CHECK(!pkt->flags.syn);
}

TEST_CASE("decode arp is NotTcp") {
    ByteVec arp(28, 0);
    ByteVec frame = ether_frame(0x0806, ByteSpan(arp));
    auto res = decode_packet(as_record(frame), kLinkEthernet);
    CHECK(std::holds_alternative<NotTcp>(res));
}

TEST_CASE("decode udp is NotTcp") {
    ByteVec udp(12, 0);
    ByteVec ip = ipv4_packet(ip4(1, 1, 1, 1), ip4(2, 2, 2, 2), 17, ByteSpan(udp));
    ByteVec frame = ether_frame(0x0800, ByteSpan(ip));
    CHECK(std::holds_alternative<NotTcp>(decode_packet(as_record(frame), kLinkEthernet)));
}

TEST_CASE("decode ipv4 with options finds ports at the shifted offset") {
    // IHL 6 (one option word). Construct the frame byte-by-byte to make
    // the offset arithmetic explicit.
    ByteVec ip;
    ip.push_back(0x46); // version 4, IHL 6
    ip.push_back(0);
    size_t total = 24 + 20 + 2;
    ip.push_back(uint8_t(total >> 8));
    ip.push_back(uint8_t(total));
    ip.push_back(0x12); ip.push_back(0x34);
    ip.push_back(0x40); ip.push_back(0x00);
    ip.push_back(64);
    ip.push_back(6);
    ip.push_back(0); ip.push_back(0);
    for (uint8_t b : {10, 0, 0, 9})
        ip.push_back(b);
    for (uint8_t b : {10, 0, 0, 8})
        ip.push_back(b);
    for (int i = 0; i < 4; ++i)
        ip.push_back(0x01); // option word
    // TCP header starts at offset 24 from IP start: ports first.
    ip.push_back(0xab); ip.push_back(0xcd); // src port 0xabcd
    ip.push_back(0x01); ip.push_back(0xbb); // dst port 443
    for (int i = 0; i < 8; ++i)
        ip.push_back(0); // seq, ack
    ip.push_back(0x50);  // data offset 5
    ip.push_back(0x18);  // ACK|PSH
    for (int i = 0; i < 6; ++i)
        ip.push_back(0);
    ip.push_back(0x68); ip.push_back(0x69); // "hi"

    ByteVec frame = ether_frame(0x0800, ByteSpan(ip));
    auto res = decode_packet(as_record(frame), kLinkEthernet);
    auto* pkt = std::get_if<Packet>(&res);
    REQUIRE(pkt != nullptr);
    CHECK(pkt->src.port == 0xabcd);
    CHECK(pkt->dst.port == 443);
    CHECK(pkt->payload.size() == 2);
    CHECK(pkt->payload[0] == 0x68);
}

TEST_CASE("decode vlan tag is skipped") {
    TcpHeaderSpec tcp;
    tcp.src_port = 5;
    tcp.dst_port = 6;
    ByteVec seg = tcp_segment(tcp, {});
    ByteVec ip = ipv4_packet(ip4(1, 2, 3, 4), ip4(5, 6, 7, 8), 6, ByteSpan(seg));
    ByteVec frame = ether_vlan_frame(100, 0x0800, ByteSpan(ip));
    auto res = decode_packet(as_record(frame), kLinkEthernet);
    CHECK(std::get_if<Packet>(&res) != nullptr);
}

TEST_CASE("decode linux sll") {
    TcpHeaderSpec tcp;
    tcp.src_port = 1;
    tcp.dst_port = 2;
    ByteVec seg = tcp_segment(tcp, {});
    ByteVec ip = ipv4_packet(ip4(9, 9, 9, 9), ip4(8, 8, 8, 8), 6, ByteSpan(seg));
    ByteVec frame = sll_frame(0x0800, ByteSpan(ip));
    auto res = decode_packet(as_record(frame), kLinkLinuxSll);
    auto* pkt = std::get_if<Packet>(&res);
    REQUIRE(pkt != nullptr);
    CHECK(pkt->src.ip.str() == "9.9.9.9");
}

TEST_CASE("decode ipv6 tcp") {
    IpAddr src{};
    IpAddr dst{};
    uint8_t s6[16] = {0x20, 0x01, 0x0d, 0xb8};
    uint8_t d6[16] = {0x20, 0x01, 0x0d, 0xb8};
    d6[15] = 1;
    src = IpAddr::v6addr(s6);
    dst = IpAddr::v6addr(d6);
    TcpHeaderSpec tcp;
    tcp.src_port = 1000;
    tcp.dst_port = 443;
    ByteVec payload(5, 0x7a);
    ByteVec seg = tcp_segment(tcp, ByteSpan(payload));
    ByteVec ip = ipv6_packet(src, dst, 6, ByteSpan(seg));
    ByteVec frame = ether_frame(0x86dd, ByteSpan(ip));
    auto res = decode_packet(as_record(frame), kLinkEthernet);
    auto* pkt = std::get_if<Packet>(&res);
    REQUIRE(pkt != nullptr);
    CHECK(pkt->src.ip.v6);
    CHECK(pkt->payload.size() == 5);
    CHECK(pkt->src.ip.str() == "2001:db8::");
    CHECK(pkt->dst.ip.str() == "2001:db8::1");
}

TEST_CASE("decode malformed: header shorter than declared") {
    // IPv4 claims IHL 8 but the frame ends long before that.
    ByteVec ip = {0x48, 0x00, 0x00, 0x30, 0x00, 0x00, 0x00, 0x00,
                  0x40, 0x06, 0x00, 0x00, 1,    1,    1,    1,
                  2,    2,    2,    2};
    ByteVec frame = ether_frame(0x0800, ByteSpan(ip));
    auto res = decode_packet(as_record(frame), kLinkEthernet);
    CHECK(std::holds_alternative<Malformed>(res));
}

TEST_CASE("decode non-first ipv4 fragment is malformed") {
    TcpHeaderSpec tcp;
    ByteVec seg = tcp_segment(tcp, {});
    ByteVec ip = ipv4_packet(ip4(1, 1, 1, 1), ip4(2, 2, 2, 2), 6, ByteSpan(seg));
    ip[6] = 0x00;
    ip[7] = 0x10; // fragment offset 16
    ByteVec frame = ether_frame(0x0800, ByteSpan(ip));
    CHECK(std::holds_alternative<Malformed>(decode_packet(as_record(frame), kLinkEthernet)));
}

TEST_CASE("every record classifies exactly once") {
    std::vector<ByteVec> frames;
    frames.push_back(tcp_ipv4_frame(0, 0, 10));
    ByteVec arp(28, 0);
    frames.push_back(ether_frame(0x0806, ByteSpan(arp)));
    frames.push_back(ByteVec{1, 2, 3}); // short ethernet
    int pkt = 0, not_tcp = 0, malformed = 0;
    for (const ByteVec& f : frames) {
        auto res = decode_packet(as_record(f), kLinkEthernet);
        if (std::holds_alternative<Packet>(res))
            ++pkt;
        else if (std::holds_alternative<NotTcp>(res))
            ++not_tcp;
        else
            ++malformed;
    }
    CHECK(pkt == 1);
    CHECK(not_tcp == 1);
    CHECK(malformed == 1);
    CHECK(pkt + not_tcp + malformed == int(frames.size()));
}

TEST_CASE("snap-truncated tcp keeps the captured payload prefix") {
    ByteVec frame = tcp_ipv4_frame(0, 0, 100);
    RawRecord rec = as_record(frame);
    rec.frame = rec.frame.subspan(0, frame.size() - 60); // snaplen cut
    auto res = decode_packet(rec, kLinkEthernet);
    auto* pkt = std::get_if<Packet>(&res);
    REQUIRE(pkt != nullptr);
    CHECK(pkt->payload.size() == 40);   // declared 100, captured 40
    CHECK(pkt->wire_len == rec.orig_len);
}
