// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/decode.hpp"

namespace tlsfeat {

namespace {

constexpr uint16_t kEtherIpv4 = 0x0800;
constexpr uint16_t kEtherIpv6 = 0x86dd;
constexpr uint16_t kEtherVlan = 0x8100;
constexpr uint16_t kEtherQinQ = 0x88a8;

constexpr uint8_t kProtoTcp = 6;

struct L3Result {
    bool ok = false;
    bool malformed = false;
    const char* reason = "";
    Packet pkt;
};

L3Result parse_tcp(ByteReader& r, IpAddr src_ip, IpAddr dst_ip, size_t l4_len) {
    L3Result res;
    if (r.remaining() < 20) {
        res.malformed = true;
        res.reason = "short tcp header";
        return res;
    }
    res.pkt.src.ip = src_ip;
    res.pkt.dst.ip = dst_ip;
    res.pkt.src.port = r.u16();
    res.pkt.dst.port = r.u16();
    res.pkt.tcp_seq = r.u32();
    r.skip(4); // ack
    uint8_t off_byte = r.u8();
    size_t data_off = size_t(off_byte >> 4) * 4;
    uint8_t flag_byte = r.u8();
    res.pkt.flags.fin = flag_byte & 0x01;
    res.pkt.flags.syn = flag_byte & 0x02;
    res.pkt.flags.rst = flag_byte & 0x04;
    res.pkt.flags.ack = flag_byte & 0x10;
    r.skip(6); // window, checksum, urgent

    if (data_off < 20) {
        res.malformed = true;
        res.reason = "tcp data offset below 20";
        return res;
    }
    // Options beyond the fixed 20 bytes.
    if (data_off > 20 && !r.skip(data_off - 20)) {
        res.malformed = true;
        res.reason = "tcp header beyond capture";
        return res;
    }

    // Payload length declared by the IP layer; clamp to captured bytes
    // (snaplen-truncated snapshots are kept, downstream sees a gap).
    size_t declared = l4_len >= data_off ? l4_len - data_off : 0;
    size_t avail = r.remaining();
    res.pkt.payload = r.bytes(declared < avail ? declared : avail);
    res.ok = true;
    return res;
}

L3Result parse_ipv4(ByteReader& r) {
    L3Result res;
    if (r.remaining() < 20) {
        res.malformed = true;
        res.reason = "short ipv4 header";
        return res;
    }
    uint8_t vi = r.u8();
    if ((vi >> 4) != 4) {
        res.malformed = true;
        res.reason = "ipv4 version mismatch";
        return res;
    }
    size_t ihl = size_t(vi & 0x0f) * 4;
    r.skip(1); // tos
    uint16_t total_len = r.u16();
    r.skip(2); // id
    uint16_t frag = r.u16();
    r.skip(1); // ttl
    uint8_t proto = r.u8();
    r.skip(2); // checksum
    IpAddr src = IpAddr::v4(r.bytes(4).data());
    IpAddr dst = IpAddr::v4(r.bytes(4).data());

    if (ihl < 20) {
        res.malformed = true;
        res.reason = "ipv4 ihl below 20";
        return res;
    }
    if ((frag & 0x1fff) != 0) {
        // Non-first fragment: not reassembled, counted.
        res.malformed = true;
        res.reason = "ipv4 non-first fragment";
        return res;
    }
    if (ihl > 20 && !r.skip(ihl - 20)) {
        res.malformed = true;
        res.reason = "ipv4 options beyond capture";
        return res;
    }
    if (proto != kProtoTcp)
        return res; // NotTcp

    if (total_len < ihl) {
        res.malformed = true;
        res.reason = "ipv4 total length below header";
        return res;
    }
    return parse_tcp(r, src, dst, total_len - ihl);
}

L3Result parse_ipv6(ByteReader& r) {
    L3Result res;
    if (r.remaining() < 40) {
        res.malformed = true;
        res.reason = "short ipv6 header";
        return res;
    }
    uint8_t vi = r.u8();
    if ((vi >> 4) != 6) {
        res.malformed = true;
        res.reason = "ipv6 version mismatch";
        return res;
    }
    r.skip(3); // traffic class / flow label
    uint16_t payload_len = r.u16();
    uint8_t next = r.u8();
    r.skip(1); // hop limit
    IpAddr src = IpAddr::v6addr(r.bytes(16).data());
    IpAddr dst = IpAddr::v6addr(r.bytes(16).data());

    size_t l4_len = payload_len;
    // Walk extension headers until TCP or something we don't follow.
    for (int hops = 0; hops < 8; ++hops) {
        if (next == kProtoTcp)
            return parse_tcp(r, src, dst, l4_len);
        switch (next) {
        case 0:   // hop-by-hop
        case 43:  // routing
        case 60: { // destination options
            if (r.remaining() < 2) {
                res.malformed = true;
                res.reason = "ipv6 extension beyond capture";
                return res;
            }
            next = r.u8();
            size_t ext_len = (size_t(r.u8()) + 1) * 8;
            if (!r.skip(ext_len - 2)) {
                res.malformed = true;
                res.reason = "ipv6 extension beyond capture";
                return res;
            }
            l4_len = l4_len >= ext_len ? l4_len - ext_len : 0;
            break;
        }
        case 44: { // fragment header
            if (r.remaining() < 8) {
                res.malformed = true;
                res.reason = "ipv6 fragment header beyond capture";
                return res;
            }
            next = r.u8();
            r.skip(1);
            uint16_t frag = r.u16();
            r.skip(4);
            if ((frag & 0xfff8) != 0) {
                res.malformed = true;
                res.reason = "ipv6 non-first fragment";
                return res;
            }
            l4_len = l4_len >= 8 ? l4_len - 8 : 0;
            break;
        }
        default:
            return res; // NotTcp (UDP, ICMPv6, unknown extension, ...)
        }
    }
    return res;
}

L3Result parse_l3(ByteReader& r, uint16_t ether_type) {
    switch (ether_type) {
    case kEtherIpv4:
        return parse_ipv4(r);
    case kEtherIpv6:
        return parse_ipv6(r);
    default:
        return {}; // ARP and friends: NotTcp
    }
}

} // namespace

DecodeResult decode_packet(const RawRecord& rec, uint32_t link_type) {
    ByteReader r(rec.frame);
    uint16_t ether_type = 0;

    if (link_type == kLinkEthernet) {
        if (r.remaining() < 14)
            return Malformed{"short ethernet header"};
        r.skip(12);
        ether_type = r.u16();
        // 802.1Q / 802.1ad tags, possibly stacked.
        while (ether_type == kEtherVlan || ether_type == kEtherQinQ) {
            if (r.remaining() < 4)
                return Malformed{"vlan tag beyond capture"};
            r.skip(2);
            ether_type = r.u16();
        }
    } else if (link_type == kLinkLinuxSll) {
        if (r.remaining() < 16)
            return Malformed{"short sll header"};
        r.skip(14);
        ether_type = r.u16();
    } else {
        return NotTcp{};
    }

    L3Result res = parse_l3(r, ether_type);
    if (res.malformed)
        return Malformed{res.reason};
    if (!res.ok)
        return NotTcp{};

    res.pkt.ts_sec = rec.ts_sec;
    res.pkt.ts_nsec = rec.ts_nsec;
    res.pkt.wire_len = rec.orig_len;
    return res.pkt;
}

} // namespace tlsfeat
