// SPDX-License-Identifier: Apache-2.0
//
// decode.hpp - link/network/transport decode of one captured frame

#pragma once

#include <cstdint>
#include <variant>

#include "tlsfeat/bytes.hpp"
#include "tlsfeat/ip.hpp"
#include "tlsfeat/pcap.hpp"

namespace tlsfeat {

struct TcpFlags {
    bool syn = false;
    bool ack = false;
    bool fin = false;
    bool rst = false;
};

// One decoded TCP packet. `payload` points into the capture buffer and is
// only valid until the next record is read.
struct Packet {
    int64_t ts_sec = 0;
    uint32_t ts_nsec = 0;
    Endpoint src;
    Endpoint dst;
    uint32_t tcp_seq = 0;
    TcpFlags flags;
    ByteSpan payload;
    uint32_t wire_len = 0;
    uint64_t ordinal = 0; // capture order, assigned by the caller
};

// Frame is well-formed but carries something other than TCP.
struct NotTcp {};

// Frame is structurally broken (header shorter than its declared length,
// non-first IP fragment, ...). Counted, never fatal.
struct Malformed {
    const char* reason = "";
};

using DecodeResult = std::variant<Packet, NotTcp, Malformed>;

DecodeResult decode_packet(const RawRecord& rec, uint32_t link_type);

} // namespace tlsfeat
