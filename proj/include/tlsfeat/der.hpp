// SPDX-License-Identifier: Apache-2.0
//
// der.hpp - minimal DER (definite-length) node decoder for X.509 walking

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlsfeat/bytes.hpp"

namespace tlsfeat {

// Universal tags we care about.
inline constexpr uint32_t kDerInteger = 0x02;
inline constexpr uint32_t kDerBitString = 0x03;
inline constexpr uint32_t kDerOctetString = 0x04;
inline constexpr uint32_t kDerNull = 0x05;
inline constexpr uint32_t kDerOid = 0x06;
inline constexpr uint32_t kDerUtf8String = 0x0c;
inline constexpr uint32_t kDerNumericString = 0x12;
inline constexpr uint32_t kDerPrintableString = 0x13;
inline constexpr uint32_t kDerT61String = 0x14;
inline constexpr uint32_t kDerIa5String = 0x16;
inline constexpr uint32_t kDerUtcTime = 0x17;
inline constexpr uint32_t kDerGeneralizedTime = 0x18;
inline constexpr uint32_t kDerSequence = 0x10;
inline constexpr uint32_t kDerSet = 0x11;
inline constexpr uint32_t kDerBmpString = 0x1e;
inline constexpr uint32_t kDerUniversalString = 0x1c;

enum class DerClass : uint8_t { Universal = 0, Application = 1, Context = 2, Private = 3 };

struct DerNode {
    DerClass tag_class = DerClass::Universal;
    uint32_t tag = 0;
    bool constructed = false;
    size_t header_len = 0; // identifier + length octets
    size_t value_off = 0;  // offset of the value in the source buffer
    size_t value_len = 0;

    size_t end() const { return value_off + value_len; }

    ByteSpan value(ByteSpan src) const { return src.subspan(value_off, value_len); }

    bool is(uint32_t t) const { return tag_class == DerClass::Universal && tag == t; }
    bool is_context(uint32_t t) const { return tag_class == DerClass::Context && tag == t; }
};

// Decodes the node starting at `offset`. Rejects indefinite lengths,
// lengths overrunning the buffer, and high-tag forms beyond 4 octets.
std::optional<DerNode> parse_der_node(ByteSpan data, size_t offset);

// Iterates the children of a constructed node.
class DerChildren {
public:
    DerChildren(ByteSpan data, const DerNode& parent)
        : data_(data), pos_(parent.value_off), end_(parent.end()) {}

    // Next child, or nullopt when the span is exhausted or malformed.
    // `clean` stays true only if children tile the value span exactly.
    std::optional<DerNode> next();
    bool clean() const { return clean_; }
    bool done() const { return pos_ >= end_; }

private:
    ByteSpan data_;
    size_t pos_;
    size_t end_;
    bool clean_ = true;
};

// Dotted-decimal form of an OBJECT IDENTIFIER value.
std::string decode_oid(ByteSpan value);

} // namespace tlsfeat
