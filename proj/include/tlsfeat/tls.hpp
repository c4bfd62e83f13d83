// SPDX-License-Identifier: Apache-2.0
//
// tls.hpp - TLS record layer and handshake dissection over reassembled
// flow byte streams

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tlsfeat/bytes.hpp"
#include "tlsfeat/flow.hpp"

namespace tlsfeat {

// Record-layer content types.
inline constexpr uint8_t kTlsChangeCipherSpec = 20;
inline constexpr uint8_t kTlsAlert = 21;
inline constexpr uint8_t kTlsHandshake = 22;
inline constexpr uint8_t kTlsApplicationData = 23;

// Handshake message types we parse deeply; others are counted by code.
inline constexpr uint8_t kHsClientHello = 1;
inline constexpr uint8_t kHsServerHello = 2;
inline constexpr uint8_t kHsCertificate = 11;

inline constexpr uint16_t kExtServerName = 0;
inline constexpr uint16_t kExtSupportedVersions = 43;

// Record body bound: 2^14 plus legacy slack for old compressed/padded stacks.
inline constexpr size_t kMaxRecordLen = (1u << 14) + 2048;

struct TlsRecord {
    uint8_t content_type = 0;
    uint8_t version_major = 0;
    uint8_t version_minor = 0;
    uint16_t declared_len = 0;
    ByteSpan body; // views into the flow's stream segments
};

struct RecordStream {
    std::vector<TlsRecord> records;
    bool trailing_partial = false; // stream ended inside a record
    bool desync = false;           // malformed header mid-stream, parsing stopped
    bool gap_discard = false;      // a record was lost over a stream gap
};

struct HandshakeMessage {
    uint8_t msg_type = 0;
    ByteVec body;
    uint32_t spanned_records = 1;
};

struct HandshakeStream {
    std::vector<HandshakeMessage> messages;
    uint32_t truncated_messages = 0;  // stream ended inside a message
    uint32_t encrypted_records = 0;   // handshake records after ChangeCipherSpec
};

struct ClientHelloInfo {
    uint16_t client_version = 0;
    std::vector<uint16_t> cipher_suites; // offered, order preserved, GREASE kept
    std::vector<uint8_t> compression_methods;
    std::vector<std::pair<uint16_t, ByteVec>> extensions;
    std::optional<std::string> sni;
    bool parse_error = false;
};

struct ServerHelloInfo {
    uint16_t server_version = 0;
    uint16_t cipher_suite = 0;
    std::vector<std::pair<uint16_t, ByteVec>> extensions;
    std::optional<uint16_t> supported_version; // extension 43 override (TLS 1.3)
    bool parse_error = false;
};

struct CertificateMsg {
    std::vector<ByteVec> der; // chain order preserved, leaf first
    bool truncated = false;
};

// Content-based TLS detection over the first bytes of one direction.
// Needs at least 6 contiguous bytes; false excludes the flow.
bool detect_tls(ByteSpan first_bytes);

// Record-layer parse of one direction's reassembled stream. Records never
// span a gap; parsing resumes after a gap only where a plausible header
// aligns with a post-gap chunk start.
RecordStream parse_records(const std::vector<StreamSegment>& segments);

// Reassembles handshake messages from the handshake-record byte stream of
// one direction: handles several messages per record and one message
// spanning several records. Stops at ChangeCipherSpec.
HandshakeStream extract_handshakes(const std::vector<TlsRecord>& records);

ClientHelloInfo parse_client_hello(ByteSpan body);
ServerHelloInfo parse_server_hello(ByteSpan body);
CertificateMsg parse_certificate_msg(ByteSpan body);

// Per-flow dissection summary feeding the report.
struct TlsFlowInfo {
    bool is_tls = false; // detection passed and >=1 complete record parsed
    std::optional<ClientHelloInfo> client_hello;
    std::optional<ServerHelloInfo> server_hello;
    std::map<uint8_t, uint32_t> handshake_type_counts;
    uint16_t negotiated_version = 0; // 0 = not negotiated/unknown
    std::vector<ByteVec> certificates;
    uint32_t truncated_messages = 0;
    bool desync = false;
    bool gapped = false;
    bool certs_encrypted = false;
    uint32_t complete_records = 0;
};

TlsFlowInfo dissect_flow(const Flow& flow);

// IANA name for a cipher-suite code, nullptr when unknown.
const char* cipher_suite_name(uint16_t code);

// Human name for a TLS version code (0x0301 -> "TLS1.0"), nullptr unknown.
const char* tls_version_name(uint16_t code);

} // namespace tlsfeat
