// SPDX-License-Identifier: Apache-2.0
//
// x509.hpp - X.509 certificate field extraction and binary digesting

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlsfeat/bytes.hpp"

namespace tlsfeat {

struct RdnEntry {
    std::string oid;   // dotted decimal
    std::string value; // decoded to UTF-8 (lossy for BMP/Universal strings)
};

struct AsnTime {
    bool valid = false;
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    int64_t epoch = 0; // seconds since Unix epoch, UTC
    std::string raw;   // the encoded string, kept verbatim

    std::string iso8601() const;
};

struct CertificateInfo {
    bool parsed = false; // structural walk through subjectPublicKeyInfo succeeded
    int version = 0;     // 1, 2 or 3
    std::string serial_hex;
    AsnTime not_before;
    AsnTime not_after;
    std::vector<RdnEntry> issuer;
    std::vector<RdnEntry> subject;
    std::string public_key_type; // "rsa" | "ec" | "dsa" | "other:<oid>"
    int public_key_bits = 0;
    std::string signature_algorithm; // dotted OID
    uint32_t extension_count = 0;
    std::string der_digest; // sha-256 of the raw DER, lowercase hex
    size_t der_length = 0;
    std::vector<std::string> warnings;
};

// Robust parse: never throws, never reads out of bounds; on structural
// failure returns parsed=false with whatever fields were recovered.
CertificateInfo parse_certificate(ByteSpan der);

// UTCTime / GeneralizedTime decoding ("490101000000Z" -> 2049, UTCTime
// years below 50 are 20xx). Exposed for tests and the cert debug command.
AsnTime parse_asn_time(ByteSpan value, bool generalized, std::vector<std::string>& warnings);

// SHA-256 over the exact DER bytes, lowercase hex.
std::string cert_digest(ByteSpan der);

} // namespace tlsfeat
