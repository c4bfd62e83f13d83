// SPDX-License-Identifier: Apache-2.0
//
// IANA cipher-suite registry names for codes commonly seen on the wire.

#include "tlsfeat/tls.hpp"

namespace tlsfeat {

const char* cipher_suite_name(uint16_t code) {
    // GREASE codes: 0x0a0a, 0x1a1a, ... 0xfafa.
    if ((code >> 8) == (code & 0xff) && (code & 0x0f) == 0x0a)
        return "GREASE";

    switch (code) {
    case 0x0000: return "TLS_NULL_WITH_NULL_NULL";
    case 0x0001: return "TLS_RSA_WITH_NULL_MD5";
    case 0x0002: return "TLS_RSA_WITH_NULL_SHA";
    case 0x0004: return "TLS_RSA_WITH_RC4_128_MD5";
    case 0x0005: return "TLS_RSA_WITH_RC4_128_SHA";
    case 0x0007: return "TLS_RSA_WITH_IDEA_CBC_SHA";
    case 0x0009: return "TLS_RSA_WITH_DES_CBC_SHA";
    case 0x000a: return "TLS_RSA_WITH_3DES_EDE_CBC_SHA";
    case 0x0012: return "TLS_DHE_DSS_WITH_DES_CBC_SHA";
    case 0x0013: return "TLS_DHE_DSS_WITH_3DES_EDE_CBC_SHA";
    case 0x0015: return "TLS_DHE_RSA_WITH_DES_CBC_SHA";
    case 0x0016: return "TLS_DHE_RSA_WITH_3DES_EDE_CBC_SHA";
    case 0x0018: return "TLS_DH_anon_WITH_RC4_128_MD5";
    case 0x001b: return "TLS_DH_anon_WITH_3DES_EDE_CBC_SHA";
    case 0x002f: return "TLS_RSA_WITH_AES_128_CBC_SHA";
    case 0x0032: return "TLS_DHE_DSS_WITH_AES_128_CBC_SHA";
    case 0x0033: return "TLS_DHE_RSA_WITH_AES_128_CBC_SHA";
    case 0x0034: return "TLS_DH_anon_WITH_AES_128_CBC_SHA";
    case 0x0035: return "TLS_RSA_WITH_AES_256_CBC_SHA";
    case 0x0038: return "TLS_DHE_DSS_WITH_AES_256_CBC_SHA";
    case 0x0039: return "TLS_DHE_RSA_WITH_AES_256_CBC_SHA";
    case 0x003a: return "TLS_DH_anon_WITH_AES_256_CBC_SHA";
    case 0x003b: return "TLS_RSA_WITH_NULL_SHA256";
    case 0x003c: return "TLS_RSA_WITH_AES_128_CBC_SHA256";
    case 0x003d: return "TLS_RSA_WITH_AES_256_CBC_SHA256";
    case 0x0040: return "TLS_DHE_DSS_WITH_AES_128_CBC_SHA256";
    case 0x0041: return "TLS_RSA_WITH_CAMELLIA_128_CBC_SHA";
    case 0x0044: return "TLS_DHE_DSS_WITH_CAMELLIA_128_CBC_SHA";
    case 0x0045: return "TLS_DHE_RSA_WITH_CAMELLIA_128_CBC_SHA";
    case 0x0067: return "TLS_DHE_RSA_WITH_AES_128_CBC_SHA256";
    case 0x006a: return "TLS_DHE_DSS_WITH_AES_256_CBC_SHA256";
    case 0x006b: return "TLS_DHE_RSA_WITH_AES_256_CBC_SHA256";
    case 0x0084: return "TLS_RSA_WITH_CAMELLIA_256_CBC_SHA";
    case 0x0087: return "TLS_DHE_DSS_WITH_CAMELLIA_256_CBC_SHA";
    case 0x0088: return "TLS_DHE_RSA_WITH_CAMELLIA_256_CBC_SHA";
    case 0x0096: return "TLS_RSA_WITH_SEED_CBC_SHA";
    case 0x0099: return "TLS_DHE_DSS_WITH_SEED_CBC_SHA";
    case 0x009a: return "TLS_DHE_RSA_WITH_SEED_CBC_SHA";
    case 0x009c: return "TLS_RSA_WITH_AES_128_GCM_SHA256";
    case 0x009d: return "TLS_RSA_WITH_AES_256_GCM_SHA384";
    case 0x009e: return "TLS_DHE_RSA_WITH_AES_128_GCM_SHA256";
    case 0x009f: return "TLS_DHE_RSA_WITH_AES_256_GCM_SHA384";
    case 0x00a2: return "TLS_DHE_DSS_WITH_AES_128_GCM_SHA256";
    case 0x00a3: return "TLS_DHE_DSS_WITH_AES_256_GCM_SHA384";
    case 0x00ba: return "TLS_RSA_WITH_CAMELLIA_128_CBC_SHA256";
    case 0x00be: return "TLS_DHE_RSA_WITH_CAMELLIA_128_CBC_SHA256";
    case 0x00c0: return "TLS_RSA_WITH_CAMELLIA_256_CBC_SHA256";
    case 0x00c4: return "TLS_DHE_RSA_WITH_CAMELLIA_256_CBC_SHA256";
    case 0x00ff: return "TLS_EMPTY_RENEGOTIATION_INFO_SCSV";
    case 0x1301: return "TLS_AES_128_GCM_SHA256";
    case 0x1302: return "TLS_AES_256_GCM_SHA384";
    case 0x1303: return "TLS_CHACHA20_POLY1305_SHA256";
    case 0x1304: return "TLS_AES_128_CCM_SHA256";
    case 0x1305: return "TLS_AES_128_CCM_8_SHA256";
    case 0x5600: return "TLS_FALLBACK_SCSV";
    case 0xc001: return "TLS_ECDH_ECDSA_WITH_NULL_SHA";
    case 0xc002: return "TLS_ECDH_ECDSA_WITH_RC4_128_SHA";
    case 0xc003: return "TLS_ECDH_ECDSA_WITH_3DES_EDE_CBC_SHA";
    case 0xc004: return "TLS_ECDH_ECDSA_WITH_AES_128_CBC_SHA";
    case 0xc005: return "TLS_ECDH_ECDSA_WITH_AES_256_CBC_SHA";
    case 0xc007: return "TLS_ECDHE_ECDSA_WITH_RC4_128_SHA";
    case 0xc008: return "TLS_ECDHE_ECDSA_WITH_3DES_EDE_CBC_SHA";
    case 0xc009: return "TLS_ECDHE_ECDSA_WITH_AES_128_CBC_SHA";
    case 0xc00a: return "TLS_ECDHE_ECDSA_WITH_AES_256_CBC_SHA";
    case 0xc00b: return "TLS_ECDH_RSA_WITH_NULL_SHA";
    case 0xc00c: return "TLS_ECDH_RSA_WITH_RC4_128_SHA";
    case 0xc00d: return "TLS_ECDH_RSA_WITH_3DES_EDE_CBC_SHA";
    case 0xc00e: return "TLS_ECDH_RSA_WITH_AES_128_CBC_SHA";
    case 0xc00f: return "TLS_ECDH_RSA_WITH_AES_256_CBC_SHA";
    case 0xc011: return "TLS_ECDHE_RSA_WITH_RC4_128_SHA";
    case 0xc012: return "TLS_ECDHE_RSA_WITH_3DES_EDE_CBC_SHA";
    case 0xc013: return "TLS_ECDHE_RSA_WITH_AES_128_CBC_SHA";
    case 0xc014: return "TLS_ECDHE_RSA_WITH_AES_256_CBC_SHA";
    case 0xc023: return "TLS_ECDHE_ECDSA_WITH_AES_128_CBC_SHA256";
    case 0xc024: return "TLS_ECDHE_ECDSA_WITH_AES_256_CBC_SHA384";
    case 0xc025: return "TLS_ECDH_ECDSA_WITH_AES_128_CBC_SHA256";
    case 0xc026: return "TLS_ECDH_ECDSA_WITH_AES_256_CBC_SHA384";
    case 0xc027: return "TLS_ECDHE_RSA_WITH_AES_128_CBC_SHA256";
    case 0xc028: return "TLS_ECDHE_RSA_WITH_AES_256_CBC_SHA384";
    case 0xc029: return "TLS_ECDH_RSA_WITH_AES_128_CBC_SHA256";
    case 0xc02a: return "TLS_ECDH_RSA_WITH_AES_256_CBC_SHA384";
    case 0xc02b: return "TLS_ECDHE_ECDSA_WITH_AES_128_GCM_SHA256";
    case 0xc02c: return "TLS_ECDHE_ECDSA_WITH_AES_256_GCM_SHA384";
    case 0xc02d: return "TLS_ECDH_ECDSA_WITH_AES_128_GCM_SHA256";
    case 0xc02e: return "TLS_ECDH_ECDSA_WITH_AES_256_GCM_SHA384";
    case 0xc02f: return "TLS_ECDHE_RSA_WITH_AES_128_GCM_SHA256";
    case 0xc030: return "TLS_ECDHE_RSA_WITH_AES_256_GCM_SHA384";
    case 0xc031: return "TLS_ECDH_RSA_WITH_AES_128_GCM_SHA256";
    case 0xc032: return "TLS_ECDH_RSA_WITH_AES_256_GCM_SHA384";
    case 0xc035: return "TLS_ECDHE_PSK_WITH_AES_128_CBC_SHA";
    case 0xc036: return "TLS_ECDHE_PSK_WITH_AES_256_CBC_SHA";
    case 0xc072: return "TLS_ECDHE_ECDSA_WITH_CAMELLIA_128_CBC_SHA256";
    case 0xc073: return "TLS_ECDHE_ECDSA_WITH_CAMELLIA_256_CBC_SHA384";
    case 0xc076: return "TLS_ECDHE_RSA_WITH_CAMELLIA_128_CBC_SHA256";
    case 0xc077: return "TLS_ECDHE_RSA_WITH_CAMELLIA_256_CBC_SHA384";
    case 0xc09c: return "TLS_RSA_WITH_AES_128_CCM";
    case 0xc09d: return "TLS_RSA_WITH_AES_256_CCM";
    case 0xc09e: return "TLS_DHE_RSA_WITH_AES_128_CCM";
    case 0xc09f: return "TLS_DHE_RSA_WITH_AES_256_CCM";
    case 0xc0ac: return "TLS_ECDHE_ECDSA_WITH_AES_128_CCM";
    case 0xc0ad: return "TLS_ECDHE_ECDSA_WITH_AES_256_CCM";
    case 0xc0ae: return "TLS_ECDHE_ECDSA_WITH_AES_128_CCM_8";
    case 0xc0af: return "TLS_ECDHE_ECDSA_WITH_AES_256_CCM_8";
    case 0xcca8: return "TLS_ECDHE_RSA_WITH_CHACHA20_POLY1305_SHA256";
    case 0xcca9: return "TLS_ECDHE_ECDSA_WITH_CHACHA20_POLY1305_SHA256";
    case 0xccaa: return "TLS_DHE_RSA_WITH_CHACHA20_POLY1305_SHA256";
    case 0xccab: return "TLS_PSK_WITH_CHACHA20_POLY1305_SHA256";
    case 0xccac: return "TLS_ECDHE_PSK_WITH_CHACHA20_POLY1305_SHA256";
    default: return nullptr;
    }
}

} // namespace tlsfeat
