// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/tls.hpp"

#include <algorithm>

namespace tlsfeat {

namespace {

bool plausible_record_header(ByteSpan b) {
    if (b.size() < 5)
        return false;
    if (b[0] < kTlsChangeCipherSpec || b[0] > kTlsApplicationData)
        return false;
    if (b[1] != 3)
        return false;
    size_t len = size_t(b[3]) << 8 | b[4];
    return len <= kMaxRecordLen;
}

} // namespace

bool detect_tls(ByteSpan first_bytes) {
    if (first_bytes.size() < 6)
        return false;
    const uint8_t b0 = first_bytes[0];
    if (b0 < kTlsChangeCipherSpec || b0 > kTlsApplicationData)
        return false;
    if (first_bytes[1] != 3 || first_bytes[2] > 4)
        return false;
    size_t len = size_t(first_bytes[3]) << 8 | first_bytes[4];
    return len >= 1 && len <= kMaxRecordLen;
}

RecordStream parse_records(const std::vector<StreamSegment>& segments) {
    RecordStream out;
    for (const StreamSegment& seg : segments) {
        ByteSpan data(seg.bytes);
        if (seg.after_gap) {
            // Whatever record was in flight is unrecoverable.
            if (out.trailing_partial) {
                out.trailing_partial = false;
                out.gap_discard = true;
            }
            if (!plausible_record_header(data)) {
                out.gap_discard = true;
                continue; // try the next post-gap chunk boundary
            }
        }
        size_t pos = 0;
        while (pos < data.size()) {
            if (data.size() - pos < 5) {
                out.trailing_partial = true;
                break;
            }
            uint8_t type = data[pos];
            uint8_t major = data[pos + 1];
            uint8_t minor = data[pos + 2];
            size_t len = size_t(data[pos + 3]) << 8 | data[pos + 4];
            if (type < kTlsChangeCipherSpec || type > kTlsApplicationData || major != 3 ||
                len > kMaxRecordLen) {
                out.desync = true;
                return out;
            }
            if (data.size() - pos - 5 < len) {
                out.trailing_partial = true;
                break;
            }
            TlsRecord rec;
            rec.content_type = type;
            rec.version_major = major;
            rec.version_minor = minor;
            rec.declared_len = uint16_t(len);
            rec.body = data.subspan(pos + 5, len);
            out.records.push_back(rec);
            pos += 5 + len;
        }
    }
    return out;
}

HandshakeStream extract_handshakes(const std::vector<TlsRecord>& records) {
    HandshakeStream out;

    // Concatenate plaintext handshake-record bodies into one logical
    // stream, keeping record boundaries for the spanned-records count.
    ByteVec stream;
    std::vector<size_t> boundaries; // start offset of each contributing record
    bool ccs_seen = false;
    for (const TlsRecord& rec : records) {
        if (rec.content_type == kTlsChangeCipherSpec) {
            ccs_seen = true;
            continue;
        }
        if (rec.content_type != kTlsHandshake)
            continue;
        if (ccs_seen) {
            ++out.encrypted_records;
            continue;
        }
        if (!rec.body.empty())
            boundaries.push_back(stream.size());
        stream.insert(stream.end(), rec.body.begin(), rec.body.end());
    }

    auto records_spanning = [&](size_t begin, size_t end) -> uint32_t {
        // Record intervals intersecting [begin, end); boundaries are
        // strictly increasing (empty bodies contribute none).
        auto first = std::upper_bound(boundaries.begin(), boundaries.end(), begin);
        auto last = std::lower_bound(boundaries.begin(), boundaries.end(), end);
        if (first > last)
            return 1;
        auto n = (last - first) + 1;
        return uint32_t(n);
    };

    size_t pos = 0;
    while (pos < stream.size()) {
        if (stream.size() - pos < 4) {
            ++out.truncated_messages;
            break;
        }
        uint8_t type = stream[pos];
        size_t len = size_t(stream[pos + 1]) << 16 | size_t(stream[pos + 2]) << 8 |
                     stream[pos + 3];
        if (stream.size() - pos - 4 < len) {
            ++out.truncated_messages;
            break;
        }
        HandshakeMessage msg;
        msg.msg_type = type;
        msg.body.assign(stream.begin() + pos + 4, stream.begin() + pos + 4 + len);
        msg.spanned_records = records_spanning(pos, pos + 4 + len);
        out.messages.push_back(std::move(msg));
        pos += 4 + len;
    }
    return out;
}

namespace {

std::vector<std::pair<uint16_t, ByteVec>> parse_extensions(ByteReader& r, bool* error) {
    std::vector<std::pair<uint16_t, ByteVec>> exts;
    if (r.at_end())
        return exts; // SSLv3-era hello without extensions block
    size_t ext_total = r.u16();
    if (!r.ok() || ext_total > r.remaining()) {
        *error = true;
        return exts;
    }
    size_t end = r.offset() + ext_total;
    while (r.offset() + 4 <= end) {
        uint16_t type = r.u16();
        size_t len = r.u16();
        if (!r.ok() || r.offset() + len > end) {
            *error = true;
            return exts;
        }
        ByteSpan body = r.bytes(len);
        exts.emplace_back(type, ByteVec(body.begin(), body.end()));
    }
    return exts;
}

std::optional<std::string> sni_host(const ByteVec& ext) {
    ByteReader r(ext);
    size_t list_len = r.u16();
    if (!r.ok() || list_len > r.remaining())
        return std::nullopt;
    size_t end = r.offset() + list_len;
    while (r.offset() + 3 <= end) {
        uint8_t name_type = r.u8();
        size_t len = r.u16();
        if (!r.ok() || r.offset() + len > end)
            return std::nullopt;
        ByteSpan name = r.bytes(len);
        if (name_type == 0) // first host_name entry wins
            return std::string(name.begin(), name.end());
    }
    return std::nullopt;
}

} // namespace

ClientHelloInfo parse_client_hello(ByteSpan body) {
    ClientHelloInfo info;
    ByteReader r(body);

    info.client_version = r.u16();
    r.skip(32); // random
    size_t sid_len = r.u8();
    r.skip(sid_len);

    size_t suites_len = r.u16();
    if (!r.ok() || suites_len > r.remaining() || suites_len % 2 != 0) {
        info.parse_error = true;
        return info;
    }
    for (size_t i = 0; i < suites_len / 2; ++i)
        info.cipher_suites.push_back(r.u16());

    size_t comp_len = r.u8();
    if (!r.ok() || comp_len > r.remaining()) {
        info.parse_error = true;
        return info;
    }
    ByteSpan comp = r.bytes(comp_len);
    info.compression_methods.assign(comp.begin(), comp.end());

    info.extensions = parse_extensions(r, &info.parse_error);
    for (const auto& [type, data] : info.extensions) {
        if (type == kExtServerName) {
            info.sni = sni_host(data);
            break;
        }
    }
    if (!r.ok())
        info.parse_error = true;
    return info;
}

ServerHelloInfo parse_server_hello(ByteSpan body) {
    ServerHelloInfo info;
    ByteReader r(body);

    info.server_version = r.u16();
    r.skip(32); // random
    size_t sid_len = r.u8();
    r.skip(sid_len);
    info.cipher_suite = r.u16();
    r.u8(); // compression method
    if (!r.ok()) {
        info.parse_error = true;
        info.cipher_suite = 0;
        return info;
    }

    info.extensions = parse_extensions(r, &info.parse_error);
    for (const auto& [type, data] : info.extensions) {
        if (type == kExtSupportedVersions && data.size() >= 2) {
            info.supported_version = uint16_t(data[0] << 8 | data[1]);
            break;
        }
    }
    return info;
}

CertificateMsg parse_certificate_msg(ByteSpan body) {
    CertificateMsg out;
    ByteReader r(body);
    size_t chain_len = r.u24();
    if (!r.ok() || chain_len > r.remaining()) {
        out.truncated = true;
        if (!r.ok())
            return out;
        chain_len = r.remaining();
    }
    size_t end = r.offset() + chain_len;
    while (r.offset() + 3 <= end) {
        size_t entry_len = r.u24();
        if (!r.ok() || r.offset() + entry_len > end) {
            out.truncated = true;
            return out;
        }
        ByteSpan der = r.bytes(entry_len);
        out.der.emplace_back(der.begin(), der.end());
    }
    if (r.offset() != end)
        out.truncated = true; // 1-2 stray bytes cannot form an entry header
    return out;
}

TlsFlowInfo dissect_flow(const Flow& flow) {
    TlsFlowInfo info;

    for (int d = 0; d < 2; ++d) {
        const DirStream& ds = flow.dir[d];
        info.gapped = info.gapped || ds.gapped;
        if (ds.segments.empty())
            continue;
        const ByteVec& head = ds.segments.front().bytes;
        if (!detect_tls(ByteSpan(head)))
            continue;

        RecordStream rs = parse_records(ds.segments);
        info.desync = info.desync || rs.desync;
        info.gapped = info.gapped || rs.gap_discard;
        info.complete_records += uint32_t(rs.records.size());

        HandshakeStream hs = extract_handshakes(rs.records);
        info.truncated_messages += hs.truncated_messages;
        for (const HandshakeMessage& msg : hs.messages) {
            ++info.handshake_type_counts[msg.msg_type];
            switch (msg.msg_type) {
            case kHsClientHello:
                if (!info.client_hello)
                    info.client_hello = parse_client_hello(ByteSpan(msg.body));
                break;
            case kHsServerHello:
                if (!info.server_hello)
                    info.server_hello = parse_server_hello(ByteSpan(msg.body));
                break;
            case kHsCertificate: {
                CertificateMsg cm = parse_certificate_msg(ByteSpan(msg.body));
                if (cm.truncated)
                    ++info.truncated_messages;
                for (ByteVec& der : cm.der)
                    info.certificates.push_back(std::move(der));
                break;
            }
            default:
                break;
            }
        }
    }

    info.is_tls = info.complete_records > 0;

    if (info.server_hello) {
        info.negotiated_version = info.server_hello->supported_version
                                      ? *info.server_hello->supported_version
                                      : info.server_hello->server_version;
    } else if (info.client_hello) {
        info.negotiated_version = 0;
    }
    if (info.negotiated_version == 0x0304 && info.handshake_type_counts.count(kHsCertificate) == 0)
        info.certs_encrypted = true;

    return info;
}

const char* tls_version_name(uint16_t code) {
    switch (code) {
    case 0x0300: return "SSL3.0";
    case 0x0301: return "TLS1.0";
    case 0x0302: return "TLS1.1";
    case 0x0303: return "TLS1.2";
    case 0x0304: return "TLS1.3";
    default: return nullptr;
    }
}

} // namespace tlsfeat
