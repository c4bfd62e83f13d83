// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/x509.hpp"

#include <cstdio>

#include <openssl/evp.h>

#include "tlsfeat/der.hpp"

namespace tlsfeat {

namespace {

constexpr const char* kOidRsaEncryption = "1.2.840.113549.1.1.1";
constexpr const char* kOidEcPublicKey = "1.2.840.10045.2.1";
constexpr const char* kOidDsa = "1.2.840.10040.4.1";

int named_curve_bits(const std::string& oid) {
    if (oid == "1.2.840.10045.3.1.7") return 256; // P-256
    if (oid == "1.3.132.0.34") return 384;        // P-384
    if (oid == "1.3.132.0.35") return 521;        // P-521
    if (oid == "1.3.132.0.33") return 224;        // P-224
    if (oid == "1.3.132.0.10") return 256;        // secp256k1
    if (oid == "1.2.840.10045.3.1.1") return 192; // P-192
    if (oid == "1.3.36.3.3.2.8.1.1.7") return 256;  // brainpoolP256r1
    if (oid == "1.3.36.3.3.2.8.1.1.11") return 384; // brainpoolP384r1
    if (oid == "1.3.36.3.3.2.8.1.1.13") return 512; // brainpoolP512r1
    return 0;
}

int integer_bit_length(ByteSpan value) {
    size_t i = 0;
    while (i < value.size() && value[i] == 0)
        ++i;
    if (i == value.size())
        return 0;
    int bits = 0;
    for (uint8_t b = value[i]; b; b >>= 1)
        ++bits;
    return bits + int(value.size() - i - 1) * 8;
}

int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    int64_t era = (y >= 0 ? y : y - 399) / 400;
    int64_t yoe = y - era * 400;
    int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

bool all_digits(const std::string& s, size_t from, size_t n) {
    if (from + n > s.size())
        return false;
    for (size_t i = from; i < from + n; ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

int num(const std::string& s, size_t from, size_t n) {
    int v = 0;
    for (size_t i = from; i < from + n; ++i)
        v = v * 10 + (s[i] - '0');
    return v;
}

} // namespace

AsnTime parse_asn_time(ByteSpan value, bool generalized, std::vector<std::string>& warnings) {
    AsnTime t;
    t.raw.assign(value.begin(), value.end());
    const std::string& s = t.raw;

    size_t pos = 0;
    if (generalized) {
        if (!all_digits(s, 0, 10)) // YYYYMMDDHH
            return t;
        t.year = num(s, 0, 4);
        pos = 4;
    } else {
        if (!all_digits(s, 0, 8)) // YYMMDDHH
            return t;
        int yy = num(s, 0, 2);
        t.year = yy < 50 ? 2000 + yy : 1900 + yy;
        pos = 2;
    }
    t.month = num(s, pos, 2);
    t.day = num(s, pos + 2, 2);
    t.hour = num(s, pos + 4, 2);
    pos += 6;
    if (all_digits(s, pos, 2)) {
        t.minute = num(s, pos, 2);
        pos += 2;
    }
    if (all_digits(s, pos, 2)) {
        t.second = num(s, pos, 2);
        pos += 2;
    }
    // Fractional seconds are allowed in GeneralizedTime; ignore them.
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9')
            ++pos;
    }

    int offset_sec = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (!all_digits(s, pos + 1, 4))
            return t;
        int sign = s[pos] == '-' ? -1 : 1;
        offset_sec = sign * (num(s, pos + 1, 2) * 3600 + num(s, pos + 3, 2) * 60);
        pos += 5;
    } else if (pos < s.size() && s[pos] == 'Z') {
        ++pos;
    } else {
        warnings.push_back("time-missing-zone:" + s);
    }
    if (pos != s.size())
        return t;
    if (t.month < 1 || t.month > 12 || t.day < 1 || t.day > 31 || t.hour > 23 ||
        t.minute > 59 || t.second > 60)
        return t;

    t.epoch = days_from_civil(t.year, t.month, t.day) * 86400 + t.hour * 3600 +
              t.minute * 60 + t.second - offset_sec;
    t.valid = true;
    return t;
}

namespace {

std::string latin1_to_utf8(ByteSpan value) {
    std::string out;
    out.reserve(value.size());
    for (uint8_t b : value) {
        if (b < 0x80) {
            out += char(b);
        } else {
            out += char(0xc0 | (b >> 6));
            out += char(0x80 | (b & 0x3f));
        }
    }
    return out;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out += char(cp);
    } else if (cp < 0x800) {
        out += char(0xc0 | (cp >> 6));
        out += char(0x80 | (cp & 0x3f));
    } else if (cp < 0x10000) {
        out += char(0xe0 | (cp >> 12));
        out += char(0x80 | ((cp >> 6) & 0x3f));
        out += char(0x80 | (cp & 0x3f));
    } else if (cp < 0x110000) {
        out += char(0xf0 | (cp >> 18));
        out += char(0x80 | ((cp >> 12) & 0x3f));
        out += char(0x80 | ((cp >> 6) & 0x3f));
        out += char(0x80 | (cp & 0x3f));
    } else {
        out += '?';
    }
}

std::string rdn_value_string(ByteSpan src, const DerNode& node,
                             std::vector<std::string>& warnings) {
    ByteSpan v = node.value(src);
    if (node.tag_class != DerClass::Universal)
        return to_hex(v);
    switch (node.tag) {
    case kDerUtf8String:
    case kDerPrintableString:
    case kDerIa5String:
    case kDerNumericString:
        return std::string(v.begin(), v.end());
    case kDerT61String:
        return latin1_to_utf8(v); // T.61 treated as Latin-1
    case kDerBmpString: {
        warnings.push_back("bmpstring-transcoded");
        std::string out;
        for (size_t i = 0; i + 1 < v.size(); i += 2)
            append_utf8(out, uint32_t(v[i]) << 8 | v[i + 1]);
        return out;
    }
    case kDerUniversalString: {
        warnings.push_back("universalstring-transcoded");
        std::string out;
        for (size_t i = 0; i + 3 < v.size(); i += 4)
            append_utf8(out, uint32_t(v[i]) << 24 | uint32_t(v[i + 1]) << 16 |
                                 uint32_t(v[i + 2]) << 8 | v[i + 3]);
        return out;
    }
    default:
        warnings.push_back("rdn-value-tag-" + std::to_string(node.tag));
        return to_hex(v);
    }
}

// Name ::= SEQUENCE OF SET OF SEQUENCE { type OID, value ANY }
std::vector<RdnEntry> parse_name(ByteSpan src, const DerNode& name,
                                 std::vector<std::string>& warnings) {
    std::vector<RdnEntry> out;
    DerChildren rdns(src, name);
    while (auto set = rdns.next()) {
        if (!set->is(kDerSet)) {
            warnings.push_back("name-component-not-set");
            continue;
        }
        DerChildren attrs(src, *set);
        while (auto attr = attrs.next()) {
            if (!attr->is(kDerSequence))
                continue;
            DerChildren pair(src, *attr);
            auto oid = pair.next();
            auto val = pair.next();
            if (!oid || !oid->is(kDerOid) || !val) {
                warnings.push_back("malformed-rdn");
                continue;
            }
            out.push_back(RdnEntry{decode_oid(oid->value(src)),
                                   rdn_value_string(src, *val, warnings)});
        }
    }
    if (!rdns.clean())
        warnings.push_back("name-trailing-bytes");
    return out;
}

std::string serial_hex_string(ByteSpan value, std::vector<std::string>& warnings) {
    if (value.empty())
        return "";
    if (value[0] & 0x80)
        warnings.push_back("negative-serial");
    // Numeric hex: drop leading zero octets (sign padding included).
    size_t i = 0;
    while (i + 1 < value.size() && value[i] == 0)
        ++i;
    ByteSpan trimmed = value.subspan(i);
    if (trimmed.size() > 20)
        warnings.push_back("serial-exceeds-20-octets");
    return to_hex(trimmed);
}

void parse_spki(ByteSpan src, const DerNode& spki, CertificateInfo& info) {
    DerChildren kids(src, spki);
    auto alg = kids.next();
    auto key = kids.next();
    if (!alg || !alg->is(kDerSequence) || !key || !key->is(kDerBitString)) {
        info.warnings.push_back("malformed-spki");
        return;
    }
    DerChildren alg_kids(src, *alg);
    auto alg_oid = alg_kids.next();
    if (!alg_oid || !alg_oid->is(kDerOid)) {
        info.warnings.push_back("malformed-spki-algorithm");
        return;
    }
    std::string oid = decode_oid(alg_oid->value(src));
    ByteSpan key_bits = key->value(src);
    if (key_bits.empty()) {
        info.warnings.push_back("empty-public-key");
        return;
    }
    key_bits = key_bits.subspan(1); // leading unused-bits octet

    if (oid == kOidRsaEncryption) {
        info.public_key_type = "rsa";
        auto rsa = parse_der_node(key_bits, 0);
        if (rsa && rsa->is(kDerSequence)) {
            DerChildren rsa_kids(key_bits, *rsa);
            auto modulus = rsa_kids.next();
            if (modulus && modulus->is(kDerInteger)) {
                info.public_key_bits = integer_bit_length(modulus->value(key_bits));
                return;
            }
        }
        info.warnings.push_back("malformed-rsa-key");
    } else if (oid == kOidEcPublicKey) {
        info.public_key_type = "ec";
        auto params = alg_kids.next();
        if (params && params->is(kDerOid)) {
            std::string curve = decode_oid(params->value(src));
            info.public_key_bits = named_curve_bits(curve);
            if (info.public_key_bits == 0)
                info.warnings.push_back("unknown-curve:" + curve);
        } else {
            info.warnings.push_back("ec-params-not-named-curve");
        }
    } else if (oid == kOidDsa) {
        info.public_key_type = "dsa";
        auto params = alg_kids.next();
        if (params && params->is(kDerSequence)) {
            DerChildren p_kids(src, *params);
            auto p = p_kids.next();
            if (p && p->is(kDerInteger)) {
                info.public_key_bits = integer_bit_length(p->value(src));
                return;
            }
        }
        info.warnings.push_back("malformed-dsa-params");
    } else {
        info.public_key_type = "other:" + oid;
    }
}

} // namespace

std::string AsnTime::iso8601() const {
    if (!valid)
        return raw;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", year, month, day, hour,
                  minute, second);
    return buf;
}

std::string cert_digest(ByteSpan der) {
    static const uint8_t empty = 0;
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    EVP_Digest(der.empty() ? &empty : der.data(), der.size(), md, &md_len, EVP_sha256(),
               nullptr);
    return to_hex(ByteSpan(md, md_len));
}

CertificateInfo parse_certificate(ByteSpan der) {
    CertificateInfo info;
    info.der_length = der.size();
    info.der_digest = cert_digest(der);
    info.version = 1; // DEFAULT v1 when the version field is absent

    auto fail = [&info](const char* what) -> CertificateInfo& {
        info.warnings.push_back(what);
        info.parsed = false;
        return info;
    };

    auto root = parse_der_node(der, 0);
    if (!root || !root->is(kDerSequence))
        return fail("bad-outer-sequence");
    if (root->end() != der.size())
        info.warnings.push_back("trailing-bytes-after-certificate");

    DerChildren cert_kids(der, *root);
    auto tbs = cert_kids.next();
    auto sig_alg = cert_kids.next();
    if (!tbs || !tbs->is(kDerSequence))
        return fail("bad-tbs");

    if (sig_alg && sig_alg->is(kDerSequence)) {
        DerChildren alg_kids(der, *sig_alg);
        auto oid = alg_kids.next();
        if (oid && oid->is(kDerOid))
            info.signature_algorithm = decode_oid(oid->value(der));
        else
            info.warnings.push_back("malformed-signature-algorithm");
    } else {
        info.warnings.push_back("missing-signature-algorithm");
    }

    DerChildren tbs_kids(der, *tbs);
    auto node = tbs_kids.next();

    // [0] EXPLICIT version, absent for v1.
    if (node && node->is_context(0) && node->constructed) {
        DerChildren ver_kids(der, *node);
        auto ver = ver_kids.next();
        if (ver && ver->is(kDerInteger) && ver->value_len == 1) {
            int raw = der[ver->value_off];
            if (raw >= 0 && raw <= 2)
                info.version = raw + 1;
            else
                info.warnings.push_back("version-out-of-range");
        } else {
            info.warnings.push_back("malformed-version");
        }
        node = tbs_kids.next();
    }

    if (!node || !node->is(kDerInteger))
        return fail("bad-serial");
    info.serial_hex = serial_hex_string(node->value(der), info.warnings);

    auto inner_sig = tbs_kids.next();
    if (!inner_sig || !inner_sig->is(kDerSequence))
        return fail("bad-tbs-signature");

    auto issuer = tbs_kids.next();
    if (!issuer || !issuer->is(kDerSequence))
        return fail("bad-issuer");
    info.issuer = parse_name(der, *issuer, info.warnings);

    auto validity = tbs_kids.next();
    if (!validity || !validity->is(kDerSequence))
        return fail("bad-validity");
    {
        DerChildren times(der, *validity);
        auto nb = times.next();
        auto na = times.next();
        if (!nb || !na)
            return fail("bad-validity");
        if (nb->is(kDerUtcTime) || nb->is(kDerGeneralizedTime))
            info.not_before = parse_asn_time(nb->value(der), nb->is(kDerGeneralizedTime),
                                             info.warnings);
        else
            info.warnings.push_back("not-before-unexpected-tag");
        if (na->is(kDerUtcTime) || na->is(kDerGeneralizedTime))
            info.not_after = parse_asn_time(na->value(der), na->is(kDerGeneralizedTime),
                                            info.warnings);
        else
            info.warnings.push_back("not-after-unexpected-tag");
        if (info.not_before.valid && info.not_after.valid &&
            info.not_before.epoch > info.not_after.epoch)
            info.warnings.push_back("validity-reversed");
        if (!info.not_before.valid)
            info.warnings.push_back("unparsed-not-before");
        if (!info.not_after.valid)
            info.warnings.push_back("unparsed-not-after");
    }

    auto subject = tbs_kids.next();
    if (!subject || !subject->is(kDerSequence))
        return fail("bad-subject");
    info.subject = parse_name(der, *subject, info.warnings);

    auto spki = tbs_kids.next();
    if (!spki || !spki->is(kDerSequence))
        return fail("bad-spki");
    parse_spki(der, *spki, info);

    // Optional: [1]/[2] unique IDs, [3] extensions.
    while ((node = tbs_kids.next())) {
        if (node->is_context(3) && node->constructed) {
            DerChildren ext_wrap(der, *node);
            auto ext_seq = ext_wrap.next();
            if (ext_seq && ext_seq->is(kDerSequence)) {
                DerChildren exts(der, *ext_seq);
                while (exts.next())
                    ++info.extension_count;
                if (!exts.clean())
                    info.warnings.push_back("malformed-extensions");
            } else {
                info.warnings.push_back("malformed-extensions");
            }
        }
    }

    info.parsed = true;
    return info;
}

} // namespace tlsfeat
