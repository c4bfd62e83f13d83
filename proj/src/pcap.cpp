// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/pcap.hpp"

#include <cerrno>
#include <cstring>

namespace tlsfeat {

namespace {

// The four legal magic values, as read from the first four file bytes
// interpreted big-endian.
constexpr uint32_t kMagicUsBe = 0xa1b2c3d4; // file bytes a1 b2 c3 d4
constexpr uint32_t kMagicUsLe = 0xd4c3b2a1;
constexpr uint32_t kMagicNsBe = 0xa1b23c4d;
constexpr uint32_t kMagicNsLe = 0x4d3cb2a1;

uint32_t be32(const uint8_t* p) {
    return uint32_t(p[0]) << 24 | uint32_t(p[1]) << 16 | uint32_t(p[2]) << 8 | uint32_t(p[3]);
}

uint32_t le32(const uint8_t* p) {
    return uint32_t(p[3]) << 24 | uint32_t(p[2]) << 16 | uint32_t(p[1]) << 8 | uint32_t(p[0]);
}

} // namespace

uint32_t PcapReader::field(const uint8_t* p) const {
    return header_.little_endian ? le32(p) : be32(p);
}

PcapReader::PcapReader(const std::string& path) {
    file_ = std::fopen(path.c_str(), "rb");
    if (!file_)
        throw PcapError(path + ": " + std::strerror(errno));

    uint8_t gh[24];
    if (std::fread(gh, 1, sizeof(gh), file_) != sizeof(gh)) {
        std::fclose(file_);
        file_ = nullptr;
        throw PcapError(path + ": truncated global header");
    }

    switch (be32(gh)) {
    case kMagicUsBe:
        header_.resolution = TsResolution::Micro;
        header_.little_endian = false;
        break;
    case kMagicUsLe:
        header_.resolution = TsResolution::Micro;
        header_.little_endian = true;
        break;
    case kMagicNsBe:
        header_.resolution = TsResolution::Nano;
        header_.little_endian = false;
        break;
    case kMagicNsLe:
        header_.resolution = TsResolution::Nano;
        header_.little_endian = true;
        break;
    default:
        std::fclose(file_);
        file_ = nullptr;
        throw PcapError(path + ": bad magic");
    }

    header_.snaplen = field(gh + 16);
    header_.link_type = field(gh + 20);
    offset_ = 24;

    if (header_.snaplen == 0) {
        std::fclose(file_);
        file_ = nullptr;
        throw PcapError(path + ": snaplen is zero");
    }
    if (header_.link_type != kLinkEthernet && header_.link_type != kLinkLinuxSll) {
        std::string msg = path + ": unsupported link type " + std::to_string(header_.link_type);
        std::fclose(file_);
        file_ = nullptr;
        throw PcapError(msg);
    }
}

PcapReader::~PcapReader() {
    if (file_)
        std::fclose(file_);
}

std::optional<RawRecord> PcapReader::next() {
    if (done_ || !file_)
        return std::nullopt;

    uint8_t rh[16];
    size_t got = std::fread(rh, 1, sizeof(rh), file_);
    if (got == 0) {
        done_ = true; // clean EOF
        return std::nullopt;
    }
    if (got != sizeof(rh)) {
        truncation_ = PcapTruncation{offset_, "truncated record header"};
        done_ = true;
        return std::nullopt;
    }

    RawRecord rec;
    rec.ts_sec = field(rh);
    uint32_t sub = field(rh + 4);
    rec.ts_nsec = header_.resolution == TsResolution::Nano ? sub : sub * 1000u;
    if (rec.ts_nsec >= 1000000000u) { // tolerate sloppy writers
        rec.ts_sec += rec.ts_nsec / 1000000000u;
        rec.ts_nsec %= 1000000000u;
    }
    uint32_t incl_len = field(rh + 8);
    rec.orig_len = field(rh + 12);

    // A capture length beyond the declared snaplen (plus slack for the
    // link header) means the record header itself is garbage.
    if (incl_len > header_.snaplen + 65536u) {
        truncation_ = PcapTruncation{offset_, "implausible capture length"};
        done_ = true;
        return std::nullopt;
    }

    buf_.resize(incl_len);
    if (incl_len > 0 && std::fread(buf_.data(), 1, incl_len, file_) != incl_len) {
        truncation_ = PcapTruncation{offset_, "truncated record body"};
        done_ = true;
        return std::nullopt;
    }
    offset_ += 16 + incl_len;

    rec.frame = ByteSpan(buf_.data(), buf_.size());
    return rec;
}

} // namespace tlsfeat
