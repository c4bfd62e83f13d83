// SPDX-License-Identifier: Apache-2.0
//
// pcap.hpp - classic pcap file reader (both byte orders, us and ns magic)

#pragma once

#include <cstdint>
#include <cstdio>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tlsfeat/bytes.hpp"

namespace tlsfeat {

// Link-layer types we decode. Anything else is a hard error naming the code.
inline constexpr uint32_t kLinkEthernet = 1;
inline constexpr uint32_t kLinkLinuxSll = 113;

enum class TsResolution { Micro, Nano };

struct CaptureHeader {
    TsResolution resolution = TsResolution::Micro;
    bool little_endian = false; // byte order of all header fields in the file
    uint32_t link_type = 0;
    uint32_t snaplen = 0;
};

// One raw capture record. `frame` points into the reader's internal buffer
// and is valid until the next call to next().
struct RawRecord {
    int64_t ts_sec = 0;
    uint32_t ts_nsec = 0;   // already normalized to nanoseconds
    uint32_t orig_len = 0;  // length on the wire
    ByteSpan frame;         // captured bytes (may be shorter than orig_len)
};

class PcapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mid-file truncation is not an exception: the reader stops and records
// the offset so callers can report it and keep the packets read so far.
struct PcapTruncation {
    uint64_t offset = 0;
    std::string what;
};

class PcapReader {
public:
    // Throws PcapError on: missing file, short global header, bad magic,
    // zero snaplen, unsupported link type.
    explicit PcapReader(const std::string& path);
    ~PcapReader();

    PcapReader(const PcapReader&) = delete;
    PcapReader& operator=(const PcapReader&) = delete;

    const CaptureHeader& header() const { return header_; }

    // Next record in file order; nullopt at EOF or after a truncation.
    std::optional<RawRecord> next();

    const std::optional<PcapTruncation>& truncation() const { return truncation_; }

private:
    uint32_t field(const uint8_t* p) const;

    std::FILE* file_ = nullptr;
    CaptureHeader header_;
    std::vector<uint8_t> buf_;
    uint64_t offset_ = 0;
    std::optional<PcapTruncation> truncation_;
    bool done_ = false;
};

} // namespace tlsfeat
