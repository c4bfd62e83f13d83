// SPDX-License-Identifier: Apache-2.0
//
// bytes.hpp - bounds-checked cursor over wire-format byte buffers

#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tlsfeat {

using ByteSpan = std::span<const uint8_t>;
using ByteVec = std::vector<uint8_t>;

// Sequential big-endian reader. All reads are bounds-checked; a failed
// read sets the error flag and returns 0 so callers can bail out once
// instead of checking every field.
class ByteReader {
public:
    explicit ByteReader(ByteSpan data) : data_(data) {}
    ByteReader(const uint8_t* p, size_t n) : data_(p, n) {}

    size_t offset() const { return pos_; }
    size_t remaining() const { return data_.size() - pos_; }
    bool ok() const { return !failed_; }
    bool at_end() const { return pos_ >= data_.size(); }

    uint8_t u8() {
        if (!ensure(1)) return 0;
        return data_[pos_++];
    }

    uint16_t u16() {
        if (!ensure(2)) return 0;
        uint16_t v = uint16_t(data_[pos_] << 8 | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    uint32_t u24() {
        if (!ensure(3)) return 0;
        uint32_t v = uint32_t(data_[pos_]) << 16 | uint32_t(data_[pos_ + 1]) << 8 |
                     uint32_t(data_[pos_ + 2]);
        pos_ += 3;
        return v;
    }

    uint32_t u32() {
        if (!ensure(4)) return 0;
        uint32_t v = uint32_t(data_[pos_]) << 24 | uint32_t(data_[pos_ + 1]) << 16 |
                     uint32_t(data_[pos_ + 2]) << 8 | uint32_t(data_[pos_ + 3]);
        pos_ += 4;
        return v;
    }

    ByteSpan bytes(size_t n) {
        if (!ensure(n)) return {};
        ByteSpan s = data_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    bool skip(size_t n) {
        if (!ensure(n)) return false;
        pos_ += n;
        return true;
    }

    // Peek without consuming; returns 0 past the end.
    uint8_t peek(size_t ahead = 0) const {
        if (pos_ + ahead >= data_.size()) return 0;
        return data_[pos_ + ahead];
    }

private:
    bool ensure(size_t n) {
        if (failed_ || data_.size() - pos_ < n) {
            failed_ = true;
            return false;
        }
        return true;
    }

    ByteSpan data_;
    size_t pos_ = 0;
    bool failed_ = false;
};

std::string to_hex(ByteSpan data);

} // namespace tlsfeat
