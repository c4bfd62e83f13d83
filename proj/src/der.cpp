// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/der.hpp"

namespace tlsfeat {

std::optional<DerNode> parse_der_node(ByteSpan data, size_t offset) {
    if (offset >= data.size())
        return std::nullopt;

    size_t pos = offset;
    uint8_t id = data[pos++];

    DerNode node;
    node.tag_class = DerClass(id >> 6);
    node.constructed = (id & 0x20) != 0;
    node.tag = id & 0x1f;

    if (node.tag == 0x1f) {
        // High-tag-number form: base-128, at most 4 octets.
        node.tag = 0;
        for (int i = 0;; ++i) {
            if (i == 4 || pos >= data.size())
                return std::nullopt;
            uint8_t b = data[pos++];
            node.tag = node.tag << 7 | (b & 0x7f);
            if (!(b & 0x80))
                break;
        }
    }

    if (pos >= data.size())
        return std::nullopt;
    uint8_t len0 = data[pos++];
    size_t len = 0;
    if (len0 < 0x80) {
        len = len0;
    } else if (len0 == 0x80) {
        return std::nullopt; // indefinite length is not legal DER
    } else {
        size_t n = len0 & 0x7f;
        if (n > 4 || pos + n > data.size())
            return std::nullopt;
        for (size_t i = 0; i < n; ++i)
            len = len << 8 | data[pos++];
    }

    if (len > data.size() - pos)
        return std::nullopt; // value overruns the buffer

    node.header_len = pos - offset;
    node.value_off = pos;
    node.value_len = len;
    return node;
}

std::optional<DerNode> DerChildren::next() {
    if (pos_ >= end_)
        return std::nullopt;
    auto node = parse_der_node(data_, pos_);
    if (!node || node->end() > end_) {
        clean_ = false;
        pos_ = end_;
        return std::nullopt;
    }
    pos_ = node->end();
    return node;
}

std::string decode_oid(ByteSpan value) {
    if (value.empty())
        return "";
    std::string out;
    uint64_t comp = 0;
    bool first = true;
    int octets = 0;
    for (uint8_t b : value) {
        if (++octets > 9)
            return out; // component absurdly long; keep what we have
        comp = comp << 7 | (b & 0x7f);
        if (b & 0x80)
            continue;
        if (first) {
            uint64_t c1 = comp < 80 ? comp / 40 : 2;
            uint64_t c2 = comp - c1 * 40;
            out = std::to_string(c1) + "." + std::to_string(c2);
            first = false;
        } else {
            out += "." + std::to_string(comp);
        }
        comp = 0;
        octets = 0;
    }
    return out;
}

} // namespace tlsfeat
