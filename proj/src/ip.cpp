// SPDX-License-Identifier: Apache-2.0

#include "tlsfeat/ip.hpp"

#include <cstdio>

namespace tlsfeat {

std::string IpAddr::str() const {
    char buf[64];
    if (!v6) {
        std::snprintf(buf, sizeof(buf), "%u.%u.%u.%u", bytes[0], bytes[1], bytes[2], bytes[3]);
        return buf;
    }

    // RFC 5952 shortening: compress the longest run of zero groups.
    uint16_t g[8];
    for (int i = 0; i < 8; ++i)
        g[i] = uint16_t(bytes[2 * i] << 8 | bytes[2 * i + 1]);

    int best_start = -1, best_len = 0;
    for (int i = 0; i < 8;) {
        if (g[i] != 0) {
            ++i;
            continue;
        }
        int j = i;
        while (j < 8 && g[j] == 0)
            ++j;
        if (j - i > best_len) {
            best_start = i;
            best_len = j - i;
        }
        i = j;
    }
    if (best_len < 2)
        best_start = -1;

    std::string out;
    for (int i = 0; i < 8;) {
        if (i == best_start) {
            out += "::";
            i += best_len;
            continue;
        }
        if (!out.empty() && out.back() != ':')
            out += ':';
        std::snprintf(buf, sizeof(buf), "%x", g[i]);
        out += buf;
        ++i;
    }
    if (out.empty())
        out = "::";
    return out;
}

std::string to_hex(ByteSpan data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out += digits[b >> 4];
        out += digits[b & 0x0f];
    }
    return out;
}

} // namespace tlsfeat
