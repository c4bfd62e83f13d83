// SPDX-License-Identifier: Apache-2.0
//
// ip.hpp - IPv4/IPv6 address and endpoint types

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <string>

#include "tlsfeat/bytes.hpp"

namespace tlsfeat {

struct IpAddr {
    bool v6 = false;
    std::array<uint8_t, 16> bytes{}; // v4 uses the first 4 bytes

    static IpAddr v4(const uint8_t* p) {
        IpAddr a;
        std::memcpy(a.bytes.data(), p, 4);
        return a;
    }

    static IpAddr v6addr(const uint8_t* p) {
        IpAddr a;
        a.v6 = true;
        std::memcpy(a.bytes.data(), p, 16);
        return a;
    }

    auto operator<=>(const IpAddr&) const = default;

    std::string str() const;
};

struct Endpoint {
    IpAddr ip;
    uint16_t port = 0;

    auto operator<=>(const Endpoint&) const = default;
};

} // namespace tlsfeat
