// SPDX-License-Identifier: Apache-2.0

#include "cert_fixtures.hpp"

#include <stdexcept>

namespace tlsfeat::testfix {

static uint8_t nibble(char c) {
    if (c >= '0' && c <= '9')
        return uint8_t(c - '0');
    if (c >= 'a' && c <= 'f')
        return uint8_t(c - 'a' + 10);
    if (c >= 'A' && c <= 'F')
        return uint8_t(c - 'A' + 10);
    throw std::runtime_error("bad hex digit");
}

ByteVec CertFixture::der() const {
    ByteVec out;
    out.reserve(der_hex.size() / 2);
    for (size_t i = 0; i + 1 < der_hex.size(); i += 2)
        out.push_back(uint8_t(nibble(der_hex[i]) << 4 | nibble(der_hex[i + 1])));
    return out;
}

ByteVec fixture_der(const std::string& name) {
    for (const CertFixture& f : cert_fixtures())
        if (f.name == name)
            return f.der();
    throw std::runtime_error("no cert fixture named " + name);
}

} // namespace tlsfeat::testfix
