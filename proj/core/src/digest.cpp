#include "camscout/digest.hpp"

#include <openssl/sha.h>

#include <array>

namespace camscout {

std::string sha256_hex(std::span<const std::byte> data) {
    std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
    SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md.data());
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(md.size() * 2);
    for (unsigned char b : md) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0x0f]);
    }
    return out;
}

std::string sha256_hex(std::string_view data) {
    return sha256_hex(std::as_bytes(std::span{data.data(), data.size()}));
}

}  // namespace camscout
