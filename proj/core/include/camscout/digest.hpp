#pragma once

#include <span>
#include <string>
#include <string_view>

namespace camscout {

/// Lowercase hex SHA-256 of the input (64 characters).
std::string sha256_hex(std::span<const std::byte> data);
std::string sha256_hex(std::string_view data);

}  // namespace camscout
