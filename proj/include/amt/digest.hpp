#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amt {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

/// 256-bit digest; every hash value in the tree is exactly 32 bytes.
using Digest32 = std::array<std::uint8_t, 32>;

/// One-shot 256-bit hash backend. SHA-256 is the default and the only
/// function named by the v1 file formats.
using HashFn = Digest32 (*)(BytesView);

Digest32 sha256(BytesView data);

/// Lowercase hex, no prefix, exactly 64 characters.
std::string to_hex(const Digest32& digest);

/// Accepts exactly 64 lowercase hex characters; anything else is rejected.
std::optional<Digest32> digest_from_hex(std::string_view hex);

std::string bytes_to_hex(BytesView data);
std::optional<Bytes> bytes_from_hex(std::string_view hex);

inline BytesView as_bytes_view(std::string_view text) {
    return {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()};
}

} // namespace amt
