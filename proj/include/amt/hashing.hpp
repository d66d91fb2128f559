#pragma once

#include "amt/digest.hpp"

namespace amt {

// Domain-separation prefixes. Leaf hashes, interior pair hashes and
// single-child promotion hashes must never share a preimage.
inline constexpr std::uint8_t kLeafPrefix = 0x00;
inline constexpr std::uint8_t kPairPrefix = 0x01;
inline constexpr std::uint8_t kPromotePrefix = 0x02;

/// H(0x00 || data). Empty input is allowed.
Digest32 hash_leaf(BytesView data, HashFn h = sha256);

/// H(0x01 || left || right). Not symmetric in its arguments.
Digest32 hash_pair(const Digest32& left, const Digest32& right, HashFn h = sha256);

/// H(0x02 || child). Parent of the sole child on an odd-width level.
Digest32 hash_promote(const Digest32& child, HashFn h = sha256);

} // namespace amt
