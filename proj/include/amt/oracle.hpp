#pragma once

#include <span>
#include <vector>

#include "amt/hashing.hpp"

namespace amt {

/// Classic synchronous Merkle tree, fully materialized level by level.
/// Shares the hash primitives and the canonical shape with the batched path
/// but none of its code; used as the ground truth in equivalence tests and
/// as the baseline for cost comparisons.
struct OracleTree {
    std::vector<std::vector<Digest32>> levels; // levels[0] = leaf digests
    std::uint64_t n = 0;
    std::uint64_t hash_ops = 0;

    std::uint32_t height() const {
        return static_cast<std::uint32_t>(levels.size() - 1);
    }
    const Digest32& root() const { return levels.back().front(); }
};

OracleTree classic_build(std::span<const Bytes> leaves);
Digest32 classic_root(std::span<const Bytes> leaves);

} // namespace amt
