#pragma once

#include <variant>
#include <vector>

#include "amt/oracle.hpp"

namespace amt {

enum class Side : std::uint8_t { Left, Right };

/// The current node has a sibling; hash them in the order the side dictates.
struct PairStep {
    Digest32 sibling{};
    Side sibling_side = Side::Left;

    friend bool operator==(const PairStep&, const PairStep&) = default;
};

/// The current node is a promoted single child; no payload.
struct PromoteStep {
    friend bool operator==(const PromoteStep&, const PromoteStep&) = default;
};

using ProofStep = std::variant<PairStep, PromoteStep>;

struct InclusionProof {
    std::uint64_t leaf_index = 0;
    std::vector<ProofStep> steps; // leaf-adjacent first; one per level for n >= 2

    friend bool operator==(const InclusionProof&, const InclusionProof&) = default;
};

InclusionProof prove_inclusion(const OracleTree& tree, std::uint64_t leaf_index);

/// Folds hash_leaf(leaf_data) through the steps and compares with root.
/// Malformed proofs simply fail verification.
bool verify_inclusion(const Digest32& root, BytesView leaf_data,
                      const InclusionProof& proof);

} // namespace amt
