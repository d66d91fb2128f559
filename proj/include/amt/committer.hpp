#pragma once

#include <span>
#include <vector>

#include "amt/batch_builder.hpp"

namespace amt {

struct CommitOutcome {
    Digest32 root{};
    std::uint64_t pair_hashes = 0;
    std::uint64_t promotions = 0;
    std::vector<Node> computed_nodes; // commit-time nodes, root last
    std::uint64_t checkpoint_count = 0;
};

/// Folds the checkpoints of all batches into the root, following the
/// canonical geometry and each node's order bit. Validates every result
/// against the plan before hashing anything; accepts results in any order
/// and produces a byte-identical outcome regardless of it.
CommitOutcome commit(const TreePlan& plan, std::span<const BatchResult> results);

/// Hash count of a monolithic synchronous build, leaf hashes excluded.
std::uint64_t full_sync_internal_count(const TreePlan& plan);

} // namespace amt
