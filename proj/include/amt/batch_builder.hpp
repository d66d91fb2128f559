#pragma once

#include <span>
#include <vector>

#include "amt/geometry.hpp"

namespace amt {

/// Everything one batch hands to the commit step: its Layer Checkpoint
/// nodes plus bookkeeping about the work performed. Checkpoints are the
/// maximal nodes computable from the batch's leaves alone; their spans are
/// disjoint and cover exactly the batch's leaf range.
struct BatchResult {
    std::uint32_t batch_id = 0;
    Digest32 plan_fingerprint{};
    std::vector<Node> checkpoints; // ascending by leaf-span start
    std::uint64_t nodes_computed = 0;
    std::uint64_t leaf_count = 0;

    friend bool operator==(const BatchResult&, const BatchResult&) = default;
};

/// Positions of the batch's checkpoints. Pure geometry: a node is
/// batch-computable iff all its children are (a promotion node iff its sole
/// child is), and a checkpoint is a computable node with no computable parent.
std::vector<Position> checkpoint_positions(const TreePlan& plan, std::uint32_t batch_id);

/// Hashes every batch-computable node bottom-up, treating foreign leaves as
/// placeholders, and returns the checkpoint frontier.
BatchResult build_batch(const TreePlan& plan, std::uint32_t batch_id,
                        std::span<const Bytes> leaves);

/// Foreign leaves this batch's conceptual tree replaces with placeholders.
std::uint64_t digest_placeholder_count(const TreePlan& plan, std::uint32_t batch_id);

/// Hash evaluations build_batch performs for this batch; data-independent.
std::uint64_t batch_build_op_count(const TreePlan& plan, std::uint32_t batch_id);

} // namespace amt
