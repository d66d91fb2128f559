#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "amt/digest.hpp"

namespace amt {

/// Batch id carried by commit-time nodes whose descendants span more than
/// one batch. Valid batch ids are 0..B-1 with B strictly below this value.
inline constexpr std::uint32_t kCompoundSentinel = 0xffffffffu;

struct Position {
    std::uint32_t level = 0; // 0 = leaf level
    std::uint64_t index = 0; // 0-based within the level

    friend auto operator<=>(const Position&, const Position&) = default;
};

enum class NodeKind : std::uint8_t {
    Leaf,
    Internal,
    DigestPlaceholder,
    LayerCheckpoint,
    Compound,
};

struct Node {
    Position position;
    std::uint32_t batch = 0;      // kCompoundSentinel for compound nodes
    std::uint8_t order = 0;       // 0 = left child of its parent, 1 = right
    NodeKind kind = NodeKind::Internal;
    std::optional<Digest32> data; // absent only for placeholder nodes

    friend bool operator==(const Node&, const Node&) = default;
};

/// Canonical tree geometry, fixed before any hashing starts. Batches are
/// laid out left to right in declaration order as contiguous leaf ranges.
struct TreePlan {
    std::vector<std::uint64_t> batch_sizes;
    std::vector<std::uint64_t> batch_offsets; // cumulative start of each range
    std::uint64_t total_leaves = 0;
    std::uint32_t height = 0;
    std::vector<std::uint64_t> level_widths; // leaf level first, root last

    std::uint32_t batch_count() const {
        return static_cast<std::uint32_t>(batch_sizes.size());
    }
    std::uint64_t width(std::uint32_t level) const { return level_widths[level]; }

    friend bool operator==(const TreePlan&, const TreePlan&) = default;
};

/// Leaf range [first, last) covered by a node.
struct LeafSpan {
    std::uint64_t first = 0;
    std::uint64_t last = 0; // exclusive

    friend bool operator==(const LeafSpan&, const LeafSpan&) = default;
};

struct Children {
    Position left;
    std::optional<Position> right; // empty when the parent is a promotion

    bool is_promotion() const { return !right.has_value(); }
};

/// 0 for a single leaf, otherwise ceil(log2(leaf_count)).
std::uint32_t tree_height(std::uint64_t leaf_count);

/// Width of a level under ceil-halving: width(0) = n, width(l+1) = ceil(width(l)/2).
std::uint64_t level_width(std::uint64_t leaf_count, std::uint32_t level);

/// Derives the full geometry from the batch sizes. Deterministic in the input.
TreePlan plan_tree(std::vector<std::uint64_t> batch_sizes);

Position parent_of(const TreePlan& plan, const Position& pos);
Children children_of(const TreePlan& plan, const Position& pos);

/// The batch whose contiguous leaf range contains the given leaf.
std::uint32_t owner_of_leaf(const TreePlan& plan, std::uint64_t leaf_index);

LeafSpan span_of(const TreePlan& plan, const Position& pos);

/// Child slot a node occupies under its parent. A promoted single child is
/// always the left slot.
inline std::uint8_t order_bit(const Position& pos) {
    return static_cast<std::uint8_t>(pos.index & 1u);
}

/// Throws Errc::range unless pos names a node of the plan's shape.
void validate_position(const TreePlan& plan, const Position& pos);

/// hash_leaf over the canonical serialization of the batch sizes. Ties a
/// checkpoint set to the exact geometry it was produced under.
Digest32 plan_fingerprint(const TreePlan& plan);

} // namespace amt
