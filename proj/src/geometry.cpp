#include "amt/geometry.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "amt/errors.hpp"
#include "amt/hashing.hpp"

namespace amt {

namespace {

// Keeps index << level arithmetic comfortably inside 64 bits.
constexpr std::uint64_t kMaxLeaves = std::uint64_t{1} << 62;

} // namespace

std::uint32_t tree_height(std::uint64_t leaf_count) {
    if (leaf_count == 0) raise(Errc::invalid_plan, "tree has no leaves");
    if (leaf_count == 1) return 0;
    return static_cast<std::uint32_t>(std::bit_width(leaf_count - 1));
}

std::uint64_t level_width(std::uint64_t leaf_count, std::uint32_t level) {
    if (level > tree_height(leaf_count)) {
        raise(Errc::range, "level " + std::to_string(level) + " above the root");
    }
    std::uint64_t width = leaf_count;
    for (std::uint32_t l = 0; l < level; ++l) width = (width + 1) / 2;
    return width;
}

TreePlan plan_tree(std::vector<std::uint64_t> batch_sizes) {
    if (batch_sizes.empty()) raise(Errc::invalid_plan, "plan needs at least one batch");
    if (batch_sizes.size() >= kCompoundSentinel) {
        raise(Errc::invalid_plan, "batch count exhausts the id space");
    }

    TreePlan plan;
    plan.batch_offsets.reserve(batch_sizes.size());
    std::uint64_t total = 0;
    for (std::uint64_t size : batch_sizes) {
        if (size == 0) raise(Errc::invalid_plan, "batch sizes must be positive");
        plan.batch_offsets.push_back(total);
        if (size > kMaxLeaves - total) raise(Errc::invalid_plan, "leaf count too large");
        total += size;
    }
    plan.batch_sizes = std::move(batch_sizes);
    plan.total_leaves = total;
    plan.height = tree_height(total);

    plan.level_widths.reserve(plan.height + 1);
    std::uint64_t width = total;
    plan.level_widths.push_back(width);
    while (width > 1) {
        width = (width + 1) / 2;
        plan.level_widths.push_back(width);
    }
    return plan;
}

void validate_position(const TreePlan& plan, const Position& pos) {
    if (pos.level > plan.height || pos.index >= plan.width(pos.level)) {
        raise(Errc::range, "position (" + std::to_string(pos.level) + ", " +
                               std::to_string(pos.index) + ") outside the plan");
    }
}

Position parent_of(const TreePlan& plan, const Position& pos) {
    validate_position(plan, pos);
    if (pos.level >= plan.height) raise(Errc::range, "root has no parent");
    return {pos.level + 1, pos.index / 2};
}

Children children_of(const TreePlan& plan, const Position& pos) {
    validate_position(plan, pos);
    if (pos.level == 0) raise(Errc::range, "leaf has no children");
    const std::uint32_t child_level = pos.level - 1;
    const std::uint64_t left_index = 2 * pos.index;
    Children out{{child_level, left_index}, std::nullopt};
    if (left_index + 1 < plan.width(child_level)) {
        out.right = Position{child_level, left_index + 1};
    }
    return out;
}

std::uint32_t owner_of_leaf(const TreePlan& plan, std::uint64_t leaf_index) {
    if (leaf_index >= plan.total_leaves) {
        raise(Errc::range, "leaf index " + std::to_string(leaf_index) + " outside the plan");
    }
    const auto it = std::upper_bound(plan.batch_offsets.begin(), plan.batch_offsets.end(),
                                     leaf_index);
    return static_cast<std::uint32_t>(it - plan.batch_offsets.begin() - 1);
}

LeafSpan span_of(const TreePlan& plan, const Position& pos) {
    validate_position(plan, pos);
    const std::uint64_t first = pos.index << pos.level;
    const std::uint64_t last = std::min((pos.index + 1) << pos.level, plan.total_leaves);
    return {first, last};
}

Digest32 plan_fingerprint(const TreePlan& plan) {
    // Canonical JSON of {batch_sizes}: sorted keys, no whitespace.
    std::string text = "{\"batch_sizes\":[";
    for (std::size_t i = 0; i < plan.batch_sizes.size(); ++i) {
        if (i != 0) text += ',';
        text += std::to_string(plan.batch_sizes[i]);
    }
    text += "]}";
    return hash_leaf(as_bytes_view(text));
}

} // namespace amt
