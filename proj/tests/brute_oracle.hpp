#pragma once

// Brute-force computability closure over the plan geometry: the independent
// check for the interval walk behind checkpoint_positions. Works position by
// position straight from the definitions (a node is computable iff all its
// children are; a checkpoint is computable with no computable parent) and
// shares no code with the production walk.

#include <algorithm>
#include <vector>

#include "amt/geometry.hpp"

namespace amt::test {

inline bool brute_computable(const TreePlan& plan, std::uint32_t batch_id,
                             const Position& pos) {
    if (pos.level == 0) {
        return pos.index >= plan.batch_offsets[batch_id] &&
               pos.index < plan.batch_offsets[batch_id] + plan.batch_sizes[batch_id];
    }
    const Children kids = children_of(plan, pos);
    if (!brute_computable(plan, batch_id, kids.left)) return false;
    return !kids.right || brute_computable(plan, batch_id, *kids.right);
}

inline std::uint64_t brute_span_start(const TreePlan& plan, Position pos) {
    while (pos.level > 0) pos = children_of(plan, pos).left;
    return pos.index;
}

inline std::vector<Position> brute_checkpoints(const TreePlan& plan,
                                               std::uint32_t batch_id) {
    std::vector<Position> out;
    for (std::uint32_t level = 0; level <= plan.height; ++level) {
        for (std::uint64_t i = 0; i < plan.width(level); ++i) {
            const Position pos{level, i};
            if (!brute_computable(plan, batch_id, pos)) continue;
            const bool parent_computable =
                level < plan.height &&
                brute_computable(plan, batch_id, Position{level + 1, i / 2});
            if (!parent_computable) out.push_back(pos);
        }
    }
    std::sort(out.begin(), out.end(), [&](const Position& a, const Position& b) {
        return brute_span_start(plan, a) < brute_span_start(plan, b);
    });
    return out;
}

} // namespace amt::test
