#include "amt/batch_builder.hpp"

#include <algorithm>

#include "amt/errors.hpp"
#include "amt/hashing.hpp"

namespace amt {

namespace {

// Contiguous run [begin, end) of batch-computable node indices on one level.
// The run stays contiguous all the way up: a parent is computable iff all
// its children are, so the computable region of each level is an interval.
struct LevelInterval {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;

    std::uint64_t size() const { return end - begin; }
};

void check_batch_id(const TreePlan& plan, std::uint32_t batch_id) {
    if (batch_id >= plan.batch_count()) {
        raise(Errc::range, "unknown batch id " + std::to_string(batch_id));
    }
}

// Parent interval of iv: the nodes one level up whose every child lies
// inside iv. When the batch reaches the level's end, the tail promotion
// node (sole child = last node of the level) is included.
LevelInterval step_up(std::uint64_t level_width, LevelInterval iv) {
    LevelInterval up;
    up.begin = (iv.begin + 1) / 2;
    if (iv.end == level_width) {
        up.end = (level_width + 1) / 2;
    } else if (iv.end >= 2) {
        up.end = (iv.end - 2) / 2 + 1;
    }
    if (up.end < up.begin) up.end = up.begin;
    return up;
}

// Computable intervals per level, leaf level first; stops before the first
// empty level. Never empty itself: level 0 always holds the batch's range.
std::vector<LevelInterval> batch_intervals(const TreePlan& plan, std::uint32_t batch_id) {
    const std::uint64_t lo = plan.batch_offsets[batch_id];
    const std::uint64_t hi = lo + plan.batch_sizes[batch_id];
    std::vector<LevelInterval> intervals{{lo, hi}};
    for (std::uint32_t level = 0; level < plan.height; ++level) {
        const LevelInterval up = step_up(plan.width(level), intervals.back());
        if (up.size() == 0) break;
        intervals.push_back(up);
    }
    return intervals;
}

// Checkpoints are the computable nodes whose parent is not computable:
// per level at most one fragment on each edge of the interval, plus the
// whole top interval once no parent can be formed. Emission order is
// ascending leaf-span start: left-edge fragments bottom-up, then the top
// nodes, then right-edge fragments top-down.
std::vector<Position> positions_from_intervals(const TreePlan& plan,
                                               const std::vector<LevelInterval>& intervals) {
    std::vector<Position> lefts;
    std::vector<Position> rights;
    std::vector<Position> finals;
    for (std::uint32_t level = 0; level < intervals.size(); ++level) {
        const LevelInterval cur = intervals[level];
        if (level + 1 == intervals.size()) {
            for (std::uint64_t i = cur.begin; i < cur.end; ++i) finals.push_back({level, i});
            break;
        }
        const LevelInterval next = intervals[level + 1];
        if (2 * next.begin > cur.begin) lefts.push_back({level, cur.begin});
        const std::uint64_t covered_end = std::min(2 * next.end, plan.width(level));
        for (std::uint64_t i = covered_end; i < cur.end; ++i) rights.push_back({level, i});
    }

    std::vector<Position> out = std::move(lefts);
    out.insert(out.end(), finals.begin(), finals.end());
    out.insert(out.end(), rights.rbegin(), rights.rend());
    return out;
}

} // namespace

std::vector<Position> checkpoint_positions(const TreePlan& plan, std::uint32_t batch_id) {
    check_batch_id(plan, batch_id);
    return positions_from_intervals(plan, batch_intervals(plan, batch_id));
}

std::uint64_t digest_placeholder_count(const TreePlan& plan, std::uint32_t batch_id) {
    check_batch_id(plan, batch_id);
    return plan.total_leaves - plan.batch_sizes[batch_id];
}

std::uint64_t batch_build_op_count(const TreePlan& plan, std::uint32_t batch_id) {
    check_batch_id(plan, batch_id);
    const auto intervals = batch_intervals(plan, batch_id);
    std::uint64_t ops = 0;
    for (const LevelInterval& iv : intervals) ops += iv.size();
    return ops;
}

BatchResult build_batch(const TreePlan& plan, std::uint32_t batch_id,
                        std::span<const Bytes> leaves) {
    check_batch_id(plan, batch_id);
    if (leaves.size() != plan.batch_sizes[batch_id]) {
        raise(Errc::shape_mismatch, "batch " + std::to_string(batch_id) + " expects " +
                                        std::to_string(plan.batch_sizes[batch_id]) +
                                        " leaves, got " + std::to_string(leaves.size()));
    }

    const auto intervals = batch_intervals(plan, batch_id);

    // Digests of every computable node, one slice per level.
    std::vector<std::vector<Digest32>> slices(intervals.size());
    std::uint64_t ops = 0;

    slices[0].reserve(leaves.size());
    for (const Bytes& leaf : leaves) slices[0].push_back(hash_leaf(leaf));
    ops += leaves.size();

    for (std::uint32_t level = 1; level < intervals.size(); ++level) {
        const LevelInterval cur = intervals[level];
        const LevelInterval below = intervals[level - 1];
        const std::uint64_t below_width = plan.width(level - 1);
        slices[level].reserve(cur.size());
        for (std::uint64_t i = cur.begin; i < cur.end; ++i) {
            const Digest32& left = slices[level - 1][2 * i - below.begin];
            if (2 * i + 1 < below_width) {
                const Digest32& right = slices[level - 1][2 * i + 1 - below.begin];
                slices[level].push_back(hash_pair(left, right));
            } else {
                slices[level].push_back(hash_promote(left));
            }
            ++ops;
        }
    }

    BatchResult result;
    result.batch_id = batch_id;
    result.plan_fingerprint = plan_fingerprint(plan);
    result.nodes_computed = ops;
    result.leaf_count = leaves.size();
    for (const Position& pos : positions_from_intervals(plan, intervals)) {
        Node node;
        node.position = pos;
        node.batch = batch_id;
        node.order = order_bit(pos);
        node.kind = NodeKind::LayerCheckpoint;
        node.data = slices[pos.level][pos.index - intervals[pos.level].begin];
        result.checkpoints.push_back(node);
    }
    return result;
}

} // namespace amt
