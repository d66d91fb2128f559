#include "amt/committer.hpp"

#include <map>

#include "amt/errors.hpp"
#include "amt/hashing.hpp"

namespace amt {

namespace {

struct CoverEntry {
    Digest32 digest{};
    std::uint32_t batch = 0;
};

void validate_results(const TreePlan& plan, std::span<const BatchResult> results,
                      std::vector<const BatchResult*>& by_id) {
    const std::uint32_t batch_count = plan.batch_count();
    by_id.assign(batch_count, nullptr);
    for (const BatchResult& result : results) {
        if (result.batch_id >= batch_count) {
            raise(Errc::range, "result for unknown batch id " + std::to_string(result.batch_id));
        }
        if (by_id[result.batch_id] != nullptr) {
            raise(Errc::duplicate_batch,
                  "two results claim batch " + std::to_string(result.batch_id));
        }
        by_id[result.batch_id] = &result;
    }
    for (std::uint32_t b = 0; b < batch_count; ++b) {
        if (by_id[b] == nullptr) {
            raise(Errc::incomplete_commit, "no result for batch " + std::to_string(b));
        }
    }

    const Digest32 fingerprint = plan_fingerprint(plan);
    for (std::uint32_t b = 0; b < batch_count; ++b) {
        if (by_id[b]->plan_fingerprint != fingerprint) {
            raise(Errc::plan_mismatch,
                  "batch " + std::to_string(b) + " was built against a different plan");
        }
    }

    // Never trust positions: a corrupt result must not fold into a wrong root.
    for (std::uint32_t b = 0; b < batch_count; ++b) {
        const BatchResult& result = *by_id[b];
        if (result.leaf_count != plan.batch_sizes[b]) {
            raise(Errc::corrupt_result, "batch " + std::to_string(b) + " leaf count mismatch");
        }
        const std::vector<Position> expected = checkpoint_positions(plan, b);
        if (result.checkpoints.size() != expected.size()) {
            raise(Errc::corrupt_result,
                  "batch " + std::to_string(b) + " checkpoint count mismatch");
        }
        for (std::size_t i = 0; i < expected.size(); ++i) {
            const Node& node = result.checkpoints[i];
            if (node.position != expected[i] || node.kind != NodeKind::LayerCheckpoint ||
                node.batch != b || node.order != order_bit(node.position) ||
                !node.data.has_value()) {
                raise(Errc::corrupt_result,
                      "batch " + std::to_string(b) + " checkpoint " + std::to_string(i) +
                          " inconsistent with the plan geometry");
            }
        }
    }
}

} // namespace

CommitOutcome commit(const TreePlan& plan, std::span<const BatchResult> results) {
    std::vector<const BatchResult*> by_id;
    validate_results(plan, results, by_id);

    CommitOutcome outcome;

    // The checkpoints of all batches partition the leaf range into canonical
    // subtree spans; fold them level by level, pairing each left child with
    // its right sibling and promoting sole children, until the root remains.
    std::vector<std::map<std::uint64_t, CoverEntry>> cover(plan.height + 1);
    for (const BatchResult* result : by_id) {
        outcome.checkpoint_count += result->checkpoints.size();
        for (const Node& node : result->checkpoints) {
            cover[node.position.level].emplace(node.position.index,
                                               CoverEntry{*node.data, node.batch});
        }
    }

    for (std::uint32_t level = 0; level < plan.height; ++level) {
        const std::uint64_t width = plan.width(level);
        for (const auto& [index, entry] : cover[level]) {
            CoverEntry parent;
            if ((index | 1) < width) {
                if ((index & 1) != 0) {
                    if (!cover[level].contains(index - 1)) {
                        raise(Errc::corrupt_result, "cover node without a mergeable sibling");
                    }
                    continue; // folded when its left sibling was visited
                }
                const auto sibling = cover[level].find(index + 1);
                if (sibling == cover[level].end()) {
                    raise(Errc::corrupt_result, "cover node without a mergeable sibling");
                }
                parent.digest = hash_pair(entry.digest, sibling->second.digest);
                parent.batch =
                    entry.batch == sibling->second.batch ? entry.batch : kCompoundSentinel;
                ++outcome.pair_hashes;
            } else {
                parent.digest = hash_promote(entry.digest);
                parent.batch = entry.batch;
                ++outcome.promotions;
            }

            const Position parent_pos{level + 1, index / 2};
            if (!cover[level + 1].emplace(parent_pos.index, parent).second) {
                raise(Errc::corrupt_result, "overlapping cover spans");
            }
            Node computed;
            computed.position = parent_pos;
            computed.batch = parent.batch;
            computed.order = order_bit(parent_pos);
            computed.kind =
                parent.batch == kCompoundSentinel ? NodeKind::Compound : NodeKind::Internal;
            computed.data = parent.digest;
            outcome.computed_nodes.push_back(computed);
        }
    }

    const auto root = cover[plan.height].find(0);
    if (root == cover[plan.height].end() || cover[plan.height].size() != 1) {
        raise(Errc::corrupt_result, "cover did not fold to a single root");
    }
    outcome.root = root->second.digest;
    return outcome;
}

std::uint64_t full_sync_internal_count(const TreePlan& plan) {
    std::uint64_t count = 0;
    for (std::uint32_t level = 1; level <= plan.height; ++level) count += plan.width(level);
    return count;
}

} // namespace amt
