#include "doctest.h"

#include "amt/batch_builder.hpp"
#include "amt/oracle.hpp"
#include "brute_oracle.hpp"
#include "test_support.hpp"

using namespace amt;
using test::bytes;

namespace {

std::vector<Bytes> numbered_leaves(std::uint64_t n) {
    std::vector<Bytes> leaves;
    leaves.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        leaves.push_back(Bytes(static_cast<std::size_t>(i % 97), static_cast<std::uint8_t>(i)));
    }
    return leaves;
}

std::vector<Position> positions_of(const BatchResult& result) {
    std::vector<Position> out;
    for (const Node& node : result.checkpoints) out.push_back(node.position);
    return out;
}

} // namespace

TEST_CASE("checkpoint_positions on the worked shapes") {
    const TreePlan p68 = plan_tree({6, 8});
    CHECK(checkpoint_positions(p68, 0) == std::vector<Position>{{2, 0}, {1, 2}});
    CHECK(checkpoint_positions(p68, 1) == std::vector<Position>{{1, 3}, {3, 1}});

    const TreePlan p5 = plan_tree({5});
    CHECK(checkpoint_positions(p5, 0) == std::vector<Position>{{3, 0}});

    const TreePlan p32 = plan_tree({3, 2});
    CHECK(checkpoint_positions(p32, 0) == std::vector<Position>{{1, 0}, {0, 2}});
    CHECK(checkpoint_positions(p32, 1) == std::vector<Position>{{0, 3}, {2, 1}});

    const TreePlan p51 = plan_tree({5, 1});
    CHECK(checkpoint_positions(p51, 0) == std::vector<Position>{{2, 0}, {0, 4}});
    CHECK(checkpoint_positions(p51, 1) == std::vector<Position>{{0, 5}});

    CHECK_AMT_ERROR(checkpoint_positions(p68, 2), range);
}

TEST_CASE("checkpoint_positions equals the brute-force closure") {
    std::mt19937_64 rng(201);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = test::random_case(rng, 256, 0);
        const TreePlan plan = plan_tree(c.batch_sizes);
        for (std::uint32_t b = 0; b < plan.batch_count(); ++b) {
            CHECK(checkpoint_positions(plan, b) == test::brute_checkpoints(plan, b));
        }
    }
}

TEST_CASE("build_batch on the 14-leaf shape") {
    const TreePlan plan = plan_tree({6, 8});
    const auto leaves = numbered_leaves(14);
    const BatchResult blue = build_batch(plan, 0, test::batch_slice(plan, 0, leaves));

    CHECK(blue.batch_id == 0);
    CHECK(blue.leaf_count == 6);
    CHECK(blue.nodes_computed == 10); // 6 leaf hashes + 3 level-1 pairs + 1 level-2 pair
    CHECK(positions_of(blue) == std::vector<Position>{{2, 0}, {1, 2}});
    CHECK(blue.plan_fingerprint == plan_fingerprint(plan));
    for (const Node& node : blue.checkpoints) {
        CHECK(node.kind == NodeKind::LayerCheckpoint);
        CHECK(node.batch == 0);
        CHECK(node.order == order_bit(node.position));
        CHECK(node.data.has_value());
    }

    const BatchResult red = build_batch(plan, 1, test::batch_slice(plan, 1, leaves));
    CHECK(red.nodes_computed == 15); // 8 leaves + 4 + 2 + 1, promotion at (2,3) included
    CHECK(positions_of(red) == std::vector<Position>{{1, 3}, {3, 1}});
}

TEST_CASE("build_batch degenerate and error cases") {
    const TreePlan one = plan_tree({1});
    const std::vector<Bytes> leaf{bytes("only")};
    const BatchResult result = build_batch(one, 0, leaf);
    REQUIRE(result.checkpoints.size() == 1);
    CHECK(result.checkpoints[0].position == Position{0, 0});
    CHECK(*result.checkpoints[0].data == hash_leaf(bytes("only")));

    const TreePlan plan = plan_tree({6, 8});
    const std::vector<Bytes> five(5, bytes("x"));
    CHECK_AMT_ERROR(build_batch(plan, 0, five), shape_mismatch);
    const std::vector<Bytes> six(6, bytes("x"));
    CHECK_AMT_ERROR(build_batch(plan, 2, six), range);
}

TEST_CASE("a leaf change only moves the checkpoint above it") {
    const TreePlan plan = plan_tree({6, 8});
    auto leaves = numbered_leaves(14);
    const BatchResult before = build_batch(plan, 0, test::batch_slice(plan, 0, leaves));
    leaves[0] = bytes("changed");
    const BatchResult after = build_batch(plan, 0, test::batch_slice(plan, 0, leaves));
    // leaf 0 lies only under (2,0)'s span
    CHECK(*before.checkpoints[0].data != *after.checkpoints[0].data);
    CHECK(*before.checkpoints[1].data == *after.checkpoints[1].data);
}

TEST_CASE("digest_placeholder_count") {
    const TreePlan p68 = plan_tree({6, 8});
    CHECK(digest_placeholder_count(p68, 0) == 8);
    CHECK(digest_placeholder_count(p68, 1) == 6);
    CHECK(digest_placeholder_count(plan_tree({5}), 0) == 0);
    CHECK_AMT_ERROR(digest_placeholder_count(p68, 2), range);
}

TEST_CASE("single-batch checkpoint is the root and matches the classic build") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = test::random_case(rng, 128, 32, 1);
        const TreePlan plan = plan_tree(c.batch_sizes);
        const BatchResult result = build_batch(plan, 0, c.leaves);
        REQUIRE(result.checkpoints.size() == 1);
        CHECK(result.checkpoints[0].position == Position{plan.height, 0});
        CHECK(*result.checkpoints[0].data == classic_root(c.leaves));
    }
}

TEST_CASE("batch results satisfy the checkpoint invariants") {
    std::mt19937_64 rng(203);
    std::uint64_t internal_total_checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto c = test::random_case(rng, 256, 16);
        const TreePlan plan = plan_tree(c.batch_sizes);
        std::uint64_t internal = 0;
        for (std::uint32_t l = 1; l <= plan.height; ++l) internal += plan.width(l);
        for (std::uint32_t b = 0; b < plan.batch_count(); ++b) {
            const BatchResult result =
                build_batch(plan, b, test::batch_slice(plan, b, c.leaves));

            // spans: ascending, disjoint, covering exactly the batch range
            std::uint64_t cursor = plan.batch_offsets[b];
            for (const Node& node : result.checkpoints) {
                const LeafSpan span = span_of(plan, node.position);
                CHECK(span.first == cursor);
                cursor = span.last;
                CHECK(node.order == order_bit(node.position));
                CHECK(node.batch == b);
                // maximality: the parent needs a foreign leaf
                if (node.position.level < plan.height) {
                    CHECK_FALSE(test::brute_computable(
                        plan, b, Position{node.position.level + 1, node.position.index / 2}));
                }
            }
            CHECK(cursor == plan.batch_offsets[b] + plan.batch_sizes[b]);

            CHECK(result.checkpoints.size() <= std::max<std::uint64_t>(2 * plan.height, 1));
            CHECK(result.nodes_computed == batch_build_op_count(plan, b));
            CHECK(result.nodes_computed <= internal + plan.batch_sizes[b]);
            ++internal_total_checked;
        }
    }
    CHECK(internal_total_checked > 0);
}

TEST_CASE("checkpoint geometry is independent of leaf data") {
    std::mt19937_64 rng(204);
    for (int trial = 0; trial < 60; ++trial) {
        auto c = test::random_case(rng, 128, 24);
        const TreePlan plan = plan_tree(c.batch_sizes);
        std::vector<Bytes> other(c.leaves.size());
        for (auto& leaf : other) leaf = test::random_bytes(rng, 24);
        for (std::uint32_t b = 0; b < plan.batch_count(); ++b) {
            const auto expected = checkpoint_positions(plan, b);
            CHECK(positions_of(build_batch(plan, b, test::batch_slice(plan, b, c.leaves))) ==
                  expected);
            CHECK(positions_of(build_batch(plan, b, test::batch_slice(plan, b, other))) ==
                  expected);
        }
    }
}
