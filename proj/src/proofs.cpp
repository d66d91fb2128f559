#include "amt/proofs.hpp"

#include "amt/errors.hpp"

namespace amt {

InclusionProof prove_inclusion(const OracleTree& tree, std::uint64_t leaf_index) {
    if (leaf_index >= tree.n) {
        raise(Errc::range, "leaf index " + std::to_string(leaf_index) + " outside the tree");
    }

    InclusionProof proof;
    proof.leaf_index = leaf_index;
    proof.steps.reserve(tree.height());
    std::uint64_t index = leaf_index;
    for (std::uint32_t level = 0; level < tree.height(); ++level) {
        const std::vector<Digest32>& row = tree.levels[level];
        const std::uint64_t sibling = index ^ 1;
        if (sibling < row.size()) {
            proof.steps.push_back(
                PairStep{row[sibling], sibling < index ? Side::Left : Side::Right});
        } else {
            proof.steps.push_back(PromoteStep{});
        }
        index /= 2;
    }
    return proof;
}

bool verify_inclusion(const Digest32& root, BytesView leaf_data,
                      const InclusionProof& proof) {
    Digest32 acc = hash_leaf(leaf_data);
    for (const ProofStep& step : proof.steps) {
        if (const PairStep* pair = std::get_if<PairStep>(&step)) {
            acc = pair->sibling_side == Side::Left ? hash_pair(pair->sibling, acc)
                                                   : hash_pair(acc, pair->sibling);
        } else {
            acc = hash_promote(acc);
        }
    }
    return acc == root;
}

} // namespace amt
