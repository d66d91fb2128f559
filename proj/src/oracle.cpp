#include "amt/oracle.hpp"

#include "amt/errors.hpp"

namespace amt {

OracleTree classic_build(std::span<const Bytes> leaves) {
    if (leaves.empty()) raise(Errc::invalid_input, "cannot build a tree with no leaves");

    OracleTree tree;
    tree.n = leaves.size();
    tree.levels.emplace_back();
    tree.levels[0].reserve(leaves.size());
    for (const Bytes& leaf : leaves) tree.levels[0].push_back(hash_leaf(leaf));
    tree.hash_ops = leaves.size();

    while (tree.levels.back().size() > 1) {
        const std::vector<Digest32>& prev = tree.levels.back();
        std::vector<Digest32> next;
        next.reserve((prev.size() + 1) / 2);
        for (std::size_t i = 0; i < prev.size(); i += 2) {
            if (i + 1 < prev.size()) {
                next.push_back(hash_pair(prev[i], prev[i + 1]));
            } else {
                next.push_back(hash_promote(prev[i])); // odd tail
            }
            ++tree.hash_ops;
        }
        tree.levels.push_back(std::move(next));
    }
    return tree;
}

Digest32 classic_root(std::span<const Bytes> leaves) {
    return classic_build(leaves).root();
}

} // namespace amt
