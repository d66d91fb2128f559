#include "amt/hashing.hpp"

#include <algorithm>

namespace amt {

Digest32 hash_leaf(BytesView data, HashFn h) {
    Bytes buf;
    buf.reserve(1 + data.size());
    buf.push_back(kLeafPrefix);
    buf.insert(buf.end(), data.begin(), data.end());
    return h(buf);
}

Digest32 hash_pair(const Digest32& left, const Digest32& right, HashFn h) {
    std::array<std::uint8_t, 65> buf;
    buf[0] = kPairPrefix;
    std::copy(left.begin(), left.end(), buf.begin() + 1);
    std::copy(right.begin(), right.end(), buf.begin() + 33);
    return h(buf);
}

Digest32 hash_promote(const Digest32& child, HashFn h) {
    std::array<std::uint8_t, 33> buf;
    buf[0] = kPromotePrefix;
    std::copy(child.begin(), child.end(), buf.begin() + 1);
    return h(buf);
}

} // namespace amt
