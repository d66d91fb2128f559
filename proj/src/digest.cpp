#include "amt/digest.hpp"

#include <openssl/evp.h>

#include "amt/errors.hpp"

namespace amt {

namespace {

constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1; // uppercase is rejected on purpose
}

} // namespace

Digest32 sha256(BytesView data) {
    static const std::uint8_t empty_input = 0;
    Digest32 out{};
    unsigned int out_len = 0;
    const std::uint8_t* ptr = data.empty() ? &empty_input : data.data();
    if (EVP_Digest(ptr, data.size(), out.data(), &out_len, EVP_sha256(), nullptr) != 1 ||
        out_len != out.size()) {
        raise(Errc::io, "sha256 backend failure");
    }
    return out;
}

std::string to_hex(const Digest32& digest) {
    return bytes_to_hex(digest);
}

std::string bytes_to_hex(BytesView data) {
    std::string out;
    out.reserve(data.size() * 2);
    for (std::uint8_t byte : data) {
        out.push_back(kHexDigits[byte >> 4]);
        out.push_back(kHexDigits[byte & 0x0f]);
    }
    return out;
}

std::optional<Bytes> bytes_from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) return std::nullopt;
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const int hi = hex_nibble(hex[i]);
        const int lo = hex_nibble(hex[i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

std::optional<Digest32> digest_from_hex(std::string_view hex) {
    if (hex.size() != 64) return std::nullopt;
    const auto bytes = bytes_from_hex(hex);
    if (!bytes) return std::nullopt;
    Digest32 out{};
    std::copy(bytes->begin(), bytes->end(), out.begin());
    return out;
}

} // namespace amt
