#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "amt/batch_builder.hpp"
#include "amt/proofs.hpp"

namespace amt {

/// Leaf files are either length-prefixed binary records (4-byte little-endian
/// unsigned length, then payload) or newline-delimited lowercase hex.
enum class LeafFormat { Binary, Hex };

/// v1 manifest: the hash name plus one leaf file per batch, ids 0..B-1 in
/// declaration order. Relative paths resolve against the manifest's directory.
struct BatchManifest {
    struct Entry {
        std::uint32_t id = 0;
        std::filesystem::path path;
    };

    std::string hash_name;
    std::vector<Entry> batches;
};

std::vector<Bytes> read_leaf_file(const std::filesystem::path& path, LeafFormat format);
void write_leaf_file(const std::filesystem::path& path, std::span<const Bytes> leaves,
                     LeafFormat format);

/// Record count without materializing payloads.
std::uint64_t count_leaf_records(const std::filesystem::path& path, LeafFormat format);

BatchManifest parse_manifest(const std::filesystem::path& path);

/// Record counts of every batch file, in id order; the plan's batch sizes.
std::vector<std::uint64_t> manifest_batch_sizes(const BatchManifest& manifest,
                                                LeafFormat format);

struct CheckpointFileData {
    TreePlan plan;
    BatchResult result;
};

/// Persisted checkpoint array of one batch (version 1). Encoding is
/// canonical: identical inputs yield byte-identical text.
std::string encode_checkpoint_file(const TreePlan& plan, const BatchResult& result);

/// Parses and validates; the returned result satisfies every BatchResult
/// invariant or this throws.
CheckpointFileData decode_checkpoint_file(const std::string& json_text);

std::string encode_proof(const InclusionProof& proof);
InclusionProof decode_proof(const std::string& json_text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace amt
