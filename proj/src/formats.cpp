#include "amt/formats.hpp"

#include <fstream>
#include <limits>

#include "json.hpp"

#include "amt/errors.hpp"

namespace amt {

namespace {

using nlohmann::json;

constexpr std::uint32_t kCheckpointFileVersion = 1;

[[noreturn]] void bad_file(const std::string& what) {
    raise(Errc::parse, what);
}

json parse_json(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, false);
    if (parsed.is_discarded()) bad_file(std::string(what) + ": not valid JSON");
    return parsed;
}

std::uint64_t require_u64(const json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        bad_file(std::string(what) + ": missing or non-integer \"" + key + "\"");
    }
    return j[key].get<std::uint64_t>();
}

std::uint32_t read_record_length(std::istream& in) {
    std::uint8_t raw[4];
    in.read(reinterpret_cast<char*>(raw), 4);
    if (in.gcount() != 4) bad_file("leaf file: truncated record length");
    return static_cast<std::uint32_t>(raw[0]) | (static_cast<std::uint32_t>(raw[1]) << 8) |
           (static_cast<std::uint32_t>(raw[2]) << 16) |
           (static_cast<std::uint32_t>(raw[3]) << 24);
}

} // namespace

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) raise(Errc::io, "cannot read " + path.string());
    return text;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) raise(Errc::io, "cannot write " + path.string());
}

std::vector<Bytes> read_leaf_file(const std::filesystem::path& path, LeafFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open " + path.string());

    std::vector<Bytes> leaves;
    if (format == LeafFormat::Binary) {
        while (in.peek() != std::char_traits<char>::eof()) {
            const std::uint32_t length = read_record_length(in);
            Bytes record(length);
            in.read(reinterpret_cast<char*>(record.data()), length);
            if (in.gcount() != static_cast<std::streamsize>(length)) {
                bad_file("leaf file: truncated record payload");
            }
            leaves.push_back(std::move(record));
        }
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto record = bytes_from_hex(line);
            if (!record) bad_file("leaf file: line is not lowercase hex");
            leaves.push_back(std::move(*record));
        }
    }
    if (in.bad()) raise(Errc::io, "cannot read " + path.string());
    return leaves;
}

void write_leaf_file(const std::filesystem::path& path, std::span<const Bytes> leaves,
                     LeafFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::io, "cannot open " + path.string() + " for writing");
    for (const Bytes& leaf : leaves) {
        if (format == LeafFormat::Binary) {
            if (leaf.size() > std::numeric_limits<std::uint32_t>::max()) {
                raise(Errc::invalid_input, "leaf record too large for the binary format");
            }
            const auto length = static_cast<std::uint32_t>(leaf.size());
            const std::uint8_t raw[4] = {
                static_cast<std::uint8_t>(length),
                static_cast<std::uint8_t>(length >> 8),
                static_cast<std::uint8_t>(length >> 16),
                static_cast<std::uint8_t>(length >> 24),
            };
            out.write(reinterpret_cast<const char*>(raw), 4);
            out.write(reinterpret_cast<const char*>(leaf.data()),
                      static_cast<std::streamsize>(leaf.size()));
        } else {
            const std::string line = bytes_to_hex(leaf);
            out.write(line.data(), static_cast<std::streamsize>(line.size()));
            out.put('\n');
        }
    }
    if (!out) raise(Errc::io, "cannot write " + path.string());
}

std::uint64_t count_leaf_records(const std::filesystem::path& path, LeafFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::io, "cannot open " + path.string());

    std::uint64_t count = 0;
    if (format == LeafFormat::Binary) {
        in.seekg(0, std::ios::end);
        const auto file_size = static_cast<std::uint64_t>(in.tellg());
        in.seekg(0);
        std::uint64_t offset = 0;
        while (offset < file_size) {
            if (file_size - offset < 4) bad_file("leaf file: truncated record length");
            const std::uint32_t length = read_record_length(in);
            offset += 4;
            if (file_size - offset < length) bad_file("leaf file: truncated record payload");
            in.seekg(length, std::ios::cur);
            offset += length;
            ++count;
        }
    } else {
        std::string line;
        while (std::getline(in, line)) ++count;
    }
    if (in.bad()) raise(Errc::io, "cannot read " + path.string());
    return count;
}

BatchManifest parse_manifest(const std::filesystem::path& path) {
    const json parsed = parse_json(read_text_file(path), "manifest");
    if (!parsed.is_object()) bad_file("manifest: top level must be an object");
    if (!parsed.contains("hash_name") || !parsed["hash_name"].is_string()) {
        bad_file("manifest: missing \"hash_name\"");
    }

    BatchManifest manifest;
    manifest.hash_name = parsed["hash_name"].get<std::string>();
    if (manifest.hash_name != "sha256") {
        bad_file("manifest: unsupported hash \"" + manifest.hash_name + "\" (v1 requires sha256)");
    }

    if (!parsed.contains("batches") || !parsed["batches"].is_array() ||
        parsed["batches"].empty()) {
        bad_file("manifest: missing or empty \"batches\"");
    }
    const std::filesystem::path base = path.has_parent_path()
                                           ? path.parent_path()
                                           : std::filesystem::path(".");
    std::uint32_t expected_id = 0;
    for (const json& entry : parsed["batches"]) {
        if (!entry.is_object() || !entry.contains("path") || !entry["path"].is_string()) {
            bad_file("manifest: each batch needs an id and a path");
        }
        const std::uint64_t id = require_u64(entry, "id", "manifest");
        if (id != expected_id) {
            bad_file("manifest: batch ids must be exactly 0..B-1 in order");
        }
        std::filesystem::path leaf_path = entry["path"].get<std::string>();
        if (leaf_path.is_relative()) leaf_path = base / leaf_path;
        manifest.batches.push_back({expected_id, std::move(leaf_path)});
        ++expected_id;
    }
    return manifest;
}

std::vector<std::uint64_t> manifest_batch_sizes(const BatchManifest& manifest,
                                                LeafFormat format) {
    std::vector<std::uint64_t> sizes;
    sizes.reserve(manifest.batches.size());
    for (const BatchManifest::Entry& entry : manifest.batches) {
        sizes.push_back(count_leaf_records(entry.path, format));
    }
    return sizes;
}

std::string encode_checkpoint_file(const TreePlan& plan, const BatchResult& result) {
    json out;
    out["version"] = kCheckpointFileVersion;
    out["plan"] = {{"batch_sizes", plan.batch_sizes}};
    out["batch_id"] = result.batch_id;
    json checkpoints = json::array();
    for (const Node& node : result.checkpoints) {
        checkpoints.push_back({{"level", node.position.level},
                               {"index", node.position.index},
                               {"order", node.order},
                               {"batch", node.batch},
                               {"hash", to_hex(*node.data)}});
    }
    out["checkpoints"] = std::move(checkpoints);
    return out.dump() + "\n";
}

CheckpointFileData decode_checkpoint_file(const std::string& json_text) {
    const json parsed = parse_json(json_text, "checkpoint file");
    if (!parsed.is_object()) bad_file("checkpoint file: top level must be an object");
    if (require_u64(parsed, "version", "checkpoint file") != kCheckpointFileVersion) {
        bad_file("checkpoint file: unsupported version");
    }
    if (!parsed.contains("plan") || !parsed["plan"].is_object() ||
        !parsed["plan"].contains("batch_sizes") || !parsed["plan"]["batch_sizes"].is_array()) {
        bad_file("checkpoint file: missing plan.batch_sizes");
    }

    std::vector<std::uint64_t> batch_sizes;
    for (const json& size : parsed["plan"]["batch_sizes"]) {
        if (!size.is_number_unsigned()) bad_file("checkpoint file: batch sizes must be integers");
        batch_sizes.push_back(size.get<std::uint64_t>());
    }

    CheckpointFileData data;
    data.plan = plan_tree(std::move(batch_sizes));

    const std::uint64_t batch_id = require_u64(parsed, "batch_id", "checkpoint file");
    if (batch_id >= data.plan.batch_count()) {
        bad_file("checkpoint file: batch_id outside the plan");
    }
    data.result.batch_id = static_cast<std::uint32_t>(batch_id);
    data.result.plan_fingerprint = plan_fingerprint(data.plan);
    data.result.leaf_count = data.plan.batch_sizes[batch_id];
    data.result.nodes_computed = batch_build_op_count(data.plan, data.result.batch_id);

    if (!parsed.contains("checkpoints") || !parsed["checkpoints"].is_array()) {
        bad_file("checkpoint file: missing \"checkpoints\"");
    }
    for (const json& entry : parsed["checkpoints"]) {
        if (!entry.is_object() || !entry.contains("hash") || !entry["hash"].is_string()) {
            bad_file("checkpoint file: each checkpoint needs position fields and a hash");
        }
        Node node;
        const std::uint64_t level = require_u64(entry, "level", "checkpoint file");
        if (level > data.plan.height) bad_file("checkpoint file: level outside the plan");
        node.position.level = static_cast<std::uint32_t>(level);
        node.position.index = require_u64(entry, "index", "checkpoint file");
        node.order = static_cast<std::uint8_t>(require_u64(entry, "order", "checkpoint file"));
        const std::uint64_t batch = require_u64(entry, "batch", "checkpoint file");
        if (batch > kCompoundSentinel) bad_file("checkpoint file: batch id out of range");
        node.batch = static_cast<std::uint32_t>(batch);
        node.kind = NodeKind::LayerCheckpoint;
        const auto digest = digest_from_hex(entry["hash"].get<std::string>());
        if (!digest) bad_file("checkpoint file: hash must be 64 lowercase hex characters");
        node.data = *digest;
        data.result.checkpoints.push_back(node);
    }

    // The decoded result must satisfy every BatchResult invariant.
    const std::vector<Position> expected =
        checkpoint_positions(data.plan, data.result.batch_id);
    if (data.result.checkpoints.size() != expected.size()) {
        raise(Errc::corrupt_result, "checkpoint file: checkpoint count mismatch");
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        const Node& node = data.result.checkpoints[i];
        if (node.position != expected[i] || node.batch != data.result.batch_id ||
            node.order != order_bit(node.position)) {
            raise(Errc::corrupt_result,
                  "checkpoint file: checkpoint " + std::to_string(i) +
                      " inconsistent with the plan geometry");
        }
    }
    return data;
}

std::string encode_proof(const InclusionProof& proof) {
    json out;
    out["leaf_index"] = proof.leaf_index;
    json steps = json::array();
    for (const ProofStep& step : proof.steps) {
        if (const PairStep* pair = std::get_if<PairStep>(&step)) {
            steps.push_back({{"type", "pair"},
                             {"sibling", to_hex(pair->sibling)},
                             {"side", pair->sibling_side == Side::Left ? "left" : "right"}});
        } else {
            steps.push_back({{"type", "promote"}});
        }
    }
    out["steps"] = std::move(steps);
    return out.dump() + "\n";
}

InclusionProof decode_proof(const std::string& json_text) {
    const json parsed = parse_json(json_text, "proof file");
    if (!parsed.is_object()) bad_file("proof file: top level must be an object");

    InclusionProof proof;
    proof.leaf_index = require_u64(parsed, "leaf_index", "proof file");
    if (!parsed.contains("steps") || !parsed["steps"].is_array()) {
        bad_file("proof file: missing \"steps\"");
    }
    for (const json& entry : parsed["steps"]) {
        if (!entry.is_object() || !entry.contains("type") || !entry["type"].is_string()) {
            bad_file("proof file: each step needs a type");
        }
        const std::string type = entry["type"].get<std::string>();
        if (type == "promote") {
            proof.steps.emplace_back(PromoteStep{});
        } else if (type == "pair") {
            if (!entry.contains("sibling") || !entry["sibling"].is_string() ||
                !entry.contains("side") || !entry["side"].is_string()) {
                bad_file("proof file: pair steps need a sibling and a side");
            }
            const auto sibling = digest_from_hex(entry["sibling"].get<std::string>());
            if (!sibling) bad_file("proof file: sibling must be 64 lowercase hex characters");
            const std::string side = entry["side"].get<std::string>();
            if (side != "left" && side != "right") bad_file("proof file: unknown side");
            proof.steps.emplace_back(
                PairStep{*sibling, side == "left" ? Side::Left : Side::Right});
        } else {
            bad_file("proof file: unknown step type \"" + type + "\"");
        }
    }
    return proof;
}

} // namespace amt
