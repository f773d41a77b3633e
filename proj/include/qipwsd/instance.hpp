#pragma once
// Core data model for sense-selection problems: target words, candidate
// senses, embeddings, and assignments, plus the on-disk JSON format.

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qipwsd {

/// Raw embedding vector. Length must match the owning instance's dimension;
/// all-zero vectors are rejected at load time (cosine is undefined on them).
using Embedding = std::vector<double>;

/// Thrown on malformed or inconsistent instance/corpus files. The message
/// names the offending word/sense where one exists.
class InstanceError : public std::runtime_error {
  public:
    explicit InstanceError(const std::string& what) : std::runtime_error(what) {}
};

struct SenseCandidate {
    std::string sense_id;
    Embedding embedding;
    std::optional<std::string> gloss;

    friend bool operator==(const SenseCandidate&, const SenseCandidate&) = default;
};

struct TargetWord {
    std::string word_id;
    std::string surface;
    Embedding context_embedding;
    std::vector<SenseCandidate> senses;  // nonempty; order defines sense index k

    friend bool operator==(const TargetWord&, const TargetWord&) = default;
};

/// One disambiguation context: an ordered list of target words sharing an
/// embedding dimension, with optional gold sense labels (one per word).
struct Instance {
    std::size_t dimension = 0;
    std::vector<TargetWord> words;
    std::optional<std::vector<std::string>> gold;

    std::size_t word_count() const { return words.size(); }
    std::size_t sense_count(std::size_t i) const { return words[i].senses.size(); }
    std::vector<std::size_t> sense_counts() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// One chosen sense index per word; the materialized one-hot decision vector.
struct Assignment {
    std::vector<std::size_t> choices;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// True iff `a` has one in-range sense index per word of `inst`.
bool validate_assignment(const Instance& inst, const Assignment& a);

/// Checks every Instance invariant; throws InstanceError naming the first
/// violation. `context` prefixes messages (e.g. "instance 3").
void validate_instance(const Instance& inst, const std::string& context = {});

Instance instance_from_json(const nlohmann::json& j, const std::string& context = {});
nlohmann::json instance_to_json(const Instance& inst);

/// Loads and fully validates a single instance object; no partial loads.
Instance load_instance(const std::filesystem::path& path);

/// Loads a corpus file (a JSON array of instance objects).
std::vector<Instance> load_corpus(const std::filesystem::path& path);

void save_instance(const Instance& inst, const std::filesystem::path& path);
void save_corpus(const std::vector<Instance>& corpus, const std::filesystem::path& path);

/// Number of valid assignments, i.e. the product of per-word sense counts.
/// Saturates at the maximum representable value instead of overflowing.
std::uint64_t assignment_space_size(const std::vector<std::size_t>& sense_counts);
std::uint64_t assignment_space_size(const Instance& inst);

/// Invokes `fn` once per valid assignment, in lexicographic order of the
/// choices vector (index 0 most significant).
void for_each_assignment(const std::vector<std::size_t>& sense_counts,
                         const std::function<void(const Assignment&)>& fn);

}  // namespace qipwsd
