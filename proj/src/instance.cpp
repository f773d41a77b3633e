#include "qipwsd/instance.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <unordered_set>

namespace qipwsd {

namespace {

bool all_zero(const Embedding& v) {
    for (double x : v) {
        if (x != 0.0) return false;
    }
    return true;
}

bool all_finite(const Embedding& v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

std::string where(const std::string& context) {
    return context.empty() ? std::string{} : context + ": ";
}

Embedding embedding_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array()) throw InstanceError(what + ": embedding must be an array of numbers");
    Embedding v;
    v.reserve(j.size());
    for (const auto& x : j) {
        if (!x.is_number()) throw InstanceError(what + ": embedding must be an array of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

std::vector<std::size_t> Instance::sense_counts() const {
    std::vector<std::size_t> counts;
    counts.reserve(words.size());
    for (const auto& w : words) counts.push_back(w.senses.size());
    return counts;
}

bool validate_assignment(const Instance& inst, const Assignment& a) {
    if (a.choices.size() != inst.word_count()) return false;
    for (std::size_t i = 0; i < a.choices.size(); ++i) {
        if (a.choices[i] >= inst.sense_count(i)) return false;
    }
    return true;
}

void validate_instance(const Instance& inst, const std::string& context) {
    const std::string at = where(context);
    if (inst.dimension < 1) throw InstanceError(at + "dimension must be >= 1");
    if (inst.words.empty()) throw InstanceError(at + "instance has no target words");

    std::unordered_set<std::string> word_ids;
    for (const auto& w : inst.words) {
        if (!word_ids.insert(w.word_id).second)
            throw InstanceError(at + "duplicate word_id '" + w.word_id + "'");
        if (w.context_embedding.size() != inst.dimension)
            throw InstanceError(at + "word '" + w.word_id + "': context embedding has length " +
                                std::to_string(w.context_embedding.size()) + ", expected dimension " +
                                std::to_string(inst.dimension));
        if (!all_finite(w.context_embedding))
            throw InstanceError(at + "word '" + w.word_id + "': context embedding has non-finite component");
        if (all_zero(w.context_embedding))
            throw InstanceError(at + "word '" + w.word_id + "': context embedding is the zero vector");
        if (w.senses.empty())
            throw InstanceError(at + "word '" + w.word_id + "' has no candidate senses");

        std::unordered_set<std::string> sense_ids;
        for (const auto& s : w.senses) {
            if (!sense_ids.insert(s.sense_id).second)
                throw InstanceError(at + "word '" + w.word_id + "': duplicate sense_id '" + s.sense_id + "'");
            if (s.embedding.size() != inst.dimension)
                throw InstanceError(at + "sense '" + s.sense_id + "' of word '" + w.word_id +
                                    "': embedding has length " + std::to_string(s.embedding.size()) +
                                    ", expected dimension " + std::to_string(inst.dimension));
            if (!all_finite(s.embedding))
                throw InstanceError(at + "sense '" + s.sense_id + "' of word '" + w.word_id +
                                    "': embedding has non-finite component");
            if (all_zero(s.embedding))
                throw InstanceError(at + "sense '" + s.sense_id + "' of word '" + w.word_id +
                                    "': embedding is the zero vector");
        }
    }

    if (inst.gold) {
        if (inst.gold->size() != inst.words.size())
            throw InstanceError(at + "gold has " + std::to_string(inst.gold->size()) +
                                " labels for " + std::to_string(inst.words.size()) + " words");
        for (std::size_t i = 0; i < inst.words.size(); ++i) {
            const auto& label = (*inst.gold)[i];
            const auto& w = inst.words[i];
            bool found = false;
            for (const auto& s : w.senses) {
                if (s.sense_id == label) {
                    found = true;
                    break;
                }
            }
            if (!found)
                throw InstanceError(at + "gold label '" + label + "' is not a candidate sense of word '" +
                                    w.word_id + "'");
        }
    }
}

Instance instance_from_json(const nlohmann::json& j, const std::string& context) {
    const std::string at = where(context);
    if (!j.is_object()) throw InstanceError(at + "instance must be a JSON object");
    if (!j.contains("dimension") || !j["dimension"].is_number_integer())
        throw InstanceError(at + "missing or non-integer 'dimension'");
    if (!j.contains("words") || !j["words"].is_array())
        throw InstanceError(at + "missing or non-array 'words'");

    Instance inst;
    const auto dim = j["dimension"].get<std::int64_t>();
    if (dim < 1) throw InstanceError(at + "dimension must be >= 1");
    inst.dimension = static_cast<std::size_t>(dim);

    for (const auto& jw : j["words"]) {
        if (!jw.is_object()) throw InstanceError(at + "word entry must be a JSON object");
        TargetWord w;
        if (!jw.contains("word_id") || !jw["word_id"].is_string())
            throw InstanceError(at + "word entry missing string 'word_id'");
        w.word_id = jw["word_id"].get<std::string>();
        w.surface = jw.value("surface", std::string{});
        if (!jw.contains("context_embedding"))
            throw InstanceError(at + "word '" + w.word_id + "' missing 'context_embedding'");
        w.context_embedding = embedding_from_json(jw["context_embedding"], at + "word '" + w.word_id + "'");
        if (!jw.contains("senses") || !jw["senses"].is_array())
            throw InstanceError(at + "word '" + w.word_id + "' missing or non-array 'senses'");
        for (const auto& js : jw["senses"]) {
            if (!js.is_object()) throw InstanceError(at + "word '" + w.word_id + "': sense entry must be an object");
            SenseCandidate s;
            if (!js.contains("sense_id") || !js["sense_id"].is_string())
                throw InstanceError(at + "word '" + w.word_id + "': sense entry missing string 'sense_id'");
            s.sense_id = js["sense_id"].get<std::string>();
            if (js.contains("gloss")) {
                if (!js["gloss"].is_string())
                    throw InstanceError(at + "sense '" + s.sense_id + "': gloss must be a string");
                s.gloss = js["gloss"].get<std::string>();
            }
            if (!js.contains("embedding"))
                throw InstanceError(at + "sense '" + s.sense_id + "' of word '" + w.word_id +
                                    "' missing 'embedding'");
            s.embedding = embedding_from_json(js["embedding"], at + "sense '" + s.sense_id + "'");
            w.senses.push_back(std::move(s));
        }
        inst.words.push_back(std::move(w));
    }

    if (j.contains("gold")) {
        if (!j["gold"].is_array()) throw InstanceError(at + "'gold' must be an array of sense_id strings");
        std::vector<std::string> gold;
        for (const auto& g : j["gold"]) {
            if (!g.is_string()) throw InstanceError(at + "'gold' must be an array of sense_id strings");
            gold.push_back(g.get<std::string>());
        }
        inst.gold = std::move(gold);
    }

    validate_instance(inst, context);
    return inst;
}

nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["dimension"] = inst.dimension;
    j["words"] = nlohmann::json::array();
    for (const auto& w : inst.words) {
        nlohmann::json jw;
        jw["word_id"] = w.word_id;
        jw["surface"] = w.surface;
        jw["context_embedding"] = w.context_embedding;
        jw["senses"] = nlohmann::json::array();
        for (const auto& s : w.senses) {
            nlohmann::json js;
            js["sense_id"] = s.sense_id;
            if (s.gloss) js["gloss"] = *s.gloss;
            js["embedding"] = s.embedding;
            jw["senses"].push_back(std::move(js));
        }
        j["words"].push_back(std::move(jw));
    }
    if (inst.gold) j["gold"] = *inst.gold;
    return j;
}

namespace {

nlohmann::json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InstanceError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

}  // namespace

Instance load_instance(const std::filesystem::path& path) {
    return instance_from_json(parse_file(path), path.string());
}

std::vector<Instance> load_corpus(const std::filesystem::path& path) {
    const nlohmann::json j = parse_file(path);
    if (!j.is_array()) throw InstanceError("corpus file '" + path.string() + "' must be a JSON array of instances");
    std::vector<Instance> corpus;
    corpus.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k) {
        corpus.push_back(instance_from_json(j[k], path.string() + ": instance " + std::to_string(k)));
    }
    return corpus;
}

namespace {

void write_json(const nlohmann::json& j, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InstanceError("cannot write '" + path.string() + "'");
    out << j.dump(2) << "\n";
}

}  // namespace

void save_instance(const Instance& inst, const std::filesystem::path& path) {
    write_json(instance_to_json(inst), path);
}

void save_corpus(const std::vector<Instance>& corpus, const std::filesystem::path& path) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& inst : corpus) j.push_back(instance_to_json(inst));
    write_json(j, path);
}

std::uint64_t assignment_space_size(const std::vector<std::size_t>& sense_counts) {
    std::uint64_t total = 1;
    for (std::size_t m : sense_counts) {
        if (m == 0) return 0;
        if (total > std::numeric_limits<std::uint64_t>::max() / m)
            return std::numeric_limits<std::uint64_t>::max();
        total *= m;
    }
    return total;
}

std::uint64_t assignment_space_size(const Instance& inst) {
    return assignment_space_size(inst.sense_counts());
}

void for_each_assignment(const std::vector<std::size_t>& sense_counts,
                         const std::function<void(const Assignment&)>& fn) {
    for (std::size_t m : sense_counts) {
        if (m == 0) return;
    }
    Assignment a;
    a.choices.assign(sense_counts.size(), 0);
    while (true) {
        fn(a);
        // mixed-radix increment, last index least significant
        std::size_t i = sense_counts.size();
        while (i > 0) {
            --i;
            if (++a.choices[i] < sense_counts[i]) break;
            a.choices[i] = 0;
            if (i == 0) return;
        }
        if (sense_counts.empty()) return;
    }
}

}  // namespace qipwsd
