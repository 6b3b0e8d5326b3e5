#include "thoughtlab/vocab.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace thoughtlab {

namespace {
const std::vector<std::string>& reserved_tokens() {
    static const std::vector<std::string> kReserved = {
        "<user>", "<assistant>", "<eot>", "<id>", "</id>", "<thought>", "</thought>",
        "0", "1", "2", "3", "4", "5", "6", "7", "8", "9"};
    return kReserved;
}

size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            const size_t sub = prev[j - 1] + (a[i - 1] != b[j - 1]);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}
}  // namespace

Vocabulary Vocabulary::over_words(const std::vector<std::string>& words) {
    Vocabulary v;
    v.tokens_ = reserved_tokens();
    std::set<std::string> sorted;
    for (const auto& w : words) {
        if (w.empty()) continue;
        bool is_reserved = std::find(v.tokens_.begin(), v.tokens_.end(), w) != v.tokens_.end();
        if (!is_reserved) sorted.insert(w);
    }
    v.tokens_.insert(v.tokens_.end(), sorted.begin(), sorted.end());
    for (size_t i = 0; i < v.tokens_.size(); ++i) v.ids_[v.tokens_[i]] = static_cast<int>(i);
    return v;
}

int Vocabulary::id(const std::string& word) const {
    auto it = ids_.find(word);
    if (it == ids_.end()) {
        std::string msg = "word '" + word + "' is not in the lexicon; nearest entries:";
        for (const auto& n : nearest(word)) msg += " " + n;
        throw VocabularyError(msg);
    }
    return it->second;
}

const std::string& Vocabulary::token(int id) const {
    if (id < 0 || id >= size()) {
        throw IndexError("token id " + std::to_string(id) + " out of range [0, " +
                         std::to_string(size()) + ")");
    }
    return tokens_[id];
}

std::vector<int> Vocabulary::encode(const std::string& text) const {
    std::vector<int> out;
    std::istringstream is(text);
    std::string word;
    while (is >> word) out.push_back(id(word));
    return out;
}

std::string Vocabulary::decode(const std::vector<int>& ids) const {
    std::string out;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (i) out += " ";
        out += token(ids[i]);
    }
    return out;
}

std::vector<std::string> Vocabulary::nearest(const std::string& word, size_t count) const {
    std::vector<std::pair<size_t, std::string>> scored;
    scored.reserve(tokens_.size());
    for (const auto& t : tokens_) scored.emplace_back(edit_distance(word, t), t);
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (size_t i = 0; i < scored.size() && i < count; ++i) out.push_back(scored[i].second);
    return out;
}

void Vocabulary::save(const std::string& path) const {
    nlohmann::json j;
    j["tokens"] = tokens_;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write vocabulary file " + path);
    f << j.dump() << "\n";
}

Vocabulary Vocabulary::load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read vocabulary file " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("vocabulary file " + path + " is not valid JSON: " + e.what());
    }
    Vocabulary v;
    v.tokens_ = j.at("tokens").get<std::vector<std::string>>();
    for (size_t i = 0; i < v.tokens_.size(); ++i) v.ids_[v.tokens_[i]] = static_cast<int>(i);
    return v;
}

}  // namespace thoughtlab
