#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "thoughtlab/error.hpp"

namespace thoughtlab {

// Word-level vocabulary over a closed lexicon. Reserved control tokens come
// first with fixed ids; game words follow in sorted order so the mapping is
// deterministic for a given lexicon.
namespace tok {
constexpr int kUser = 0;
constexpr int kAssistant = 1;
constexpr int kEot = 2;
constexpr int kIdOpen = 3;    // <id> ... </id> wraps text-integer payloads
constexpr int kIdClose = 4;
constexpr int kThoughtOpen = 5;  // <thought> ... </thought> states a decision
constexpr int kThoughtClose = 6;
constexpr int kDigit0 = 7;  // "0".."9" occupy 7..16
constexpr int kNumReserved = 17;
}  // namespace tok

class Vocabulary {
  public:
    Vocabulary() = default;

    // Reserved tokens plus the given words (deduplicated, sorted).
    static Vocabulary over_words(const std::vector<std::string>& words);

    int size() const { return static_cast<int>(tokens_.size()); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    bool contains(const std::string& word) const { return ids_.count(word) > 0; }
    int id(const std::string& word) const;
    const std::string& token(int id) const;

    // Whitespace-splits `text` and maps each word. Unknown words raise
    // VocabularyError listing the nearest lexicon entries.
    std::vector<int> encode(const std::string& text) const;
    std::string decode(const std::vector<int>& ids) const;

    // Words closest to `word` by edit distance, for error messages.
    std::vector<std::string> nearest(const std::string& word, size_t count = 5) const;

    void save(const std::string& path) const;
    static Vocabulary load(const std::string& path);

  private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, int> ids_;
};

}  // namespace thoughtlab
