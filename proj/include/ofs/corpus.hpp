#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ofs/pattern.hpp"
#include "ofs/token.hpp"

namespace ofs {

// Phoneme inventory with class memberships, read from lines
//   token: CLASS1, CLASS2
// where the token ends at the first ':' followed by whitespace or the end of
// the line (so `A:: VOWELS` defines `A:`). `#` starts a comment line.
class AlphabetSpec {
 public:
  AlphabetSpec() = default;
  // Throws FormatError on reserved markers, empty tokens or duplicates.
  explicit AlphabetSpec(std::map<Token, std::set<std::string>> memberships);

  const std::set<Token>& tokens() const { return tokens_; }
  const std::map<Token, std::set<std::string>>& memberships() const { return memberships_; }
  std::size_t longest() const { return longest_; }

  // User classes plus the derived ANY/NOSEP/NOSEPSTRESS.
  TokenClassTable class_table() const;

 private:
  std::set<Token> tokens_;
  std::map<Token, std::set<std::string>> memberships_;
  std::size_t longest_ = 0;
};

// Throws SyntaxError.
AlphabetSpec parse_alphabet(std::string_view text);
AlphabetSpec load_alphabet(const std::filesystem::path& path);

enum class TokenizeMode {
  kLongestMatch,  // greedy; whitespace only separates
  kWhitespace,    // every whitespace-delimited unit is one token
};

// Segments a line into alphabet tokens and the two markers.
// Throws UntokenizableInput with the byte offset of the first failure.
Word tokenize(std::string_view line, const AlphabetSpec& alphabet,
              TokenizeMode mode = TokenizeMode::kLongestMatch);

// A syllabified word; stress_index names the syllable carrying the marker.
struct WordForm {
  std::vector<Word> syllables;
  std::optional<std::size_t> stress_index;

  // Marked sequence: separators between syllables, the stress marker right
  // before the stressed syllable's first token.
  Word tokens() const;
  // Phonemes only.
  Word phonemes() const;
  // Marked sequence joined by spaces; ingests back to the same WordForm.
  std::string to_text() const;

  bool operator==(const WordForm&) const = default;
};

struct Reject {
  std::size_t line = 0;  // 1-based
  std::string reason;
};

struct IngestOptions {
  bool require_stress = true;
  TokenizeMode mode = TokenizeMode::kLongestMatch;
};

struct IngestResult {
  std::vector<WordForm> words;
  std::vector<std::size_t> word_lines;  // source line of each word
  std::vector<Reject> rejects;          // in input order
  std::size_t input_lines = 0;          // comment lines excluded
};

// Never throws on bad lines; they become rejects. Lines whose first
// non-blank character is `#` are comments and are not counted.
IngestResult ingest(std::string_view text, const AlphabetSpec& alphabet, const IngestOptions& options = {});

// "line\treason" header, one row per reject.
std::string reject_log_tsv(const std::vector<Reject>& rejects);

// Marked token sequences of the accepted words, ready for instantiation.
std::vector<Word> marked_corpus(const std::vector<WordForm>& words);

}  // namespace ofs
