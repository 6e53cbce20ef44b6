#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jndkit {

enum class TextAttack { Char, Word, Sentence };

/// Source of replacement words for word-level attacks (a thesaurus, an LLM
/// endpoint, ...). Returning nullopt leaves the word unchanged.
class SynonymProvider {
 public:
  virtual ~SynonymProvider() = default;
  virtual std::optional<std::string> synonym(std::string_view word, std::string_view context) = 0;
};

enum class TextEditOp { Add, Delete, Repeat, Permute, Replace, Inject };

struct TextEdit {
  std::size_t position = 0;  ///< offset in the original text
  TextEditOp op = TextEditOp::Add;
};

struct PerturbResult {
  std::string text;
  int manipulated = 0;  ///< characters (Char), words (Word) or injected characters (Sentence)
  std::vector<TextEdit> edits;
  std::size_t injected_offset = 0;  ///< Sentence only, offset in the output text
  std::size_t injected_length = 0;
};

/// Length of the text with image placeholders such as "<image>" or
/// "<image 2>" removed; perturbation budgets are computed on this length.
std::size_t countable_length(std::string_view text);

/// Character attacks manipulate floor(level * len) characters (add, delete,
/// repeat or permute, chosen per seed); word attacks replace floor(level *
/// words) words through the provider; sentence attacks inject a random string
/// of floor(level * len) printable ASCII characters (codes 33..126) at the
/// head, middle or end. Placeholders are never touched.
PerturbResult perturb_text(std::string_view text, double level, TextAttack kind, std::uint64_t seed,
                           SynonymProvider* provider = nullptr);

}  // namespace jndkit
