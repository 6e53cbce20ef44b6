#include "jndkit/text_attack.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "jndkit/errors.hpp"
#include "jndkit/rng.hpp"

namespace jndkit {

namespace {

constexpr int kFirstPrintable = 33;
constexpr int kLastPrintable = 126;

struct Span {
  std::size_t begin;
  std::size_t end;
};

std::vector<Span> placeholder_spans(std::string_view text) {
  std::vector<Span> spans;
  constexpr std::string_view kOpen = "<image";
  std::size_t pos = 0;
  while ((pos = text.find(kOpen, pos)) != std::string_view::npos) {
    const std::size_t close = text.find('>', pos);
    if (close == std::string_view::npos) break;
    spans.push_back({pos, close + 1});
    pos = close + 1;
  }
  return spans;
}

std::vector<bool> eligibility(std::string_view text) {
  std::vector<bool> ok(text.size(), true);
  for (const auto& s : placeholder_spans(text))
    for (std::size_t i = s.begin; i < s.end; ++i) ok[i] = false;
  return ok;
}

int budget(double level, std::size_t count) {
  return static_cast<int>(std::floor(level * static_cast<double>(count) + 1e-9));
}

// Chooses k distinct entries of `pool` (partial Fisher-Yates), returned sorted.
std::vector<std::size_t> choose(std::vector<std::size_t> pool, int k, Rng& rng) {
  for (int i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(pool.size() - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

char random_printable(Rng& rng) {
  return static_cast<char>(rng.between(kFirstPrintable, kLastPrintable));
}

PerturbResult char_attack(std::string_view text, double level, Rng& rng) {
  const auto ok = eligibility(text);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < text.size(); ++i)
    if (ok[i]) pool.push_back(i);
  PerturbResult r;
  const int n = budget(level, pool.size());
  const auto picked = choose(std::move(pool), n, rng);
  std::vector<bool> selected(text.size(), false);
  for (auto i : picked) selected[i] = true;

  std::vector<bool> consumed(text.size(), false);
  std::size_t next = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (consumed[i]) continue;
    if (next >= picked.size() || picked[next] != i) {
      r.text.push_back(text[i]);
      continue;
    }
    ++next;
    auto op = static_cast<TextEditOp>(rng.below(4));
    if (op == TextEditOp::Permute) {
      const bool can_swap = i + 1 < text.size() && ok[i + 1] && !selected[i + 1];
      if (!can_swap) op = TextEditOp::Repeat;
    }
    switch (op) {
      case TextEditOp::Add:
        r.text.push_back(text[i]);
        r.text.push_back(random_printable(rng));
        break;
      case TextEditOp::Delete: break;
      case TextEditOp::Repeat:
        r.text.push_back(text[i]);
        r.text.push_back(text[i]);
        break;
      default:
        r.text.push_back(text[i + 1]);
        r.text.push_back(text[i]);
        consumed[i + 1] = true;
        break;
    }
    r.edits.push_back({i, op});
  }
  r.manipulated = n;
  return r;
}

PerturbResult word_attack(std::string_view text, double level, Rng& rng, SynonymProvider& provider) {
  const auto ok = eligibility(text);
  std::vector<Span> words;
  for (std::size_t i = 0; i < text.size();) {
    if (ok[i] && std::isalnum(static_cast<unsigned char>(text[i]))) {
      std::size_t j = i;
      while (j < text.size() && ok[j] && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
      words.push_back({i, j});
      i = j;
    } else {
      ++i;
    }
  }
  std::vector<std::size_t> pool(words.size());
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  const int n = budget(level, words.size());
  const auto picked = choose(std::move(pool), n, rng);

  PerturbResult r;
  std::size_t cursor = 0;
  for (auto w : picked) {
    const Span s = words[w];
    r.text.append(text.substr(cursor, s.begin - cursor));
    const std::string_view word = text.substr(s.begin, s.end - s.begin);
    if (auto replacement = provider.synonym(word, text)) {
      r.text.append(*replacement);
    } else {
      r.text.append(word);
    }
    r.edits.push_back({s.begin, TextEditOp::Replace});
    cursor = s.end;
  }
  r.text.append(text.substr(cursor));
  r.manipulated = n;
  return r;
}

PerturbResult sentence_attack(std::string_view text, double level, Rng& rng) {
  const int n = budget(level, countable_length(text));
  std::string injected;
  for (int i = 0; i < n; ++i) injected.push_back(random_printable(rng));

  std::size_t offset = 0;
  switch (rng.below(3)) {
    case 0: offset = 0; break;
    case 1: {
      offset = text.size() / 2;
      for (const auto& s : placeholder_spans(text))
        if (offset > s.begin && offset < s.end) offset = s.end;
      break;
    }
    default: offset = text.size(); break;
  }
  PerturbResult r;
  r.text.reserve(text.size() + injected.size());
  r.text.append(text.substr(0, offset));
  r.text.append(injected);
  r.text.append(text.substr(offset));
  r.manipulated = n;
  r.injected_offset = offset;
  r.injected_length = injected.size();
  r.edits.push_back({offset, TextEditOp::Inject});
  return r;
}

}  // namespace

std::size_t countable_length(std::string_view text) {
  std::size_t excluded = 0;
  for (const auto& s : placeholder_spans(text)) excluded += s.end - s.begin;
  return text.size() - excluded;
}

PerturbResult perturb_text(std::string_view text, double level, TextAttack kind, std::uint64_t seed,
                           SynonymProvider* provider) {
  if (text.empty()) fail(ErrorCode::InvalidArgument, "text to perturb must be non-empty");
  if (!(level > 0.0 && level <= 1.0)) fail(ErrorCode::InvalidArgument, "perturbation level must be in (0, 1]");
  Rng rng(seed);
  switch (kind) {
    case TextAttack::Char: return char_attack(text, level, rng);
    case TextAttack::Word:
      if (provider == nullptr) fail(ErrorCode::MissingProvider, "word-level attacks need a synonym provider");
      return word_attack(text, level, rng, *provider);
    case TextAttack::Sentence: return sentence_attack(text, level, rng);
  }
  return {};
}

}  // namespace jndkit
