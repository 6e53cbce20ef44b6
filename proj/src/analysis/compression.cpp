#include <algorithm>
#include <cctype>
#include <map>
#include <regex>
#include <set>

#include "jndkit/analysis.hpp"
#include "jndkit/codec.hpp"
#include "jndkit/errors.hpp"

namespace jndkit {

std::string normalize_answer(std::string_view answer) {
  std::string out;
  bool pending_space = false;
  for (char c : answer) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::optional<char> extract_choice(std::string_view answer) {
  const std::string text = normalize_answer(answer);
  static const std::regex parenthesized(R"(\(([a-e])\))");
  static const std::regex labelled(R"(\b(?:answer|option|choice)\s*(?:is)?\s*[:\-]?\s*\(?([a-e])\b)");
  static const std::regex leading(R"(^([a-e])(?:$|[.):,\s]))");
  std::smatch m;
  for (const auto* re : {&parenthesized, &labelled, &leading})
    if (std::regex_search(text, m, *re)) return static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
  return std::nullopt;
}

bool answers_differ(std::string_view a, std::string_view b, bool multiple_choice) {
  if (multiple_choice) {
    const auto ca = extract_choice(a), cb = extract_choice(b);
    if (ca && cb) return *ca != *cb;
  }
  return normalize_answer(a) != normalize_answer(b);
}

double saved_bits_per_pixel(std::size_t original_bits, std::size_t compressed_bits, int width, int height) {
  if (width < 1 || height < 1) fail(ErrorCode::InvalidArgument, "image dimensions must be positive");
  return (static_cast<double>(original_bits) - static_cast<double>(compressed_bits)) /
         (static_cast<double>(width) * static_cast<double>(height));
}

CompressionReport compression_eval(std::span<const QuestionItem> questions, Perceiver& perceiver, int jpeg_level,
                                   int repeats) {
  if (jpeg_level < 0 || jpeg_level > 100) fail(ErrorCode::LevelOutOfRange, "JPEG level must lie in [0, 100]");
  if (repeats < 1 || repeats % 2 == 0) fail(ErrorCode::InvalidArgument, "repeats must be a positive odd number");
  CompressionReport report;
  report.jpeg_level = jpeg_level;
  report.repeats = repeats;
  report.questions = static_cast<int>(questions.size());
  if (jpeg_level == 0) {
    for (const auto& q : questions) report.outcomes.push_back({q.id, normalize_answer(q.answer), false, 0.0});
    return report;
  }
  report.quality_factor = 101 - jpeg_level;

  std::map<std::string, double> saved_by_image;
  for (const auto& item : questions) {
    const JpegResult jpeg = encode_jpeg(item.image, report.quality_factor);
    const double saved =
        saved_bits_per_pixel(item.original_bytes * 8, jpeg.size_bytes() * 8, item.image.width(), item.image.height());
    saved_by_image.emplace(item.reference_id, saved);

    std::vector<std::string> answers;
    for (int r = 0; r < repeats; ++r) {
      ComparisonQuery q;
      q.reference_id = item.reference_id;
      q.kind = DistortionKind::Jpeg;
      q.anchor_level = 0;
      q.candidate_level = jpeg_level;
      q.prompt = item.question;
      q.repeat = r;
      q.tag = "vqa:" + item.id;
      q.expected_answer = item.answer;
      q.candidate_payload = [&jpeg] { return Attachment{"image/jpeg", jpeg.bytes}; };
      answers.push_back(perceiver.compare(q).text);
    }
    // Majority over equivalent answers; the earliest wins ties.
    std::size_t best = 0, best_count = 0;
    for (std::size_t i = 0; i < answers.size(); ++i) {
      std::size_t count = 0;
      for (const auto& other : answers) count += !answers_differ(answers[i], other, item.multiple_choice);
      if (count > best_count) best = i, best_count = count;
    }
    QuestionOutcome outcome{item.id, normalize_answer(answers[best]),
                            answers_differ(answers[best], item.answer, item.multiple_choice), saved};
    report.changed += outcome.changed;
    report.outcomes.push_back(std::move(outcome));
  }
  if (report.questions > 0) report.response_change_ratio = static_cast<double>(report.changed) / report.questions;
  if (!saved_by_image.empty()) {
    double sum = 0.0;
    for (const auto& [id, v] : saved_by_image) sum += v;
    report.saved_bpp = sum / static_cast<double>(saved_by_image.size());
  }
  return report;
}

}  // namespace jndkit
