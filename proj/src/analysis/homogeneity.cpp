#include <cmath>
#include <memory>

#include "jndkit/analysis.hpp"
#include "jndkit/errors.hpp"

namespace jndkit {

namespace {

bool on_grid(double f, bool allow_zero) {
  if (allow_zero && f == 0.0) return true;
  for (double g : kContaminationFractions)
    if (std::abs(f - g) < 1e-12) return true;
  return false;
}

/// Reference with `spec` applied at `level`; level 0 leaves it untouched.
Content distorted(const Reference& ref, const LadderSpec& spec, int level) {
  if (level <= 0) return ref.content;
  return make_stimulus(ref, spec, std::min(level, spec.level_count)).payload;
}

}  // namespace

int contamination_level(double fraction, double mrv) {
  return static_cast<int>(std::lround(fraction * std::floor(mrv)));
}

const HomogeneityCell& HomogeneityTable::at(std::size_t source_index, std::size_t injected_index) const {
  return cells.at(source_index * plan.injected_fractions.size() + injected_index);
}

HomogeneityTable homogeneity_test(const ContaminationPlan& plan, std::span<const Reference> references,
                                  Perceiver& perceiver, const JudgeSettings& settings) {
  for (double f : plan.source_fractions)
    if (!on_grid(f, false)) fail(ErrorCode::InvalidArgument, "source fraction off the five-point grid");
  for (double f : plan.injected_fractions)
    if (!on_grid(f, true)) fail(ErrorCode::InvalidArgument, "injected fraction off the five-point grid");
  if (!(plan.source_mrv >= 1.0) || !(plan.injected_mrv >= 1.0))
    fail(ErrorCode::InvalidArgument, "contamination needs MRV values of at least 1");
  validate(plan.source);
  validate(plan.injected);

  HomogeneityTable table;
  table.plan = plan;
  const std::string prompt = render_prompt(settings.prompt, plan.injected.kind);
  const std::string tag = std::string("homogeneity:") + std::string(to_string(plan.source.kind)) +
                          (plan.source_first ? "" : ":injected-first");

  for (double sf : plan.source_fractions) {
    for (double inf : plan.injected_fractions) {
      HomogeneityCell cell;
      cell.source_fraction = sf;
      cell.injected_fraction = inf;
      cell.source_level = contamination_level(sf, plan.source_mrv);
      cell.injected_level = contamination_level(inf, plan.injected_mrv);
      const int s = cell.source_level, i = cell.injected_level;
      for (const auto& ref : references) {
        const auto anchor = [&ref, &plan, s] { return attachment_for(distorted(ref, plan.source, s)); };
        const auto composite = [&ref, &plan, s, i] {
          if (plan.source_first) {
            const Reference base{ref.id, distorted(ref, plan.source, s)};
            return attachment_for(distorted(base, plan.injected, i));
          }
          const Reference base{ref.id, distorted(ref, plan.injected, i)};
          return attachment_for(distorted(base, plan.source, s));
        };
        PerceiverJudge judge(perceiver, settings.term, settings.checker, settings.repeats, [&](int, int, int r) {
          ComparisonQuery q;
          q.reference_id = ref.id;
          q.kind = plan.injected.kind;
          q.anchor_level = s;
          q.candidate_level = i;
          q.anchor_components = {s, 0};
          q.candidate_components = {s, i};
          q.prompt = prompt;
          q.repeat = r;
          q.tag = tag;
          q.anchor_payload = anchor;
          q.candidate_payload = composite;
          return q;
        });
        const VerdictClass v = judge(s, i);
        if (!is_valid(v)) continue;
        ++cell.validated;
        cell.unchanged += v == VerdictClass::Negative;
      }
      if (cell.validated > 0) cell.tau = static_cast<double>(cell.unchanged) / cell.validated;
      table.cells.push_back(cell);
    }
  }
  return table;
}

std::vector<std::string> above_average_references(std::span<const JndResult> results) {
  if (results.empty()) return {};
  const auto first = [](const JndResult& r) { return r.levels.empty() ? r.level_count + 1 : r.levels.front(); };
  double mean = 0.0;
  for (const auto& r : results) mean += first(r);
  mean /= static_cast<double>(results.size());
  std::vector<std::string> out;
  for (const auto& r : results)
    if (first(r) >= mean) out.push_back(r.reference_id);
  return out;
}

}  // namespace jndkit
