#include <algorithm>
#include <cmath>

#include "jndkit/analysis.hpp"
#include "jndkit/errors.hpp"

namespace jndkit {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail(ErrorCode::DimensionMismatch, "pearson inputs differ in length");
  const std::size_t n = x.size();
  if (n < 3) fail(ErrorCode::InsufficientData, "pearson needs at least 3 pairs, got " + std::to_string(n));
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorCode::InsufficientData, "pearson input has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

CorrelationMatrix dimension_correlation(const MrvMatrix& m) {
  const std::size_t k = m.kinds.size();
  if (m.values.size() != m.models.size()) fail(ErrorCode::DimensionMismatch, "one row per model expected");
  for (const auto& row : m.values)
    if (row.size() != k) fail(ErrorCode::DimensionMismatch, "one column per kind expected");
  CorrelationMatrix out;
  out.kinds = m.kinds;
  out.r.assign(k, std::vector<double>(k, 1.0));
  out.samples.assign(k, std::vector<int>(k, 0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      std::vector<double> x, y;
      for (const auto& row : m.values)
        if (row[a] && row[b]) x.push_back(*row[a]), y.push_back(*row[b]);
      out.samples[a][b] = out.samples[b][a] = static_cast<int>(x.size());
      if (a == b) continue;
      try {
        out.r[a][b] = out.r[b][a] = pearson(x, y);
      } catch (const Error& e) {
        fail(e.code(), std::string(to_string(m.kinds[a])) + " vs " + std::string(to_string(m.kinds[b])) + ": " +
                           e.what());
      }
    }
  }
  return out;
}

}  // namespace jndkit
