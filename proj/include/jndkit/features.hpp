#pragma once

#include "jndkit/raster.hpp"

namespace jndkit {

/// Low-level statistics used to characterize a stimulus set.
struct FeatureVector {
  double brightness = 0.0;           ///< mean luma
  double contrast = 0.0;             ///< luma standard deviation
  double colorfulness = 0.0;         ///< Hasler-Suesstrunk
  double sharpness = 0.0;            ///< variance of the 3x3 Laplacian of luma
  double spatial_information = 0.0;  ///< std of the Sobel gradient magnitude
};

/// Borders are handled by replicating the edge pixel for both filters.
FeatureVector features(const Raster& img);

}  // namespace jndkit
