#pragma once

#include "deltakit/corpus.hpp"
#include "deltakit/metrics.hpp"
#include "deltakit/standardize.hpp"

namespace deltakit {

/// Everything needed to go from a frequency matrix to a distance matrix.
struct PipelineConfig
{
  Index mfw = 0; ///< 0 keeps the whole vocabulary
  ZMode zmode = ZMode::Centred;
  int ddof = 1;
  double epsilon = 1e-10;
  MetricSpec metric;

  void validate() const;
};

/// mfw slice -> relative frequencies -> fitted stats -> z-scores.
ZMatrix standardize(FrequencyMatrix const &freq, PipelineConfig const &config);

/// The representation the configured metric is evaluated on.
Representation represent(ZMatrix const &z, PipelineConfig const &config);

DistanceMatrix distance_matrix(FrequencyMatrix const &freq, PipelineConfig const &config, unsigned threads = 1);

} // namespace deltakit
