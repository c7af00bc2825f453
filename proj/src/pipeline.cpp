#include "deltakit/pipeline.hpp"

namespace deltakit {

void PipelineConfig::validate() const
{
  metric.validate();
  if (mfw < 0) { throw Error("mfw must be >= 1"); }
  if (ddof != 0 && ddof != 1) { throw Error("ddof must be 0 or 1"); }
  if (!(epsilon >= 0)) { throw Error("epsilon must be >= 0"); }
  if (metric.kind == MetricKind::Jsd && zmode == ZMode::Centred) {
    throw Error("jsd is not defined on centred z-scores (negative components); use --zscore uncentred");
  }
  if (metric.kind == MetricKind::Cosine && zmode == ZMode::Uncentred) { throw Error("cosine delta needs centred z-scores"); }
}

ZMatrix standardize(FrequencyMatrix const &freq, PipelineConfig const &config)
{
  auto const sliced = config.mfw > 0 ? select_mfw(freq, config.mfw) : freq;
  auto const relfreq = relative_frequencies(sliced);
  auto const stats = fit_stats(relfreq, config.ddof);
  return z_transform(relfreq, stats, config.zmode);
}

Representation represent(ZMatrix const &z, PipelineConfig const &config)
{
  switch (config.metric.kind) {
  case MetricKind::Jsd: return to_probability(z, config.epsilon);
  case MetricKind::Rtd: return to_rank_matrix(z);
  default: return z;
  }
}

DistanceMatrix distance_matrix(FrequencyMatrix const &freq, PipelineConfig const &config, unsigned threads)
{
  config.validate();
  return pairwise_matrix(represent(standardize(freq, config), config), config.metric, threads);
}

} // namespace deltakit
