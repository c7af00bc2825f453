#include "deltakit/metrics.hpp"
#include "deltakit/pipeline.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace deltakit;

namespace {

VectorXd vec(std::initializer_list<double> values)
{
  VectorXd v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) { v(i++) = x; }
  return v;
}

oracle::Vec to_std(VectorXd const &v) { return {v.data(), v.data() + v.size()}; }

RankVector ranks_of(std::initializer_list<double> r)
{
  auto v = vec(r);
  return {v, v.size()};
}

} // namespace

TEST_SUITE("metrics")
{
  TEST_CASE("toy values")
  {
    VectorXd const a = vec({0.7071068, -0.7071068});
    VectorXd const b = -a;
    CHECK(lp_delta(a, b, 1, true) == doctest::Approx(1.4142136).epsilon(1e-7));
    CHECK(lp_delta(a, b, 1, false) == doctest::Approx(2.8284272).epsilon(1e-7));
    CHECK(lp_delta(a, b, 2) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(lp_delta(a, b, 2, true) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(cosine_delta(a, b) == doctest::Approx(2.0));
    CHECK(jensen_shannon_delta(vec({0.6, 0.4}), vec({0.4, 0.6})) == doctest::Approx(0.0290494).epsilon(1e-6));
    CHECK(rank_turbulence_delta(ranks_of({1, 2}), ranks_of({2, 1}), 1.0) == doctest::Approx(1.0));
    CHECK(rtd_normalizer(2, 2, ranks_of({1, 2}), ranks_of({2, 1}), 1.0).value == doctest::Approx(2.8284271).epsilon(1e-7));
  }

  TEST_CASE("cosine edge cases")
  {
    CHECK(cosine_delta(vec({1, 2}), vec({2, 4})) == doctest::Approx(0.0));
    CHECK(cosine_delta(vec({1, 0}), vec({0, 1})) == doctest::Approx(1.0));
    CHECK_THROWS_AS(cosine_delta(vec({0, 0}), vec({1, 1})), Error);
  }

  TEST_CASE("jsd edge cases")
  {
    CHECK(jensen_shannon_delta(vec({0.5, 0.5}), vec({0.5, 0.5})) == 0.0);
    CHECK(jensen_shannon_delta(vec({1 - 1e-12, 1e-12}), vec({1e-12, 1 - 1e-12})) <= 1.0);
    CHECK_THROWS_AS(jensen_shannon_delta(vec({1.0, 0.0}), vec({0.5, 0.5})), Error);
    CHECK_THROWS_AS(jensen_shannon_delta(vec({0.6, 0.6}), vec({0.5, 0.5})), Error);
    CHECK_THROWS_AS(jensen_shannon_delta(vec({0.6, 0.4}), vec({0.5, 0.5}), 1.0), Error);
  }

  TEST_CASE("rtd edge cases")
  {
    auto const r = rank_turbulence_delta(ranks_of({1, 2, 3}), ranks_of({1, 3, 2}), 1.0);
    CHECK(r > 0);
    CHECK(r < 1);
    CHECK(rank_turbulence_delta(ranks_of({1, 2, 3}), ranks_of({1, 2, 3}), 0.5) == 0.0);
    CHECK_THROWS_AS(rank_turbulence_delta(ranks_of({1, 2}), ranks_of({1, 2}), 0.0), Error);
    CHECK_THROWS_AS(rank_turbulence_delta(ranks_of({1, 2}), ranks_of({1, 2, 3}), 1.0), Error);
    auto const terms = rank_turbulence_terms(ranks_of({1, 2, 3}), ranks_of({1, 3, 2}), 1.0);
    CHECK(terms.sum() == doctest::Approx(r).epsilon(1e-12));
    CHECK(terms(0) == 0.0);
  }

  TEST_CASE("metric spec parsing")
  {
    CHECK(parse_metric_kind("burrows") == MetricKind::Burrows);
    CHECK(parse_metric_kind("jsd") == MetricKind::Jsd);
    CHECK(to_string(MetricKind::Rtd) == "rtd");
    CHECK_THROWS_AS(parse_metric_kind("manhattan-ish"), Error);
    CHECK(parse_rtd_normalizer(to_string(RtdNormalizerMode::Exclusive)) == RtdNormalizerMode::Exclusive);
    MetricSpec s;
    s.kind = MetricKind::Jsd;
    s.pi1 = 0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = {};
    s.kind = MetricKind::Rtd;
    s.alpha = -1;
    CHECK_THROWS_AS(s.validate(), Error);
  }

  TEST_CASE("oracle agreement and metric axioms on random vectors")
  {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
      Index const n = 2 + static_cast<Index>(rng() % 20);
      VectorXd a(n), b(n), c(n);
      for (Index i = 0; i < n; ++i) {
        a(i) = normal(rng);
        b(i) = normal(rng);
        c(i) = normal(rng);
      }
      auto const sa = to_std(a), sb = to_std(b);
      CHECK(oracle::close(lp_delta(a, b, 1, true), oracle::burrows(sa, sb, true), 1e-12));
      CHECK(oracle::close(lp_delta(a, b, 2), oracle::quadratic(sa, sb), 1e-12));
      CHECK(oracle::close(cosine_delta(a, b), oracle::cosine(sa, sb), 1e-9, 1e-12));
      CHECK(lp_delta(a, b, 1) == doctest::Approx(lp_delta(b, a, 1)));
      CHECK(lp_delta(a, a, 2) == 0.0);
      CHECK(lp_delta(a, c, 1) <= lp_delta(a, b, 1) + lp_delta(b, c, 1) + 1e-12);
      CHECK(lp_delta(a, c, 2) <= lp_delta(a, b, 2) + lp_delta(b, c, 2) + 1e-12);
      double const cd = cosine_delta(a, b);
      CHECK(cd >= 0);
      CHECK(cd <= 2);

      VectorXd pa(n), pb(n);
      for (Index i = 0; i < n; ++i) {
        pa(i) = unit(rng);
        pb(i) = unit(rng);
      }
      pa /= pa.sum();
      pb /= pb.sum();
      double const pi1 = std::uniform_real_distribution<double>(0.05, 0.95)(rng);
      double const j = jensen_shannon_delta(pa, pb, pi1);
      CHECK(oracle::close(j, oracle::jsd(to_std(pa), to_std(pb), pi1), 1e-9, 1e-14));
      CHECK(j >= 0);
      CHECK(j <= 1.0 + 1e-12);
      CHECK(jensen_shannon_delta(pa, pb) == doctest::Approx(jensen_shannon_delta(pb, pa)).epsilon(1e-12));

      auto const ra = to_ranks(a), rb = to_ranks(b);
      CHECK(to_std(ra.ranks) == oracle::ranks(sa));
      for (double alpha : {0.25, 1.0, 3.0}) {
        double const literal = rank_turbulence_delta(ra, rb, alpha, RtdNormalizerMode::Literal);
        double const exclusive = rank_turbulence_delta(ra, rb, alpha, RtdNormalizerMode::Exclusive);
        CHECK(oracle::close(literal, oracle::rtd(to_std(ra.ranks), to_std(rb.ranks), alpha, -1), 1e-10, 1e-14));
        CHECK(oracle::close(exclusive, oracle::rtd(to_std(ra.ranks), to_std(rb.ranks), alpha, +1), 1e-10, 1e-14));
        CHECK(literal >= 0);
        CHECK(literal <= 1 + 1e-12);
        CHECK(exclusive >= 0);
        CHECK(exclusive <= 1 + 1e-12);
        CHECK(literal == doctest::Approx(rank_turbulence_delta(rb, ra, alpha)).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("pairwise matrix")
  {
    FrequencyMatrix m;
    m.docs = {"a", "b", "c", "d"};
    m.vocab.tokens = {"x", "y", "z"};
    m.counts.resize(4, 3);
    m.counts << 5, 3, 2, 2, 6, 2, 4, 4, 2, 1, 2, 7;
    for (auto kind : {MetricKind::Burrows, MetricKind::Quadratic, MetricKind::Cosine, MetricKind::Jsd, MetricKind::Rtd}) {
      PipelineConfig cfg;
      cfg.metric.kind = kind;
      cfg.zmode = kind == MetricKind::Jsd ? ZMode::Uncentred : ZMode::Centred;
      auto const d1 = distance_matrix(m, cfg, 1);
      auto const d3 = distance_matrix(m, cfg, 3);
      CHECK(d1.values == d3.values);
      CHECK(d1.values.diagonal().isZero(0));
      CHECK(d1.values == d1.values.transpose());
      CHECK((d1.values.array() >= 0).all());
    }
  }

  TEST_CASE("incompatible representation and metric")
  {
    FrequencyMatrix m;
    m.docs = {"a", "b"};
    m.vocab.tokens = {"x", "y"};
    m.counts.resize(2, 2);
    m.counts << 3, 2, 2, 3;
    PipelineConfig cfg;
    cfg.metric.kind = MetricKind::Jsd;
    cfg.zmode = ZMode::Centred;
    CHECK_THROWS_AS(cfg.validate(), Error);
    cfg.metric.kind = MetricKind::Cosine;
    cfg.zmode = ZMode::Uncentred;
    CHECK_THROWS_AS(cfg.validate(), Error);

    cfg = {};
    auto const z = standardize(m, cfg);
    MetricSpec jsd;
    jsd.kind = MetricKind::Jsd;
    CHECK_THROWS_AS(check_compatible(Representation{z}, jsd), Error);
  }

  TEST_CASE("distance csv round trip")
  {
    DistanceMatrix d;
    d.docs = {"a", "b,c"};
    d.values.resize(2, 2);
    d.values << 0, 0.1 + 0.2, 0.1 + 0.2, 0;
    std::ostringstream out;
    write_distance_csv(out, d);
    auto const path = std::string("/tmp/deltakit_dist_roundtrip.csv");
    std::ofstream(path) << out.str();
    auto const back = read_distance_csv(path);
    CHECK(back.docs == d.docs);
    CHECK(back.values == d.values);
  }
}
