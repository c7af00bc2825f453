#include "deltakit/robustness.hpp"

#include <doctest.h>

#include <random>

using namespace deltakit;

namespace {

// Authors A and B over-use disjoint token bands; C documents are unbiased
// background.
FrequencyMatrix planted(std::size_t docs_a, std::size_t docs_b, std::size_t docs_c, Index vocab, std::uint64_t seed,
                        Labels &authors)
{
  std::mt19937_64 rng(seed);
  FrequencyMatrix m;
  Index const docs = static_cast<Index>(docs_a + docs_b + docs_c);
  m.counts.resize(docs, vocab);
  for (Index j = 0; j < vocab; ++j) { m.vocab.tokens.push_back("w" + std::to_string(j)); }
  authors.clear();
  for (Index i = 0; i < docs; ++i) {
    auto const u = static_cast<std::size_t>(i);
    bool const is_a = u < docs_a;
    bool const is_b = !is_a && u < docs_a + docs_b;
    std::string const author = is_a ? "A" : is_b ? "B" : "C";
    m.docs.push_back(author + std::to_string(i));
    authors.push_back(author);
    for (Index j = 0; j < vocab; ++j) {
      double base = 2000.0 / (1.0 + static_cast<double>(j));
      bool const biased = (is_a && j < vocab / 10) || (is_b && j >= vocab / 10 && j < vocab / 5);
      if (biased) { base *= 1.6; }
      std::poisson_distribution<std::int64_t> pois(base);
      m.counts(i, j) = pois(rng) + 1;
    }
  }
  return m;
}

} // namespace

TEST_SUITE("robustness")
{
  TEST_CASE("jaccard")
  {
    CHECK(jaccard({}, {}) == 1.0);
    CHECK(jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3));
    CHECK(jaccard({"a"}, {}) == 0.0);
  }

  TEST_CASE("bootstrap determinism")
  {
    Labels authors;
    auto const m = planted(6, 5, 0, 60, 1, authors);
    PairSetup setup{"A", "B", {}, false};
    auto const r1 = bootstrap_stability(m, authors, setup, 10, 25, 42, 1);
    auto const r2 = bootstrap_stability(m, authors, setup, 10, 25, 42, 4);
    CHECK(r1.iteration_jaccard == r2.iteration_jaccard);
    CHECK(r1.mean == r2.mean);
    CHECK(r1.std_dev == r2.std_dev);
    auto const r3 = bootstrap_stability(m, authors, setup, 10, 25, 43, 1);
    CHECK(r3.iteration_jaccard != r1.iteration_jaccard);
    for (double j : r1.iteration_jaccard) {
      CHECK(j >= 0);
      CHECK(j <= 1);
    }
    CHECK_THROWS_AS(bootstrap_stability(m, authors, setup, 0, 5, 1), Error);
    CHECK_THROWS_AS(bootstrap_stability(m, authors, setup, 5, 0, 1), Error);
  }

  TEST_CASE("bootstrap on duplicate documents is perfectly stable")
  {
    FrequencyMatrix m;
    m.vocab.tokens = {"x", "y", "z", "u", "v"};
    m.counts.resize(6, 5);
    m.counts << 9, 5, 3, 2, 1, 9, 5, 3, 2, 1, 9, 5, 3, 2, 1, 2, 3, 9, 1, 5, 2, 3, 9, 1, 5, 2, 3, 9, 1, 5;
    m.docs = {"a1", "a2", "a3", "b1", "b2", "b3"};
    Labels const authors{"A", "A", "A", "B", "B", "B"};
    PairSetup setup{"A", "B", {}, false};
    auto const r = bootstrap_stability(m, authors, setup, 3, 30, 7);
    CHECK(r.mean == 1.0);
    CHECK(r.std_dev == 0.0);
  }

  TEST_CASE("mfw stability")
  {
    Labels authors;
    auto const m = planted(6, 6, 0, 80, 2, authors);
    PairSetup setup{"A", "B", {}, false};
    auto const r = mfw_stability(m, authors, setup, 60, {60, 70, 80}, 10);
    REQUIRE(r.mfw_points.size() == 3);
    CHECK(r.mfw_points[0].jaccard == 1.0);
    for (auto const &p : r.mfw_points) { CHECK(p.jaccard >= 0); }
  }

  TEST_CASE("removal toy")
  {
    AuthorProfile a{"A", (VectorXd(2) << 0.7071068, -0.7071068).finished(), 1, ZMode::Centred};
    AuthorProfile b{"B", (VectorXd(2) << -0.7071068, 0.7071068).finished(), 1, ZMode::Centred};
    Vocabulary v{{"x", "y"}};
    MetricSpec burrows;
    burrows.normalize_by_n = false;
    auto const r = removal_experiment(a, b, v, burrows, {1});
    CHECK(r.before == doctest::Approx(2.8284271).epsilon(1e-7));
    CHECK(r.after[0] == doctest::Approx(1.4142136).epsilon(1e-7));
    CHECK(r.monotone());
    CHECK_THROWS_AS(removal_experiment(a, b, v, burrows, {}), Error);
    CHECK_THROWS_AS(removal_experiment(a, b, v, burrows, {2, 1}), Error);
    CHECK_THROWS_AS(removal_experiment(a, b, v, burrows, {3}), Error);

    MetricSpec rtd;
    rtd.kind = MetricKind::Rtd;
    auto const rr = removal_experiment(a, b, v, rtd, {1, 2});
    CHECK(rr.after[1] == 0.0);
  }

  TEST_CASE("removal lowers the distance on a planted corpus")
  {
    // Without background documents the two centred profiles are exact
    // opposites and cosine delta is pinned at 2.
    Labels authors;
    auto const m = planted(12, 8, 6, 300, 5, authors);
    for (auto kind : {MetricKind::Burrows, MetricKind::Cosine, MetricKind::Jsd, MetricKind::Rtd}) {
      PipelineConfig cfg;
      cfg.metric.kind = kind;
      cfg.zmode = kind == MetricKind::Jsd ? ZMode::Uncentred : ZMode::Centred;
      auto const z = standardize(m, cfg);
      auto const p1 = author_profile(z, authors, "A");
      auto const p2 = author_profile(z, authors, "B");
      auto const r = removal_experiment(p1, p2, z.vocab, cfg.metric, {10, 50, 100}, cfg.epsilon);
      CAPTURE(to_string(kind));
      CHECK(r.monotone());
      CHECK(r.after.back() < r.before);
    }
  }

  TEST_CASE("two-author corpora pin cosine delta at 2")
  {
    Labels authors;
    auto const m = planted(7, 4, 0, 50, 6, authors);
    PipelineConfig cfg;
    cfg.metric.kind = MetricKind::Cosine;
    auto const z = standardize(m, cfg);
    auto const p1 = author_profile(z, authors, "A");
    auto const p2 = author_profile(z, authors, "B");
    CHECK(profile_distance(p1, p2, cfg.metric) == doctest::Approx(2.0).epsilon(1e-12));
    auto const r = removal_experiment(p1, p2, z.vocab, cfg.metric, {5, 10});
    CHECK(r.monotone());
  }

  TEST_CASE("restricting standardization to the pair")
  {
    Labels authors;
    auto m = planted(4, 4, 0, 40, 9, authors);
    PairSetup setup{"A", "B", {}, true};
    auto const t = pair_contributions(m, authors, setup);
    CHECK(t.rows.size() == 40);
    CHECK(t.pair.first == "A");
    setup.author2 = "A";
    CHECK_THROWS_AS(pair_contributions(m, authors, setup), Error);
  }
}
