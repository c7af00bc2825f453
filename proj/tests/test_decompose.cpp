#include "deltakit/decompose.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace deltakit;

namespace {

AuthorProfile profile(std::string name, std::initializer_list<double> values, ZMode mode)
{
  VectorXd v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) { v(i++) = x; }
  return {std::move(name), v, 1, mode};
}

Vocabulary vocab_of(Index n)
{
  Vocabulary v;
  for (Index i = 0; i < n; ++i) { v.tokens.push_back("w" + std::to_string(i)); }
  return v;
}

MetricSpec spec(MetricKind kind)
{
  MetricSpec s;
  s.kind = kind;
  return s;
}

double total(ContributionTable const &t)
{
  double s = 0;
  for (auto const &r : t.rows) { s += r.delta; }
  return s;
}

} // namespace

TEST_SUITE("decompose")
{
  TEST_CASE("author profiles average the author's rows")
  {
    ZMatrix z{{"a", "b", "c"}, vocab_of(2), MatrixXd(3, 2), ZMode::Centred};
    z.values << 1, 2, 3, 4, 5, 6;
    auto const p = author_profile(z, {"x", "y", "x"}, "x");
    CHECK(p.support == 2);
    CHECK(p.mean_z(0) == 3.0);
    CHECK(p.mean_z(1) == 4.0);
    CHECK_THROWS_AS(author_profile(z, {"x", "y", "x"}, "nobody"), Error);
    CHECK_THROWS_AS(author_profile(z, {"x", "y"}, "x"), Error);
  }

  TEST_CASE("toy contributions")
  {
    auto const c1 = profile("A", {0.7071068, -0.7071068}, ZMode::Centred);
    auto const c2 = profile("B", {-0.7071068, 0.7071068}, ZMode::Centred);
    auto const cos = contributions(c1, c2, vocab_of(2), spec(MetricKind::Cosine));
    CHECK(cos.rows[0].delta == doctest::Approx(0.5));
    CHECK(cos.rows[1].delta == doctest::Approx(0.5));
    CHECK(cos.rows[0].favored == Favored::Side1);
    CHECK(cos.rows[1].favored == Favored::Side2);

    auto const u1 = profile("A", {4.2426407, 2.8284271}, ZMode::Uncentred);
    auto const u2 = profile("B", {2.8284271, 4.2426407}, ZMode::Uncentred);
    auto const jsd = contributions(u1, u2, vocab_of(2), spec(MetricKind::Jsd), 0.0);
    CHECK(jsd.rows[0].delta == doctest::Approx(0.0145247).epsilon(1e-5));
    CHECK(jsd.rows[1].delta == doctest::Approx(0.0145247).epsilon(1e-5));
    CHECK(jsd.rows[0].favored == Favored::Side1);
    CHECK(jsd.rows[1].favored == Favored::Side2);
    CHECK(total(jsd) == doctest::Approx(profile_distance(u1, u2, spec(MetricKind::Jsd), 0.0)).epsilon(1e-12));
  }

  TEST_CASE("cosine favored side follows the sign pattern")
  {
    auto const a = profile("A", {1, -1, 1, -1}, ZMode::Centred);
    auto const b = profile("B", {-1, 1, 1, -1}, ZMode::Centred);
    auto const t = contributions(a, b, vocab_of(4), spec(MetricKind::Cosine));
    CHECK(t.rows[0].favored == Favored::Side1); // (+, -)
    CHECK(t.rows[1].favored == Favored::Side2); // (-, +)
    CHECK(t.rows[2].favored == Favored::Neutral); // (+, +)
    CHECK(t.rows[3].favored == Favored::Neutral); // (-, -)
    CHECK(t.rows[2].delta < 0);
    CHECK(t.rows[3].delta < 0);
    auto const top = top_k(t, 10);
    CHECK(top.rows.size() == 2);
  }

  TEST_CASE("rtd favors the better (smaller) rank")
  {
    auto const a = profile("A", {3, 2, 1}, ZMode::Centred);
    auto const b = profile("B", {3, 1, 2}, ZMode::Centred);
    auto const t = contributions(a, b, vocab_of(3), spec(MetricKind::Rtd));
    CHECK(t.rows[0].favored == Favored::Neutral);
    CHECK(t.rows[0].delta == 0.0);
    CHECK(t.rows[1].favored == Favored::Side1);
    CHECK(t.rows[2].favored == Favored::Side2);
  }

  TEST_CASE("quadratic has no decomposition")
  {
    auto const a = profile("A", {1, -1}, ZMode::Centred);
    auto const b = profile("B", {-1, 1}, ZMode::Centred);
    CHECK_THROWS_AS(contributions(a, b, vocab_of(2), spec(MetricKind::Quadratic)), Error);
  }

  TEST_CASE("mode checks")
  {
    auto const c = profile("A", {1, -1}, ZMode::Centred);
    auto const u = profile("B", {1, 2}, ZMode::Uncentred);
    CHECK_THROWS_AS(contributions(c, u, vocab_of(2), spec(MetricKind::Burrows)), Error);
    CHECK_THROWS_AS(contributions(c, c, vocab_of(2), spec(MetricKind::Jsd)), Error);
    CHECK_THROWS_AS(contributions(u, u, vocab_of(2), spec(MetricKind::Cosine)), Error);
    CHECK_THROWS_AS(contributions(c, c, vocab_of(3), spec(MetricKind::Burrows)), Error);
  }

  TEST_CASE("additivity on random profiles")
  {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> positive(0.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
      Index const n = 2 + static_cast<Index>(rng() % 40);
      AuthorProfile c1{"A", VectorXd(n), 3, ZMode::Centred}, c2{"B", VectorXd(n), 2, ZMode::Centred};
      AuthorProfile u1{"A", VectorXd(n), 3, ZMode::Uncentred}, u2{"B", VectorXd(n), 2, ZMode::Uncentred};
      for (Index i = 0; i < n; ++i) {
        c1.mean_z(i) = normal(rng);
        c2.mean_z(i) = normal(rng);
        u1.mean_z(i) = positive(rng);
        u2.mean_z(i) = positive(rng);
      }
      auto const vocab = vocab_of(n);

      auto burrows = spec(MetricKind::Burrows);
      burrows.normalize_by_n = false;
      auto const tb = contributions(c1, c2, vocab, burrows);
      CHECK(total(tb) == doctest::Approx(profile_distance(c1, c2, burrows)).epsilon(1e-12));
      for (auto const &r : tb.rows) { CHECK(r.delta >= 0); }

      auto const tc = contributions(c1, c2, vocab, spec(MetricKind::Cosine));
      CHECK(total(tc) + 1 == doctest::Approx(profile_distance(c1, c2, spec(MetricKind::Cosine))).epsilon(1e-10));

      auto jsd = spec(MetricKind::Jsd);
      jsd.pi1 = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      auto const tj = contributions(u1, u2, vocab, jsd);
      CHECK(std::abs(total(tj) - profile_distance(u1, u2, jsd)) <= 1e-12);
      for (auto const &r : tj.rows) { CHECK(r.delta >= -1e-15); }

      for (double alpha : {0.5, 1.0, 2.0}) {
        auto rtd = spec(MetricKind::Rtd);
        rtd.alpha = alpha;
        auto const tr = contributions(c1, c2, vocab, rtd);
        CHECK(total(tr) == doctest::Approx(profile_distance(c1, c2, rtd)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("top_k ordering and validation")
  {
    ContributionTable t;
    t.metric = spec(MetricKind::Burrows);
    t.pair = {"A", "B"};
    t.rows = {{"c", 1.0, Favored::Side1}, {"a", 3.0, Favored::Side2}, {"b", 1.0, Favored::Side1}, {"d", 2.0, Favored::Side2}};
    auto const top = top_k(t, 3);
    REQUIRE(top.rows.size() == 3);
    CHECK(top.rows[0].token == "a");
    CHECK(top.rows[1].token == "d");
    CHECK(top.rows[2].token == "b");
    CHECK(top_k(t, 99).rows.size() == 4);
    CHECK_THROWS_AS(top_k(t, 0), Error);

    std::ostringstream out;
    write_contributions_csv(out, top);
    CHECK(out.str() == "token,delta,favored,rank\na,3,B,1\nd,2,B,2\nb,1,A,3\n");
  }
}
