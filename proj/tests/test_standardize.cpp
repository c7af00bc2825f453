#include "deltakit/standardize.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace deltakit;

namespace {

RelativeFrequencies relfreq_of(MatrixXd values)
{
  RelativeFrequencies r;
  for (Index i = 0; i < values.rows(); ++i) { r.docs.push_back("d" + std::to_string(i)); }
  for (Index j = 0; j < values.cols(); ++j) { r.vocab.tokens.push_back("t" + std::to_string(j)); }
  r.values = std::move(values);
  return r;
}

RelativeFrequencies toy()
{
  MatrixXd v(2, 2);
  v << 0.6, 0.4, 0.4, 0.6;
  return relfreq_of(v);
}

} // namespace

TEST_SUITE("standardize")
{
  TEST_CASE("relative frequencies")
  {
    FrequencyMatrix m;
    m.docs = {"x", "y"};
    m.vocab.tokens = {"a", "b"};
    m.counts.resize(2, 2);
    m.counts << 2, 1, 1, 2;
    auto const r = relative_frequencies(m);
    CHECK(r.values(0, 0) == doctest::Approx(2.0 / 3).epsilon(1e-15));
    CHECK(r.values(1, 1) == doctest::Approx(2.0 / 3).epsilon(1e-15));

    m.counts << 5, 0, 0, 5;
    CHECK(relative_frequencies(m).values == MatrixXd::Identity(2, 2));

    m.counts << 0, 0, 1, 2;
    CHECK_THROWS_AS(relative_frequencies(m), Error);
  }

  TEST_CASE("fit_stats on the toy matrix")
  {
    auto const s1 = fit_stats(toy(), 1);
    CHECK(s1.mu(0) == doctest::Approx(0.5));
    CHECK(s1.sigma(0) == doctest::Approx(0.1414214).epsilon(1e-7));
    CHECK(s1.sigma(1) == doctest::Approx(0.1414214).epsilon(1e-7));
    auto const s0 = fit_stats(toy(), 0);
    CHECK(s0.sigma(0) == doctest::Approx(0.1).epsilon(1e-12));

    MatrixXd flat(2, 2);
    flat << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(fit_stats(relfreq_of(flat)), Error);
    CHECK_THROWS_AS(fit_stats(toy(), 2), Error);
  }

  TEST_CASE("zero-variance columns are dropped")
  {
    MatrixXd v(3, 3);
    v << 0.2, 0.3, 0.5, 0.2, 0.5, 0.3, 0.2, 0.4, 0.4;
    auto const rel = relfreq_of(v);
    auto const stats = fit_stats(rel);
    CHECK(stats.dropped == Labels{"t0"});
    auto const z = z_transform(rel, stats, ZMode::Centred);
    CHECK(z.values.cols() == 2);
    CHECK(z.vocab.tokens == std::vector<std::string>{"t1", "t2"});
  }

  TEST_CASE("z_transform toy values")
  {
    auto const rel = toy();
    auto const stats = fit_stats(rel, 1);
    auto const c = z_transform(rel, stats, ZMode::Centred);
    CHECK(c.values(0, 0) == doctest::Approx(0.7071068).epsilon(1e-7));
    CHECK(c.values(0, 1) == doctest::Approx(-0.7071068).epsilon(1e-7));
    CHECK(c.values(1, 0) == doctest::Approx(-0.7071068).epsilon(1e-7));
    auto const u = z_transform(rel, stats, ZMode::Uncentred);
    CHECK(u.values(0, 0) == doctest::Approx(4.2426407).epsilon(1e-7));
    CHECK(u.values(0, 1) == doctest::Approx(2.8284271).epsilon(1e-7));

    auto other = rel;
    other.vocab.tokens = {"x", "y"};
    CHECK_THROWS_AS(z_transform(other, stats, ZMode::Centred), Error);
  }

  TEST_CASE("cells equal to the mean give zero centred scores")
  {
    auto const rel = toy();
    auto stats = fit_stats(rel);
    auto at_mean = rel;
    at_mean.values.setConstant(0.5);
    CHECK(z_transform(at_mean, stats, ZMode::Centred).values.isZero(0));
  }

  TEST_CASE("to_probability")
  {
    auto const rel = toy();
    auto const stats = fit_stats(rel);
    auto const p = to_probability(z_transform(rel, stats, ZMode::Uncentred), 0.0);
    CHECK(p.rho(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(p.rho(0, 1) == doctest::Approx(0.4).epsilon(1e-12));

    ZMatrix already{{"d"}, {{"a", "b", "c"}}, MatrixXd(1, 3), ZMode::Uncentred};
    already.values << 0.25, 0.25, 0.5;
    CHECK(to_probability(already, 0.0).rho == already.values);
    CHECK_THROWS_AS(to_probability(z_transform(rel, stats, ZMode::Centred)), Error);
  }

  TEST_CASE("to_ranks")
  {
    VectorXd v(2);
    v << 4.24, 2.83;
    CHECK(to_ranks(v).ranks == (VectorXd(2) << 1, 2).finished());
    VectorXd t(3);
    t << 5, 5, 1;
    CHECK(to_ranks(t).ranks == (VectorXd(3) << 1.5, 1.5, 3).finished());
    VectorXd neg(3);
    neg << -2, 0, 3;
    CHECK(to_ranks(neg).ranks == (VectorXd(3) << 3, 2, 1).finished());
    CHECK_THROWS_AS(to_ranks(VectorXd()), Error);
  }

  TEST_CASE("properties on random corpora")
  {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
      Index const docs = 2 + static_cast<Index>(rng() % 5);
      Index const cols = 3 + static_cast<Index>(rng() % 8);
      FrequencyMatrix m;
      m.counts.resize(docs, cols);
      std::vector<std::vector<long long>> raw(static_cast<std::size_t>(docs));
      for (Index i = 0; i < docs; ++i) {
        m.docs.push_back("d" + std::to_string(i));
        for (Index j = 0; j < cols; ++j) {
          m.counts(i, j) = 1 + static_cast<std::int64_t>(rng() % 30);
          raw[static_cast<std::size_t>(i)].push_back(m.counts(i, j));
        }
      }
      for (Index j = 0; j < cols; ++j) { m.vocab.tokens.push_back("t" + std::to_string(j)); }

      auto const rel = relative_frequencies(m);
      auto const s1 = fit_stats(rel, 1);
      auto const s0 = fit_stats(rel, 0);
      // sigma ratio between population and sample deviation
      for (Index j = 0; j < cols; ++j) {
        CHECK(s0.sigma(j) / s1.sigma(j) == doctest::Approx(std::sqrt((docs - 1.0) / docs)).epsilon(1e-12));
      }

      auto const c = z_transform(rel, s1, ZMode::Centred);
      auto const u = z_transform(rel, s1, ZMode::Uncentred);
      CHECK((u.values.array() >= 0).all());
      // centring cancels in coordinate differences
      for (Index a = 0; a < docs; ++a) {
        for (Index b = 0; b < docs; ++b) {
          VectorXd const dc = c.values.row(a) - c.values.row(b);
          VectorXd const du = u.values.row(a) - u.values.row(b);
          CHECK((dc - du).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, du.cwiseAbs().maxCoeff()));
        }
      }
      // oracle agreement
      auto const expect = oracle::zscores(oracle::relfreq(raw), 1, true);
      for (Index i = 0; i < docs; ++i) {
        for (Index j = 0; j < c.values.cols(); ++j) {
          CHECK(oracle::close(c.values(i, j), expect[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 1e-10, 1e-12));
        }
      }

      auto const p = to_probability(u, 1e-10);
      for (Index i = 0; i < docs; ++i) { CHECK(std::abs(p.rho.row(i).sum() - 1.0) <= 1e-12); }
      CHECK((p.rho.array() > 0).all());

      auto const r = to_rank_matrix(c);
      double const n = static_cast<double>(r.ranks.cols());
      for (Index i = 0; i < docs; ++i) { CHECK(r.ranks.row(i).sum() == n * (n + 1) / 2); }
    }
  }
}
