#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "../oracles/oracles.hpp"
#include "../support/pipeline.hpp"
#include "vamci/core/catalog.hpp"
#include "vamci/intent/anchors.hpp"
#include "vamci/intent/intent_features.hpp"
#include "vamci/intent/similarity.hpp"

using namespace vamci;
using namespace vamci::intent;

namespace {

AnchorSet anchors_of(const EmbeddingMatrix& e) {
  std::vector<AnchorEntry> entries(e.rows(), AnchorEntry{"x", "y", std::nullopt});
  return AnchorSet(entries, e);
}

const Matrix kSim = Matrix::from_rows({{0.9, 0.2}, {0.1, 0.8}, {0.7, 0.6}});

}  // namespace

TEST_CASE("cosine similarity") {
  const std::vector<double> e1{1, 0}, e2{0, 1};
  CHECK(cosine_similarity(e1, e1) == 1.0);
  CHECK(cosine_similarity(e1, e2) == 0.0);
  const std::vector<double> a{1, 2, 2}, b{2, 1, 2};
  CHECK(cosine_similarity(a, b) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  const std::vector<double> zero{0, 0}, three{1, 2, 3};
  CHECK_THROWS_AS(cosine_similarity(e1, zero), ZeroNormError);
  CHECK_THROWS_AS(cosine_similarity(e1, three), ValidationError);
}

TEST_CASE("similarity matrix entries are pairwise cosines") {
  const EmbeddingMatrix anchors(2, 2, {1, 0, 1, 1});
  const EmbeddingMatrix commands(2, 2, {3, 4, -1, 2});
  const auto sim = similarity_matrix(anchors_of(anchors), commands);
  REQUIRE(sim.rows() == 2);
  REQUIRE(sim.cols() == 2);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 2; ++i) CHECK(sim(j, i) == cosine_similarity(commands.row(j), anchors.row(i)));

  const auto self = similarity_matrix(anchors_of(anchors), anchors);
  CHECK(self(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(self(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(similarity_matrix(anchors_of(anchors), EmbeddingMatrix(0, 2, {})).rows() == 0);
  CHECK_THROWS_AS(similarity_matrix(anchors_of(anchors), EmbeddingMatrix(1, 2, {0, 0})), ZeroNormError);
}

TEST_CASE("assignment picks the row maximum, ties to the lowest index") {
  CHECK(assign_commands(Matrix::from_rows({{0.9, 0.2}})) == std::vector<std::size_t>{0});
  CHECK(assign_commands(Matrix::from_rows({{0.5, 0.5}})) == std::vector<std::size_t>{0});
  CHECK(assign_commands(kSim) == std::vector<std::size_t>{0, 1, 0});
}

TEST_CASE("quantity and quality features") {
  const auto f = intent_features(kSim, 2);
  CHECK(f.qty == std::vector<std::size_t>{2, 1});
  CHECK(f.qlt[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(f.qlt[1] == doctest::Approx(0.8).epsilon(1e-15));

  const auto empty = intent_features(Matrix(0, 3), 3);
  CHECK(empty.qty == std::vector<std::size_t>(3, 0));
  CHECK(empty.qlt == std::vector<double>(3, 0.0));

  const EmbeddingMatrix e(3, 3, {1, 0, 0, 0, 2, 0, 0, 0, 3});
  const auto self = intent_features(anchors_of(e), e);
  CHECK(self.qty == std::vector<std::size_t>(3, 1));
  for (const auto q : self.qlt) CHECK(q == doctest::Approx(1.0));

  CHECK(intent_feature_dim(34) == 68);
  CHECK(intent_feature_dim(1) == 2);
  CHECK(intent_feature_dim(2) == 4);
}

TEST_CASE("intent feature properties on random inputs") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::uint32_t>(1 + rng() % 5);
    const auto m = static_cast<std::uint32_t>(rng() % 9);
    const auto d = static_cast<std::uint32_t>(1 + rng() % 4);
    const auto anchors = anchors_of(testing_support::random_embedding(rng, n, d));
    const auto commands = testing_support::random_embedding(rng, m, d);
    const auto f = intent_features(anchors, commands);
    CHECK(std::accumulate(f.qty.begin(), f.qty.end(), std::size_t{0}) == m);

    // oracle equivalence
    const auto want = oracle::intent_features(testing_support::to_rows(commands),
                                              testing_support::to_rows(anchors.embeddings()));
    CHECK(f.qty == want.qty);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(f.qlt[i] - want.qlt[i]) <= 1e-12);

    // qlt bounded by the assigned similarities, 0 when empty
    const auto sim = similarity_matrix(anchors, commands);
    const auto assign = assign_commands(sim);
    for (std::size_t i = 0; i < n; ++i) {
      if (f.qty[i] == 0) {
        CHECK(f.qlt[i] == 0.0);
        continue;
      }
      double lo = 2, hi = -2;
      for (std::size_t j = 0; j < m; ++j) {
        if (assign[j] != i) continue;
        lo = std::min(lo, sim(j, i));
        hi = std::max(hi, sim(j, i));
      }
      CHECK(f.qlt[i] >= lo - 1e-15);
      CHECK(f.qlt[i] <= hi + 1e-15);
    }

    // scale invariance of assignment and row-permutation invariance of features
    std::vector<float> scaled = commands.data();
    for (auto& v : scaled) v *= 4.0f;
    CHECK(assign_commands(similarity_matrix(anchors, EmbeddingMatrix(m, d, scaled))) == assign);
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto g = intent_features(anchors, commands.select_rows(perm));
    CHECK(g.qty == f.qty);
    for (std::size_t i = 0; i < n; ++i) CHECK(g.qlt[i] == doctest::Approx(f.qlt[i]).epsilon(1e-14));
  }
}

TEST_CASE("anchor sets validate their inputs") {
  std::vector<AnchorEntry> one{{"a", "b", std::nullopt}};
  CHECK_THROWS_AS(AnchorSet({}, EmbeddingMatrix(0, 2, {})), ValidationError);
  CHECK_THROWS_AS(AnchorSet(one, EmbeddingMatrix(2, 1, {1, 2})), ValidationError);
  CHECK_THROWS_AS(AnchorSet(one, EmbeddingMatrix(1, 2, {0, 0})), ValidationError);
}

TEST_CASE("anchor files round trip") {
  Rng rng(9);
  const auto dir = testing_support::scratch_dir("anchors");
  AnchorSet set(default_anchor_catalog(), testing_support::random_embedding(rng, 34, 5));
  write_anchor_set(dir / "anchors.json", set, "anchors.vaef");
  const auto loaded = load_anchor_set(dir / "anchors.json");
  CHECK(loaded.entries() == set.entries());
  CHECK(loaded.embeddings() == set.embeddings());
  CHECK(load_anchor_entries(dir / "anchors.json") == default_anchor_catalog());
  std::filesystem::remove(dir / "anchors.vaef");
  CHECK_THROWS_AS(load_anchor_set(dir / "anchors.json"), ParseError);
}

TEST_CASE("the shipped default anchor file matches the built-in catalog") {
  const auto path = std::filesystem::path(VAMCI_SOURCE_DIR) / "data" / "anchors" / "default_anchors.json";
  CHECK(load_anchor_entries(path) == default_anchor_catalog());
}
