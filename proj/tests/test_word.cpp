#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "hdabridge/word.hpp"

using namespace hdabridge;

namespace {

using W = std::vector<Symbol>;

W face(const W& w, std::size_t k) { return word_face<Symbol>(w, k); }
W degen(const W& w, std::size_t k) { return word_degeneracy<Symbol>(w, k, kStar); }
W swap_at(const W& w, std::size_t k) { return word_transpose<Symbol>(w, k); }

/// Every word of length <= 4 over three letters and the star.
std::vector<W> corpus() {
  std::vector<W> out{{}};
  std::size_t begin = 0;
  for (int len = 1; len <= 4; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (Symbol s = 0; s <= 3; ++s) {
        W w = out[i];
        w.push_back(s);
        out.push_back(w);
      }
    begin = end;
  }
  return out;
}

}  // namespace

TEST(WordAction, Examples) {
  const W ab{1, 2};
  EXPECT_EQ(word_action<Symbol>(ab, FaceMap{0, Sign::minus}, kStar), (W{2}));
  EXPECT_EQ(word_action<Symbol>(ab, FaceMap{0, Sign::plus}, kStar), (W{2}));
  EXPECT_EQ(word_action<Symbol>(ab, DegeneracyMap{1}, kStar), (W{1, kStar, 2}));
  EXPECT_EQ(word_action<Symbol>(ab, PermutationMap{{1, 0}}, kStar), (W{2, 1}));
}

TEST(WordAction, ArityMismatch) {
  const W ab{1, 2};
  EXPECT_THROW(face(ab, 2), Error);
  EXPECT_THROW(degen(ab, 3), Error);
  EXPECT_THROW(swap_at(ab, 1), Error);
  EXPECT_THROW(word_action<Symbol>(ab, PermutationMap{{0}}, kStar), Error);
  EXPECT_THROW(word_action<Symbol>(ab, PermutationMap{{0, 0}}, kStar), Error);
  try {
    face(W{}, 0);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::arity_mismatch);
  }
}

TEST(WordAction, FaceFaceRelation) {
  for (const W& w : corpus())
    for (std::size_t j = 1; j < w.size(); ++j)
      for (std::size_t i = 0; i < j; ++i) EXPECT_EQ(face(face(w, j), i), face(face(w, i), j - 1));
}

TEST(WordAction, FaceDegeneracyRelation) {
  for (const W& w : corpus()) {
    if (w.size() == 4) continue;
    for (std::size_t j = 0; j <= w.size(); ++j)
      for (std::size_t i = 0; i <= w.size(); ++i) {
        const W lhs = face(degen(w, j), i);
        if (i < j)
          EXPECT_EQ(lhs, degen(face(w, i), j - 1));
        else if (i == j)
          EXPECT_EQ(lhs, w);
        else
          EXPECT_EQ(lhs, degen(face(w, i - 1), j));
      }
  }
}

TEST(WordAction, DegeneracyDegeneracyRelation) {
  for (const W& w : corpus()) {
    if (w.size() == 4) continue;
    for (std::size_t j = 0; j <= w.size(); ++j)
      for (std::size_t i = 0; i <= j; ++i) EXPECT_EQ(degen(degen(w, j), i), degen(degen(w, i), j + 1));
  }
}

TEST(WordAction, TranspositionRelations) {
  for (const W& w : corpus()) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      EXPECT_EQ(swap_at(swap_at(w, i), i), w);
      if (i + 2 < w.size()) {
        EXPECT_EQ(swap_at(swap_at(swap_at(w, i), i + 1), i), swap_at(swap_at(swap_at(w, i + 1), i), i + 1));
      }
      for (std::size_t j = i + 2; j + 1 < w.size(); ++j) EXPECT_EQ(swap_at(swap_at(w, i), j), swap_at(swap_at(w, j), i));
      EXPECT_EQ(face(swap_at(w, i), i), face(w, i + 1));
      EXPECT_EQ(face(swap_at(w, i), i + 1), face(w, i));
    }
  }
}

TEST(WordAction, PermutationsCompose) {
  for (const W& w : corpus()) {
    std::vector<std::size_t> p(w.size());
    std::iota(p.begin(), p.end(), 0);
    do {
      std::vector<std::size_t> q(w.size());
      std::iota(q.begin(), q.end(), 0);
      do {
        std::vector<std::size_t> pq(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) pq[i] = p[q[i]];
        const W once = word_permute<Symbol>(w, pq);
        const W twice = word_permute<Symbol>(word_permute<Symbol>(w, p), q);
        ASSERT_EQ(once, twice);
      } while (std::next_permutation(q.begin(), q.end()) && w.size() <= 3);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST(WordAction, Linearity) {
  EXPECT_TRUE(is_linear<Symbol>(W{1, 2, 3}, kStar));
  EXPECT_TRUE(is_linear<Symbol>(W{1, kStar, kStar}, kStar));
  EXPECT_FALSE(is_linear<Symbol>(W{1, 1}, kStar));
  EXPECT_TRUE(is_linear<Symbol>(W{}, kStar));
}
