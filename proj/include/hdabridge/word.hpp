#pragma once

// Cells of the labeling cubical set: lists over L + {*}. Faces delete an
// entry (both signs agree), degeneracies insert the star, permutations reindex.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hdabridge/error.hpp"

namespace hdabridge {

using Symbol = std::uint32_t;
inline constexpr Symbol kStar = 0;

using LabelWord = std::vector<Symbol>;

enum class Sign : std::uint8_t { minus = 0, plus = 1 };

inline constexpr Sign kSigns[] = {Sign::minus, Sign::plus};

inline char sign_char(Sign s) { return s == Sign::minus ? '-' : '+'; }

template <class T>
std::vector<T> word_face(std::span<const T> word, std::size_t k) {
  if (k >= word.size())
    fail(ErrorCode::arity_mismatch, "face " + std::to_string(k) + " of a word of length " +
                                        std::to_string(word.size()));
  std::vector<T> out;
  out.reserve(word.size() - 1);
  for (std::size_t i = 0; i < word.size(); ++i)
    if (i != k) out.push_back(word[i]);
  return out;
}

template <class T>
std::vector<T> word_degeneracy(std::span<const T> word, std::size_t k, const T& star) {
  if (k > word.size())
    fail(ErrorCode::arity_mismatch, "degeneracy " + std::to_string(k) + " of a word of length " +
                                        std::to_string(word.size()));
  std::vector<T> out(word.begin(), word.end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(k), star);
  return out;
}

/// Applies the adjacent transposition exchanging entries k and k+1.
template <class T>
std::vector<T> word_transpose(std::span<const T> word, std::size_t k) {
  if (k + 1 >= word.size())
    fail(ErrorCode::arity_mismatch, "transposition " + std::to_string(k) + " of a word of length " +
                                        std::to_string(word.size()));
  std::vector<T> out(word.begin(), word.end());
  std::swap(out[k], out[k + 1]);
  return out;
}

/// result[i] = word[perm[i]].
template <class T>
std::vector<T> word_permute(std::span<const T> word, std::span<const std::size_t> perm) {
  if (perm.size() != word.size())
    fail(ErrorCode::arity_mismatch, "permutation arity differs from word length");
  std::vector<bool> seen(perm.size(), false);
  std::vector<T> out;
  out.reserve(word.size());
  for (std::size_t p : perm) {
    if (p >= word.size() || seen[p]) fail(ErrorCode::arity_mismatch, "not a permutation");
    seen[p] = true;
    out.push_back(word[p]);
  }
  return out;
}

/// Generating morphisms of the symmetric cube category, as they act on cells.
struct FaceMap {
  std::size_t index;
  Sign sign;
};
struct DegeneracyMap {
  std::size_t index;
};
struct PermutationMap {
  std::vector<std::size_t> perm;
};
using CubeMap = std::variant<FaceMap, DegeneracyMap, PermutationMap>;

template <class T>
std::vector<T> word_action(std::span<const T> word, const CubeMap& map, const T& star) {
  if (const auto* f = std::get_if<FaceMap>(&map)) return word_face(word, f->index);
  if (const auto* d = std::get_if<DegeneracyMap>(&map)) return word_degeneracy(word, d->index, star);
  return word_permute(word, std::span<const std::size_t>(std::get<PermutationMap>(map).perm));
}

/// True when no non-star entry repeats.
template <class T>
bool is_linear(std::span<const T> word, const T& star) {
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i] == star) continue;
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[i] == word[j]) return false;
  }
  return true;
}

}  // namespace hdabridge
