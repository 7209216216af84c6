#pragma once

// Braid words, permutation braids and the left-weighted (Garside) normal form.
//
// Conventions used throughout:
//   * Artin generators are 1-based: sigma_1 .. sigma_{n-1}.
//   * A permutation braid is stored by where each strand ends up: images[x]
//     is the final position of the strand that starts at position x.  A word
//     is read left to right, so the permutation of `ab` is "a, then b".
//   * A canonical form Delta^p x_1 ... x_l has 1 < x_i < Delta and every
//     adjacent pair (x_i, x_{i+1}) left-weighted.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace braidlen {

/// Upper bound on the strand count. Permutations are stored inline.
inline constexpr int kMaxStrands = 64;

using Rng = std::mt19937_64;

/// Deterministic generator for a (seed, stream...) tuple. The same tuple
/// always yields the same sequence, independent of evaluation order.
Rng seeded_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

struct Letter {
  int index = 1;  // Artin subscript, 1 ≤ index ≤ n-1
  int sign = 1;   // +1 or -1

  static Letter from_signed(int value);
  int to_signed() const { return sign * index; }
  Letter inverse() const { return {index, -sign}; }

  friend bool operator==(const Letter&, const Letter&) = default;
};

class Word {
 public:
  explicit Word(int strands, std::vector<Letter> letters = {});

  /// Letters as signed integers, ±i meaning sigma_i^{±1}.
  static Word from_signed(int strands, std::span<const int> letters);
  static Word from_signed(int strands, std::initializer_list<int> letters);

  int strands() const { return strands_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  std::vector<int> signed_letters() const;

  /// Letter-for-letter comparison. Use equal() for group equality.
  friend bool operator==(const Word&, const Word&) = default;

 private:
  int strands_;
  std::vector<Letter> letters_;
};

class Permutation {
 public:
  static Permutation identity(int strands);
  static Permutation half_twist(int strands);
  /// Positive crossing of positions i and i+1 (0-based position i).
  static Permutation crossing(int strands, int position);
  /// Builds from 1-based images; throws invalid_canonical_form if not a bijection.
  static Permutation from_images(std::span<const int> one_based);

  int strands() const { return n_; }
  int operator[](int position) const { return img_[position]; }
  std::vector<int> images() const;  // 1-based

  Permutation inverse() const;
  /// Braid product `*this` followed by `next`.
  Permutation then(const Permutation& next) const;
  /// Conjugation by the half twist, tau(A) = Delta^{-1} A Delta.
  Permutation flipped() const;
  /// Right complement Delta_right(A) with A * complement = Delta.
  Permutation complement() const;

  int inversions() const;
  bool is_identity() const;
  bool is_half_twist() const;

  /// Bit i set iff sigma_{i+1} left-divides the permutation braid.
  std::uint64_t starting_set() const;
  /// Bit i set iff sigma_{i+1} right-divides the permutation braid.
  std::uint64_t finishing_set() const;

  /// Positive spelling: repeatedly strips the smallest left divisor.
  std::vector<Letter> spelling() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  Permutation() = default;
  friend bool make_left_weighted(Permutation&, Permutation&);

  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxStrands> img_{};
};

/// True iff every generator that left-divides `b` right-divides `a`.
bool is_left_weighted(const Permutation& a, const Permutation& b);

/// Moves generators from the front of `b` onto the back of `a` until the pair
/// is left-weighted. The product `a*b` is unchanged. Returns true if anything
/// moved.
bool make_left_weighted(Permutation& a, Permutation& b);

class CanonicalForm {
 public:
  /// Checked constructor: rejects identity or half-twist factors, strand
  /// mismatches, and pairs that are not left-weighted.
  CanonicalForm(int strands, std::int64_t infimum, std::vector<Permutation> factors);

  static CanonicalForm identity(int strands);

  int strands() const { return strands_; }
  std::int64_t infimum() const { return infimum_; }
  std::int64_t supremum() const { return infimum_ + static_cast<std::int64_t>(factors_.size()); }
  const std::vector<Permutation>& factors() const { return factors_; }

  /// |p| * n(n-1)/2 + sum of factor inversion counts: the letter count of
  /// the canonical spelling.
  std::int64_t length() const;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

 private:
  struct unchecked_t {};
  CanonicalForm(unchecked_t, int strands, std::int64_t infimum, std::vector<Permutation> factors)
      : strands_(strands), infimum_(infimum), factors_(std::move(factors)) {}
  friend class FormBuilder;

  int strands_;
  std::int64_t infimum_;
  std::vector<Permutation> factors_;
};

// ---- words -----------------------------------------------------------------

Word identity(int strands);
Word concat(const Word& a, const Word& b);
Word concat(const Word& a, const Word& b, const Word& c);
Word inverse(const Word& w);
/// by^{-1} x by
Word conjugate(const Word& x, const Word& by);
Word random_word(int strands, std::size_t letter_count, Rng& rng);
/// Letter count of the half twist, n(n-1)/2.
std::int64_t half_twist_length(int strands);

// ---- presentation ----------------------------------------------------------

class CoxeterMatrix {
 public:
  /// Square, symmetric, non-negative, with 2 on the diagonal.
  explicit CoxeterMatrix(std::vector<std::vector<int>> entries);
  /// Matrix of B_n over the generators sigma_1..sigma_{n-1}.
  static CoxeterMatrix braid(int strands);

  std::size_t size() const { return entries_.size(); }
  int operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }

 private:
  std::vector<std::vector<int>> entries_;
};

struct Relation {
  Word lhs;
  Word rhs;
};

/// <a_i a_j>^{m_ij} = <a_j a_i>^{m_ij} for each pair i < j with m_ij > 0,
/// generator i realised as sigma_{i+1} on `strands` strands.
std::vector<Relation> artin_relations(const CoxeterMatrix& m, int strands);
std::vector<Relation> braid_relations(int strands);

// ---- normal form and derived operations ------------------------------------

CanonicalForm normal_form(const Word& w);
CanonicalForm multiply(const CanonicalForm& a, const CanonicalForm& b);
CanonicalForm inverse(const CanonicalForm& f);
/// Spells Delta^p (or its inverse) followed by each factor's positive spelling.
Word to_word(const CanonicalForm& f);
/// normal_form followed by to_word.
Word canonical_word(const Word& w);

bool equal(const Word& a, const Word& b);
std::int64_t length(const Word& w);
/// length(a * b^{-1})
std::int64_t distance(const Word& a, const Word& b);

}  // namespace braidlen
