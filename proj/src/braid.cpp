#include "braidlen/braid.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "braidlen/errors.hpp"

namespace braidlen {

namespace {

void check_strands(int strands) {
  if (strands < 2 || strands > kMaxStrands) {
    throw invalid_strand_count("strand count must be in [2, " + std::to_string(kMaxStrands) +
                               "], got " + std::to_string(strands));
  }
}

void check_same_strands(const Word& a, const Word& b) {
  if (a.strands() != b.strands()) {
    throw incompatible_words("words on " + std::to_string(a.strands()) + " and " +
                             std::to_string(b.strands()) + " strands");
  }
}

}  // namespace

Rng seeded_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> material;
  material.reserve(2 + 2 * stream.size());
  auto push = [&material](std::uint64_t v) {
    material.push_back(static_cast<std::uint32_t>(v));
    material.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (auto s : stream) push(s);
  std::seed_seq seq(material.begin(), material.end());
  return Rng(seq);
}

// ---- Letter / Word ---------------------------------------------------------

Letter Letter::from_signed(int value) {
  if (value == 0) throw invalid_letter("letter 0 is not an Artin generator");
  return value > 0 ? Letter{value, 1} : Letter{-value, -1};
}

Word::Word(int strands, std::vector<Letter> letters) : strands_(strands), letters_(std::move(letters)) {
  check_strands(strands);
  for (const auto& l : letters_) {
    if (l.index < 1 || l.index >= strands || (l.sign != 1 && l.sign != -1)) {
      throw invalid_letter("letter " + std::to_string(l.to_signed()) + " not valid on " +
                           std::to_string(strands) + " strands");
    }
  }
}

Word Word::from_signed(int strands, std::span<const int> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (int v : letters) out.push_back(Letter::from_signed(v));
  return Word(strands, std::move(out));
}

Word Word::from_signed(int strands, std::initializer_list<int> letters) {
  return from_signed(strands, std::span<const int>(letters.begin(), letters.size()));
}

std::vector<int> Word::signed_letters() const {
  std::vector<int> out;
  out.reserve(letters_.size());
  for (const auto& l : letters_) out.push_back(l.to_signed());
  return out;
}

Word identity(int strands) { return Word(strands); }

Word concat(const Word& a, const Word& b) {
  check_same_strands(a, b);
  std::vector<Letter> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters().begin(), a.letters().end());
  out.insert(out.end(), b.letters().begin(), b.letters().end());
  return Word(a.strands(), std::move(out));
}

Word concat(const Word& a, const Word& b, const Word& c) { return concat(concat(a, b), c); }

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(w.strands(), std::move(out));
}

Word conjugate(const Word& x, const Word& by) {
  check_same_strands(x, by);
  return concat(inverse(by), x, by);
}

Word random_word(int strands, std::size_t letter_count, Rng& rng) {
  check_strands(strands);
  std::uniform_int_distribution<int> pick(0, 2 * (strands - 1) - 1);
  std::vector<Letter> out;
  out.reserve(letter_count);
  for (std::size_t i = 0; i < letter_count; ++i) {
    int v = pick(rng);
    out.push_back({v / 2 + 1, (v % 2 == 0) ? 1 : -1});
  }
  return Word(strands, std::move(out));
}

std::int64_t half_twist_length(int strands) {
  return static_cast<std::int64_t>(strands) * (strands - 1) / 2;
}

// ---- Permutation -----------------------------------------------------------

Permutation Permutation::identity(int strands) {
  check_strands(strands);
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(strands);
  for (int i = 0; i < strands; ++i) p.img_[i] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::half_twist(int strands) {
  Permutation p = identity(strands);
  for (int i = 0; i < strands; ++i) p.img_[i] = static_cast<std::uint8_t>(strands - 1 - i);
  return p;
}

Permutation Permutation::crossing(int strands, int position) {
  Permutation p = identity(strands);
  if (position < 0 || position + 1 >= strands) throw invalid_letter("crossing position out of range");
  std::swap(p.img_[position], p.img_[position + 1]);
  return p;
}

Permutation Permutation::from_images(std::span<const int> one_based) {
  const int n = static_cast<int>(one_based.size());
  if (n < 2 || n > kMaxStrands) throw invalid_canonical_form("permutation size out of range");
  Permutation p;
  p.n_ = static_cast<std::uint8_t>(n);
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    int v = one_based[i] - 1;
    if (v < 0 || v >= n || seen[v]) throw invalid_canonical_form("permutation images are not a bijection");
    seen[v] = true;
    p.img_[i] = static_cast<std::uint8_t>(v);
  }
  return p;
}

std::vector<int> Permutation::images() const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) out[i] = img_[i] + 1;
  return out;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.n_ = n_;
  for (int i = 0; i < n_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
  return p;
}

Permutation Permutation::then(const Permutation& next) const {
  Permutation p;
  p.n_ = n_;
  for (int i = 0; i < n_; ++i) p.img_[i] = next.img_[img_[i]];
  return p;
}

Permutation Permutation::flipped() const {
  Permutation p;
  p.n_ = n_;
  const int last = n_ - 1;
  for (int i = 0; i < n_; ++i) p.img_[i] = static_cast<std::uint8_t>(last - img_[last - i]);
  return p;
}

Permutation Permutation::complement() const {
  // A * C = Delta  =>  C[A[x]] = n-1-x
  Permutation p;
  p.n_ = n_;
  for (int i = 0; i < n_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(n_ - 1 - i);
  return p;
}

int Permutation::inversions() const {
  int count = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (img_[i] > img_[j]) ++count;
  return count;
}

bool Permutation::is_identity() const {
  for (int i = 0; i < n_; ++i)
    if (img_[i] != i) return false;
  return true;
}

bool Permutation::is_half_twist() const {
  for (int i = 0; i < n_; ++i)
    if (img_[i] != n_ - 1 - i) return false;
  return true;
}

std::uint64_t Permutation::starting_set() const {
  std::uint64_t mask = 0;
  for (int i = 0; i + 1 < n_; ++i)
    if (img_[i] > img_[i + 1]) mask |= std::uint64_t{1} << i;
  return mask;
}

std::uint64_t Permutation::finishing_set() const {
  return inverse().starting_set();
}

std::vector<Letter> Permutation::spelling() const {
  std::vector<Letter> out;
  Permutation rest = *this;
  for (;;) {
    int i = 0;
    while (i + 1 < n_ && rest.img_[i] < rest.img_[i + 1]) ++i;
    if (i + 1 >= n_) break;
    out.push_back({i + 1, 1});
    std::swap(rest.img_[i], rest.img_[i + 1]);
  }
  return out;
}

bool is_left_weighted(const Permutation& a, const Permutation& b) {
  return (b.starting_set() & ~a.finishing_set()) == 0;
}

bool make_left_weighted(Permutation& a, Permutation& b) {
  const int n = a.n_;
  // a_inv[p] is the start position of the strand of `a` ending at p.
  std::array<std::uint8_t, kMaxStrands> a_inv{};
  for (int i = 0; i < n; ++i) a_inv[a.img_[i]] = static_cast<std::uint8_t>(i);

  bool moved = false;
  for (;;) {
    int i = 0;
    for (; i + 1 < n; ++i) {
      if (b.img_[i] > b.img_[i + 1] && a_inv[i] < a_inv[i + 1]) break;
    }
    if (i + 1 >= n) break;
    // a <- a sigma_{i+1}, b <- sigma_{i+1}^{-1} b
    std::swap(a_inv[i], a_inv[i + 1]);
    std::swap(b.img_[i], b.img_[i + 1]);
    moved = true;
  }
  if (moved) {
    for (int p = 0; p < n; ++p) a.img_[a_inv[p]] = static_cast<std::uint8_t>(p);
  }
  return moved;
}

// ---- Coxeter matrix and relations -------------------------------------------

CoxeterMatrix::CoxeterMatrix(std::vector<std::vector<int>> entries) : entries_(std::move(entries)) {
  const std::size_t k = entries_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (entries_[i].size() != k) throw validation_error("Coxeter matrix must be square");
    if (entries_[i][i] != 2) throw validation_error("Coxeter matrix diagonal must be 2");
    for (std::size_t j = 0; j < k; ++j) {
      if (entries_[i][j] < 0) throw validation_error("Coxeter matrix entries must be non-negative");
      if (entries_[i][j] != entries_[j][i]) throw validation_error("Coxeter matrix must be symmetric");
    }
  }
}

CoxeterMatrix CoxeterMatrix::braid(int strands) {
  check_strands(strands);
  const std::size_t k = static_cast<std::size_t>(strands - 1);
  std::vector<std::vector<int>> m(k, std::vector<int>(k, 2));
  for (std::size_t i = 0; i + 1 < k; ++i) m[i][i + 1] = m[i + 1][i] = 3;
  return CoxeterMatrix(std::move(m));
}

std::vector<Relation> artin_relations(const CoxeterMatrix& m, int strands) {
  check_strands(strands);
  if (m.size() + 1 > static_cast<std::size_t>(strands)) {
    throw validation_error("Coxeter matrix has more generators than the strand count allows");
  }
  auto alternating = [strands](int first, int second, int count) {
    std::vector<Letter> letters;
    for (int q = 0; q < count; ++q) letters.push_back({q % 2 == 0 ? first : second, 1});
    return Word(strands, std::move(letters));
  };
  std::vector<Relation> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const int mij = m(i, j);
      if (mij == 0) continue;  // no relation between the pair
      const int a = static_cast<int>(i) + 1;
      const int b = static_cast<int>(j) + 1;
      out.push_back({alternating(a, b, mij), alternating(b, a, mij)});
    }
  }
  return out;
}

std::vector<Relation> braid_relations(int strands) {
  return artin_relations(CoxeterMatrix::braid(strands), strands);
}

bool equal(const Word& a, const Word& b) {
  check_same_strands(a, b);
  return normal_form(a) == normal_form(b);
}

std::int64_t length(const Word& w) { return normal_form(w).length(); }

std::int64_t distance(const Word& a, const Word& b) {
  check_same_strands(a, b);
  return length(concat(a, inverse(b)));
}

}  // namespace braidlen
