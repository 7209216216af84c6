#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

#include "braidlen/braid.hpp"
#include "braidlen/errors.hpp"

namespace braidlen {

// Incremental left normal form of Delta^power * (product of permutation
// braids). Appending a factor left-weights it against its predecessors from
// right to left; the sweep stops at the first pair that is already
// left-weighted, since everything before it was left-weighted already.
// Half twists can only surface at the front and identities only at the back.
class FormBuilder {
 public:
  FormBuilder(int strands, std::int64_t power) : strands_(strands), power_(power) {}

  void reserve(std::size_t n) { factors_.reserve(n); }

  void append(Permutation y) {
    if (y.is_identity()) return;
    factors_.push_back(std::move(y));
    for (std::size_t i = factors_.size() - 1; i > lead_; --i) {
      if (!make_left_weighted(factors_[i - 1], factors_[i])) break;
    }
    while (!factors_.empty() && factors_.back().is_identity()) factors_.pop_back();
    while (lead_ < factors_.size() && factors_[lead_].is_half_twist()) ++lead_;
  }

  CanonicalForm finish() && {
    factors_.erase(factors_.begin(), factors_.begin() + static_cast<std::ptrdiff_t>(lead_));
    return CanonicalForm(CanonicalForm::unchecked_t{}, strands_,
                         power_ + static_cast<std::int64_t>(lead_), std::move(factors_));
  }

 private:
  int strands_;
  std::int64_t power_;
  std::vector<Permutation> factors_;
  // factors_[0, lead_) are half twists still awaiting absorption into power_.
  std::size_t lead_ = 0;
};

CanonicalForm::CanonicalForm(int strands, std::int64_t infimum, std::vector<Permutation> factors)
    : strands_(strands), infimum_(infimum), factors_(std::move(factors)) {
  if (strands < 2 || strands > kMaxStrands) throw invalid_strand_count("canonical form strand count out of range");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.strands() != strands) throw invalid_canonical_form("factor strand count mismatch");
    if (f.is_identity() || f.is_half_twist()) {
      throw invalid_canonical_form("factor " + std::to_string(i) + " is trivial or the half twist");
    }
    if (i > 0 && !is_left_weighted(factors_[i - 1], f)) {
      throw invalid_canonical_form("factors " + std::to_string(i - 1) + "," + std::to_string(i) +
                                   " are not left-weighted");
    }
  }
}

CanonicalForm CanonicalForm::identity(int strands) { return CanonicalForm(strands, 0, {}); }

std::int64_t CanonicalForm::length() const {
  std::int64_t total = std::llabs(infimum_) * half_twist_length(strands_);
  for (const auto& f : factors_) total += f.inversions();
  return total;
}

CanonicalForm normal_form(const Word& w) {
  const int n = w.strands();
  const auto& letters = w.letters();

  // sigma_i^{-1} = Delta^{-1} (Delta sigma_i^{-1}). Pulling every Delta^{-1}
  // to the front flips each factor once per negative letter to its right.
  std::int64_t negatives_after = std::count_if(letters.begin(), letters.end(),
                                               [](const Letter& l) { return l.sign < 0; });
  FormBuilder builder(n, -negatives_after);
  builder.reserve(letters.size());
  for (const auto& l : letters) {
    Permutation f = Permutation::crossing(n, l.index - 1);
    if (l.sign < 0) {
      --negatives_after;
      f = Permutation::half_twist(n).then(f);  // Delta sigma_i^{-1}
    }
    if (negatives_after % 2 != 0) f = f.flipped();
    builder.append(std::move(f));
  }
  return std::move(builder).finish();
}

CanonicalForm multiply(const CanonicalForm& a, const CanonicalForm& b) {
  if (a.strands() != b.strands()) throw incompatible_words("canonical forms on different strand counts");
  // A Delta^q = Delta^q tau^q(A)
  const bool flip = (b.infimum() % 2) != 0;
  FormBuilder builder(a.strands(), a.infimum() + b.infimum());
  builder.reserve(a.factors().size() + b.factors().size());
  for (const auto& f : a.factors()) builder.append(flip ? f.flipped() : f);
  for (const auto& f : b.factors()) builder.append(f);
  return std::move(builder).finish();
}

CanonicalForm inverse(const CanonicalForm& f) {
  // x_i^{-1} = C(x_i) Delta^{-1}. In the reversed product, factor i (1-based)
  // has i of those Delta^{-1}s plus Delta^{-p} to its right.
  const auto& xs = f.factors();
  const std::int64_t l = static_cast<std::int64_t>(xs.size());
  FormBuilder builder(f.strands(), -f.infimum() - l);
  builder.reserve(xs.size());
  for (std::size_t k = xs.size(); k-- > 0;) {
    Permutation c = xs[k].complement();
    if ((static_cast<std::int64_t>(k) + 1 + f.infimum()) % 2 != 0) c = c.flipped();
    builder.append(std::move(c));
  }
  return std::move(builder).finish();
}

Word to_word(const CanonicalForm& f) {
  const int n = f.strands();
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(f.length()));
  const auto delta = Permutation::half_twist(n).spelling();
  if (f.infimum() >= 0) {
    for (std::int64_t i = 0; i < f.infimum(); ++i) letters.insert(letters.end(), delta.begin(), delta.end());
  } else {
    std::vector<Letter> delta_inv;
    for (auto it = delta.rbegin(); it != delta.rend(); ++it) delta_inv.push_back(it->inverse());
    for (std::int64_t i = 0; i < -f.infimum(); ++i)
      letters.insert(letters.end(), delta_inv.begin(), delta_inv.end());
  }
  for (const auto& x : f.factors()) {
    auto s = x.spelling();
    letters.insert(letters.end(), s.begin(), s.end());
  }
  return Word(n, std::move(letters));
}

Word canonical_word(const Word& w) { return to_word(normal_form(w)); }

}  // namespace braidlen
