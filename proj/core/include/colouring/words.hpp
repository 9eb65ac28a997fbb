#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace colouring {

/// The two semigroup generators, written '1' and '2' in textual form.
enum class Gen : char { T1 = '1', T2 = '2' };

/// A word over {T1, T2}, stored as its letter string (e.g. "1112").
/// The single defining relation is T1 T1 T1 T2 = T2 T1 T1 T1; canonical
/// (normal form) words contain no factor "1112".
class Word {
 public:
  Word() = default;

  /// Accepts letters '1'/'2'; "e" (or "") denotes the empty word.
  static Word parse(std::string_view text);

  const std::string& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool is_canonical() const;

  /// "1112" style; the empty word prints as "e".
  std::string str() const { return letters_.empty() ? "e" : letters_; }

  Word appended(Gen g) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.letters_ < b.letters_;
  }

 private:
  friend Word normalize(const Word&);
  friend Word concat(const Word&, const Word&);
  explicit Word(std::string letters) : letters_(std::move(letters)) {}
  std::string letters_;
};

/// Rewrites every factor "1112" to "2111" until none remains. The system is
/// terminating (each step moves a '2' left) and confluent (the left side has
/// no self-overlap), so the result is the unique normal form. Length is
/// preserved.
Word normalize(const Word& w);

/// In-place normal form of a raw letter string; the workhorse behind
/// normalize() and the simulator's descendant maps.
void normalize_letters(std::string& s);

Word concat(const Word& u, const Word& v);

/// Composition (concatenate, then normalize) together with the equality
/// verdict normalize(u) == normalize(v).
struct ComposeResult {
  Word composition;
  bool equal = false;
};
ComposeResult compose_equal(const Word& u, const Word& v);
inline Word compose(const Word& u, const Word& v) { return compose_equal(u, v).composition; }

/// All canonical words of exactly the given length, lexicographic with
/// T1 < T2.
std::vector<Word> enumerate_normal(std::size_t length);

/// Streams canonical words across all lengths in length-lexicographic order
/// starting from the empty word.
class LengthLexEnumerator {
 public:
  Word next();

 private:
  std::vector<Word> level_;
  std::size_t pos_ = 0;
  std::size_t length_ = 0;
  bool started_ = false;
};

/// Image of a word in the quotient monoid where T1 is invertible and
/// T1^3 = e: maximal T1-runs are reduced mod 3, empty runs elided and the
/// neighbouring T2-runs merged. Words with distinct quotient images are
/// independent in the original semigroup.
class QuotientWord {
 public:
  QuotientWord() = default;
  explicit QuotientWord(std::string reduced) : letters_(std::move(reduced)) {}
  const std::string& letters() const { return letters_; }
  std::string str() const { return letters_.empty() ? "e" : letters_; }
  friend bool operator==(const QuotientWord&, const QuotientWord&) = default;

 private:
  std::string letters_;
};

QuotientWord quotient_normalize(const Word& w);
QuotientWord quotient_product(const QuotientWord& u, const QuotientWord& v);

/// A witness that two distinct factor sequences over the element list have
/// equal normal-form products.
struct Collision {
  std::vector<int> sequence_a;  // indices into the element list
  std::vector<int> sequence_b;
  Word product;
};

struct IndependenceVerdict {
  std::optional<Collision> collision;  // empty: no collision up to the bound
  std::uint64_t products_checked = 0;
  bool no_collision() const { return !collision.has_value(); }
};

inline constexpr std::uint64_t kDefaultProductCeiling = 1'000'000;

/// Exhaustively multiplies out every sequence of 1..max_factors elements and
/// compares normal forms. Bounded certification only: silence up to the bound
/// is not a proof of independence. Throws std::length_error when the number
/// of products would exceed the ceiling.
IndependenceVerdict independence_check(std::span<const Word> elements, int max_factors,
                                       std::uint64_t product_ceiling = kDefaultProductCeiling);

/// The seven built-in elements driving the independence workflow, with their
/// expected quotient images.
std::vector<Word> default_independence_elements();
std::vector<QuotientWord> default_independence_quotients();

}  // namespace colouring
