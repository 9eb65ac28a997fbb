#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "colouring/rational.hpp"
#include "colouring/words.hpp"

namespace colouring {

/// Extremal colour index in {1, 2, 3}; successor arithmetic is mod 3 on the
/// representatives {1, 2, 3}.
struct PureColour {
  std::uint8_t index = 1;
  friend bool operator==(PureColour, PureColour) = default;
};

inline PureColour succ(PureColour c) { return {static_cast<std::uint8_t>(c.index % 3 + 1)}; }

/// The three sheets of the extended space.
enum class Sheet : char { A = 'a', B = 'b', C = 'c' };

/// A point of the colour simplex: three nonnegative weights summing to 1.
struct SimplexColour {
  std::array<Rational, 3> w{Rational(1), Rational(0), Rational(0)};

  static SimplexColour pure(PureColour c) {
    SimplexColour p;
    p.w = {Rational(0), Rational(0), Rational(0)};
    p.w[c.index - 1] = Rational(1);
    return p;
  }
  bool valid() const {
    Rational sum(0);
    for (const auto& x : w) {
      if (x.sign() < 0) return false;
      sum += x;
    }
    return sum == Rational(1);
  }
};

/// 3x3x3 zero-one payoff tensor; for every column pair (j,k) exactly one row
/// fires. Variant 1 fires row succ(j); variant 0 follows the four-case table.
struct BTensor {
  std::uint8_t b[3][3][3] = {};  // b[i-1][j-1][k-1]
  int variant = 0;

  static const BTensor& for_bit(int e_bit);
};

/// The unique row fired by the bit-e tensor at pure columns (j, k).
PureColour apply_rule_pure(int e_bit, PureColour j, PureColour k);

/// Near-identity 3x3 matrix: diagonal exactly 1, off-diagonal magnitudes
/// at most 1/100.
struct AMatrix {
  Rational r[3][3];  // full entries, diagonal included

  AMatrix() {
    for (int i = 0; i < 3; ++i) r[i][i] = Rational(1);
  }
  std::array<Rational, 3> apply(const SimplexColour& p) const {
    std::array<Rational, 3> v{Rational(0), Rational(0), Rational(0)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v[i] += r[i][j] * p.w[j];
    return v;
  }
};

/// The six off-diagonal digit streams feeding the A-matrix entries: canonical
/// words are enumerated in length-lexicographic order and dealt round-robin
/// to the slots (1,2),(1,3),(2,1),(2,3),(3,1),(3,2).
class StreamTable {
 public:
  explicit StreamTable(int depth);

  int depth() const { return depth_; }
  const Word& word(int slot, int term) const {  // slot 0..5, term 1..depth
    return words_[static_cast<size_t>(term - 1) * 6 + static_cast<size_t>(slot)];
  }
  static int slot_of(int i, int j);  // off-diagonal (i,j), 1-based

 private:
  int depth_;
  std::vector<Word> words_;  // dealt order: term-major
};

/// Returns a depth-term table, built once per depth and cached.
const StreamTable& stream_table(int depth);

struct IncompleteInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using BitFunction = std::function<int(const Word&)>;

/// r[i][j] = (1/100) * sum_{l=1..depth} 2^-l * bit(word_l of stream (i,j)),
/// an exact dyadic rational.
AMatrix a_matrix(const BitFunction& bit, const StreamTable& streams, int depth);

/// Map-backed variant; throws IncompleteInputError when a consumed word has
/// no bit. Keys are word texts as printed by Word::str().
AMatrix a_matrix(const std::unordered_map<std::string, int>& bits, const StreamTable& streams,
                 int depth);

/// Exact argmax over three row values; ties are preserved, never broken.
template <class T>
struct Argmax {
  std::uint8_t mask = 0;  // bit i-1 set iff row i maximal
  std::array<T, 3> values{};

  bool contains(PureColour c) const { return mask & (1u << (c.index - 1)); }
  int count() const { return ((mask >> 0) & 1) + ((mask >> 1) & 1) + ((mask >> 2) & 1); }
  PureColour lowest() const {
    for (std::uint8_t i = 0; i < 3; ++i)
      if (mask & (1u << i)) return {static_cast<std::uint8_t>(i + 1)};
    throw std::logic_error("Argmax: empty mask");
  }
};

template <class T>
Argmax<T> row_argmax(const std::array<T, 3>& values) {
  Argmax<T> r;
  r.values = values;
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (values[i] > values[best]) best = i;
  for (int i = 0; i < 3; ++i)
    if (!(values[i] < values[best])) r.mask |= static_cast<std::uint8_t>(1u << i);
  return r;
}

/// The allowed-colour face at a point whose b-sheet colour is p and c-sheet
/// colour is q: the argmax rows of sum_{j,k} p_j q_k b[i][j][k]. Allowed
/// colours are exactly the convex hull of the pure colours in the mask.
Argmax<Rational> correspondence_F(int e_bit, const SimplexColour& p, const SimplexColour& q);

struct Region;  // sim layer

using Colouring = std::vector<PureColour>;

struct Violation {
  std::int32_t node = -1;
  std::uint8_t allowed_mask = 0;
  PureColour actual;
};

/// Every interior node must carry a colour inside the face determined by its
/// bit and its two descendants' colours; frontier nodes are exempt. Returns
/// the violating nodes (empty means the colouring satisfies the rule).
std::vector<Violation> check_satisfaction(const Region& region, const Colouring& colouring);

}  // namespace colouring
