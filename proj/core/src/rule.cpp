#include "colouring/rule.hpp"

#include <map>
#include <mutex>

#include "colouring/sim.hpp"

namespace colouring {

namespace {

BTensor make_b1() {
  BTensor t;
  t.variant = 1;
  for (int j = 1; j <= 3; ++j) {
    const int i = j % 3 + 1;
    for (int k = 1; k <= 3; ++k) t.b[i - 1][j - 1][k - 1] = 1;
  }
  return t;
}

BTensor make_b0() {
  BTensor t;
  t.variant = 0;
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) {
      int i;
      if (k != 1 && j != 3) i = j;
      else if (k != 1) i = 1;        // j == 3
      else if (j != 3) i = j % 3 + 1;  // k == 1
      else i = 3;                    // j == 3, k == 1
      t.b[i - 1][j - 1][k - 1] = 1;
    }
  }
  return t;
}

}  // namespace

const BTensor& BTensor::for_bit(int e_bit) {
  static const BTensor b0 = make_b0();
  static const BTensor b1 = make_b1();
  return e_bit ? b1 : b0;
}

PureColour apply_rule_pure(int e_bit, PureColour j, PureColour k) {
  const BTensor& t = BTensor::for_bit(e_bit);
  for (std::uint8_t i = 1; i <= 3; ++i) {
    if (t.b[i - 1][j.index - 1][k.index - 1]) return {i};
  }
  throw std::logic_error("BTensor: no firing row");  // unreachable by construction
}

int StreamTable::slot_of(int i, int j) {
  static constexpr int kSlot[3][3] = {{-1, 0, 1}, {2, -1, 3}, {4, 5, -1}};
  const int s = kSlot[i - 1][j - 1];
  if (s < 0) throw std::invalid_argument("StreamTable: diagonal has no stream");
  return s;
}

StreamTable::StreamTable(int depth) : depth_(depth) {
  if (depth < 1) throw std::invalid_argument("StreamTable: depth must be >= 1");
  LengthLexEnumerator en;
  words_.reserve(static_cast<size_t>(depth) * 6);
  for (int m = 0; m < depth * 6; ++m) words_.push_back(en.next());
}

const StreamTable& stream_table(int depth) {
  static std::mutex mu;
  static std::map<int, StreamTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(depth);
  if (it == cache.end()) it = cache.emplace(depth, StreamTable(depth)).first;
  return it->second;
}

AMatrix a_matrix(const BitFunction& bit, const StreamTable& streams, int depth) {
  if (depth < 1 || depth > streams.depth())
    throw std::invalid_argument("a_matrix: depth out of range for stream table");
  AMatrix m;
  const Rational hundredth(1, 100);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      const int slot = StreamTable::slot_of(i, j);
      Rational acc(0);
      Rational term(1, 2);
      for (int l = 1; l <= depth; ++l) {
        if (bit(streams.word(slot, l))) acc += term;
        term *= Rational(1, 2);
      }
      m.r[i - 1][j - 1] = acc * hundredth;
    }
  }
  return m;
}

AMatrix a_matrix(const std::unordered_map<std::string, int>& bits, const StreamTable& streams,
                 int depth) {
  return a_matrix(
      [&bits](const Word& w) {
        auto it = bits.find(w.str());
        if (it == bits.end()) throw IncompleteInputError("a_matrix: no bit for word " + w.str());
        return it->second;
      },
      streams, depth);
}

Argmax<Rational> correspondence_F(int e_bit, const SimplexColour& p, const SimplexColour& q) {
  const BTensor& t = BTensor::for_bit(e_bit);
  std::array<Rational, 3> v{Rational(0), Rational(0), Rational(0)};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        if (t.b[i][j][k]) v[i] += p.w[j] * q.w[k];
  return row_argmax(v);
}

std::vector<Violation> check_satisfaction(const Region& region, const Colouring& colouring) {
  if (colouring.size() != region.words.size())
    throw std::invalid_argument("check_satisfaction: colouring not total on the region");
  std::vector<Violation> out;
  for (std::int32_t v = 0; v < region.node_count(); ++v) {
    if (!region.interior(v)) continue;
    const PureColour j = colouring[static_cast<size_t>(region.d1[static_cast<size_t>(v)])];
    const PureColour k = colouring[static_cast<size_t>(region.d2[static_cast<size_t>(v)])];
    const PureColour allowed = apply_rule_pure(region.bits[static_cast<size_t>(v)], j, k);
    if (!(colouring[static_cast<size_t>(v)] == allowed)) {
      out.push_back({v, static_cast<std::uint8_t>(1u << (allowed.index - 1)),
                     colouring[static_cast<size_t>(v)]});
    }
  }
  return out;
}

}  // namespace colouring
