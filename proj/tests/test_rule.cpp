#include "doctest.h"

#include <unordered_map>

#include "colouring/rng.hpp"
#include "colouring/rule.hpp"
#include "colouring/sim.hpp"

using namespace colouring;

TEST_CASE("successor cycles through the three colours") {
  CHECK(succ({1}) == PureColour{2});
  CHECK(succ({2}) == PureColour{3});
  CHECK(succ({3}) == PureColour{1});
}

TEST_CASE("each tensor fires exactly one row per column pair") {
  for (int e = 0; e < 2; ++e) {
    const BTensor& t = BTensor::for_bit(e);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int fired = 0;
        for (int i = 0; i < 3; ++i) fired += t.b[i][j][k];
        CHECK(fired == 1);
      }
  }
}

TEST_CASE("bit-1 tensor advances the first descendant's colour") {
  for (std::uint8_t j = 1; j <= 3; ++j)
    for (std::uint8_t k = 1; k <= 3; ++k) CHECK(apply_rule_pure(1, {j}, {k}) == succ({j}));
}

TEST_CASE("bit-0 tensor four-case table") {
  // k != 1, j != 3: keep j.   k != 1, j == 3: row 1.
  // k == 1, j != 3: advance.  k == 1, j == 3: keep 3.
  CHECK(apply_rule_pure(0, {1}, {2}) == PureColour{1});
  CHECK(apply_rule_pure(0, {1}, {3}) == PureColour{1});
  CHECK(apply_rule_pure(0, {2}, {2}) == PureColour{2});
  CHECK(apply_rule_pure(0, {2}, {3}) == PureColour{2});
  CHECK(apply_rule_pure(0, {3}, {2}) == PureColour{1});
  CHECK(apply_rule_pure(0, {3}, {3}) == PureColour{1});
  CHECK(apply_rule_pure(0, {1}, {1}) == PureColour{2});
  CHECK(apply_rule_pure(0, {2}, {1}) == PureColour{3});
  CHECK(apply_rule_pure(0, {3}, {1}) == PureColour{3});
}

TEST_CASE("correspondence on pure inputs matches the pure rule") {
  for (int e = 0; e < 2; ++e)
    for (std::uint8_t j = 1; j <= 3; ++j)
      for (std::uint8_t k = 1; k <= 3; ++k) {
        const auto face = correspondence_F(e, SimplexColour::pure({j}), SimplexColour::pure({k}));
        CHECK(face.count() == 1);
        CHECK(face.lowest() == apply_rule_pure(e, {j}, {k}));
      }
}

TEST_CASE("correspondence tie face from a mixed opponent") {
  // q = 1/2 on column pair (1,1) plus 1/2 on (3,1) under bit 0:
  // rows c2 and c3 each collect 1/2, a two-colour face.
  SimplexColour p;
  p.w = {Rational(1, 2), Rational(0), Rational(1, 2)};
  const auto face = correspondence_F(0, p, SimplexColour::pure({1}));
  CHECK(face.count() == 2);
  CHECK(face.contains({2}));
  CHECK(face.contains({3}));
  CHECK(!face.contains({1}));
}

TEST_CASE("stream table deals length-lex words round robin") {
  const StreamTable& t = stream_table(3);
  CHECK(t.word(0, 1).str() == "e");
  CHECK(t.word(1, 1).str() == "1");
  CHECK(t.word(2, 1).str() == "2");
  CHECK(t.word(3, 1).str() == "11");
  CHECK(t.word(4, 1).str() == "12");
  CHECK(t.word(5, 1).str() == "21");
  CHECK(t.word(0, 2).str() == "22");
  CHECK(t.word(1, 2).str() == "111");
  CHECK(t.word(5, 3).str() == "1122");
  CHECK(StreamTable::slot_of(1, 2) == 0);
  CHECK(StreamTable::slot_of(3, 2) == 5);
  CHECK_THROWS_AS(StreamTable::slot_of(2, 2), std::invalid_argument);
}

TEST_CASE("a-matrix dyadic accumulation") {
  const StreamTable& t = stream_table(4);
  const AMatrix ones = a_matrix([](const Word&) { return 1; }, t, 4);
  const AMatrix zeros = a_matrix([](const Word&) { return 0; }, t, 4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        CHECK(ones.r[i][j] == Rational(1));
        CHECK(zeros.r[i][j] == Rational(1));
      } else {
        CHECK(ones.r[i][j] == Rational(15, 16) * Rational(1, 100));
        CHECK(zeros.r[i][j] == Rational(0));
      }
    }
}

TEST_CASE("a-matrix singles out one series term") {
  const StreamTable& t = stream_table(4);
  // Only the second term of stream (1,2) is set: entry = 2^-2 / 100.
  const AMatrix m = a_matrix([&t](const Word& w) { return w == t.word(0, 2) ? 1 : 0; }, t, 4);
  CHECK(m.r[0][1] == Rational(1, 400));
  CHECK(m.r[1][0] == Rational(0));
}

TEST_CASE("map-backed a-matrix demands every consumed word") {
  const StreamTable& t = stream_table(2);
  std::unordered_map<std::string, int> bits;
  for (int slot = 0; slot < 6; ++slot)
    for (int term = 1; term <= 2; ++term) bits[t.word(slot, term).str()] = 1;
  const AMatrix full = a_matrix(bits, t, 2);
  CHECK(full.r[0][1] == Rational(3, 400));
  bits.erase("12");
  CHECK_THROWS_AS(a_matrix(bits, t, 2), IncompleteInputError);
}

TEST_CASE("argmax keeps ties") {
  const auto one = row_argmax<Rational>({Rational(1), Rational(0), Rational(1)});
  CHECK(one.count() == 2);
  CHECK(one.lowest() == PureColour{1});
  CHECK(one.contains({3}));
  const auto single = row_argmax<Rational>({Rational(0), Rational(1, 2), Rational(1, 3)});
  CHECK(single.count() == 1);
  CHECK(single.lowest() == PureColour{2});
}

TEST_CASE("satisfaction checker flags exactly the off-face nodes") {
  const Region region = build_region(5, 99);
  Colouring c = propagate(region, FrontierStrategy::Stationary);
  CHECK(check_satisfaction(region, c).empty());

  const std::int32_t target = region.node("11");
  const PureColour allowed = c[static_cast<size_t>(target)];
  c[static_cast<size_t>(target)] = succ(allowed);
  const auto violations = check_satisfaction(region, c);
  bool found = false;
  for (const auto& v : violations) {
    if (v.node == target) {
      found = true;
      CHECK(v.allowed_mask == (1u << (allowed.index - 1)));
      CHECK(v.actual == succ(allowed));
    }
  }
  CHECK(found);
}
