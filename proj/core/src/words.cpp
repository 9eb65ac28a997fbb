#include "colouring/words.hpp"

#include <stdexcept>
#include <unordered_map>

namespace colouring {

Word Word::parse(std::string_view text) {
  if (text == "e") return Word{};
  std::string letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c != '1' && c != '2') throw std::invalid_argument("Word: bad letter in '" + std::string(text) + "'");
    letters.push_back(c);
  }
  return Word(std::move(letters));
}

Word Word::appended(Gen g) const {
  std::string s = letters_;
  s.push_back(static_cast<char>(g));
  normalize_letters(s);
  return Word(std::move(s));
}

bool Word::is_canonical() const {
  return letters_.find("1112") == std::string::npos;
}

void normalize_letters(std::string& s) {
  // Left-to-right scan with three-position backtrack after each rewrite.
  size_t i = 0;
  while (s.size() >= 4 && i + 3 < s.size()) {
    if (s[i] == '1' && s[i + 1] == '1' && s[i + 2] == '1' && s[i + 3] == '2') {
      s[i] = '2';
      s[i + 1] = '1';
      s[i + 2] = '1';
      s[i + 3] = '1';
      i = i >= 3 ? i - 3 : 0;
    } else {
      ++i;
    }
  }
}

Word normalize(const Word& w) {
  std::string s = w.letters_;
  normalize_letters(s);
  return Word(std::move(s));
}

Word concat(const Word& u, const Word& v) {
  return Word(u.letters_ + v.letters_);
}

ComposeResult compose_equal(const Word& u, const Word& v) {
  ComposeResult r;
  r.composition = normalize(concat(u, v));
  r.equal = normalize(u) == normalize(v);
  return r;
}

std::vector<Word> enumerate_normal(std::size_t length) {
  // Depth-first over {1,2}^length, pruning any '2' that would complete
  // the factor "1112". Emits in lexicographic order with '1' < '2'.
  std::vector<Word> out;
  std::string cur;
  cur.reserve(length);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == length) {
      out.push_back(Word::parse(cur.empty() ? "e" : cur));
      return;
    }
    cur.push_back('1');
    self(self);
    cur.pop_back();
    const size_t n = cur.size();
    const bool blocked = n >= 3 && cur[n - 1] == '1' && cur[n - 2] == '1' && cur[n - 3] == '1';
    if (!blocked) {
      cur.push_back('2');
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

Word LengthLexEnumerator::next() {
  if (!started_ || pos_ == level_.size()) {
    if (started_) ++length_;
    started_ = true;
    level_ = enumerate_normal(length_);
    pos_ = 0;
  }
  return level_[pos_++];
}

QuotientWord quotient_normalize(const Word& w) {
  // Reduce each maximal T1-run mod 3; dropped runs merge adjacent T2-runs.
  // No new T1-runs can appear, so one pass suffices.
  std::string out;
  const std::string& s = w.letters();
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '2') {
      out.push_back('2');
      ++i;
      continue;
    }
    size_t run = 0;
    while (i < s.size() && s[i] == '1') {
      ++run;
      ++i;
    }
    out.append(run % 3, '1');
  }
  return QuotientWord(std::move(out));
}

QuotientWord quotient_product(const QuotientWord& u, const QuotientWord& v) {
  return quotient_normalize(Word::parse(u.letters() + v.letters()));
}

IndependenceVerdict independence_check(std::span<const Word> elements, int max_factors,
                                       std::uint64_t product_ceiling) {
  if (elements.empty()) throw std::invalid_argument("independence_check: empty element list");
  if (max_factors < 1) throw std::invalid_argument("independence_check: max_factors must be >= 1");

  const std::uint64_t n = elements.size();
  std::uint64_t total = 0, stratum = 1;
  for (int k = 1; k <= max_factors; ++k) {
    stratum *= n;
    total += stratum;
    if (total > product_ceiling) {
      throw std::length_error("independence_check: product count exceeds configured ceiling");
    }
  }

  std::vector<Word> normal(elements.begin(), elements.end());
  for (auto& w : normal) w = normalize(w);

  IndependenceVerdict verdict;
  std::unordered_map<std::string, std::vector<int>> seen;
  seen.reserve(static_cast<size_t>(total) * 2);

  std::vector<int> seq;
  // Iterative odometer over factor sequences, stratified by length.
  for (int k = 1; k <= max_factors; ++k) {
    seq.assign(static_cast<size_t>(k), 0);
    while (true) {
      Word prod;
      for (int idx : seq) prod = compose(prod, normal[static_cast<size_t>(idx)]);
      ++verdict.products_checked;
      auto [it, inserted] = seen.try_emplace(prod.letters(), seq);
      if (!inserted && it->second != seq) {
        verdict.collision = Collision{it->second, seq, prod};
        return verdict;
      }
      int pos = k - 1;
      while (pos >= 0 && seq[static_cast<size_t>(pos)] == static_cast<int>(n) - 1) {
        seq[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++seq[static_cast<size_t>(pos)];
    }
  }
  return verdict;
}

std::vector<Word> default_independence_elements() {
  static const char* kTexts[] = {
      "22221222",    // T2^4 T1 T2^3
      "222212212",   // T2^4 T1 T2^2 T1 T2
      "2222122112",  // T2^4 T1 T2^2 T1^2 T2
      "2222122111",  // T2^4 T1 T2^2 T1^3
      "2222121111",  // T2^4 T1 T2 T1^4
      "222212211",   // T2^4 T1 T2^2 T1^2
      "22221221",    // T2^4 T1 T2^2 T1
  };
  std::vector<Word> out;
  for (const char* t : kTexts) out.push_back(Word::parse(t));
  return out;
}

std::vector<QuotientWord> default_independence_quotients() {
  static const char* kTexts[] = {
      "22221222", "222212212", "2222122112", "2222122",
      "2222121",  "222212211", "22221221",
  };
  std::vector<QuotientWord> out;
  for (const char* t : kTexts) out.emplace_back(t);
  return out;
}

}  // namespace colouring
