#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lamina {

// 0 is the free digit, 1..d the branches L_1..L_d.
using Letter = std::uint8_t;
inline constexpr Letter kStar = 0;
inline constexpr Letter kL = 1;
inline constexpr Letter kR = 2;

using Word = std::vector<Letter>;

// d = 2 uses L, R and '*'; larger degrees use the digits 1..9 and '*'.
Word parse_word(int d, std::string_view text);
std::string word_str(int d, const Word& w);

inline bool letters_match(Letter a, Letter b) { return a == kStar || b == kStar || a == b; }
bool has_star(const Word& w);

// 1-based inclusive slice w|[a,b]; empty when b < a.
Word slice(const Word& w, std::size_t a, std::size_t b);
Word concat(const Word& a, const Word& b);

class EventuallyPeriodicWord {
 public:
  EventuallyPeriodicWord() = default;
  EventuallyPeriodicWord(Word preperiod, Word period);

  // "LL(RL)" style; a word without parentheses is read as a purely periodic
  // word only if it is wrapped, so "LL" is rejected.
  static EventuallyPeriodicWord parse(int d, std::string_view text);

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return per_; }

  // 1-based letter lookup.
  Letter at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  bool has_star() const;
  std::string str(int d) const;
  // One period read from position start+1.
  Word slice_period(std::size_t start) const;

  friend bool operator==(const EventuallyPeriodicWord&, const EventuallyPeriodicWord&) = default;

 private:
  Word pre_;
  Word per_;
};

}  // namespace lamina
