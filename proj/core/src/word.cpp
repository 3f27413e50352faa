#include "lamina/word.hpp"

#include <algorithm>

#include "lamina/error.hpp"

namespace lamina {

Word parse_word(int d, std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    if (c == '*') {
      w.push_back(kStar);
    } else if (d == 2 && (c == 'L' || c == 'l')) {
      w.push_back(kL);
    } else if (d == 2 && (c == 'R' || c == 'r')) {
      w.push_back(kR);
    } else if (c >= '1' && c <= '9' && c - '0' <= d) {
      w.push_back(static_cast<Letter>(c - '0'));
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("bad letter '") + c + "' for degree " + std::to_string(d));
    }
  }
  return w;
}

std::string word_str(int d, const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter c : w) {
    if (c == kStar)
      s.push_back('*');
    else if (d == 2)
      s.push_back(c == kL ? 'L' : 'R');
    else
      s.push_back(static_cast<char>('0' + c));
  }
  return s;
}

bool has_star(const Word& w) { return std::find(w.begin(), w.end(), kStar) != w.end(); }

Word slice(const Word& w, std::size_t a, std::size_t b) {
  if (b < a || a == 0) return {};
  b = std::min(b, w.size());
  if (a > b) return {};
  return Word(w.begin() + static_cast<long>(a - 1), w.begin() + static_cast<long>(b));
}

Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

EventuallyPeriodicWord::EventuallyPeriodicWord(Word preperiod, Word period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw Error(ErrorCode::kInvalidArgument, "empty period");
  std::size_t n = per_.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = per_[i] == per_[i - p];
    if (ok) {
      per_.resize(p);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
    pre_.pop_back();
  }
}

EventuallyPeriodicWord EventuallyPeriodicWord::parse(int d, std::string_view text) {
  auto open = text.find('(');
  auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open ||
      close + 1 != text.size())
    throw Error(ErrorCode::kInvalidArgument, "expected prefix(period), got '" + std::string(text) + "'");
  return EventuallyPeriodicWord(parse_word(d, text.substr(0, open)),
                                parse_word(d, text.substr(open + 1, close - open - 1)));
}

Letter EventuallyPeriodicWord::at(std::size_t i) const {
  if (i == 0) throw Error(ErrorCode::kInvalidArgument, "word index is 1-based");
  if (i <= pre_.size()) return pre_[i - 1];
  return per_[(i - pre_.size() - 1) % per_.size()];
}

Word EventuallyPeriodicWord::prefix(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i + 1);
  return w;
}

bool EventuallyPeriodicWord::has_star() const {
  return lamina::has_star(pre_) || lamina::has_star(per_);
}

Word EventuallyPeriodicWord::slice_period(size_t start) const {
  Word w;
  for (size_t i = 1; i <= per_.size(); ++i) w.push_back(at(start + i));
  return w;
}

std::string EventuallyPeriodicWord::str(int d) const {
  // The preperiod is padded to a whole number of periods, so the bracket
  // opens at a position congruent to 1 mod the period.
  size_t p = per_.size(), k = (pre_.size() + p - 1) / p * p;
  return word_str(d, prefix(k)) + "(" + word_str(d, slice_period(k)) + ")";
}

}  // namespace lamina
