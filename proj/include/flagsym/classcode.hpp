#ifndef FLAGSYM_CLASSCODE_HPP
#define FLAGSYM_CLASSCODE_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "flagsym/chart.hpp"

namespace flagsym {

class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A KR class (goursat, letters over {1,2}) or a singularity class of special
/// 2-flags (flag2, letters over {1,2,3}).  Always validated on construction:
///   goursat: r >= 2, two first letters 1;
///   flag2:   r >= 1, first letter 1, any 3 preceded somewhere by a 2
///            (the least upward jumps rule).
class ClassCode {
 public:
  ClassCode(Mode mode, std::vector<int> letters) : mode_(mode), letters_(std::move(letters)) {
    const std::string w = word_of(letters_);
    if (mode_ == Mode::goursat) {
      if (letters_.size() < 2)
        throw validation_error("goursat class '" + w + "': length must be >= 2");
      for (int l : letters_)
        if (l != 1 && l != 2)
          throw validation_error("goursat class '" + w + "': letters must be in {1,2}");
      if (letters_[0] != 1 || letters_[1] != 1)
        throw validation_error("goursat class '" + w + "': two first letters must be 1");
    } else {
      if (letters_.empty()) throw validation_error("flag2 class: length must be >= 1");
      for (int l : letters_)
        if (l < 1 || l > 3)
          throw validation_error("flag2 class '" + w + "': letters must be in {1,2,3}");
      if (letters_[0] != 1)
        throw validation_error("flag2 class '" + w + "': first letter must be 1");
      bool seen2 = false;
      for (int l : letters_) {
        if (l == 2) seen2 = true;
        if (l == 3 && !seen2)
          throw validation_error("flag2 class '" + w + "': a letter 3 must be preceded by a 2");
      }
    }
  }

  /// Parses dot-separated notation, e.g. "1.2.3".
  static ClassCode parse(const std::string& word, Mode mode) {
    std::vector<int> letters;
    size_t i = 0;
    while (i <= word.size()) {
      size_t dot = word.find('.', i);
      std::string piece = word.substr(i, dot == std::string::npos ? std::string::npos : dot - i);
      if (piece.size() != 1 || piece[0] < '1' || piece[0] > '9')
        throw validation_error("malformed class word '" + word + "'");
      letters.push_back(piece[0] - '0');
      if (dot == std::string::npos) break;
      i = dot + 1;
    }
    return ClassCode(mode, std::move(letters));
  }

  Mode mode() const { return mode_; }
  int length() const { return static_cast<int>(letters_.size()); }
  const std::vector<int>& letters() const { return letters_; }
  /// 1-based letter access, i_j.
  int letter(int j) const {
    if (j < 1 || j > length()) throw std::out_of_range("letter index");
    return letters_[j - 1];
  }

  Chart ambient_chart() const { return {mode_, length()}; }

  std::string word() const { return word_of(letters_); }

  friend bool operator==(const ClassCode& a, const ClassCode& b) {
    return a.mode_ == b.mode_ && a.letters_ == b.letters_;
  }
  friend bool operator<(const ClassCode& a, const ClassCode& b) {
    return a.letters_ < b.letters_;
  }

 private:
  static std::string word_of(const std::vector<int>& ls) {
    std::string w;
    for (size_t i = 0; i < ls.size(); ++i) {
      if (i) w += '.';
      w += std::to_string(ls[i]);
    }
    return w;
  }

  Mode mode_;
  std::vector<int> letters_;
};

/// All class codes of length r in lexicographic order (1 < 2 < 3).
/// Counts: 2^{r-2} (goursat), (3^{r-1}+1)/2 (flag2).
inline std::vector<ClassCode> enumerate_classes(int r, Mode mode) {
  int min_r = mode == Mode::goursat ? 2 : 1;
  if (r < min_r)
    throw std::invalid_argument("enumerate: length below minimum for mode " + mode_name(mode));
  std::vector<ClassCode> out;
  std::vector<int> letters;
  auto rec = [&](auto&& self, bool seen2) -> void {
    if (static_cast<int>(letters.size()) == r) {
      out.emplace_back(mode, letters);
      return;
    }
    int pos = static_cast<int>(letters.size()) + 1;
    for (int l = 1; l <= (mode == Mode::goursat ? 2 : 3); ++l) {
      if (mode == Mode::goursat && pos <= 2 && l != 1) continue;
      if (mode == Mode::flag2 && pos == 1 && l != 1) continue;
      if (mode == Mode::flag2 && l == 3 && !seen2) continue;
      letters.push_back(l);
      self(self, seen2 || l == 2);
      letters.pop_back();
    }
  };
  rec(rec, false);
  return out;
}

/// Codimension of a flag2 singularity class: #2's + 2 * #3's.
inline int codimension(const ClassCode& c) {
  if (c.mode() != Mode::flag2)
    throw std::invalid_argument("codimension: stated only for flag2 singularity classes");
  int d = 0;
  for (int l : c.letters()) {
    if (l == 2) d += 1;
    if (l == 3) d += 2;
  }
  return d;
}

/// The lookback position s(j):
///   flag2:   max{s : 2 <= s < j, i_s > 1}, else 0;   valid for 2 <= j <= r.
///   goursat: the farthest position of a letter 2 before i_j, else 0;
///            valid for 3 <= j <= r.
inline int s_of(const ClassCode& c, int j) {
  int lo = c.mode() == Mode::goursat ? 3 : 2;
  if (j < lo || j > c.length())
    throw std::out_of_range("s_of: j out of range for " + c.word());
  for (int s = j - 1; s >= 2; --s)
    if (c.letter(s) > 1) return s;
  return 0;
}

/// Sandwich word of a flag2 class: letterwise 2,3 -> underlined 2.  Letters
/// are {1, 2}; the printed form marks the underlined 2 as "2_".
struct SandwichWord {
  std::vector<int> letters;  // 1 or 2 (2 stands for underlined 2)

  std::string word() const {
    std::string w;
    for (size_t i = 0; i < letters.size(); ++i) {
      if (i) w += '.';
      w += letters[i] == 2 ? "2_" : "1";
    }
    return w;
  }
  friend bool operator==(const SandwichWord& a, const SandwichWord& b) {
    return a.letters == b.letters;
  }
  friend bool operator<(const SandwichWord& a, const SandwichWord& b) {
    return a.letters < b.letters;
  }
};

inline SandwichWord sandwich_of(const ClassCode& c) {
  if (c.mode() != Mode::flag2)
    throw std::invalid_argument("sandwich_of: flag2 only");
  SandwichWord w;
  for (int l : c.letters()) w.letters.push_back(l == 1 ? 1 : 2);
  return w;
}

}  // namespace flagsym

#endif
