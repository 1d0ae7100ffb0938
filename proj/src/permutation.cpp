#include "diamond/permutation.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <numeric>
#include <sstream>

namespace diamond {

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[v - 1])
      throw typing_error("not a permutation in one-line notation");
    seen[v - 1] = true;
  }
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < n(); ++i) inv[images_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.n() != b.n()) throw typing_error("permutation size mismatch");
  std::vector<int> v(a.n());
  for (int i = 1; i <= a.n(); ++i) v[i - 1] = a(b(i));
  return Permutation(std::move(v));
}

int Permutation::length() const {
  int count = 0;
  for (int i = 0; i < n(); ++i)
    for (int j = i + 1; j < n(); ++j)
      if (images_[i] > images_[j]) ++count;
  return count;
}

Permutation Permutation::longest(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = n - i;
  return Permutation(std::move(v));
}

std::string Permutation::str() const {
  std::string out;
  for (int i = 0; i < n(); ++i) {
    if (i && n() > 9) out += ",";
    out += std::to_string(images_[i]);
  }
  return out;
}

static const char kLetterNames[] = "stuvwxyz";

std::string Expression::str() const {
  if (letters.empty()) return "e";
  std::string out;
  if (n <= 9) {
    for (int l : letters) out += kLetterNames[l - 1];
  } else {
    for (size_t i = 0; i < letters.size(); ++i) {
      if (i) out += " ";
      out += std::to_string(letters[i]);
    }
  }
  return out;
}

Expression make_expression(int n, const std::vector<int>& letters) {
  for (int l : letters)
    if (l < 1 || l >= n)
      throw typing_error("letter index " + std::to_string(l) +
                         " out of range for n=" + std::to_string(n));
  return Expression{n, letters};
}

Expression parse_expression(int n, const std::string& text) {
  std::vector<int> letters;
  bool has_digits = text.find_first_of("0123456789") != std::string::npos;
  if (has_digits) {
    std::istringstream in(text);
    int v;
    while (in >> v) letters.push_back(v);
  } else {
    for (char c : text) {
      if (c == ' ' || c == '\t') continue;
      if (c == 'e' && text.size() == 1) break;  // identity word
      const char* pos = std::strchr(kLetterNames, c);
      if (!pos || c == '\0')
        throw usage_error(std::string("cannot read expression letter '") + c +
                          "'");
      letters.push_back(static_cast<int>(pos - kLetterNames) + 1);
    }
  }
  if (n == 0) {
    int maxl = 1;
    for (int l : letters) maxl = std::max(maxl, l);
    n = maxl + 1;
  }
  return make_expression(n, letters);
}

std::string StrandPair::str() const {
  return "(" + std::to_string(i) + "|" + std::to_string(j) + ")";
}

std::string Triple::str() const {
  return "(" + std::to_string(i) + "|" + std::to_string(j) + "|" +
         std::to_string(k) + ")";
}

std::vector<Triple> all_triples(int n) {
  std::vector<Triple> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) out.push_back(Triple{i, j, k});
  return out;
}

Permutation evaluate(const Expression& e) {
  // pos[p-1] = strand currently at board position p, growing bottom-to-top.
  std::vector<int> pos(e.n);
  std::iota(pos.begin(), pos.end(), 1);
  for (auto it = e.letters.rbegin(); it != e.letters.rend(); ++it)
    std::swap(pos[*it - 1], pos[*it]);
  std::vector<int> images(e.n);
  for (int p = 1; p <= e.n; ++p) images[pos[p - 1] - 1] = p;
  return Permutation(std::move(images));
}

CrossingSequence crossing_sequence(const Expression& e) {
  std::vector<int> pos(e.n);
  std::iota(pos.begin(), pos.end(), 1);
  CrossingSequence seq;
  seq.reserve(e.letters.size());
  for (auto it = e.letters.rbegin(); it != e.letters.rend(); ++it) {
    int a = pos[*it - 1], b = pos[*it];
    seq.push_back(a < b ? StrandPair{a, b} : StrandPair{b, a});
    std::swap(pos[*it - 1], pos[*it]);
  }
  return seq;
}

std::set<StrandPair> inversion_set(const Permutation& w) {
  std::set<StrandPair> out;
  for (int i = 1; i <= w.n(); ++i)
    for (int j = i + 1; j <= w.n(); ++j)
      if (w(i) > w(j)) out.insert(StrandPair{i, j});
  return out;
}

bool is_reduced(const Expression& e) {
  return e.length() == evaluate(e).length();
}

Expression reduced_word(const Permutation& w) {
  // Peels descents off the top: if v has a descent at position p, then
  // s_p * v is shorter; the peeled letters, read in peel order, form a
  // reduced word for w (topmost letter first).
  std::vector<int> letters;
  Permutation v = w;
  bool progress = true;
  while (progress) {
    progress = false;
    Permutation vi = v.inverse();
    for (int p = 1; p < w.n(); ++p) {
      if (vi(p) > vi(p + 1)) {
        // strand at position p came from above strand at p+1: top crossing
        std::vector<int> imgs = v.images();
        for (auto& x : imgs) {
          if (x == p)
            x = p + 1;
          else if (x == p + 1)
            x = p;
        }
        v = Permutation(std::move(imgs));
        letters.push_back(p);
        progress = true;
        break;
      }
    }
  }
  if (v != Permutation::identity(w.n()))
    throw error("reduced_word failed to reach the identity");
  return Expression{w.n(), letters};
}

}  // namespace diamond
