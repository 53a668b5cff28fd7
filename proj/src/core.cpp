#include "scc/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace scc {

ParseError::ParseError(size_t l, size_t c, const std::string& r)
    : Error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + r),
      line(l), column(c), reason(r) {}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto slash = text.find('/');
  std::string_view a = trim(text.substr(0, slash));
  std::string_view b = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  Rational r;
  auto ra = std::from_chars(a.data(), a.data() + a.size(), r.num);
  auto rb = std::from_chars(b.data(), b.data() + b.size(), r.den);
  if (a.empty() || b.empty() || ra.ec != std::errc() || rb.ec != std::errc() ||
      ra.ptr != a.data() + a.size() || rb.ptr != b.data() + b.size() || r.den <= 0 || r.num < 0) {
    throw Error("invalid rational '" + std::string(text) + "' (expected p/q)");
  }
  int64_t g = std::gcd(r.num, r.den);
  if (g > 1) {
    r.num /= g;
    r.den /= g;
  }
  return r;
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

Word invert(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& l : out) l = l.inverse();
  return out;
}

bool is_reduced(const Word& w) {
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == w[i - 1].inverse()) return false;
  }
  return true;
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_reduced(w)) return false;
  return w.size() < 2 || w.front() != w.back().inverse();
}

std::pair<Word, Word> cyclic_reduce(const Word& w) {
  size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && w[lo] == w[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  return {Word(w.begin() + lo, w.begin() + hi), Word(w.begin(), w.begin() + lo)};
}

Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word rotate(const Word& w, size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  Word out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + k, w.end());
  out.insert(out.end(), w.begin(), w.begin() + k);
  return out;
}

Word subword_cyclic(const Word& w, size_t start, size_t length) {
  Word out;
  out.reserve(length);
  for (size_t t = 0; t < length; ++t) out.push_back(w[(start + t) % w.size()]);
  return out;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

size_t cyclic_period(const Word& w) {
  const size_t n = w.size();
  if (n == 0) return 0;
  std::vector<uint32_t> pi(n, 0);
  for (size_t i = 1; i < n; ++i) {
    uint32_t k = pi[i - 1];
    while (k > 0 && w[i] != w[k]) k = pi[k - 1];
    if (w[i] == w[k]) ++k;
    pi[i] = k;
  }
  size_t p = n - pi[n - 1];
  return n % p == 0 ? p : n;
}

size_t least_rotation(const Word& w) {
  const size_t n = w.size();
  if (n == 0) return 0;
  size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    uint32_t a = w[(i + k) % n].code(), b = w[(j + k) % n].code();
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

Presentation::Presentation(std::vector<char> alphabet, std::vector<Word> relators, Rational lambda)
    : lambda_(lambda) {
  std::vector<size_t> order(alphabet.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return alphabet[a] < alphabet[b]; });
  std::vector<uint16_t> remap(alphabet.size());
  for (size_t k = 0; k < order.size(); ++k) {
    alphabet_.push_back(alphabet[order[k]]);
    remap[order[k]] = static_cast<uint16_t>(k);
  }
  for (size_t k = 1; k < alphabet_.size(); ++k) {
    if (alphabet_[k] == alphabet_[k - 1]) throw Error(std::string("duplicate generator '") + alphabet_[k] + "'");
  }
  std::vector<bool> used(alphabet_.size(), false);
  for (size_t i = 0; i < relators.size(); ++i) {
    Word r = relators[i];
    if (r.empty()) throw RelatorNotReduced("relator " + std::to_string(i + 1) + " is empty");
    for (Letter& l : r) {
      if (l.symbol >= remap.size()) throw Error("relator letter outside the alphabet");
      l.symbol = remap[l.symbol];
      used[l.symbol] = true;
    }
    if (!is_reduced(r)) throw RelatorNotReduced("relator " + std::to_string(i + 1) + " is not freely reduced");
    relators_.push_back(std::move(r));
  }
  if (!relators_.empty()) {
    for (size_t k = 0; k < used.size(); ++k) {
      if (!used[k]) throw UnusedGenerator(std::string("generator '") + alphabet_[k] + "' appears in no relator");
    }
  }
}

Presentation Presentation::from_strings(const std::vector<char>& alphabet, const std::vector<std::string>& rels,
                                        Rational lambda) {
  std::vector<Word> words;
  for (const std::string& s : rels) {
    Word w;
    for (char c : s) {
      char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      auto it = std::find(alphabet.begin(), alphabet.end(), lower);
      if (it == alphabet.end()) throw Error(std::string("unknown generator '") + c + "'");
      w.push_back(Letter{static_cast<uint16_t>(it - alphabet.begin()),
                         static_cast<int8_t>(std::isupper(static_cast<unsigned char>(c)) ? -1 : 1)});
    }
    words.push_back(std::move(w));
  }
  return Presentation(alphabet, std::move(words), lambda);
}

size_t Presentation::total_length() const {
  size_t t = 0;
  for (const Word& r : relators_) t += r.size();
  return t;
}

Presentation Presentation::truncated(size_t n) const {
  Presentation p = *this;
  if (n < p.relators_.size()) p.relators_.resize(n);
  return p;
}

Word Presentation::word(std::string_view text) const {
  Word w;
  for (char c : text) {
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), lower);
    if (it == alphabet_.end() || *it != lower) throw Error(std::string("unknown generator '") + c + "'");
    w.push_back(Letter{static_cast<uint16_t>(it - alphabet_.begin()),
                       static_cast<int8_t>(std::isupper(static_cast<unsigned char>(c)) ? -1 : 1)});
  }
  return w;
}

std::string Presentation::str(const Word& w) const {
  std::string s;
  s.reserve(w.size());
  for (const Letter& l : w) {
    char c = alphabet_.at(l.symbol);
    s.push_back(l.sign < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return s;
}

namespace {

std::string_view strip_comment(std::string_view line) {
  auto h = line.find('#');
  if (h != std::string_view::npos) line = line.substr(0, h);
  while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.remove_suffix(1);
  return line;
}

size_t skip_space(std::string_view s, size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  std::vector<char> gens;
  bool have_gens = false;
  std::vector<std::string> rel_text;
  std::vector<std::pair<size_t, size_t>> rel_pos;
  Rational lambda{1, 24};

  size_t line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = strip_comment(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    size_t i = skip_space(line, 0);
    if (i == line.size()) {
      if (end == text.size()) break;
      continue;
    }
    size_t colon = line.find(':', i);
    if (colon == std::string_view::npos) throw ParseError(line_no, i + 1, "expected 'gens:', 'rel:' or 'lambda:'");
    std::string_view key = line.substr(i, colon - i);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
    size_t v = skip_space(line, colon + 1);
    if (key == "gens") {
      if (have_gens) throw ParseError(line_no, i + 1, "duplicate 'gens' line");
      have_gens = true;
      size_t k = v;
      while (k < line.size()) {
        k = skip_space(line, k);
        if (k >= line.size()) break;
        char c = line[k];
        if (!(c >= 'a' && c <= 'z')) throw ParseError(line_no, k + 1, std::string("generator name must be a lowercase letter, got '") + c + "'");
        if (std::find(gens.begin(), gens.end(), c) != gens.end()) throw ParseError(line_no, k + 1, std::string("duplicate generator '") + c + "'");
        gens.push_back(c);
        k = skip_space(line, k + 1);
        if (k < line.size()) {
          if (line[k] != ',') throw ParseError(line_no, k + 1, "expected ','");
          ++k;
          if (skip_space(line, k) >= line.size()) throw ParseError(line_no, k + 1, "trailing ','");
        }
      }
    } else if (key == "rel") {
      if (!have_gens) throw ParseError(line_no, i + 1, "'rel' before 'gens'");
      std::string w;
      for (size_t k = v; k < line.size(); ++k) {
        char c = line[k];
        char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (c == ' ' || c == '\t') throw ParseError(line_no, k + 1, "whitespace inside relator");
        if (std::find(gens.begin(), gens.end(), lower) == gens.end() || !std::isalpha(static_cast<unsigned char>(c))) {
          throw ParseError(line_no, k + 1, std::string("unknown generator '") + c + "'");
        }
        if (!w.empty() && w.back() != c &&
            std::tolower(static_cast<unsigned char>(w.back())) == lower) {
          throw RelatorNotReduced("line " + std::to_string(line_no) + ", column " + std::to_string(k + 1) +
                                  ": relator is not freely reduced");
        }
        w.push_back(c);
      }
      if (w.empty()) throw ParseError(line_no, v + 1, "empty relator");
      rel_text.push_back(w);
      rel_pos.emplace_back(line_no, v + 1);
    } else if (key == "lambda") {
      try {
        lambda = Rational::parse(line.substr(v));
      } catch (const Error& e) {
        throw ParseError(line_no, v + 1, e.what());
      }
      if (lambda.num == 0) throw ParseError(line_no, v + 1, "lambda must be positive");
    } else {
      throw ParseError(line_no, i + 1, "unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_gens) throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'gens' line");
  return Presentation::from_strings(gens, rel_text, lambda);
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string serialize(const Presentation& p) {
  std::string out = "gens: ";
  for (size_t k = 0; k < p.alphabet().size(); ++k) {
    if (k) out += ", ";
    out.push_back(p.alphabet()[k]);
  }
  out.push_back('\n');
  if (!(p.lambda_target() == Rational{1, 24})) out += "lambda: " + p.lambda_target().str() + "\n";
  for (const Word& r : p.relators()) out += "rel: " + p.str(r) + "\n";
  return out;
}

SymmetrizedClosure::SymmetrizedClosure(const Presentation& p) {
  std::unordered_map<std::string, size_t> seen;
  auto key_of = [](const Word& w, size_t lr) {
    std::string k(w.size(), '\0');
    for (size_t t = 0; t < w.size(); ++t) k[t] = static_cast<char>(w[(lr + t) % w.size()].code() + 1);
    return k;
  };
  auto add = [&](const Word& w, size_t relator, bool inverted) -> std::pair<size_t, size_t> {
    size_t lr = least_rotation(w);
    std::string k = key_of(w, lr);
    auto it = seen.find(k);
    if (it != seen.end()) {
      const ClosureCycle& c = cycles_[it->second];
      size_t lc = least_rotation(c.word);
      size_t n = w.size();
      return {it->second, (lc + n - lr) % n};
    }
    ClosureCycle c;
    c.word = w;
    c.period = cyclic_period(w);
    c.origin = MemberOrigin{relator, 0, inverted};
    size_t id = cycles_.size();
    base_.push_back(member_count_);
    member_count_ += c.period;
    cycles_.push_back(std::move(c));
    seen.emplace(std::move(k), id);
    return {id, 0};
  };
  for (size_t i = 0; i < p.size(); ++i) {
    const Word& r = p.relator(i);
    if (!is_cyclically_reduced(r)) {
      throw RelatorNotCyclicallyReduced("relator " + std::to_string(i + 1) + " is not cyclically reduced");
    }
    forward_.push_back(add(r, i, false));
    inverse_.push_back(add(invert(r), i, true));
  }
}

size_t SymmetrizedClosure::cycle_of_member(size_t m) const {
  if (m >= member_count_) throw Error("member index out of range");
  auto it = std::upper_bound(base_.begin(), base_.end(), m);
  return static_cast<size_t>(it - base_.begin()) - 1;
}

Word SymmetrizedClosure::member(size_t m) const {
  size_t c = cycle_of_member(m);
  return rotate(cycles_[c].word, m - base_[c]);
}

MemberOrigin SymmetrizedClosure::origin(size_t m) const {
  size_t c = cycle_of_member(m);
  MemberOrigin o = cycles_[c].origin;
  o.offset = m - base_[c];
  return o;
}

std::vector<Word> SymmetrizedClosure::members(size_t cap) const {
  if (member_count_ > cap) throw Error("closure too large to materialize");
  std::vector<Word> out;
  out.reserve(member_count_);
  for (size_t m = 0; m < member_count_; ++m) out.push_back(member(m));
  return out;
}

SymmetrizedClosure symmetrize(const Presentation& p) { return SymmetrizedClosure(p); }

}  // namespace scc
