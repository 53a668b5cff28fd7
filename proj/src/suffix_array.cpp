#include "scc/suffix_array.hpp"

#include <stdexcept>

namespace scc {

namespace {

template <class T>
void buckets(const T* s, int64_t n, int32_t k, std::vector<int64_t>& bkt, bool end) {
  std::fill(bkt.begin(), bkt.end(), 0);
  for (int64_t i = 0; i < n; ++i) ++bkt[static_cast<size_t>(s[i])];
  int64_t sum = 0;
  for (int32_t c = 0; c < k; ++c) {
    sum += bkt[c];
    bkt[c] = end ? sum : sum - bkt[c];
  }
}

template <class T>
void induce_l(const T* s, int32_t* sa, int64_t n, int32_t k, const std::vector<bool>& stype,
              std::vector<int64_t>& bkt) {
  buckets(s, n, k, bkt, false);
  for (int64_t i = 0; i < n; ++i) {
    int64_t j = static_cast<int64_t>(sa[i]) - 1;
    if (sa[i] > 0 && !stype[j]) sa[bkt[static_cast<size_t>(s[j])]++] = static_cast<int32_t>(j);
  }
}

template <class T>
void induce_s(const T* s, int32_t* sa, int64_t n, int32_t k, const std::vector<bool>& stype,
              std::vector<int64_t>& bkt) {
  buckets(s, n, k, bkt, true);
  for (int64_t i = n - 1; i >= 0; --i) {
    int64_t j = static_cast<int64_t>(sa[i]) - 1;
    if (sa[i] > 0 && stype[j]) sa[--bkt[static_cast<size_t>(s[j])]] = static_cast<int32_t>(j);
  }
}

template <class T>
void sais(const T* s, int32_t* sa, int64_t n, int32_t k) {
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  std::vector<bool> stype(n, false);
  stype[n - 1] = true;
  for (int64_t i = n - 2; i >= 0; --i) {
    stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  }
  auto lms = [&](int64_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<int64_t> bkt(static_cast<size_t>(k));
  buckets(s, n, k, bkt, true);
  std::fill(sa, sa + n, -1);
  for (int64_t i = 1; i < n; ++i) {
    if (lms(i)) sa[--bkt[static_cast<size_t>(s[i])]] = static_cast<int32_t>(i);
  }
  induce_l(s, sa, n, k, stype, bkt);
  induce_s(s, sa, n, k, stype, bkt);

  int64_t n1 = 0;
  for (int64_t i = 0; i < n; ++i) {
    if (lms(sa[i])) sa[n1++] = sa[i];
  }
  std::fill(sa + n1, sa + n, -1);
  int32_t name = 0;
  int64_t prev = -1;
  for (int64_t i = 0; i < n1; ++i) {
    int64_t pos = sa[i];
    bool diff = false;
    for (int64_t d = 0; d < n; ++d) {
      if (prev == -1 || s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
        diff = true;
        break;
      }
      if (d > 0 && (lms(pos + d) || lms(prev + d))) break;
    }
    if (diff) {
      ++name;
      prev = pos;
    }
    sa[n1 + pos / 2] = name - 1;
  }
  for (int64_t i = n - 1, j = n - 1; i >= n1; --i) {
    if (sa[i] >= 0) sa[j--] = sa[i];
  }

  int32_t* s1 = sa + n - n1;
  if (name < n1) {
    sais<int32_t>(s1, sa, n1, name);
  } else {
    for (int64_t i = 0; i < n1; ++i) sa[s1[i]] = static_cast<int32_t>(i);
  }

  buckets(s, n, k, bkt, true);
  for (int64_t i = 1, j = 0; i < n; ++i) {
    if (lms(i)) s1[j++] = static_cast<int32_t>(i);
  }
  for (int64_t i = 0; i < n1; ++i) sa[i] = s1[sa[i]];
  std::fill(sa + n1, sa + n, -1);
  for (int64_t i = n1 - 1; i >= 0; --i) {
    int32_t j = sa[i];
    sa[i] = -1;
    sa[--bkt[static_cast<size_t>(s[j])]] = j;
  }
  induce_l(s, sa, n, k, stype, bkt);
  induce_s(s, sa, n, k, stype, bkt);
}

template <class T>
std::vector<int32_t> build(const std::vector<T>& text, int32_t alphabet) {
  if (text.empty() || text.back() != 0) throw std::invalid_argument("suffix_array: text must end with 0");
  if (text.size() >= static_cast<size_t>(INT32_MAX)) throw std::length_error("suffix_array: text too long");
  std::vector<int32_t> sa(text.size());
  sais<T>(text.data(), sa.data(), static_cast<int64_t>(text.size()), alphabet);
  return sa;
}

template <class T>
std::vector<int32_t> plcp_impl(const std::vector<T>& text, const std::vector<int32_t>& sa) {
  const size_t n = sa.size();
  std::vector<int32_t> phi(n, -1);
  for (size_t i = 1; i < n; ++i) phi[sa[i]] = sa[i - 1];
  // phi is overwritten in place by plcp
  int64_t h = 0;
  for (size_t i = 0; i < n; ++i) {
    int32_t j = phi[i];
    if (j < 0) {
      phi[i] = 0;
      h = 0;
      continue;
    }
    while (i + h < n && static_cast<size_t>(j) + h < n && text[i + h] == text[j + h] && text[i + h] != 0) ++h;
    phi[i] = static_cast<int32_t>(h);
    if (h > 0) --h;
  }
  return phi;
}

}  // namespace

std::vector<int32_t> suffix_array(const std::vector<uint8_t>& text, int32_t alphabet) {
  return build(text, alphabet);
}
std::vector<int32_t> suffix_array(const std::vector<int32_t>& text, int32_t alphabet) {
  return build(text, alphabet);
}
std::vector<int32_t> permuted_lcp(const std::vector<uint8_t>& text, const std::vector<int32_t>& sa) {
  return plcp_impl(text, sa);
}
std::vector<int32_t> permuted_lcp(const std::vector<int32_t>& text, const std::vector<int32_t>& sa) {
  return plcp_impl(text, sa);
}

}  // namespace scc
