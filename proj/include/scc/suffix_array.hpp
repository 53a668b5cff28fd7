#pragma once

#include <cstdint>
#include <vector>

namespace scc {

// Suffix array by induced sorting. The last symbol of text must be 0 and occur
// nowhere else; all symbols must be < alphabet.
std::vector<int32_t> suffix_array(const std::vector<uint8_t>& text, int32_t alphabet);
std::vector<int32_t> suffix_array(const std::vector<int32_t>& text, int32_t alphabet);

// Permuted LCP: plcp[i] = lcp(suffix i, suffix preceding it in sa order), 0 for the first.
// Overwrites nothing; returns a fresh array of text size.
std::vector<int32_t> permuted_lcp(const std::vector<uint8_t>& text, const std::vector<int32_t>& sa);
std::vector<int32_t> permuted_lcp(const std::vector<int32_t>& text, const std::vector<int32_t>& sa);

}  // namespace scc
