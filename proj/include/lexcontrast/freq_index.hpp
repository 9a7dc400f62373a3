// Frequency and positional indexes over a corpus: word and (word, tag)
// counts plus postings for windowed co-occurrence, KWIC and sketch matching.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexcontrast/corpus.hpp"
#include "lexcontrast/tag_pattern.hpp"

namespace lexcontrast {

struct FrequencyIndex {
    std::string corpus_name;
    std::uint64_t total_tokens = 0;
    std::map<std::string, std::uint64_t> word_counts;
    std::map<std::pair<std::string, std::string>, std::uint64_t> tagged_counts;
    std::map<std::string, std::vector<TokenRef>> postings;

    bool operator==(const FrequencyIndex&) const = default;
};

// Deterministic for any worker count: workers own contiguous document
// ranges and partial results merge in document order.
FrequencyIndex build_index(const Corpus& corpus, unsigned workers = 1);

// Metadata-backed index over published frequency tables (no postings).
FrequencyIndex index_from_counts(
    std::string corpus_name, std::uint64_t total_tokens,
    std::map<std::string, std::uint64_t> word_counts,
    std::map<std::pair<std::string, std::string>, std::uint64_t> tagged_counts = {});

std::uint64_t word_freq(const FrequencyIndex& index, std::string_view word);
std::uint64_t tagged_freq(const FrequencyIndex& index, std::string_view word,
                          std::string_view pos);
const std::vector<TokenRef>& positions(const FrequencyIndex& index, std::string_view word);

// Joint frequencies of tokens within [left, right] of each node occurrence.
// Windows never cross sentence boundaries; a collocate token is counted once
// per (node occurrence, token position) pair. The filter, when set, tests
// the collocate tag only.
std::map<std::string, std::uint64_t> window_collocates(
    const FrequencyIndex& index, const Corpus& corpus, std::string_view node,
    std::uint32_t left, std::uint32_t right,
    const std::optional<TagPattern>& pos_filter = std::nullopt);

// Content digest of a corpus (FNV-1a 64 over the canonical vertical form);
// guards the persisted index cache.
std::string corpus_digest(const Corpus& corpus);

void save_index(const FrequencyIndex& index, const std::string& digest,
                const std::string& path);
// nullopt when the file is missing, unreadable, or carries a stale digest.
std::optional<FrequencyIndex> load_index(const std::string& path,
                                         const std::string& expected_digest);

}  // namespace lexcontrast
