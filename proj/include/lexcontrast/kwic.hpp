// Keyword-in-context concordancing with optional PoS filtering.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexcontrast/corpus.hpp"
#include "lexcontrast/freq_index.hpp"

namespace lexcontrast {

struct KWICLine {
    std::vector<Token> left;
    Token node;
    std::vector<Token> right;
    TokenRef location;

    bool operator==(const KWICLine&) const = default;
};

struct ConcordanceOptions {
    std::uint32_t width = 8;       // tokens per side
    std::uint64_t max_lines = 25;
    std::optional<std::string> pos_filter;  // exact tag of the node occurrence
    bool cross_sentence = false;   // borrow context from adjacent sentences
};

// Lines come in corpus order; context is sentence-bounded unless
// cross_sentence is set, in which case up to `width` tokens are borrowed
// from adjacent sentences of the same document.
std::vector<KWICLine> concordance(const FrequencyIndex& index, const Corpus& corpus,
                                  std::string_view node, const ConcordanceOptions& opts = {});

// One text line per KWICLine with the node column aligned at `gutter`
// (counted in Unicode code points; wide glyphs are approximated). With
// show_pos the node renders as `surface/pos`, mirroring a filtered view.
std::string render_kwic(const std::vector<KWICLine>& lines, unsigned gutter = 32,
                        bool show_pos = false);

// `left<TAB>node<TAB>right<TAB>doc:sent:off` for downstream tools.
std::string render_kwic_tsv(const std::vector<KWICLine>& lines, bool show_pos = false);

}  // namespace lexcontrast
