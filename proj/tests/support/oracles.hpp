// Independent brute-force oracles for windowed collocation and sketch
// matching, plus deterministic random-corpus generation. The enumeration
// and selection machinery here is written from scratch against the
// contract, on purpose, so it can catch bugs in the production path.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lexcontrast/corpus.hpp"
#include "lexcontrast/sketch_grammar.hpp"
#include "lexcontrast/tag_pattern.hpp"

namespace lexcontrast::testsupport {

// Naive quadratic scan over every sentence.
std::map<std::string, std::uint64_t> brute_window_collocates(
    const Corpus& corpus, const std::string& node, std::uint32_t left,
    std::uint32_t right, const std::optional<TagPattern>& pos_filter = std::nullopt);

// Full enumeration of every count vector for every (rule, node occurrence),
// selecting by (prefix length desc, suffix length desc, counts lex desc).
std::vector<PatternMatch> brute_match_relations(const SketchGrammar& grammar,
                                                const Sentence& sentence,
                                                std::uint32_t document,
                                                std::uint32_t sentence_index,
                                                const std::vector<std::uint32_t>& node_offsets);

// relation -> collocate -> f over the whole corpus.
std::map<std::string, std::map<std::string, std::uint64_t>> brute_sketch_counts(
    const Corpus& corpus, const std::string& node, const SketchGrammar& grammar);

// All matches over the whole corpus (for match-set comparison).
std::vector<PatternMatch> brute_corpus_matches(const Corpus& corpus,
                                               const std::string& node,
                                               const SketchGrammar& grammar);

Corpus random_corpus(std::mt19937& rng, std::size_t max_tokens);

// A grammar that stresses quantifiers, alternations and capture placement.
const SketchGrammar& stress_grammar();

}  // namespace lexcontrast::testsupport
