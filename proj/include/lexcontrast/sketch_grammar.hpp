// Declarative sketch grammar over PoS-tagged sentences.
//
// Grammar files are line-oriented UTF-8:
//
//     relation <Name> := <atom>+
//
// where an atom is `NODE` (the node word, exactly once per rule), `_`
// (any token), a tag literal (`Na`), a trailing-star prefix matcher (`N*`),
// or an alternation of those (`(D|SHI)`); an atom may carry a `{m,n}`
// quantifier (0 <= m <= n <= 5) and a `@` prefix marking the captured
// collocate. When no atom is marked, the leftmost unquantified non-NODE
// atom captures. `#` starts a comment. Matchers test the token tag first
// and fall back to the surface form, so construction markers such as
// `把*` can be anchored directly.
//
// Matching is anchored and contiguous around NODE; each (rule, node
// occurrence) yields at most one match: the leftmost-starting, then
// longest, with greedy quantifiers.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexcontrast/assoc_stats.hpp"
#include "lexcontrast/corpus.hpp"
#include "lexcontrast/freq_index.hpp"
#include "lexcontrast/tag_pattern.hpp"

namespace lexcontrast {

struct PatternAtom {
    bool is_node = false;
    TagPattern matcher;        // meaningful when !is_node
    bool quantified = false;
    std::uint32_t min = 1, max = 1;
    bool capture = false;

    bool operator==(const PatternAtom&) const = default;
};

struct RelationRule {
    std::string name;
    std::vector<PatternAtom> atoms;
    std::size_t node_index = 0;
    std::size_t capture_index = 0;

    bool operator==(const RelationRule&) const = default;
};

struct SketchGrammar {
    std::string source_name;
    std::vector<RelationRule> rules;

    bool same_rules(const SketchGrammar& other) const { return rules == other.rules; }
};

struct GrammarParseResult {
    std::optional<SketchGrammar> grammar;  // set only when diagnostics is empty
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return grammar.has_value(); }
};

GrammarParseResult parse_grammar(std::string_view text, std::string source_name);
GrammarParseResult parse_grammar_file(const std::string& path);

// Canonical text: single spaces, explicit `@`, no redundant parentheses.
std::string render_rule(const RelationRule& rule);
std::string render_grammar(const SketchGrammar& grammar);

// Subject / Object / Modifier / BaObject stand-in rules for Sinica-style
// prefix tagsets (same content as the bundled grammar file).
const SketchGrammar& builtin_grammar();
extern const char* const kBuiltinGrammarText;

struct PatternMatch {
    std::string relation;
    TokenRef node_position;
    TokenRef collocate_position;
    std::string collocate_surface;

    bool operator==(const PatternMatch&) const = default;
};

// `node_offsets` must be offsets of node-word tokens in `sentence`;
// `document`/`sentence_index` locate the sentence for the emitted positions.
std::vector<PatternMatch> match_relations(const SketchGrammar& grammar,
                                          const Sentence& sentence,
                                          std::uint32_t document,
                                          std::uint32_t sentence_index,
                                          const std::vector<std::uint32_t>& node_offsets);

struct WordSketch {
    std::string node;
    std::string corpus_name;
    std::uint64_t node_total = 0;
    // Per relation, records sorted by descending f, then descending mi,
    // then collocate byte order.
    std::map<std::string, std::vector<CollocationRecord>> relations;
};

// MI and T use whole-corpus marginals.
WordSketch word_sketch(const FrequencyIndex& index, const Corpus& corpus,
                       std::string_view node, const SketchGrammar& grammar);

}  // namespace lexcontrast
