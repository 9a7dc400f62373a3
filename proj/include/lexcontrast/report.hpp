// Cross-corpus comparison report: keyness for both node words, per-corpus
// event profiles, per-corpus common/only contrast tables, and an optional
// semantic-field aggregation of only-pattern collocates. Rendered as text
// (table layout) and as JSON with the same content.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexcontrast/contrast.hpp"
#include "lexcontrast/corpus.hpp"
#include "lexcontrast/freq_index.hpp"
#include "lexcontrast/kwic.hpp"
#include "lexcontrast/sketch_grammar.hpp"

namespace lexcontrast {

struct FieldMap {
    std::map<std::string, std::string> collocate_to_field;

    bool empty() const { return collocate_to_field.empty(); }
};

struct FieldMapParseResult {
    std::optional<FieldMap> field_map;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return field_map.has_value(); }
};

// Tab-separated `collocate<TAB>field`, `#` comments.
FieldMapParseResult parse_field_map(std::string_view text);
FieldMapParseResult parse_field_map_file(const std::string& path);

struct ReportOptions {
    std::uint64_t exclusivity_max = 0;
    ProfileThresholds thresholds;
    std::optional<FieldMap> field_map;
};

struct ReportContrastSection {
    std::string corpus_name;
    ContrastTable table;
};

struct FieldCount {
    std::string field;
    std::uint64_t collocates = 0;  // distinct only-pattern collocates
    std::uint64_t total_f = 0;
};

struct ReportFieldSection {
    std::string corpus_name;
    std::string node;
    std::vector<FieldCount> fields;
};

struct CrossCorpusReport {
    std::string corpus_a_name, corpus_b_name;
    std::uint64_t tokens_a = 0, tokens_b = 0;
    std::string node_a, node_b;
    std::uint64_t exclusivity_max = 0;
    ProfileThresholds thresholds;

    std::vector<KeynessResult> keyness;              // node_a row, node_b row
    std::vector<EventProfile> profiles;              // (A,a) (A,b) (B,a) (B,b)
    std::vector<ReportContrastSection> contrasts;    // corpus A relations, then corpus B
    std::vector<ReportFieldSection> field_sections;  // empty without a field map
};

CrossCorpusReport cross_corpus_report(const Corpus& corpus_a, const FrequencyIndex& index_a,
                                      const Corpus& corpus_b, const FrequencyIndex& index_b,
                                      const std::string& node_a, const std::string& node_b,
                                      const SketchGrammar& grammar,
                                      const EventMarkerLexicon& lexicon,
                                      const ReportOptions& options = {});

std::string render_report_text(const CrossCorpusReport& report);
nlohmann::json report_to_json(const CrossCorpusReport& report);

// shared table renderers (text format)
std::string render_keyness_text(const std::vector<KeynessResult>& rows);
std::string render_sketch_text(const WordSketch& sketch);
std::string render_contrast_text(const ContrastTable& table);
std::string render_profile_text(const EventProfile& profile);

// machine (JSON) forms
nlohmann::json keyness_to_json(const std::vector<KeynessResult>& rows);
nlohmann::json sketch_to_json(const WordSketch& sketch);
nlohmann::json contrast_to_json(const ContrastTable& table);
nlohmann::json profile_to_json(const EventProfile& profile);
nlohmann::json kwic_to_json(const std::vector<KWICLine>& lines);

}  // namespace lexcontrast
