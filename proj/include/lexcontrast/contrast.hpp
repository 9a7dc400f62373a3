// Two-corpus keyness tables, common/only pattern contrast between two node
// words, and event-structure profiling over a marker lexicon.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexcontrast/assoc_stats.hpp"
#include "lexcontrast/corpus.hpp"
#include "lexcontrast/freq_index.hpp"
#include "lexcontrast/sketch_grammar.hpp"

namespace lexcontrast {

struct KeynessResult {
    std::string word;
    KeynessScore score;
    std::string corpus_a_name;
    std::string corpus_b_name;
};

// One row per word, in input order; words absent from both corpora yield
// a balanced zero row. Throws std::domain_error when an index is empty.
std::vector<KeynessResult> keyness_table(const FrequencyIndex& index_a,
                                         const FrequencyIndex& index_b,
                                         const std::vector<std::string>& words);

struct ContrastRow {
    std::string collocate;
    std::uint64_t f_a = 0, f_b = 0;
    double nf_a = 0.0, mi_a = 0.0;
    double nf_b = 0.0, mi_b = 0.0;

    bool operator==(const ContrastRow&) const = default;
};

struct OnlyRow {
    std::string collocate;
    std::uint64_t f = 0;
    double nf = 0.0, mi = 0.0;

    bool operator==(const OnlyRow&) const = default;
};

struct ContrastTable {
    std::string node_a, node_b;
    std::string relation;
    std::vector<ContrastRow> common;   // desc min(nf_a, nf_b), ties byte order
    std::vector<OnlyRow> only_a;       // desc nf, ties byte order
    std::vector<OnlyRow> only_b;
};

// Collocates of `relation` carried by both sketches (f > 0 on each side).
std::vector<ContrastRow> common_patterns(const WordSketch& sketch_a,
                                         const WordSketch& sketch_b,
                                         const std::string& relation);

// A collocate lands in only_a iff f_a > 0 and f_b <= exclusivity_max.
std::pair<std::vector<OnlyRow>, std::vector<OnlyRow>> only_patterns(
    const WordSketch& sketch_a, const WordSketch& sketch_b,
    const std::string& relation, std::uint64_t exclusivity_max = 0);

// Full partition: common, only_a and only_b are pairwise disjoint and cover
// every collocate of the relation. Collocates that would qualify for both
// only-sets under a nonzero threshold stay in common.
ContrastTable contrast_table(const WordSketch& sketch_a, const WordSketch& sketch_b,
                             const std::string& relation,
                             std::uint64_t exclusivity_max = 0);

// -- event-structure profiling --------------------------------------------

enum class EventCategory {
    boundary_start,
    endpoint_ref,
    process,
    state,
    stage,
    punctuality,
    disposal,
};

enum class MarkerSide { pre, post, either };
enum class EvidenceLevel { absent, weak, strong };

const char* to_string(EventCategory c);
const char* to_string(MarkerSide s);
const char* to_string(EvidenceLevel l);
std::optional<EventCategory> event_category_from(std::string_view name);
std::optional<MarkerSide> marker_side_from(std::string_view name);

struct MarkerEntry {
    std::string marker;
    EventCategory category = EventCategory::process;
    MarkerSide side = MarkerSide::either;
    std::uint32_t max_distance = 2;

    bool operator==(const MarkerEntry&) const = default;
};

struct EventMarkerLexicon {
    std::vector<MarkerEntry> entries;

    bool operator==(const EventMarkerLexicon&) const = default;
};

struct LexiconParseResult {
    std::optional<EventMarkerLexicon> lexicon;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return lexicon.has_value(); }
};

// Tab-separated `marker<TAB>category<TAB>side<TAB>max_distance`, `#` comments.
LexiconParseResult parse_marker_lexicon(std::string_view text);
LexiconParseResult parse_marker_lexicon_file(const std::string& path);

// Exactly the markers adduced for the boundary/process/endpoint/disposal
// evidence (same content as the bundled lexicon file).
const EventMarkerLexicon& builtin_lexicon();
extern const char* const kBuiltinLexiconText;

struct MarkerEvidence {
    std::string marker;
    std::uint64_t f = 0;
    double nf = 0.0;
};

struct CategoryEvidence {
    std::uint64_t total_f = 0;
    double total_nf = 0.0;
    std::vector<MarkerEvidence> per_marker;
};

struct ProfileThresholds {
    double strong = 10.0;  // NF at or above: strong evidence
    double weak = 0.5;     // NF at or above (below strong): weak evidence
};

struct EventProfile {
    std::string node;
    std::string corpus_name;
    std::uint64_t node_total = 0;
    std::map<EventCategory, CategoryEvidence> evidence;  // all categories present
    std::map<EventCategory, EvidenceLevel> levels;
    bool disposal = false;
    std::string signature;  // e.g. "• ////", "(•) ////", "undetermined"
};

// A marker contributes one count per node occurrence it accompanies on the
// permitted side within max_distance, inside the same sentence.
EventProfile event_profile(const FrequencyIndex& index, const Corpus& corpus,
                           std::string_view node, const EventMarkerLexicon& lexicon,
                           ProfileThresholds thresholds = {});

struct MarkerCount {
    std::string marker;
    EventCategory category = EventCategory::process;
    std::uint64_t f = 0;
};

// Classification from precomputed marker counts (e.g. published tables).
EventProfile profile_from_evidence(std::string node, std::string corpus_name,
                                   std::uint64_t node_total,
                                   const std::vector<MarkerCount>& counts,
                                   ProfileThresholds thresholds = {});

std::string render_signature(const std::map<EventCategory, EvidenceLevel>& levels);

}  // namespace lexcontrast
