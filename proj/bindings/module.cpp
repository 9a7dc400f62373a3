// Python bindings for the lexcontrast core. Parse results that the C++ API
// reports as diagnostics raise ValueError here; report structures can also
// be taken as JSON strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <stdexcept>

#include "lexcontrast/contrast.hpp"
#include "lexcontrast/corpus.hpp"
#include "lexcontrast/freq_index.hpp"
#include "lexcontrast/kwic.hpp"
#include "lexcontrast/report.hpp"
#include "lexcontrast/sketch_grammar.hpp"

namespace py = pybind11;
using namespace lexcontrast;

namespace {

template <typename Result>
auto unwrap(Result result, const std::string& what) {
    if (!result.ok())
        throw std::invalid_argument(what + ":\n" + format_diagnostics(result.diagnostics, what));
    return result;
}

Corpus py_parse_vertical(const std::string& text, std::string name) {
    return std::move(
        unwrap(parse_vertical_text(text, std::move(name)), "corpus text").corpus);
}

Corpus py_parse_vertical_file(const std::string& path, std::string name) {
    return std::move(unwrap(parse_vertical_file(path, std::move(name)), path).corpus);
}

SketchGrammar py_parse_grammar(const std::string& text) {
    return std::move(*unwrap(parse_grammar(text, "<python>"), "grammar").grammar);
}

SketchGrammar py_parse_grammar_file(const std::string& path) {
    return std::move(*unwrap(parse_grammar_file(path), path).grammar);
}

EventMarkerLexicon py_parse_lexicon(const std::string& text) {
    return std::move(*unwrap(parse_marker_lexicon(text), "marker lexicon").lexicon);
}

EventMarkerLexicon py_parse_lexicon_file(const std::string& path) {
    return std::move(*unwrap(parse_marker_lexicon_file(path), path).lexicon);
}

FieldMap py_parse_field_map_file(const std::string& path) {
    return std::move(*unwrap(parse_field_map_file(path), path).field_map);
}

EventCategory category_from_name(const std::string& name) {
    auto category = event_category_from(name);
    if (!category) throw std::invalid_argument("unknown event category: " + name);
    return *category;
}

py::dict levels_dict(const EventProfile& profile) {
    py::dict out;
    for (const auto& [category, level] : profile.levels)
        out[to_string(category)] = to_string(level);
    return out;
}

py::dict evidence_dict(const EventProfile& profile) {
    py::dict out;
    for (const auto& [category, ev] : profile.evidence) {
        py::list markers;
        for (const MarkerEvidence& m : ev.per_marker)
            markers.append(py::make_tuple(m.marker, m.f, m.nf));
        py::dict entry;
        entry["total_f"] = ev.total_f;
        entry["total_nf"] = ev.total_nf;
        entry["markers"] = markers;
        out[to_string(category)] = entry;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "corpus-contrast toolkit: keyness, collocation statistics, word "
              "sketches, pattern contrast, event profiles, KWIC";
    m.attr("__version__") = "0.1.0";

    py::class_<Token>(m, "Token")
        .def(py::init([](std::string surface, std::string pos) {
                 return Token{std::move(surface), std::move(pos), ""};
             }),
             py::arg("surface"), py::arg("pos"))
        .def_readonly("surface", &Token::surface)
        .def_readonly("pos", &Token::pos)
        .def("__repr__", [](const Token& t) { return t.surface + "/" + t.pos; });

    py::class_<TokenRef>(m, "TokenRef")
        .def_readonly("document", &TokenRef::document)
        .def_readonly("sentence", &TokenRef::sentence)
        .def_readonly("offset", &TokenRef::offset)
        .def("__repr__", [](const TokenRef& r) {
            std::ostringstream out;
            out << r.document << ':' << r.sentence << ':' << r.offset;
            return out.str();
        });

    py::class_<Corpus>(m, "Corpus")
        .def_readonly("name", &Corpus::name)
        .def_readonly("token_count", &Corpus::token_count)
        .def_readonly("metadata_only", &Corpus::metadata_only)
        .def_static("metadata_only_corpus", &Corpus::make_metadata_only,
                    py::arg("name"), py::arg("token_count"));

    py::class_<CorpusSummary>(m, "CorpusSummary")
        .def_readonly("tokens", &CorpusSummary::tokens)
        .def_readonly("sentences", &CorpusSummary::sentences)
        .def_readonly("documents", &CorpusSummary::documents)
        .def_readonly("distinct_surfaces", &CorpusSummary::distinct_surfaces)
        .def_readonly("tag_inventory", &CorpusSummary::tag_inventory);

    m.def("parse_vertical", &py_parse_vertical, py::arg("text"), py::arg("name") = "corpus");
    m.def("parse_vertical_file", &py_parse_vertical_file, py::arg("path"),
          py::arg("name") = "");
    m.def("to_vertical", &to_vertical, py::arg("corpus"));
    m.def("corpus_summary", &corpus_summary, py::arg("corpus"));
    m.def("corpus_digest", &corpus_digest, py::arg("corpus"));

    py::class_<FrequencyIndex>(m, "FrequencyIndex")
        .def_readonly("corpus_name", &FrequencyIndex::corpus_name)
        .def_readonly("total_tokens", &FrequencyIndex::total_tokens)
        .def_readonly("word_counts", &FrequencyIndex::word_counts);

    m.def("build_index", &build_index, py::arg("corpus"), py::arg("workers") = 1);
    m.def("index_from_counts", &index_from_counts, py::arg("corpus_name"),
          py::arg("total_tokens"), py::arg("word_counts"),
          py::arg("tagged_counts") =
              std::map<std::pair<std::string, std::string>, std::uint64_t>{});
    m.def("word_freq", &word_freq, py::arg("index"), py::arg("word"));
    m.def("tagged_freq", &tagged_freq, py::arg("index"), py::arg("word"), py::arg("pos"));
    m.def(
        "positions",
        [](const FrequencyIndex& index, const std::string& word) {
            return positions(index, word);
        },
        py::arg("index"), py::arg("word"));
    m.def(
        "window_collocates",
        [](const FrequencyIndex& index, const Corpus& corpus, const std::string& node,
           std::uint32_t left, std::uint32_t right, const std::string& pos_filter) {
            std::optional<TagPattern> filter;
            if (!pos_filter.empty()) {
                filter = TagPattern::parse(pos_filter);
                if (!filter) throw std::invalid_argument("bad tag pattern: " + pos_filter);
            }
            return window_collocates(index, corpus, node, left, right, filter);
        },
        py::arg("index"), py::arg("corpus"), py::arg("node"), py::arg("left"),
        py::arg("right"), py::arg("pos_filter") = "");

    py::class_<KeynessScore>(m, "KeynessScore")
        .def_readonly("a", &KeynessScore::a)
        .def_readonly("b", &KeynessScore::b)
        .def_readonly("n1", &KeynessScore::n1)
        .def_readonly("n2", &KeynessScore::n2)
        .def_readonly("e1", &KeynessScore::e1)
        .def_readonly("e2", &KeynessScore::e2)
        .def_readonly("ll", &KeynessScore::ll)
        .def_property_readonly(
            "direction", [](const KeynessScore& k) { return to_string(k.direction); })
        .def_property_readonly("significance", [](const KeynessScore& k) {
            return to_string(k.significance);
        });

    m.def("expected_frequencies", &expected_frequencies, py::arg("a"), py::arg("b"),
          py::arg("n1"), py::arg("n2"));
    m.def("log_likelihood", &log_likelihood, py::arg("a"), py::arg("b"), py::arg("n1"),
          py::arg("n2"));
    m.def(
        "significance_level",
        [](double ll) { return to_string(significance_level(ll)); }, py::arg("ll"));
    m.def("normalized_frequency", &normalized_frequency, py::arg("f"),
          py::arg("node_total"));
    m.def("mutual_information", &mutual_information, py::arg("f_xy"), py::arg("f_x"),
          py::arg("f_y"), py::arg("n"));
    m.def("t_score", &t_score, py::arg("f_xy"), py::arg("f_x"), py::arg("f_y"),
          py::arg("n"));
    m.def("format_fixed", &format_fixed, py::arg("value"), py::arg("decimals") = 2);

    py::class_<SketchGrammar>(m, "SketchGrammar")
        .def_readonly("source_name", &SketchGrammar::source_name)
        .def_property_readonly("rule_names", [](const SketchGrammar& g) {
            std::vector<std::string> names;
            for (const RelationRule& rule : g.rules) names.push_back(rule.name);
            return names;
        });

    m.def("parse_grammar", &py_parse_grammar, py::arg("text"));
    m.def("parse_grammar_file", &py_parse_grammar_file, py::arg("path"));
    m.def("render_grammar", &render_grammar, py::arg("grammar"));
    m.def("builtin_grammar", &builtin_grammar, py::return_value_policy::reference);

    py::class_<CollocationRecord>(m, "CollocationRecord")
        .def_readonly("node", &CollocationRecord::node)
        .def_readonly("collocate", &CollocationRecord::collocate)
        .def_readonly("relation", &CollocationRecord::relation)
        .def_readonly("f", &CollocationRecord::f)
        .def_readonly("node_total", &CollocationRecord::node_total)
        .def_readonly("nf", &CollocationRecord::nf)
        .def_readonly("mi", &CollocationRecord::mi)
        .def_readonly("t", &CollocationRecord::t);

    py::class_<WordSketch>(m, "WordSketch")
        .def_readonly("node", &WordSketch::node)
        .def_readonly("corpus_name", &WordSketch::corpus_name)
        .def_readonly("node_total", &WordSketch::node_total)
        .def_readonly("relations", &WordSketch::relations);

    m.def("word_sketch", &word_sketch, py::arg("index"), py::arg("corpus"), py::arg("node"),
          py::arg("grammar"));
    m.def(
        "sketch_json",
        [](const WordSketch& sketch) { return sketch_to_json(sketch).dump(2); },
        py::arg("sketch"));

    py::class_<KeynessResult>(m, "KeynessResult")
        .def_readonly("word", &KeynessResult::word)
        .def_readonly("score", &KeynessResult::score)
        .def_readonly("corpus_a_name", &KeynessResult::corpus_a_name)
        .def_readonly("corpus_b_name", &KeynessResult::corpus_b_name);

    m.def("keyness_table", &keyness_table, py::arg("index_a"), py::arg("index_b"),
          py::arg("words"));

    py::class_<ContrastRow>(m, "ContrastRow")
        .def_readonly("collocate", &ContrastRow::collocate)
        .def_readonly("f_a", &ContrastRow::f_a)
        .def_readonly("f_b", &ContrastRow::f_b)
        .def_readonly("nf_a", &ContrastRow::nf_a)
        .def_readonly("mi_a", &ContrastRow::mi_a)
        .def_readonly("nf_b", &ContrastRow::nf_b)
        .def_readonly("mi_b", &ContrastRow::mi_b);

    py::class_<OnlyRow>(m, "OnlyRow")
        .def_readonly("collocate", &OnlyRow::collocate)
        .def_readonly("f", &OnlyRow::f)
        .def_readonly("nf", &OnlyRow::nf)
        .def_readonly("mi", &OnlyRow::mi);

    py::class_<ContrastTable>(m, "ContrastTable")
        .def_readonly("node_a", &ContrastTable::node_a)
        .def_readonly("node_b", &ContrastTable::node_b)
        .def_readonly("relation", &ContrastTable::relation)
        .def_readonly("common", &ContrastTable::common)
        .def_readonly("only_a", &ContrastTable::only_a)
        .def_readonly("only_b", &ContrastTable::only_b);

    m.def("common_patterns", &common_patterns, py::arg("sketch_a"), py::arg("sketch_b"),
          py::arg("relation"));
    m.def("only_patterns", &only_patterns, py::arg("sketch_a"), py::arg("sketch_b"),
          py::arg("relation"), py::arg("exclusivity_max") = 0);
    m.def("contrast_table", &contrast_table, py::arg("sketch_a"), py::arg("sketch_b"),
          py::arg("relation"), py::arg("exclusivity_max") = 0);

    py::class_<EventMarkerLexicon>(m, "EventMarkerLexicon")
        .def_property_readonly("size", [](const EventMarkerLexicon& lexicon) {
            return lexicon.entries.size();
        });

    m.def("parse_marker_lexicon", &py_parse_lexicon, py::arg("text"));
    m.def("parse_marker_lexicon_file", &py_parse_lexicon_file, py::arg("path"));
    m.def("builtin_lexicon", &builtin_lexicon, py::return_value_policy::reference);

    py::class_<EventProfile>(m, "EventProfile")
        .def_readonly("node", &EventProfile::node)
        .def_readonly("corpus_name", &EventProfile::corpus_name)
        .def_readonly("node_total", &EventProfile::node_total)
        .def_readonly("disposal", &EventProfile::disposal)
        .def_readonly("signature", &EventProfile::signature)
        .def_property_readonly("levels", &levels_dict)
        .def_property_readonly("evidence", &evidence_dict);

    m.def(
        "event_profile",
        [](const FrequencyIndex& index, const Corpus& corpus, const std::string& node,
           const EventMarkerLexicon& lexicon, double strong, double weak) {
            return event_profile(index, corpus, node, lexicon, {strong, weak});
        },
        py::arg("index"), py::arg("corpus"), py::arg("node"), py::arg("lexicon"),
        py::arg("strong") = 10.0, py::arg("weak") = 0.5);
    m.def(
        "profile_from_evidence",
        [](std::string node, std::string corpus_name, std::uint64_t node_total,
           const std::vector<std::tuple<std::string, std::string, std::uint64_t>>& counts,
           double strong, double weak) {
            std::vector<MarkerCount> converted;
            for (const auto& [marker, category, f] : counts)
                converted.push_back({marker, category_from_name(category), f});
            return profile_from_evidence(std::move(node), std::move(corpus_name), node_total,
                                         converted, {strong, weak});
        },
        py::arg("node"), py::arg("corpus_name"), py::arg("node_total"), py::arg("counts"),
        py::arg("strong") = 10.0, py::arg("weak") = 0.5);
    m.def(
        "profile_json",
        [](const EventProfile& profile) { return profile_to_json(profile).dump(2); },
        py::arg("profile"));

    py::class_<KWICLine>(m, "KWICLine")
        .def_readonly("left", &KWICLine::left)
        .def_readonly("node", &KWICLine::node)
        .def_readonly("right", &KWICLine::right)
        .def_readonly("location", &KWICLine::location);

    m.def(
        "concordance",
        [](const FrequencyIndex& index, const Corpus& corpus, const std::string& node,
           std::uint32_t width, std::uint64_t max_lines, const std::string& pos_filter,
           bool cross_sentence) {
            ConcordanceOptions opts;
            opts.width = width;
            opts.max_lines = max_lines;
            if (!pos_filter.empty()) opts.pos_filter = pos_filter;
            opts.cross_sentence = cross_sentence;
            return concordance(index, corpus, node, opts);
        },
        py::arg("index"), py::arg("corpus"), py::arg("node"), py::arg("width") = 8,
        py::arg("max_lines") = 25, py::arg("pos_filter") = "",
        py::arg("cross_sentence") = false);
    m.def("render_kwic", &render_kwic, py::arg("lines"), py::arg("gutter") = 32,
          py::arg("show_pos") = false);
    m.def("render_kwic_tsv", &render_kwic_tsv, py::arg("lines"), py::arg("show_pos") = false);

    py::class_<CrossCorpusReport>(m, "CrossCorpusReport")
        .def_readonly("corpus_a_name", &CrossCorpusReport::corpus_a_name)
        .def_readonly("corpus_b_name", &CrossCorpusReport::corpus_b_name)
        .def_readonly("node_a", &CrossCorpusReport::node_a)
        .def_readonly("node_b", &CrossCorpusReport::node_b)
        .def_readonly("keyness", &CrossCorpusReport::keyness)
        .def_readonly("profiles", &CrossCorpusReport::profiles);

    m.def("parse_field_map_file", &py_parse_field_map_file, py::arg("path"));
    m.def(
        "cross_corpus_report",
        [](const Corpus& corpus_a, const FrequencyIndex& index_a, const Corpus& corpus_b,
           const FrequencyIndex& index_b, const std::string& node_a, const std::string& node_b,
           const SketchGrammar& grammar, const EventMarkerLexicon& lexicon,
           std::uint64_t exclusivity_max, double strong, double weak,
           const std::optional<FieldMap>& field_map) {
            ReportOptions options;
            options.exclusivity_max = exclusivity_max;
            options.thresholds = {strong, weak};
            options.field_map = field_map;
            return cross_corpus_report(corpus_a, index_a, corpus_b, index_b, node_a, node_b,
                                       grammar, lexicon, options);
        },
        py::arg("corpus_a"), py::arg("index_a"), py::arg("corpus_b"), py::arg("index_b"),
        py::arg("node_a"), py::arg("node_b"), py::arg("grammar"), py::arg("lexicon"),
        py::arg("exclusivity_max") = 0, py::arg("strong") = 10.0, py::arg("weak") = 0.5,
        py::arg("field_map") = std::nullopt);
    m.def("render_report_text", &render_report_text, py::arg("report"));
    m.def(
        "report_json",
        [](const CrossCorpusReport& report) { return report_to_json(report).dump(2); },
        py::arg("report"));
}
