#include "lexcontrast/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace lexcontrast {

namespace {

std::string pad(const std::string& s, std::size_t width) {
    std::string out = s;
    while (out.size() < width) out += ' ';
    return out;
}

std::string num(std::uint64_t v, std::size_t width) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%*llu", static_cast<int>(width),
                  static_cast<unsigned long long>(v));
    return buf;
}

std::string fixed(double v, std::size_t width) {
    std::string s = format_fixed(v, 2);
    while (s.size() < width) s.insert(s.begin(), ' ');
    return s;
}

}  // namespace

FieldMapParseResult parse_field_map(std::string_view text) {
    FieldMap map;
    std::vector<Diagnostic> diags;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (std::all_of(line.begin(), line.end(),
                        [](unsigned char c) { return std::isspace(c); }))
            continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size()) {
            diags.push_back({lineno, 0, "expected 'collocate<TAB>field'"});
            continue;
        }
        map.collocate_to_field[line.substr(0, tab)] = line.substr(tab + 1);
    }
    FieldMapParseResult result;
    result.diagnostics = std::move(diags);
    if (result.diagnostics.empty()) result.field_map = std::move(map);
    return result;
}

FieldMapParseResult parse_field_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read field map: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_field_map(buf.str());
}

CrossCorpusReport cross_corpus_report(const Corpus& corpus_a, const FrequencyIndex& index_a,
                                      const Corpus& corpus_b, const FrequencyIndex& index_b,
                                      const std::string& node_a, const std::string& node_b,
                                      const SketchGrammar& grammar,
                                      const EventMarkerLexicon& lexicon,
                                      const ReportOptions& options) {
    CrossCorpusReport report;
    report.corpus_a_name = corpus_a.name;
    report.corpus_b_name = corpus_b.name;
    report.tokens_a = index_a.total_tokens;
    report.tokens_b = index_b.total_tokens;
    report.node_a = node_a;
    report.node_b = node_b;
    report.exclusivity_max = options.exclusivity_max;
    report.thresholds = options.thresholds;

    report.keyness = keyness_table(index_a, index_b, {node_a, node_b});

    report.profiles.push_back(
        event_profile(index_a, corpus_a, node_a, lexicon, options.thresholds));
    report.profiles.push_back(
        event_profile(index_a, corpus_a, node_b, lexicon, options.thresholds));
    report.profiles.push_back(
        event_profile(index_b, corpus_b, node_a, lexicon, options.thresholds));
    report.profiles.push_back(
        event_profile(index_b, corpus_b, node_b, lexicon, options.thresholds));

    const WordSketch a_sketch_a = word_sketch(index_a, corpus_a, node_a, grammar);
    const WordSketch a_sketch_b = word_sketch(index_a, corpus_a, node_b, grammar);
    const WordSketch b_sketch_a = word_sketch(index_b, corpus_b, node_a, grammar);
    const WordSketch b_sketch_b = word_sketch(index_b, corpus_b, node_b, grammar);
    for (const RelationRule& rule : grammar.rules)
        report.contrasts.push_back(
            {corpus_a.name,
             contrast_table(a_sketch_a, a_sketch_b, rule.name, options.exclusivity_max)});
    for (const RelationRule& rule : grammar.rules)
        report.contrasts.push_back(
            {corpus_b.name,
             contrast_table(b_sketch_a, b_sketch_b, rule.name, options.exclusivity_max)});

    if (options.field_map && !options.field_map->empty()) {
        const FieldMap& fmap = *options.field_map;
        struct Bucket {
            std::map<std::string, std::set<std::string>> collocates;  // field -> collocates
            std::map<std::string, std::uint64_t> total_f;
        };
        // (corpus, node) buckets in report order
        std::vector<std::pair<std::pair<std::string, std::string>, Bucket>> buckets;
        buckets.push_back({{report.corpus_a_name, node_a}, {}});
        buckets.push_back({{report.corpus_a_name, node_b}, {}});
        buckets.push_back({{report.corpus_b_name, node_a}, {}});
        buckets.push_back({{report.corpus_b_name, node_b}, {}});
        auto bucket_for = [&](const std::string& corpus,
                              const std::string& node) -> Bucket& {
            for (auto& [key, bucket] : buckets)
                if (key.first == corpus && key.second == node) return bucket;
            throw std::logic_error("unreachable");
        };
        auto field_of = [&](const std::string& collocate) -> std::string {
            auto it = fmap.collocate_to_field.find(collocate);
            return it == fmap.collocate_to_field.end() ? "(unmapped)" : it->second;
        };
        for (const ReportContrastSection& section : report.contrasts) {
            Bucket& ba = bucket_for(section.corpus_name, section.table.node_a);
            for (const OnlyRow& row : section.table.only_a) {
                std::string field = field_of(row.collocate);
                ba.collocates[field].insert(row.collocate);
                ba.total_f[field] += row.f;
            }
            Bucket& bb = bucket_for(section.corpus_name, section.table.node_b);
            for (const OnlyRow& row : section.table.only_b) {
                std::string field = field_of(row.collocate);
                bb.collocates[field].insert(row.collocate);
                bb.total_f[field] += row.f;
            }
        }
        for (auto& [key, bucket] : buckets) {
            ReportFieldSection section;
            section.corpus_name = key.first;
            section.node = key.second;
            for (const auto& [field, collocates] : bucket.collocates)
                section.fields.push_back(
                    {field, collocates.size(), bucket.total_f[field]});
            std::sort(section.fields.begin(), section.fields.end(),
                      [](const FieldCount& x, const FieldCount& y) {
                          if (x.total_f != y.total_f) return x.total_f > y.total_f;
                          return x.field < y.field;
                      });
            report.field_sections.push_back(std::move(section));
        }
    }
    return report;
}

std::string render_keyness_text(const std::vector<KeynessResult>& rows) {
    std::ostringstream out;
    out << pad("word", 16) << "      freq A      freq B            LL  sig dir\n";
    for (const KeynessResult& r : rows) {
        out << pad(r.word, 16) << num(r.score.a, 12) << num(r.score.b, 12) << ' '
            << fixed(r.score.ll, 13) << "  " << to_string(r.score.significance) << ' '
            << to_string(r.score.direction) << '\n';
    }
    return out.str();
}

std::string render_sketch_text(const WordSketch& sketch) {
    std::ostringstream out;
    out << "word sketch: " << sketch.node << " in " << sketch.corpus_name
        << " (node total " << sketch.node_total << ")\n";
    for (const auto& [relation, records] : sketch.relations) {
        out << "relation " << relation << " (" << records.size() << " collocates)\n";
        if (records.empty()) continue;
        out << "  " << pad("collocate", 16) << "       F        NF        MI         T\n";
        for (const CollocationRecord& rec : records) {
            out << "  " << pad(rec.collocate, 16) << num(rec.f, 8) << ' ' << fixed(rec.nf, 9)
                << ' ' << fixed(rec.mi, 9) << ' ' << fixed(rec.t, 9) << '\n';
        }
    }
    return out.str();
}

std::string render_profile_text(const EventProfile& profile) {
    std::ostringstream out;
    out << "event profile: " << profile.node << " in " << profile.corpus_name
        << " (node total " << profile.node_total << ")\n";
    out << "signature: " << profile.signature << '\n';
    out << "disposal: " << (profile.disposal ? "yes" : "no") << '\n';
    out << pad("category", 16) << pad("level", 8) << "  total F  total NF\n";
    for (const auto& [category, ev] : profile.evidence) {
        out << pad(to_string(category), 16)
            << pad(to_string(profile.levels.at(category)), 8) << num(ev.total_f, 9) << ' '
            << fixed(ev.total_nf, 9) << '\n';
        for (const MarkerEvidence& m : ev.per_marker)
            out << "    " << pad(m.marker, 12) << " f=" << m.f << " nf=" << format_fixed(m.nf, 2)
                << '\n';
    }
    return out.str();
}

std::string render_contrast_text(const ContrastTable& table) {
    std::ostringstream out;
    out << "relation " << table.relation << ": " << table.node_a << " vs " << table.node_b
        << '\n';
    out << "common patterns (" << table.common.size() << ")\n";
    if (!table.common.empty()) {
        out << "  " << pad("collocate", 16) << "     F.A      NF.A      MI.A     F.B"
            << "      NF.B      MI.B\n";
        for (const ContrastRow& row : table.common) {
            out << "  " << pad(row.collocate, 16) << num(row.f_a, 8) << ' '
                << fixed(row.nf_a, 9) << ' ' << fixed(row.mi_a, 9) << num(row.f_b, 8) << ' '
                << fixed(row.nf_b, 9) << ' ' << fixed(row.mi_b, 9) << '\n';
        }
    }
    auto render_only = [&](const std::string& node, const std::vector<OnlyRow>& rows) {
        out << "only patterns of " << node << " (" << rows.size() << ")\n";
        if (rows.empty()) return;
        out << "  " << pad("collocate", 16) << "   Freq.       NF.        MI\n";
        for (const OnlyRow& row : rows) {
            out << "  " << pad(row.collocate, 16) << num(row.f, 8) << ' ' << fixed(row.nf, 9)
                << ' ' << fixed(row.mi, 9) << '\n';
        }
    };
    render_only(table.node_a, table.only_a);
    render_only(table.node_b, table.only_b);
    return out.str();
}

std::string render_report_text(const CrossCorpusReport& report) {
    std::ostringstream out;
    out << "lexcontrast cross-corpus report\n";
    out << "corpus A: " << report.corpus_a_name << " (" << report.tokens_a << " tokens)\n";
    out << "corpus B: " << report.corpus_b_name << " (" << report.tokens_b << " tokens)\n";
    out << "nodes: " << report.node_a << " | " << report.node_b << '\n';
    out << "only-pattern exclusivity max: " << report.exclusivity_max << '\n';
    out << "profile thresholds: strong >= " << format_fixed(report.thresholds.strong, 2)
        << " NF, weak >= " << format_fixed(report.thresholds.weak, 2) << " NF\n";

    out << "\n== keyness (" << report.corpus_a_name << " vs " << report.corpus_b_name
        << ") ==\n";
    out << render_keyness_text(report.keyness);

    out << "\n== event profiles ==\n";
    for (const EventProfile& profile : report.profiles) {
        out << '\n' << render_profile_text(profile);
    }

    out << "\n== pattern contrast ==\n";
    for (const ReportContrastSection& section : report.contrasts) {
        out << "\n[" << section.corpus_name << "] " << render_contrast_text(section.table);
    }

    if (!report.field_sections.empty()) {
        out << "\n== semantic fields of only-pattern collocates ==\n";
        for (const ReportFieldSection& section : report.field_sections) {
            out << "\n" << section.node << " in " << section.corpus_name << '\n';
            out << "  " << pad("field", 16) << " collocates   total F\n";
            for (const FieldCount& fc : section.fields) {
                out << "  " << pad(fc.field, 16) << num(fc.collocates, 11)
                    << num(fc.total_f, 10) << '\n';
            }
        }
    }
    return out.str();
}

// -- JSON forms ---------------------------------------------------------------

namespace {

nlohmann::json score_to_json(const KeynessScore& s) {
    return {
        {"a", s.a},       {"b", s.b},
        {"n1", s.n1},     {"n2", s.n2},
        {"e1", s.e1},     {"e2", s.e2},
        {"ll", s.ll},     {"sig", to_string(s.significance)},
        {"dir", to_string(s.direction)},
    };
}

nlohmann::json record_to_json(const CollocationRecord& rec) {
    return {{"collocate", rec.collocate}, {"f", rec.f},   {"nf", rec.nf},
            {"mi", rec.mi},               {"t", rec.t}};
}

nlohmann::json only_row_to_json(const OnlyRow& row) {
    return {{"collocate", row.collocate}, {"f", row.f}, {"nf", row.nf}, {"mi", row.mi}};
}

nlohmann::json token_to_json(const Token& tok) {
    return {{"surface", tok.surface}, {"pos", tok.pos}};
}

}  // namespace

nlohmann::json keyness_to_json(const std::vector<KeynessResult>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const KeynessResult& r : rows) {
        nlohmann::json row = score_to_json(r.score);
        row["word"] = r.word;
        row["corpus_a"] = r.corpus_a_name;
        row["corpus_b"] = r.corpus_b_name;
        arr.push_back(std::move(row));
    }
    return {{"rows", std::move(arr)}};
}

nlohmann::json sketch_to_json(const WordSketch& sketch) {
    nlohmann::json relations = nlohmann::json::object();
    for (const auto& [relation, records] : sketch.relations) {
        nlohmann::json arr = nlohmann::json::array();
        for (const CollocationRecord& rec : records) arr.push_back(record_to_json(rec));
        relations[relation] = std::move(arr);
    }
    return {{"node", sketch.node},
            {"corpus", sketch.corpus_name},
            {"node_total", sketch.node_total},
            {"relations", std::move(relations)}};
}

nlohmann::json contrast_to_json(const ContrastTable& table) {
    nlohmann::json common = nlohmann::json::array();
    for (const ContrastRow& row : table.common)
        common.push_back({{"collocate", row.collocate},
                          {"f_a", row.f_a},
                          {"nf_a", row.nf_a},
                          {"mi_a", row.mi_a},
                          {"f_b", row.f_b},
                          {"nf_b", row.nf_b},
                          {"mi_b", row.mi_b}});
    nlohmann::json only_a = nlohmann::json::array();
    for (const OnlyRow& row : table.only_a) only_a.push_back(only_row_to_json(row));
    nlohmann::json only_b = nlohmann::json::array();
    for (const OnlyRow& row : table.only_b) only_b.push_back(only_row_to_json(row));
    return {{"node_a", table.node_a},   {"node_b", table.node_b},
            {"relation", table.relation}, {"common", std::move(common)},
            {"only_a", std::move(only_a)}, {"only_b", std::move(only_b)}};
}

nlohmann::json profile_to_json(const EventProfile& profile) {
    nlohmann::json evidence = nlohmann::json::object();
    nlohmann::json levels = nlohmann::json::object();
    for (const auto& [category, ev] : profile.evidence) {
        nlohmann::json markers = nlohmann::json::array();
        for (const MarkerEvidence& m : ev.per_marker)
            markers.push_back({{"marker", m.marker}, {"f", m.f}, {"nf", m.nf}});
        evidence[to_string(category)] = {{"total_f", ev.total_f},
                                         {"total_nf", ev.total_nf},
                                         {"markers", std::move(markers)}};
        levels[to_string(category)] = to_string(profile.levels.at(category));
    }
    return {{"node", profile.node},
            {"corpus", profile.corpus_name},
            {"node_total", profile.node_total},
            {"signature", profile.signature},
            {"disposal", profile.disposal},
            {"levels", std::move(levels)},
            {"evidence", std::move(evidence)}};
}

nlohmann::json kwic_to_json(const std::vector<KWICLine>& lines) {
    nlohmann::json arr = nlohmann::json::array();
    for (const KWICLine& line : lines) {
        nlohmann::json left = nlohmann::json::array();
        for (const Token& tok : line.left) left.push_back(token_to_json(tok));
        nlohmann::json right = nlohmann::json::array();
        for (const Token& tok : line.right) right.push_back(token_to_json(tok));
        arr.push_back({{"left", std::move(left)},
                       {"node", token_to_json(line.node)},
                       {"right", std::move(right)},
                       {"location",
                        {{"document", line.location.document},
                         {"sentence", line.location.sentence},
                         {"offset", line.location.offset}}}});
    }
    return {{"lines", std::move(arr)}};
}

nlohmann::json report_to_json(const CrossCorpusReport& report) {
    nlohmann::json profiles = nlohmann::json::array();
    for (const EventProfile& profile : report.profiles)
        profiles.push_back(profile_to_json(profile));
    nlohmann::json contrasts = nlohmann::json::array();
    for (const ReportContrastSection& section : report.contrasts) {
        nlohmann::json entry = contrast_to_json(section.table);
        entry["corpus"] = section.corpus_name;
        contrasts.push_back(std::move(entry));
    }
    nlohmann::json fields = nlohmann::json::array();
    for (const ReportFieldSection& section : report.field_sections) {
        nlohmann::json counts = nlohmann::json::array();
        for (const FieldCount& fc : section.fields)
            counts.push_back({{"field", fc.field},
                              {"collocates", fc.collocates},
                              {"total_f", fc.total_f}});
        fields.push_back({{"corpus", section.corpus_name},
                          {"node", section.node},
                          {"fields", std::move(counts)}});
    }
    return {{"corpus_a", {{"name", report.corpus_a_name}, {"tokens", report.tokens_a}}},
            {"corpus_b", {{"name", report.corpus_b_name}, {"tokens", report.tokens_b}}},
            {"node_a", report.node_a},
            {"node_b", report.node_b},
            {"exclusivity_max", report.exclusivity_max},
            {"thresholds",
             {{"strong", report.thresholds.strong}, {"weak", report.thresholds.weak}}},
            {"keyness", keyness_to_json(report.keyness)["rows"]},
            {"profiles", std::move(profiles)},
            {"contrasts", std::move(contrasts)},
            {"fields", std::move(fields)}};
}

}  // namespace lexcontrast
