#include "lexcontrast/contrast.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lexcontrast {

std::vector<KeynessResult> keyness_table(const FrequencyIndex& index_a,
                                         const FrequencyIndex& index_b,
                                         const std::vector<std::string>& words) {
    if (index_a.total_tokens == 0 || index_b.total_tokens == 0)
        throw std::domain_error("keyness_table: both corpora must be nonempty");
    std::vector<KeynessResult> out;
    out.reserve(words.size());
    for (const std::string& word : words) {
        KeynessResult row;
        row.word = word;
        row.corpus_a_name = index_a.corpus_name;
        row.corpus_b_name = index_b.corpus_name;
        row.score = log_likelihood(word_freq(index_a, word), word_freq(index_b, word),
                                   index_a.total_tokens, index_b.total_tokens);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

const std::vector<CollocationRecord>* relation_records(const WordSketch& sketch,
                                                       const std::string& relation) {
    auto it = sketch.relations.find(relation);
    return it == sketch.relations.end() ? nullptr : &it->second;
}

std::map<std::string, const CollocationRecord*> by_collocate(
    const std::vector<CollocationRecord>* records) {
    std::map<std::string, const CollocationRecord*> out;
    if (records)
        for (const CollocationRecord& r : *records) out[r.collocate] = &r;
    return out;
}

void sort_common(std::vector<ContrastRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const ContrastRow& a, const ContrastRow& b) {
        double ka = std::min(a.nf_a, a.nf_b);
        double kb = std::min(b.nf_a, b.nf_b);
        if (ka != kb) return ka > kb;
        return a.collocate < b.collocate;
    });
}

void sort_only(std::vector<OnlyRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const OnlyRow& a, const OnlyRow& b) {
        if (a.nf != b.nf) return a.nf > b.nf;
        return a.collocate < b.collocate;
    });
}

}  // namespace

std::vector<ContrastRow> common_patterns(const WordSketch& sketch_a,
                                         const WordSketch& sketch_b,
                                         const std::string& relation) {
    auto a = by_collocate(relation_records(sketch_a, relation));
    auto b = by_collocate(relation_records(sketch_b, relation));
    std::vector<ContrastRow> rows;
    for (const auto& [collocate, ra] : a) {
        auto it = b.find(collocate);
        if (it == b.end()) continue;
        const CollocationRecord* rb = it->second;
        rows.push_back(ContrastRow{collocate, ra->f, rb->f, ra->nf, ra->mi, rb->nf, rb->mi});
    }
    sort_common(rows);
    return rows;
}

std::pair<std::vector<OnlyRow>, std::vector<OnlyRow>> only_patterns(
    const WordSketch& sketch_a, const WordSketch& sketch_b,
    const std::string& relation, std::uint64_t exclusivity_max) {
    auto a = by_collocate(relation_records(sketch_a, relation));
    auto b = by_collocate(relation_records(sketch_b, relation));
    auto freq_of = [](const std::map<std::string, const CollocationRecord*>& side,
                      const std::string& collocate) -> std::uint64_t {
        auto it = side.find(collocate);
        return it == side.end() ? 0 : it->second->f;
    };
    std::vector<OnlyRow> only_a, only_b;
    for (const auto& [collocate, ra] : a) {
        if (ra->f > 0 && freq_of(b, collocate) <= exclusivity_max)
            only_a.push_back(OnlyRow{collocate, ra->f, ra->nf, ra->mi});
    }
    for (const auto& [collocate, rb] : b) {
        if (rb->f > 0 && freq_of(a, collocate) <= exclusivity_max)
            only_b.push_back(OnlyRow{collocate, rb->f, rb->nf, rb->mi});
    }
    sort_only(only_a);
    sort_only(only_b);
    return {std::move(only_a), std::move(only_b)};
}

ContrastTable contrast_table(const WordSketch& sketch_a, const WordSketch& sketch_b,
                             const std::string& relation,
                             std::uint64_t exclusivity_max) {
    ContrastTable table;
    table.node_a = sketch_a.node;
    table.node_b = sketch_b.node;
    table.relation = relation;

    auto a = by_collocate(relation_records(sketch_a, relation));
    auto b = by_collocate(relation_records(sketch_b, relation));
    std::set<std::string> all;
    for (const auto& [c, _] : a) all.insert(c);
    for (const auto& [c, _] : b) all.insert(c);

    for (const std::string& collocate : all) {
        auto ia = a.find(collocate);
        auto ib = b.find(collocate);
        const std::uint64_t f_a = ia == a.end() ? 0 : ia->second->f;
        const std::uint64_t f_b = ib == b.end() ? 0 : ib->second->f;
        const bool excl_a = f_a > 0 && f_b <= exclusivity_max;
        const bool excl_b = f_b > 0 && f_a <= exclusivity_max;
        if (excl_a && !excl_b) {
            table.only_a.push_back(OnlyRow{collocate, f_a, ia->second->nf, ia->second->mi});
        } else if (excl_b && !excl_a) {
            table.only_b.push_back(OnlyRow{collocate, f_b, ib->second->nf, ib->second->mi});
        } else {
            // shared (or mutually marginal under a nonzero threshold)
            ContrastRow row;
            row.collocate = collocate;
            row.f_a = f_a;
            row.f_b = f_b;
            if (ia != a.end()) { row.nf_a = ia->second->nf; row.mi_a = ia->second->mi; }
            if (ib != b.end()) { row.nf_b = ib->second->nf; row.mi_b = ib->second->mi; }
            table.common.push_back(std::move(row));
        }
    }
    sort_common(table.common);
    sort_only(table.only_a);
    sort_only(table.only_b);
    return table;
}

// -- event-structure profiling ----------------------------------------------

const char* to_string(EventCategory c) {
    switch (c) {
        case EventCategory::boundary_start: return "boundary_start";
        case EventCategory::endpoint_ref: return "endpoint_ref";
        case EventCategory::process: return "process";
        case EventCategory::state: return "state";
        case EventCategory::stage: return "stage";
        case EventCategory::punctuality: return "punctuality";
        case EventCategory::disposal: return "disposal";
    }
    return "?";
}

const char* to_string(MarkerSide s) {
    switch (s) {
        case MarkerSide::pre: return "pre";
        case MarkerSide::post: return "post";
        case MarkerSide::either: return "either";
    }
    return "?";
}

const char* to_string(EvidenceLevel l) {
    switch (l) {
        case EvidenceLevel::absent: return "absent";
        case EvidenceLevel::weak: return "weak";
        case EvidenceLevel::strong: return "strong";
    }
    return "?";
}

std::optional<EventCategory> event_category_from(std::string_view name) {
    static const std::pair<std::string_view, EventCategory> table[] = {
        {"boundary_start", EventCategory::boundary_start},
        {"endpoint_ref", EventCategory::endpoint_ref},
        {"process", EventCategory::process},
        {"state", EventCategory::state},
        {"stage", EventCategory::stage},
        {"punctuality", EventCategory::punctuality},
        {"disposal", EventCategory::disposal},
    };
    for (const auto& [key, value] : table)
        if (key == name) return value;
    return std::nullopt;
}

std::optional<MarkerSide> marker_side_from(std::string_view name) {
    if (name == "pre") return MarkerSide::pre;
    if (name == "post") return MarkerSide::post;
    if (name == "either") return MarkerSide::either;
    return std::nullopt;
}

namespace {

constexpr EventCategory kAllCategories[] = {
    EventCategory::boundary_start, EventCategory::endpoint_ref,
    EventCategory::process,        EventCategory::state,
    EventCategory::stage,          EventCategory::punctuality,
    EventCategory::disposal,
};

}  // namespace

LexiconParseResult parse_marker_lexicon(std::string_view text) {
    EventMarkerLexicon lexicon;
    std::vector<Diagnostic> diags;
    std::set<std::pair<std::string, EventCategory>> seen;

    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv = line;
        if (sv.empty() || sv.front() == '#') continue;
        if (std::all_of(sv.begin(), sv.end(),
                        [](unsigned char c) { return std::isspace(c); }))
            continue;

        auto fail = [&](std::string msg) { diags.push_back({lineno, 0, std::move(msg)}); };
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            std::size_t tab = sv.find('\t', start);
            fields.push_back(sv.substr(start, tab - start));
            if (tab == std::string_view::npos) break;
            start = tab + 1;
        }
        if (fields.size() != 4) {
            fail("expected 4 tab-separated fields: marker, category, side, max_distance");
            continue;
        }
        MarkerEntry entry;
        entry.marker = std::string(fields[0]);
        if (entry.marker.empty()) { fail("empty marker"); continue; }
        auto category = event_category_from(fields[1]);
        if (!category) { fail("unknown category '" + std::string(fields[1]) + "'"); continue; }
        entry.category = *category;
        auto side = marker_side_from(fields[2]);
        if (!side) { fail("unknown side '" + std::string(fields[2]) + "'"); continue; }
        entry.side = *side;
        std::uint32_t dist = 0;
        auto [p, ec] = std::from_chars(fields[3].data(), fields[3].data() + fields[3].size(), dist);
        if (ec != std::errc{} || p != fields[3].data() + fields[3].size() || dist == 0) {
            fail("max_distance must be a positive integer");
            continue;
        }
        entry.max_distance = dist;
        if (!seen.insert({entry.marker, entry.category}).second) {
            fail("duplicate (marker, category) pair");
            continue;
        }
        lexicon.entries.push_back(std::move(entry));
    }

    LexiconParseResult result;
    result.diagnostics = std::move(diags);
    if (result.diagnostics.empty()) result.lexicon = std::move(lexicon);
    return result;
}

LexiconParseResult parse_marker_lexicon_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read marker lexicon: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_marker_lexicon(buf.str());
}

const char* const kBuiltinLexiconText =
    "# marker\tcategory\tside\tmax_distance\n"
    "\xE5\xBC\x80\xE5\xA7\x8B\tboundary_start\tpre\t3\n"      // 开始
    "\xE6\xAD\xA3\xE5\x9C\xA8\tprocess\tpre\t2\n"             // 正在
    "\xE7\xBB\xA7\xE7\xBB\xAD\tprocess\tpre\t2\n"             // 继续
    "\xE6\x8C\x81\xE7\xBB\xAD\tprocess\tpre\t2\n"             // 持续
    "\xE4\xB8\xAD\tprocess\tpost\t2\n"                        // 中
    "\xE8\xBF\x87\xE7\xA8\x8B\tprocess\tpost\t3\n"            // 过程
    "\xE8\xBF\x9B\xE5\xB1\x95\tprocess\tpost\t3\n"            // 进展
    "\xE8\xBF\x84\xE4\xBB\x8A\tendpoint_ref\tpre\t4\n"        // 迄今
    "\xE6\x8A\x8A\tdisposal\tpre\t6\n";                       // 把

const EventMarkerLexicon& builtin_lexicon() {
    static const EventMarkerLexicon lexicon = [] {
        auto parsed = parse_marker_lexicon(kBuiltinLexiconText);
        if (!parsed.ok()) throw std::logic_error("builtin lexicon failed to parse");
        return std::move(*parsed.lexicon);
    }();
    return lexicon;
}

std::string render_signature(const std::map<EventCategory, EvidenceLevel>& levels) {
    auto level_of = [&](EventCategory c) {
        auto it = levels.find(c);
        return it == levels.end() ? EvidenceLevel::absent : it->second;
    };
    std::string out;
    switch (level_of(EventCategory::boundary_start)) {
        case EvidenceLevel::strong: out += "\xE2\x80\xA2"; break;        // •
        case EvidenceLevel::weak: out += "(\xE2\x80\xA2)"; break;        // (•)
        case EvidenceLevel::absent: break;
    }
    switch (level_of(EventCategory::process)) {
        case EvidenceLevel::strong:
            if (!out.empty()) out += ' ';
            out += "////";
            break;
        case EvidenceLevel::weak:
            if (!out.empty()) out += ' ';
            out += "(////)";
            break;
        case EvidenceLevel::absent:
            break;
    }
    return out.empty() ? "undetermined" : out;
}

namespace {

EventProfile classify(std::string node, std::string corpus_name, std::uint64_t node_total,
                      std::map<EventCategory, CategoryEvidence> evidence,
                      ProfileThresholds thresholds) {
    if (!(thresholds.weak > 0.0) || !(thresholds.weak < thresholds.strong))
        throw std::domain_error("event profile thresholds must satisfy 0 < weak < strong");
    EventProfile profile;
    profile.node = std::move(node);
    profile.corpus_name = std::move(corpus_name);
    profile.node_total = node_total;
    for (EventCategory c : kAllCategories) evidence[c];  // materialize all categories
    for (auto& [category, ev] : evidence) {
        ev.total_f = 0;
        ev.total_nf = 0.0;
        for (const MarkerEvidence& m : ev.per_marker) {
            ev.total_f += m.f;
            ev.total_nf += m.nf;
        }
        EvidenceLevel level = EvidenceLevel::absent;
        if (ev.total_nf >= thresholds.strong)
            level = EvidenceLevel::strong;
        else if (ev.total_nf >= thresholds.weak)
            level = EvidenceLevel::weak;
        profile.levels[category] = level;
    }
    profile.evidence = std::move(evidence);
    profile.disposal = profile.levels[EventCategory::disposal] != EvidenceLevel::absent;
    profile.signature = render_signature(profile.levels);
    return profile;
}

}  // namespace

EventProfile event_profile(const FrequencyIndex& index, const Corpus& corpus,
                           std::string_view node, const EventMarkerLexicon& lexicon,
                           ProfileThresholds thresholds) {
    const std::uint64_t node_total = word_freq(index, node);
    std::map<EventCategory, CategoryEvidence> evidence;

    if (node_total > 0) {
        // marker f = number of node occurrences accompanied by the marker
        std::map<std::pair<std::string, EventCategory>, std::uint64_t> marker_f;
        for (const TokenRef& ref : positions(index, node)) {
            const Sentence& sent = corpus.sentence_at(ref);
            for (const MarkerEntry& entry : lexicon.entries) {
                bool found = false;
                const std::int64_t off = ref.offset;
                const std::int64_t lo =
                    entry.side == MarkerSide::post ? off + 1 : off - entry.max_distance;
                const std::int64_t hi =
                    entry.side == MarkerSide::pre ? off - 1 : off + entry.max_distance;
                for (std::int64_t j = std::max<std::int64_t>(lo, 0);
                     j <= hi && j < static_cast<std::int64_t>(sent.tokens.size()); ++j) {
                    if (j == off) continue;
                    if (sent.tokens[j].surface == entry.marker) { found = true; break; }
                }
                if (found) ++marker_f[{entry.marker, entry.category}];
            }
        }
        for (const MarkerEntry& entry : lexicon.entries) {
            auto it = marker_f.find({entry.marker, entry.category});
            if (it == marker_f.end()) continue;
            evidence[entry.category].per_marker.push_back(MarkerEvidence{
                entry.marker, it->second, normalized_frequency(it->second, node_total)});
        }
    }
    return classify(std::string(node), index.corpus_name, node_total, std::move(evidence),
                    thresholds);
}

EventProfile profile_from_evidence(std::string node, std::string corpus_name,
                                   std::uint64_t node_total,
                                   const std::vector<MarkerCount>& counts,
                                   ProfileThresholds thresholds) {
    std::map<EventCategory, CategoryEvidence> evidence;
    for (const MarkerCount& mc : counts) {
        double nf = node_total > 0 ? normalized_frequency(mc.f, node_total) : 0.0;
        evidence[mc.category].per_marker.push_back(MarkerEvidence{mc.marker, mc.f, nf});
    }
    return classify(std::move(node), std::move(corpus_name), node_total, std::move(evidence),
                    thresholds);
}

}  // namespace lexcontrast
