#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

#include "lexcontrast/contrast.hpp"
#include "oracles.hpp"

using namespace lexcontrast;

namespace {

Corpus parse(const char* text) {
    auto result = parse_vertical_text(text, "t");
    REQUIRE(result.ok());
    return std::move(result.corpus);
}

WordSketch make_sketch(std::string node, std::uint64_t node_total,
                       std::vector<CollocationRecord> records,
                       const std::string& relation = "Object") {
    WordSketch sketch;
    sketch.node = std::move(node);
    sketch.corpus_name = "t";
    sketch.node_total = node_total;
    sketch.relations[relation] = std::move(records);
    return sketch;
}

CollocationRecord rec(std::string collocate, std::uint64_t f, std::uint64_t node_total,
                      double mi = 1.0) {
    CollocationRecord r;
    r.collocate = std::move(collocate);
    r.f = f;
    r.node_total = node_total;
    r.nf = normalized_frequency(f, node_total);
    r.mi = mi;
    r.t = 0.5;
    return r;
}

}  // namespace

TEST_CASE("keyness table reproduces the published rows from metadata indexes") {
    FrequencyIndex cna = index_from_counts("CNA", 735499000ull,
                                           {{"谈判", 111619}, {"协商", 91998}});
    FrequencyIndex xin = index_from_counts("XIN", 382881000ull,
                                           {{"谈判", 67301}, {"协商", 20215}});
    auto rows = keyness_table(cna, xin, {"谈判", "协商", "无此词"});
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].word == "谈判");
    CHECK(std::abs(rows[0].score.ll - 894.52) / 894.52 < 0.005);
    CHECK(rows[0].score.direction == Direction::underuse_in_a);
    CHECK(rows[0].score.significance == Significance::star3);

    CHECK(rows[1].word == "协商");
    CHECK(std::abs(rows[1].score.ll - 14604.35) / 14604.35 < 0.005);
    CHECK(rows[1].score.direction == Direction::overuse_in_a);
    CHECK(rows[1].score.significance == Significance::star3);

    CHECK(rows[2].score.a == 0);
    CHECK(rows[2].score.b == 0);
    CHECK(rows[2].score.ll == 0.0);
    CHECK(rows[2].score.direction == Direction::balanced);
    CHECK(rows[2].score.significance == Significance::ns);
}

TEST_CASE("keyness rejects empty corpora") {
    FrequencyIndex a = index_from_counts("A", 0, {});
    FrequencyIndex b = index_from_counts("B", 100, {});
    CHECK_THROWS_AS((void)keyness_table(a, b, {"x"}), std::domain_error);
}

TEST_CASE("keyness direction flips when the corpora swap") {
    FrequencyIndex cna = index_from_counts("CNA", 735499000ull, {{"协商", 91998}});
    FrequencyIndex xin = index_from_counts("XIN", 382881000ull, {{"协商", 20215}});
    auto forward = keyness_table(cna, xin, {"协商"});
    auto backward = keyness_table(xin, cna, {"协商"});
    CHECK(forward[0].score.ll == doctest::Approx(backward[0].score.ll).epsilon(1e-9));
    CHECK(forward[0].score.direction == Direction::overuse_in_a);
    CHECK(backward[0].score.direction == Direction::underuse_in_a);
}

TEST_CASE("common patterns carry both sides' statistics") {
    WordSketch a = make_sketch("談判", 100, {rec("代表", 4, 100), rec("貿易", 2, 100)});
    WordSketch b = make_sketch("協商", 50, {rec("代表", 1, 50), rec("制度", 3, 50)});
    auto common = common_patterns(a, b, "Object");
    REQUIRE(common.size() == 1);
    CHECK(common[0].collocate == "代表");
    CHECK(common[0].f_a == 4);
    CHECK(common[0].f_b == 1);
    CHECK(common[0].nf_a == doctest::Approx(400.0));
    CHECK(common[0].nf_b == doctest::Approx(200.0));
}

TEST_CASE("disjoint sketches share nothing") {
    WordSketch a = make_sketch("談判", 100, {rec("貿易", 2, 100)});
    WordSketch b = make_sketch("協商", 50, {rec("制度", 3, 50)});
    CHECK(common_patterns(a, b, "Object").empty());
}

TEST_CASE("a missing relation yields empty contrast outputs") {
    WordSketch a = make_sketch("談判", 100, {rec("貿易", 2, 100)});
    WordSketch b = make_sketch("協商", 50, {rec("制度", 3, 50)});
    CHECK(common_patterns(a, b, "Subject").empty());
    auto [only_a, only_b] = only_patterns(a, b, "Subject");
    CHECK(only_a.empty());
    CHECK(only_b.empty());
}

TEST_CASE("common rows sort by descending shared prominence") {
    WordSketch a = make_sketch("x", 100,
                               {rec("p", 10, 100), rec("q", 50, 100), rec("r", 10, 100)});
    WordSketch b = make_sketch("y", 100,
                               {rec("p", 20, 100), rec("q", 2, 100), rec("r", 10, 100)});
    auto common = common_patterns(a, b, "Object");
    REQUIRE(common.size() == 3);
    // min(nf) = p: 1000, q: 200, r: 1000; tie p/r broken lexicographically
    CHECK(common[0].collocate == "p");
    CHECK(common[1].collocate == "r");
    CHECK(common[2].collocate == "q");
}

TEST_CASE("only patterns reproduce a published exclusive row") {
    // 貿易 under 談判 in CNA: f 1383, node total 111619, NF 123.90
    WordSketch a = make_sketch("談判", 111619, {rec("貿易", 1383, 111619)});
    WordSketch b = make_sketch("協商", 91998, {});
    auto [only_a, only_b] = only_patterns(a, b, "Object");
    REQUIRE(only_a.size() == 1);
    CHECK(only_a[0].collocate == "貿易");
    CHECK(only_a[0].f == 1383);
    CHECK(format_fixed(only_a[0].nf) == "123.90");
    CHECK(only_b.empty());
}

TEST_CASE("identical sketches have empty only-sets") {
    WordSketch a = make_sketch("x", 100, {rec("p", 10, 100)});
    WordSketch b = make_sketch("y", 100, {rec("p", 10, 100)});
    auto [only_a, only_b] = only_patterns(a, b, "Object");
    CHECK(only_a.empty());
    CHECK(only_b.empty());
}

TEST_CASE("the exclusivity threshold admits marginal counterparts") {
    WordSketch a = make_sketch("x", 100, {rec("p", 10, 100)});
    WordSketch b = make_sketch("y", 100, {rec("p", 2, 100)});
    auto [strict_a, strict_b] = only_patterns(a, b, "Object", 0);
    CHECK(strict_a.empty());
    CHECK(strict_b.empty());
    auto [loose_a, loose_b] = only_patterns(a, b, "Object", 2);
    REQUIRE(loose_a.size() == 1);
    CHECK(loose_a[0].collocate == "p");
}

TEST_CASE("contrast table partitions the collocate universe") {
    std::mt19937 rng(838);
    std::uniform_int_distribution<std::uint64_t> f_dist(0, 6);
    std::uniform_int_distribution<std::uint64_t> t_dist(0, 2);
    const std::vector<std::string> universe = {"a", "b", "c", "d", "e", "f", "g"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<CollocationRecord> ra, rb;
        for (const std::string& c : universe) {
            std::uint64_t fa = f_dist(rng), fb = f_dist(rng);
            if (fa > 0) ra.push_back(rec(c, fa, 100));
            if (fb > 0) rb.push_back(rec(c, fb, 100));
        }
        WordSketch a = make_sketch("x", 100, ra);
        WordSketch b = make_sketch("y", 100, rb);
        const std::uint64_t threshold = t_dist(rng);
        ContrastTable table = contrast_table(a, b, "Object", threshold);

        std::set<std::string> seen;
        for (const auto& row : table.common) CHECK(seen.insert(row.collocate).second);
        for (const auto& row : table.only_a) CHECK(seen.insert(row.collocate).second);
        for (const auto& row : table.only_b) CHECK(seen.insert(row.collocate).second);

        std::set<std::string> expected;
        for (const auto& r : ra) expected.insert(r.collocate);
        for (const auto& r : rb) expected.insert(r.collocate);
        CHECK(seen == expected);

        // strict threshold semantics on the only-sets
        if (threshold == 0) {
            for (const auto& row : table.only_a) {
                bool in_b = false;
                for (const auto& r : rb) in_b |= r.collocate == row.collocate;
                CHECK_FALSE(in_b);
            }
        }
    }
}

TEST_CASE("marker lexicon parses and validates") {
    auto ok = parse_marker_lexicon("开始\tboundary_start\tpre\t3\n把\tdisposal\tpre\t6\n");
    REQUIRE(ok.ok());
    CHECK(ok.lexicon->entries.size() == 2);
    CHECK(ok.lexicon->entries[0].marker == "开始");
    CHECK(ok.lexicon->entries[0].category == EventCategory::boundary_start);
    CHECK(ok.lexicon->entries[0].side == MarkerSide::pre);
    CHECK(ok.lexicon->entries[0].max_distance == 3);

    CHECK_FALSE(parse_marker_lexicon("开始\tnotacategory\tpre\t3\n").ok());
    CHECK_FALSE(parse_marker_lexicon("开始\tprocess\tmiddle\t3\n").ok());
    CHECK_FALSE(parse_marker_lexicon("开始\tprocess\tpre\t0\n").ok());
    CHECK_FALSE(parse_marker_lexicon("开始\tprocess\tpre\n").ok());
    CHECK_FALSE(
        parse_marker_lexicon("中\tprocess\tpost\t2\n中\tprocess\tpost\t3\n").ok());
    // same marker under two categories is allowed
    CHECK(parse_marker_lexicon("中\tprocess\tpost\t2\n中\tstate\tpost\t3\n").ok());
}

TEST_CASE("builtin lexicon covers the adduced markers") {
    const EventMarkerLexicon& lex = builtin_lexicon();
    REQUIRE(lex.entries.size() == 9);
    std::set<std::string> markers;
    for (const auto& e : lex.entries) markers.insert(e.marker);
    for (const char* m : {"开始", "正在", "继续", "持续", "中", "过程", "进展", "迄今", "把"})
        CHECK(markers.count(m) == 1);
}

TEST_CASE("disposal evidence from a ba-construction sentence") {
    Corpus corpus = parse("把\tP\n總預算案\tNa\n協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    EventMarkerLexicon lex;
    lex.entries.push_back({"把", EventCategory::disposal, MarkerSide::pre, 6});
    EventProfile profile = event_profile(index, corpus, "協商", lex);
    CHECK(profile.disposal);
    CHECK(profile.levels.at(EventCategory::disposal) == EvidenceLevel::strong);
}

TEST_CASE("marker side and distance are honored") {
    Corpus corpus = parse("協商\tVE2\n開始\tVL\n\n"
                          "開始\tVL\nx\tNa\ny\tNa\nz\tNa\n協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    EventMarkerLexicon lex;
    lex.entries.push_back({"開始", EventCategory::boundary_start, MarkerSide::pre, 3});
    // sentence 1: marker after the node, side pre: no hit
    // sentence 2: marker 4 tokens before the node, distance 3: no hit
    EventProfile profile = event_profile(index, corpus, "協商", lex);
    CHECK(profile.levels.at(EventCategory::boundary_start) == EvidenceLevel::absent);

    lex.entries[0].max_distance = 4;
    profile = event_profile(index, corpus, "協商", lex);
    CHECK(profile.evidence.at(EventCategory::boundary_start).total_f == 1);

    lex.entries[0].side = MarkerSide::either;
    profile = event_profile(index, corpus, "協商", lex);
    CHECK(profile.evidence.at(EventCategory::boundary_start).total_f == 2);
}

TEST_CASE("a marker counts once per node occurrence") {
    Corpus corpus = parse("正在\tD\n協商\tVE2\n正在\tD\n協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    EventMarkerLexicon lex;
    lex.entries.push_back({"正在", EventCategory::process, MarkerSide::pre, 2});
    EventProfile profile = event_profile(index, corpus, "協商", lex);
    // both node occurrences have 正在 within reach, each counted once
    CHECK(profile.evidence.at(EventCategory::process).total_f == 2);
}

TEST_CASE("zero marker hits leave the profile undetermined") {
    Corpus corpus = parse("協商\tVE2\n結束\tVC2\n");
    FrequencyIndex index = build_index(corpus);
    EventProfile profile = event_profile(index, corpus, "協商", builtin_lexicon());
    for (const auto& [category, level] : profile.levels)
        CHECK(level == EvidenceLevel::absent);
    CHECK(profile.signature == "undetermined");
    CHECK_FALSE(profile.disposal);
}

TEST_CASE("an absent node yields an empty, undetermined profile") {
    Corpus corpus = parse("a\tNa\n");
    FrequencyIndex index = build_index(corpus);
    EventProfile profile = event_profile(index, corpus, "協商", builtin_lexicon());
    CHECK(profile.node_total == 0);
    CHECK(profile.signature == "undetermined");
}

TEST_CASE("threshold validation") {
    Corpus corpus = parse("協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    CHECK_THROWS_AS(
        (void)event_profile(index, corpus, "協商", builtin_lexicon(), {0.5, 10.0}),
        std::domain_error);
    CHECK_THROWS_AS(
        (void)event_profile(index, corpus, "協商", builtin_lexicon(), {10.0, 0.0}),
        std::domain_error);
}

TEST_CASE("published CNA evidence for the inchoative-process reading") {
    // Table 2, CNA column: node total 111,619
    EventProfile profile = profile_from_evidence(
        "谈判", "CNA", 111619,
        {{"开始", EventCategory::boundary_start, 245},
         {"正在", EventCategory::process, 153},
         {"中", EventCategory::process, 26},
         {"迄今", EventCategory::endpoint_ref, 12}});
    CHECK(profile.levels.at(EventCategory::boundary_start) == EvidenceLevel::strong);
    CHECK(profile.levels.at(EventCategory::process) == EvidenceLevel::strong);
    CHECK(profile.levels.at(EventCategory::endpoint_ref) == EvidenceLevel::weak);
    CHECK(profile.signature == "• ////");
}

TEST_CASE("published XIN evidence for the blurred starting point") {
    // Table 3, XIN column: node total 20,215
    EventProfile profile = profile_from_evidence(
        "协商", "XIN", 20215,
        {{"开始", EventCategory::boundary_start, 17},
         {"继续", EventCategory::process, 55},
         {"正在", EventCategory::process, 57}});
    CHECK(profile.levels.at(EventCategory::boundary_start) == EvidenceLevel::weak);
    CHECK(profile.levels.at(EventCategory::process) == EvidenceLevel::strong);
    CHECK(profile.signature == "(•) ////");
}

TEST_CASE("adding a marker occurrence never lowers a level") {
    Corpus base = parse("正在\tD\n協商\tVE2\n\n協商\tVE2\n結束\tVC2\n");
    Corpus more = parse("正在\tD\n協商\tVE2\n\n正在\tD\n協商\tVE2\n結束\tVC2\n");
    FrequencyIndex index_base = build_index(base);
    FrequencyIndex index_more = build_index(more);
    EventProfile p_base = event_profile(index_base, base, "協商", builtin_lexicon());
    EventProfile p_more = event_profile(index_more, more, "協商", builtin_lexicon());
    for (const auto& [category, level] : p_base.levels)
        CHECK(static_cast<int>(p_more.levels.at(category)) >= static_cast<int>(level));
}

TEST_CASE("signature rendering covers the level grid") {
    std::map<EventCategory, EvidenceLevel> levels;
    levels[EventCategory::boundary_start] = EvidenceLevel::strong;
    levels[EventCategory::process] = EvidenceLevel::strong;
    CHECK(render_signature(levels) == "• ////");
    levels[EventCategory::boundary_start] = EvidenceLevel::weak;
    CHECK(render_signature(levels) == "(•) ////");
    levels[EventCategory::process] = EvidenceLevel::weak;
    CHECK(render_signature(levels) == "(•) (////)");
    levels[EventCategory::boundary_start] = EvidenceLevel::absent;
    CHECK(render_signature(levels) == "(////)");
    levels[EventCategory::process] = EvidenceLevel::absent;
    CHECK(render_signature(levels) == "undetermined");
    levels[EventCategory::boundary_start] = EvidenceLevel::strong;
    CHECK(render_signature(levels) == "•");
}
