#include <doctest.h>

#include <stdexcept>

#include <cstdio>
#include <random>

#include "lexcontrast/freq_index.hpp"
#include "oracles.hpp"

using namespace lexcontrast;

namespace {

Corpus parse(const char* text) {
    auto result = parse_vertical_text(text, "t");
    REQUIRE(result.ok());
    return std::move(result.corpus);
}

}  // namespace

TEST_CASE("empty corpus builds an empty index") {
    FrequencyIndex index = build_index(Corpus{});
    CHECK(index.total_tokens == 0);
    CHECK(index.word_counts.empty());
    CHECK(index.postings.empty());
}

TEST_CASE("word frequency and postings over a small fixture") {
    Corpus corpus = parse(
        "政府\tNa\n代表\tNa\n正在\tD\n協商\tVE2\n制度\tNa\n\n"
        "問題\tNa\n已經\tD\n都\tD\n協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    CHECK(index.total_tokens == 9);
    CHECK(word_freq(index, "協商") == 2);
    CHECK(word_freq(index, "不在") == 0);
    const auto& refs = positions(index, "協商");
    REQUIRE(refs.size() == 2);
    CHECK(refs[0] == TokenRef{0, 0, 3});
    CHECK(refs[1] == TokenRef{0, 1, 3});
    CHECK(positions(index, "不在").empty());
}

TEST_CASE("tag-ambiguous words split across tagged_freq") {
    Corpus corpus = parse("協商\tVE2\n進行\tVC2\n\n協商\tNa\n結束\tVC2\n");
    FrequencyIndex index = build_index(corpus);
    CHECK(tagged_freq(index, "協商", "VE2") == 1);
    CHECK(tagged_freq(index, "協商", "Na") == 1);
    CHECK(tagged_freq(index, "協商", "XX") == 0);
    CHECK(word_freq(index, "協商") == 2);
}

TEST_CASE("metadata-backed index answers published counts") {
    FrequencyIndex cna = index_from_counts("CNA", 735499000ull, {{"谈判", 111619}, {"协商", 91998}});
    CHECK(word_freq(cna, "谈判") == 111619);
    CHECK(word_freq(cna, "协商") == 91998);
    CHECK(word_freq(cna, "其他") == 0);
    CHECK(cna.total_tokens == 735499000ull);
}

TEST_CASE("metadata-only corpus yields an index with the declared total") {
    Corpus stub = Corpus::make_metadata_only("CNA", 735499000ull);
    FrequencyIndex index = build_index(stub);
    CHECK(index.total_tokens == 735499000ull);
    CHECK(index.word_counts.empty());
}

TEST_CASE("window collocates over the three-token fixture") {
    Corpus corpus = parse("正在\tD\n協商\tVE2\n中\tNg\n");
    FrequencyIndex index = build_index(corpus);
    auto got = window_collocates(index, corpus, "協商", 1, 1);
    REQUIRE(got.size() == 2);
    CHECK(got["正在"] == 1);
    CHECK(got["中"] == 1);

    auto filtered = window_collocates(index, corpus, "協商", 1, 1, TagPattern::parse("D"));
    REQUIRE(filtered.size() == 1);
    CHECK(filtered["正在"] == 1);
}

TEST_CASE("window collocates: absent node yields an empty mapping") {
    Corpus corpus = parse("正在\tD\n協商\tVE2\n中\tNg\n");
    FrequencyIndex index = build_index(corpus);
    CHECK(window_collocates(index, corpus, "不在", 2, 2).empty());
}

TEST_CASE("window never crosses sentence boundaries") {
    Corpus corpus = parse("左\tNa\n\n協商\tVE2\n\n右\tNa\n");
    FrequencyIndex index = build_index(corpus);
    CHECK(window_collocates(index, corpus, "協商", 5, 5).empty());
}

TEST_CASE("a collocate occurring twice in one window counts twice") {
    Corpus corpus = parse("代表\tNa\n代表\tNa\n協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    auto got = window_collocates(index, corpus, "協商", 2, 0);
    CHECK(got["代表"] == 2);
}

TEST_CASE("a node occurrence is not its own collocate, other occurrences are") {
    Corpus corpus = parse("協商\tVE2\n協商\tVE2\n");
    FrequencyIndex index = build_index(corpus);
    auto got = window_collocates(index, corpus, "協商", 1, 1);
    CHECK(got["協商"] == 2);  // each occurrence sees the other one
}

TEST_CASE("zero-width window is rejected") {
    Corpus corpus = parse("a\tNa\n");
    FrequencyIndex index = build_index(corpus);
    CHECK_THROWS_AS((void)window_collocates(index, corpus, "a", 0, 0), std::invalid_argument);
}

TEST_CASE("positions preserve document order") {
    Corpus corpus = parse("# doc: one\nx\tNa\n\n# doc: two\nx\tNa\ny\tD\nx\tNa\n");
    FrequencyIndex index = build_index(corpus);
    const auto& refs = positions(index, "x");
    REQUIRE(refs.size() == 3);
    CHECK(refs[0] == TokenRef{0, 0, 0});
    CHECK(refs[1] == TokenRef{1, 0, 0});
    CHECK(refs[2] == TokenRef{1, 0, 2});
}

TEST_CASE("word frequencies sum to the token total") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        Corpus corpus = testsupport::random_corpus(rng, 400);
        FrequencyIndex index = build_index(corpus);
        std::uint64_t sum = 0;
        for (const auto& [word, n] : index.word_counts) {
            sum += n;
            CHECK(n == positions(index, word).size());
        }
        CHECK(sum == index.total_tokens);
        CHECK(index.total_tokens == corpus.token_count);
    }
}

TEST_CASE("parallel builds are field-identical to the sequential build") {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 10; ++trial) {
        Corpus corpus = testsupport::random_corpus(rng, 500);
        FrequencyIndex sequential = build_index(corpus, 1);
        for (unsigned workers : {2u, 3u, 8u}) {
            FrequencyIndex parallel = build_index(corpus, workers);
            CHECK(parallel == sequential);
        }
    }
}

TEST_CASE("window collocates equal the brute-force oracle") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        Corpus corpus = testsupport::random_corpus(rng, 1000);
        FrequencyIndex index = build_index(corpus);
        std::uniform_int_distribution<std::uint32_t> w(0, 4);
        std::uint32_t left = w(rng), right = w(rng);
        if (left + right == 0) left = 1;
        for (const char* node : {"协商", "谈判", "中", "absent"}) {
            auto fast = window_collocates(index, corpus, node, left, right);
            auto slow = testsupport::brute_window_collocates(corpus, node, left, right);
            CHECK(fast == slow);
            auto filter = TagPattern::parse("N*");
            auto fast_f = window_collocates(index, corpus, node, left, right, filter);
            auto slow_f = testsupport::brute_window_collocates(corpus, node, left, right, filter);
            CHECK(fast_f == slow_f);
        }
    }
}

TEST_CASE("window totals respect the per-node bound") {
    std::mt19937 rng(5150);
    Corpus corpus = testsupport::random_corpus(rng, 600);
    FrequencyIndex index = build_index(corpus);
    auto got = window_collocates(index, corpus, "协商", 3, 2);
    std::uint64_t sum = 0;
    for (const auto& [_, n] : got) sum += n;
    CHECK(sum <= word_freq(index, "协商") * (3 + 2));
}

TEST_CASE("index cache round-trips and rejects stale digests") {
    Corpus corpus = parse("a\tNa\nb\tD\n\nc\tVE2\na\tNa\n");
    FrequencyIndex index = build_index(corpus);
    const std::string digest = corpus_digest(corpus);
    const std::string path = "test_index_cache.tmp";
    save_index(index, digest, path);

    auto loaded = load_index(path, digest);
    REQUIRE(loaded.has_value());
    CHECK(*loaded == index);

    // a changed corpus digests differently and forces a rebuild
    Corpus changed = parse("a\tNa\nb\tD\n\nc\tVE2\na\tNa\nd\tNa\n");
    CHECK(corpus_digest(changed) != digest);
    CHECK_FALSE(load_index(path, corpus_digest(changed)).has_value());
    CHECK_FALSE(load_index("no_such_file.tmp", digest).has_value());
    std::remove(path.c_str());
}
