#include "lexcontrast/freq_index.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lexcontrast {

namespace {

FrequencyIndex build_range(const Corpus& corpus, std::size_t doc_begin, std::size_t doc_end) {
    FrequencyIndex part;
    for (std::size_t d = doc_begin; d < doc_end; ++d) {
        const Document& doc = corpus.documents[d];
        for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
            const Sentence& sent = doc.sentences[s];
            for (std::size_t t = 0; t < sent.tokens.size(); ++t) {
                const Token& tok = sent.tokens[t];
                ++part.word_counts[tok.surface];
                ++part.tagged_counts[{tok.surface, tok.pos}];
                part.postings[tok.surface].push_back(TokenRef{
                    static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(t)});
                ++part.total_tokens;
            }
        }
    }
    return part;
}

void merge_into(FrequencyIndex& acc, FrequencyIndex&& part) {
    acc.total_tokens += part.total_tokens;
    for (auto& [word, n] : part.word_counts) acc.word_counts[word] += n;
    for (auto& [key, n] : part.tagged_counts) acc.tagged_counts[key] += n;
    for (auto& [word, refs] : part.postings) {
        auto& dst = acc.postings[word];
        dst.insert(dst.end(), refs.begin(), refs.end());
    }
}

}  // namespace

FrequencyIndex build_index(const Corpus& corpus, unsigned workers) {
    if (workers == 0) workers = 1;
    FrequencyIndex index;
    index.corpus_name = corpus.name;

    const std::size_t ndocs = corpus.documents.size();
    if (workers == 1 || ndocs < 2) {
        index = build_range(corpus, 0, ndocs);
        index.corpus_name = corpus.name;
    } else {
        const std::size_t nparts = std::min<std::size_t>(workers, ndocs);
        std::vector<FrequencyIndex> parts(nparts);
        std::vector<std::thread> threads;
        threads.reserve(nparts);
        for (std::size_t p = 0; p < nparts; ++p) {
            std::size_t begin = ndocs * p / nparts;
            std::size_t end = ndocs * (p + 1) / nparts;
            threads.emplace_back([&corpus, &parts, p, begin, end] {
                parts[p] = build_range(corpus, begin, end);
            });
        }
        for (auto& t : threads) t.join();
        for (auto& part : parts) merge_into(index, std::move(part));
    }

    if (corpus.metadata_only) index.total_tokens = corpus.token_count;
    return index;
}

FrequencyIndex index_from_counts(
    std::string corpus_name, std::uint64_t total_tokens,
    std::map<std::string, std::uint64_t> word_counts,
    std::map<std::pair<std::string, std::string>, std::uint64_t> tagged_counts) {
    FrequencyIndex index;
    index.corpus_name = std::move(corpus_name);
    index.total_tokens = total_tokens;
    index.word_counts = std::move(word_counts);
    index.tagged_counts = std::move(tagged_counts);
    return index;
}

std::uint64_t word_freq(const FrequencyIndex& index, std::string_view word) {
    auto it = index.word_counts.find(std::string(word));
    return it == index.word_counts.end() ? 0 : it->second;
}

std::uint64_t tagged_freq(const FrequencyIndex& index, std::string_view word,
                          std::string_view pos) {
    auto it = index.tagged_counts.find({std::string(word), std::string(pos)});
    return it == index.tagged_counts.end() ? 0 : it->second;
}

const std::vector<TokenRef>& positions(const FrequencyIndex& index, std::string_view word) {
    static const std::vector<TokenRef> empty;
    auto it = index.postings.find(std::string(word));
    return it == index.postings.end() ? empty : it->second;
}

std::map<std::string, std::uint64_t> window_collocates(
    const FrequencyIndex& index, const Corpus& corpus, std::string_view node,
    std::uint32_t left, std::uint32_t right,
    const std::optional<TagPattern>& pos_filter) {
    if (left + right < 1)
        throw std::invalid_argument("window_collocates: window must span at least one token");
    std::map<std::string, std::uint64_t> out;
    for (const TokenRef& ref : positions(index, node)) {
        const Sentence& sent = corpus.sentence_at(ref);
        const std::size_t len = sent.tokens.size();
        const std::size_t lo = ref.offset >= left ? ref.offset - left : 0;
        const std::size_t hi = std::min<std::size_t>(len - 1, static_cast<std::size_t>(ref.offset) + right);
        for (std::size_t j = lo; j <= hi; ++j) {
            if (j == ref.offset) continue;
            const Token& tok = sent.tokens[j];
            if (pos_filter && !pos_filter->matches_tag(tok.pos)) continue;
            ++out[tok.surface];
        }
    }
    return out;
}

namespace {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

std::string corpus_digest(const Corpus& corpus) {
    std::ostringstream payload;
    payload << corpus.name << '\n' << corpus.token_count << '\n';
    write_vertical(corpus, payload);
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(payload.str())));
    return buf;
}

void save_index(const FrequencyIndex& index, const std::string& digest,
                const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write index cache: " + path);
    out << "lexidx 1\n";
    out << "digest\t" << digest << '\n';
    out << "corpus\t" << index.corpus_name << '\n';
    out << "total\t" << index.total_tokens << '\n';
    out << "words\t" << index.word_counts.size() << '\n';
    for (const auto& [word, n] : index.word_counts) out << word << '\t' << n << '\n';
    out << "tagged\t" << index.tagged_counts.size() << '\n';
    for (const auto& [key, n] : index.tagged_counts)
        out << key.first << '\t' << key.second << '\t' << n << '\n';
    out << "postings\t" << index.postings.size() << '\n';
    for (const auto& [word, refs] : index.postings) {
        out << word;
        for (const TokenRef& r : refs)
            out << '\t' << r.document << ':' << r.sentence << ':' << r.offset;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::optional<FrequencyIndex> load_index(const std::string& path,
                                         const std::string& expected_digest) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string line;
    auto next = [&](std::string_view key) -> std::optional<std::string> {
        if (!std::getline(in, line)) return std::nullopt;
        if (!std::string_view(line).starts_with(key)) return std::nullopt;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) return std::nullopt;
        return line.substr(tab + 1);
    };
    if (!std::getline(in, line) || line != "lexidx 1") return std::nullopt;
    auto digest = next("digest\t");
    if (!digest || *digest != expected_digest) return std::nullopt;

    FrequencyIndex index;
    auto corpus = next("corpus\t");
    auto total = next("total\t");
    auto nwords = next("words\t");
    if (!corpus || !total || !nwords) return std::nullopt;
    index.corpus_name = *corpus;
    index.total_tokens = std::stoull(*total);
    for (std::uint64_t i = std::stoull(*nwords); i > 0; --i) {
        if (!std::getline(in, line)) return std::nullopt;
        std::size_t tab = line.rfind('\t');
        if (tab == std::string::npos) return std::nullopt;
        index.word_counts[line.substr(0, tab)] = std::stoull(line.substr(tab + 1));
    }
    auto ntagged = next("tagged\t");
    if (!ntagged) return std::nullopt;
    for (std::uint64_t i = std::stoull(*ntagged); i > 0; --i) {
        if (!std::getline(in, line)) return std::nullopt;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = line.rfind('\t');
        if (t1 == std::string::npos || t2 == t1) return std::nullopt;
        index.tagged_counts[{line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1)}] =
            std::stoull(line.substr(t2 + 1));
    }
    auto npost = next("postings\t");
    if (!npost) return std::nullopt;
    for (std::uint64_t i = std::stoull(*npost); i > 0; --i) {
        if (!std::getline(in, line)) return std::nullopt;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) return std::nullopt;
        auto& refs = index.postings[line.substr(0, tab)];
        std::string_view rest = std::string_view(line).substr(tab + 1);
        while (!rest.empty()) {
            std::size_t end = rest.find('\t');
            std::string_view item = end == std::string_view::npos ? rest : rest.substr(0, end);
            TokenRef ref;
            if (std::sscanf(std::string(item).c_str(), "%u:%u:%u", &ref.document,
                            &ref.sentence, &ref.offset) != 3)
                return std::nullopt;
            refs.push_back(ref);
            if (end == std::string_view::npos) break;
            rest.remove_prefix(end + 1);
        }
    }
    return index;
}

}  // namespace lexcontrast
