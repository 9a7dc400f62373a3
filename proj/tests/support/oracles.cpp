#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace lexcontrast::testsupport {

std::map<std::string, std::uint64_t> brute_window_collocates(
    const Corpus& corpus, const std::string& node, std::uint32_t left,
    std::uint32_t right, const std::optional<TagPattern>& pos_filter) {
    std::map<std::string, std::uint64_t> out;
    for (const Document& doc : corpus.documents) {
        for (const Sentence& sent : doc.sentences) {
            const std::int64_t len = static_cast<std::int64_t>(sent.tokens.size());
            for (std::int64_t i = 0; i < len; ++i) {
                if (sent.tokens[i].surface != node) continue;
                for (std::int64_t j = i - left; j <= i + right; ++j) {
                    if (j < 0 || j >= len || j == i) continue;
                    if (pos_filter && !pos_filter->matches_tag(sent.tokens[j].pos)) continue;
                    ++out[sent.tokens[j].surface];
                }
            }
        }
    }
    return out;
}

namespace {

// re-implemented token matching (reads the parsed pattern directly)
bool oracle_atom_matches(const PatternAtom& atom, const Token& tok) {
    if (atom.matcher.wildcard) return true;
    for (const TagPattern::Alt& alt : atom.matcher.alts) {
        if (alt.prefix) {
            if (tok.pos.rfind(alt.text, 0) == 0) return true;
            if (tok.surface.rfind(alt.text, 0) == 0) return true;
        } else {
            if (tok.pos == alt.text) return true;
            if (tok.surface == alt.text) return true;
        }
    }
    return false;
}

struct Candidate {
    std::vector<std::uint32_t> counts;
    std::uint32_t prefix_total = 0;
    std::uint32_t suffix_total = 0;
};

// all count vectors, by full cartesian enumeration
void enumerate(const RelationRule& rule, const Sentence& sent, std::uint32_t node_offset,
               std::size_t atom_index, std::vector<std::uint32_t>& counts,
               std::vector<Candidate>& found) {
    if (atom_index == rule.atoms.size()) {
        // verify the tiling
        std::uint32_t prefix_total = 0, suffix_total = 0;
        for (std::size_t i = 0; i < rule.node_index; ++i) prefix_total += counts[i];
        for (std::size_t i = rule.node_index + 1; i < rule.atoms.size(); ++i)
            suffix_total += counts[i];
        if (prefix_total > node_offset) return;
        if (node_offset + 1 + suffix_total > sent.tokens.size()) return;
        std::size_t pos = node_offset - prefix_total;
        for (std::size_t i = 0; i < rule.atoms.size(); ++i) {
            if (rule.atoms[i].is_node) {
                pos += 1;
                continue;
            }
            for (std::uint32_t k = 0; k < counts[i]; ++k) {
                if (!oracle_atom_matches(rule.atoms[i], sent.tokens[pos])) return;
                ++pos;
            }
        }
        found.push_back({counts, prefix_total, suffix_total});
        return;
    }
    const PatternAtom& atom = rule.atoms[atom_index];
    const std::uint32_t lo = atom.is_node ? 1 : (atom.quantified ? atom.min : 1);
    const std::uint32_t hi = atom.is_node ? 1 : (atom.quantified ? atom.max : 1);
    for (std::uint32_t c = lo; c <= hi; ++c) {
        counts[atom_index] = c;
        enumerate(rule, sent, node_offset, atom_index + 1, counts, found);
    }
}

std::optional<PatternMatch> oracle_match_rule(const RelationRule& rule, const Sentence& sent,
                                              std::uint32_t document,
                                              std::uint32_t sentence_index,
                                              std::uint32_t node_offset) {
    std::vector<Candidate> found;
    std::vector<std::uint32_t> counts(rule.atoms.size(), 0);
    enumerate(rule, sent, node_offset, 0, counts, found);
    if (found.empty()) return std::nullopt;
    // leftmost start, then longest, then greedy (lexicographically largest counts)
    const Candidate* best = &found[0];
    for (const Candidate& c : found) {
        if (c.prefix_total != best->prefix_total) {
            if (c.prefix_total > best->prefix_total) best = &c;
            continue;
        }
        if (c.suffix_total != best->suffix_total) {
            if (c.suffix_total > best->suffix_total) best = &c;
            continue;
        }
        if (std::lexicographical_compare(best->counts.begin(), best->counts.end(),
                                         c.counts.begin(), c.counts.end()))
            best = &c;
    }
    std::size_t pos = node_offset - best->prefix_total;
    std::size_t capture_pos = 0;
    for (std::size_t i = 0; i < rule.atoms.size(); ++i) {
        if (i == rule.capture_index) capture_pos = pos;
        pos += best->counts[i];
    }
    PatternMatch m;
    m.relation = rule.name;
    m.node_position = TokenRef{document, sentence_index, node_offset};
    m.collocate_position =
        TokenRef{document, sentence_index, static_cast<std::uint32_t>(capture_pos)};
    m.collocate_surface = sent.tokens[capture_pos].surface;
    return m;
}

}  // namespace

std::vector<PatternMatch> brute_match_relations(const SketchGrammar& grammar,
                                                const Sentence& sentence,
                                                std::uint32_t document,
                                                std::uint32_t sentence_index,
                                                const std::vector<std::uint32_t>& node_offsets) {
    std::vector<PatternMatch> out;
    for (const RelationRule& rule : grammar.rules) {
        for (std::uint32_t off : node_offsets) {
            if (auto m = oracle_match_rule(rule, sentence, document, sentence_index, off))
                out.push_back(std::move(*m));
        }
    }
    return out;
}

std::vector<PatternMatch> brute_corpus_matches(const Corpus& corpus,
                                               const std::string& node,
                                               const SketchGrammar& grammar) {
    std::vector<PatternMatch> out;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
        const Document& doc = corpus.documents[d];
        for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
            const Sentence& sent = doc.sentences[s];
            std::vector<std::uint32_t> offsets;
            for (std::size_t t = 0; t < sent.tokens.size(); ++t)
                if (sent.tokens[t].surface == node)
                    offsets.push_back(static_cast<std::uint32_t>(t));
            if (offsets.empty()) continue;
            auto matches =
                brute_match_relations(grammar, sent, static_cast<std::uint32_t>(d),
                                      static_cast<std::uint32_t>(s), offsets);
            out.insert(out.end(), matches.begin(), matches.end());
        }
    }
    return out;
}

std::map<std::string, std::map<std::string, std::uint64_t>> brute_sketch_counts(
    const Corpus& corpus, const std::string& node, const SketchGrammar& grammar) {
    std::map<std::string, std::map<std::string, std::uint64_t>> out;
    for (const PatternMatch& m : brute_corpus_matches(corpus, node, grammar))
        ++out[m.relation][m.collocate_surface];
    return out;
}

namespace {

const std::pair<const char*, const char*> kVocab[] = {
    {"\xe5\x8d\x8f\xe5\x95\x86", "VE2"},  // 协商
    {"\xe8\xb0\x88\xe5\x88\xa4", "VC2"},  // 谈判
    {"\xe8\xb0\x88\xe5\x88\xa4", "Na"},   // 谈判 (deverbal)
    {"\xe4\xbb\xa3\xe8\xa1\xa8", "Na"},   // 代表
    {"\xe5\x8f\x8c\xe6\x96\xb9", "Nh"},   // 双方
    {"\xe6\x94\xbf\xe5\x85\x9a", "Na"},   // 政党
    {"\xe5\x88\xb6\xe5\xba\xa6", "Na"},   // 制度
    {"\xe9\x97\xae\xe9\xa2\x98", "Na"},   // 问题
    {"\xe8\xb4\xb8\xe6\x98\x93", "Na"},   // 贸易
    {"\xe5\xbc\x80\xe5\xa7\x8b", "VL"},   // 开始
    {"\xe6\xad\xa3\xe5\x9c\xa8", "D"},    // 正在
    {"\xe7\xbb\xa7\xe7\xbb\xad", "D"},    // 继续
    {"\xe4\xb8\xad", "LC"},               // 中
    {"\xe6\x8a\x8a", "P"},                // 把
    {"\xe5\x9c\xa8", "P"},                // 在
    {"\xe6\x96\xb0", "A"},                // 新
    {"\xe6\x98\xaf", "SHI"},              // 是
    {"\xe8\xbf\x84\xe4\xbb\x8a", "D"},    // 迄今
    {"\xe5\xa4\xa7", "VH"},               // 大
    {"\xe3\x80\x82", "PERIODCATEGORY"},   // 。
};

}  // namespace

Corpus random_corpus(std::mt19937& rng, std::size_t max_tokens) {
    Corpus corpus;
    corpus.name = "random";
    std::uniform_int_distribution<std::size_t> vocab_dist(0, std::size(kVocab) - 1);
    std::uniform_int_distribution<int> docs_dist(1, 4);
    std::uniform_int_distribution<int> sents_dist(1, 6);
    std::uniform_int_distribution<int> len_dist(1, 10);
    std::uniform_int_distribution<std::size_t> budget_dist(10, max_tokens);

    const std::size_t budget = budget_dist(rng);
    const int ndocs = docs_dist(rng);
    for (int d = 0; d < ndocs && corpus.token_count < budget; ++d) {
        Document doc;
        doc.id = "d" + std::to_string(d);
        doc.has_marker = true;
        const int nsents = sents_dist(rng);
        for (int s = 0; s < nsents && corpus.token_count < budget; ++s) {
            Sentence sent;
            const int len = len_dist(rng);
            for (int t = 0; t < len && corpus.token_count < budget; ++t) {
                const auto& [surface, pos] = kVocab[vocab_dist(rng)];
                sent.tokens.push_back(Token{surface, pos, ""});
                ++corpus.token_count;
            }
            if (!sent.tokens.empty()) doc.sentences.push_back(std::move(sent));
        }
        if (!doc.sentences.empty()) corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

const SketchGrammar& stress_grammar() {
    static const SketchGrammar grammar = [] {
        auto parsed = parse_grammar(
            "relation Subject := @N* (D*|SHI){0,2} NODE\n"
            "relation Object := NODE @N*\n"
            "relation Modifier := @(A*|VH*) NODE\n"
            "relation BaObject := \xe6\x8a\x8a* @N* _{0,2} NODE\n"
            "relation Window := @_ NODE\n"
            "relation RightV := NODE _{1,3} @V*\n"
            "relation DoubleN := N*{0,1} @N* NODE\n"
            "relation Wide := (P|D*){0,2} @_ NODE _{0,2} V*{0,1}\n",
            "<stress>");
        if (!parsed.ok()) throw std::logic_error("stress grammar failed to parse");
        return std::move(*parsed.grammar);
    }();
    return grammar;
}

}  // namespace lexcontrast::testsupport
