#include "lexcontrast/sketch_grammar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lexcontrast {

namespace {

struct RawToken {
    std::string text;
    std::size_t column = 0;  // 1-based
};

std::vector<RawToken> split_tokens(std::string_view line) {
    std::vector<RawToken> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

// `N*{0,2}` -> base `N*`, bounds (0,2). Returns false on malformed bounds.
bool split_quantifier(std::string_view text, std::string_view& base,
                      std::optional<std::pair<std::uint32_t, std::uint32_t>>& bounds,
                      std::string& error) {
    bounds.reset();
    base = text;
    if (text.empty() || text.back() != '}') return true;
    std::size_t open = text.rfind('{');
    if (open == std::string_view::npos) {
        error = "malformed quantifier: missing '{'";
        return false;
    }
    std::string_view body = text.substr(open + 1, text.size() - open - 2);
    std::size_t comma = body.find(',');
    if (comma == std::string_view::npos) {
        error = "malformed quantifier: expected {m,n}";
        return false;
    }
    std::uint32_t m = 0, n = 0;
    auto parse_uint = [](std::string_view s, std::uint32_t& v) {
        if (s.empty()) return false;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        return ec == std::errc{} && p == s.data() + s.size();
    };
    if (!parse_uint(body.substr(0, comma), m) || !parse_uint(body.substr(comma + 1), n)) {
        error = "malformed quantifier: expected {m,n}";
        return false;
    }
    if (m > n) {
        error = "malformed quantifier: lower bound exceeds upper bound";
        return false;
    }
    if (n > 5) {
        error = "malformed quantifier: upper bound exceeds 5";
        return false;
    }
    base = text.substr(0, open);
    bounds = {m, n};
    return true;
}

std::string_view strip_comment(std::string_view line) {
    // line-leading or whitespace-preceded '#'
    if (!line.empty() && line.front() == '#') return {};
    for (std::size_t i = 1; i < line.size(); ++i) {
        if (line[i] == '#' && std::isspace(static_cast<unsigned char>(line[i - 1])))
            return line.substr(0, i);
    }
    return line;
}

}  // namespace

GrammarParseResult parse_grammar(std::string_view text, std::string source_name) {
    SketchGrammar grammar;
    grammar.source_name = std::move(source_name);
    std::vector<Diagnostic> diags;
    std::set<std::string> names;

    std::istringstream in{std::string(text)};
    std::string raw_line;
    std::size_t lineno = 0;
    while (std::getline(in, raw_line)) {
        ++lineno;
        if (!raw_line.empty() && raw_line.back() == '\r') raw_line.pop_back();
        std::string_view line = strip_comment(raw_line);
        std::vector<RawToken> toks = split_tokens(line);
        if (toks.empty()) continue;

        auto fail = [&](std::size_t column, std::string msg) {
            diags.push_back({lineno, column, std::move(msg)});
        };

        if (toks[0].text != "relation") {
            fail(toks[0].column, "expected 'relation <Name> := <atom>+'");
            continue;
        }
        if (toks.size() < 4 || toks[2].text != ":=") {
            fail(toks.size() > 1 ? toks[1].column : toks[0].column,
                 "expected 'relation <Name> := <atom>+'");
            continue;
        }
        RelationRule rule;
        rule.name = toks[1].text;
        if (!names.insert(rule.name).second) {
            fail(toks[1].column, "duplicate rule name '" + rule.name + "'");
            continue;
        }

        bool bad = false;
        std::optional<std::size_t> node_at;
        std::optional<std::size_t> capture_at;
        for (std::size_t i = 3; i < toks.size(); ++i) {
            std::string_view atom_text = toks[i].text;
            PatternAtom atom;
            if (atom_text.starts_with('@')) {
                atom.capture = true;
                atom_text.remove_prefix(1);
            }
            std::string_view base;
            std::optional<std::pair<std::uint32_t, std::uint32_t>> bounds;
            std::string qerror;
            if (!split_quantifier(atom_text, base, bounds, qerror)) {
                fail(toks[i].column, qerror);
                bad = true;
                continue;
            }
            if (bounds) {
                atom.quantified = true;
                atom.min = bounds->first;
                atom.max = bounds->second;
            }
            if (base == "NODE") {
                atom.is_node = true;
                if (atom.capture) {
                    fail(toks[i].column, "NODE cannot be the capture atom");
                    bad = true;
                }
                if (atom.quantified) {
                    fail(toks[i].column, "NODE cannot carry a quantifier");
                    bad = true;
                }
                if (node_at) {
                    fail(toks[i].column, "pattern must contain NODE exactly once");
                    bad = true;
                }
                node_at = rule.atoms.size();
            } else {
                auto matcher = TagPattern::parse(base);
                if (!matcher) {
                    fail(toks[i].column, "bad atom syntax '" + std::string(base) + "'");
                    bad = true;
                    continue;
                }
                atom.matcher = std::move(*matcher);
                if (atom.capture) {
                    if (atom.quantified) {
                        fail(toks[i].column, "the capture atom cannot carry a quantifier");
                        bad = true;
                    }
                    if (capture_at) {
                        fail(toks[i].column, "pattern must contain at most one '@' capture");
                        bad = true;
                    }
                    capture_at = rule.atoms.size();
                }
            }
            rule.atoms.push_back(std::move(atom));
        }
        if (bad) continue;
        if (!node_at) {
            fail(toks[3].column, "pattern must contain NODE exactly once");
            continue;
        }
        rule.node_index = *node_at;
        if (!capture_at) {
            // default capture: leftmost unquantified non-NODE atom
            for (std::size_t i = 0; i < rule.atoms.size(); ++i) {
                if (!rule.atoms[i].is_node && !rule.atoms[i].quantified) {
                    capture_at = i;
                    break;
                }
            }
            if (!capture_at) {
                fail(toks[3].column, "pattern needs a capture atom");
                continue;
            }
            rule.atoms[*capture_at].capture = true;
        }
        rule.capture_index = *capture_at;
        grammar.rules.push_back(std::move(rule));
    }

    GrammarParseResult result;
    result.diagnostics = std::move(diags);
    if (result.diagnostics.empty()) result.grammar = std::move(grammar);
    return result;
}

GrammarParseResult parse_grammar_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read grammar file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_grammar(buf.str(), path);
}

std::string render_rule(const RelationRule& rule) {
    std::string out = "relation " + rule.name + " :=";
    for (const PatternAtom& atom : rule.atoms) {
        out += ' ';
        if (atom.capture) out += '@';
        out += atom.is_node ? "NODE" : atom.matcher.render();
        if (atom.quantified)
            out += '{' + std::to_string(atom.min) + ',' + std::to_string(atom.max) + '}';
    }
    return out;
}

std::string render_grammar(const SketchGrammar& grammar) {
    std::string out;
    for (const RelationRule& rule : grammar.rules) {
        out += render_rule(rule);
        out += '\n';
    }
    return out;
}

const char* const kBuiltinGrammarText =
    "# Stand-in grammatical relations for Sinica-style prefix tagsets.\n"
    "# Subject: N-prefixed capture before the node, skipping up to two\n"
    "# adverbs or auxiliaries; Object: N-prefixed capture right after the\n"
    "# node; Modifier: stative/adjectival tag before the node; BaObject:\n"
    "# the noun governed by a ba-construction in front of the node.\n"
    "relation Subject := @N* (D*|SHI){0,2} NODE\n"
    "relation Object := NODE @N*\n"
    "relation Modifier := @(A*|VH*) NODE\n"
    "relation BaObject := \xE6\x8A\x8A* @N* _{0,2} NODE\n";

const SketchGrammar& builtin_grammar() {
    static const SketchGrammar grammar = [] {
        auto parsed = parse_grammar(kBuiltinGrammarText, "<builtin>");
        if (!parsed.ok()) throw std::logic_error("builtin grammar failed to parse");
        return std::move(*parsed.grammar);
    }();
    return grammar;
}

namespace {

// Tile tokens[lo, hi) with atoms[ai..] exactly; counts are chosen greedily
// (largest first), so the first full tiling found is the lexicographically
// maximal count vector.
bool tile(const std::vector<PatternAtom>& atoms, std::size_t ai, std::size_t a_end,
          const Sentence& sent, std::size_t lo, std::size_t hi,
          std::vector<std::uint32_t>& counts) {
    if (ai == a_end) return lo == hi;
    const PatternAtom& atom = atoms[ai];
    const std::size_t remaining = hi - lo;
    const std::uint32_t cmin = atom.quantified ? atom.min : 1;
    const std::uint32_t cmax = atom.quantified ? atom.max : 1;
    if (cmin > remaining) return false;
    std::uint32_t take_max = std::min<std::uint32_t>(cmax, static_cast<std::uint32_t>(remaining));
    for (std::uint32_t c = take_max + 1; c-- > cmin;) {
        bool ok = true;
        for (std::uint32_t k = 0; k < c; ++k) {
            if (!atom.matcher.matches_token(sent.tokens[lo + k])) { ok = false; break; }
        }
        if (!ok) continue;
        counts[ai] = c;
        if (tile(atoms, ai + 1, a_end, sent, lo + c, hi, counts)) return true;
    }
    return false;
}

std::uint32_t sum_min(const std::vector<PatternAtom>& atoms, std::size_t b, std::size_t e) {
    std::uint32_t s = 0;
    for (std::size_t i = b; i < e; ++i) s += atoms[i].quantified ? atoms[i].min : 1;
    return s;
}

std::uint32_t sum_max(const std::vector<PatternAtom>& atoms, std::size_t b, std::size_t e) {
    std::uint32_t s = 0;
    for (std::size_t i = b; i < e; ++i) s += atoms[i].quantified ? atoms[i].max : 1;
    return s;
}

std::optional<PatternMatch> match_rule(const RelationRule& rule, const Sentence& sent,
                                       std::uint32_t document, std::uint32_t sentence_index,
                                       std::uint32_t node_offset) {
    const std::size_t len = sent.tokens.size();
    const std::size_t node = node_offset;
    const std::size_t np = rule.node_index;
    const std::size_t natoms = rule.atoms.size();
    std::vector<std::uint32_t> counts(natoms, 0);
    counts[np] = 1;

    // prefix: maximal feasible length wins (leftmost start)
    const std::uint32_t pre_min = sum_min(rule.atoms, 0, np);
    const std::uint32_t pre_cap = std::min<std::uint32_t>(sum_max(rule.atoms, 0, np),
                                                          static_cast<std::uint32_t>(node));
    bool pre_ok = false;
    for (std::uint32_t m = pre_cap + 1; m-- > pre_min;) {
        if (tile(rule.atoms, 0, np, sent, node - m, node, counts)) { pre_ok = true; break; }
    }
    if (!pre_ok) return std::nullopt;

    // suffix: longest feasible length wins
    const std::size_t after = len - node - 1;
    const std::uint32_t suf_min = sum_min(rule.atoms, np + 1, natoms);
    const std::uint32_t suf_cap = std::min<std::uint32_t>(sum_max(rule.atoms, np + 1, natoms),
                                                          static_cast<std::uint32_t>(after));
    bool suf_ok = false;
    for (std::uint32_t l = suf_cap + 1; l-- > suf_min;) {
        if (tile(rule.atoms, np + 1, natoms, sent, node + 1, node + 1 + l, counts)) {
            suf_ok = true;
            break;
        }
    }
    if (!suf_ok) return std::nullopt;

    // locate the capture token from the chosen counts
    std::size_t pos;
    if (rule.capture_index < np) {
        std::size_t span = 0;
        for (std::size_t i = 0; i < np; ++i) span += counts[i];
        pos = node - span;
        for (std::size_t i = 0; i < rule.capture_index; ++i) pos += counts[i];
    } else {
        pos = node + 1;
        for (std::size_t i = np + 1; i < rule.capture_index; ++i) pos += counts[i];
    }
    PatternMatch m;
    m.relation = rule.name;
    m.node_position = TokenRef{document, sentence_index, node_offset};
    m.collocate_position = TokenRef{document, sentence_index, static_cast<std::uint32_t>(pos)};
    m.collocate_surface = sent.tokens[pos].surface;
    return m;
}

}  // namespace

std::vector<PatternMatch> match_relations(const SketchGrammar& grammar,
                                          const Sentence& sentence,
                                          std::uint32_t document,
                                          std::uint32_t sentence_index,
                                          const std::vector<std::uint32_t>& node_offsets) {
    std::vector<PatternMatch> out;
    for (const RelationRule& rule : grammar.rules) {
        for (std::uint32_t off : node_offsets) {
            if (off >= sentence.tokens.size()) continue;
            if (auto m = match_rule(rule, sentence, document, sentence_index, off))
                out.push_back(std::move(*m));
        }
    }
    return out;
}

WordSketch word_sketch(const FrequencyIndex& index, const Corpus& corpus,
                       std::string_view node, const SketchGrammar& grammar) {
    WordSketch sketch;
    sketch.node = std::string(node);
    sketch.corpus_name = index.corpus_name;
    sketch.node_total = word_freq(index, node);
    if (sketch.node_total == 0) return sketch;

    // group node occurrences per sentence, then match rule by rule
    std::map<std::string, std::map<std::string, std::uint64_t>> counts;  // relation -> collocate -> f
    const std::vector<TokenRef>& refs = positions(index, node);
    std::size_t i = 0;
    while (i < refs.size()) {
        std::size_t j = i;
        std::vector<std::uint32_t> offsets;
        while (j < refs.size() && refs[j].document == refs[i].document &&
               refs[j].sentence == refs[i].sentence) {
            offsets.push_back(refs[j].offset);
            ++j;
        }
        const Sentence& sent = corpus.sentence_at(refs[i]);
        for (PatternMatch& m :
             match_relations(grammar, sent, refs[i].document, refs[i].sentence, offsets))
            ++counts[m.relation][m.collocate_surface];
        i = j;
    }

    for (const RelationRule& rule : grammar.rules) {
        auto it = counts.find(rule.name);
        std::vector<CollocationRecord>& records = sketch.relations[rule.name];
        if (it == counts.end()) continue;
        for (const auto& [collocate, f] : it->second) {
            CollocationRecord rec;
            rec.node = sketch.node;
            rec.collocate = collocate;
            rec.relation = rule.name;
            rec.f = f;
            rec.node_total = sketch.node_total;
            rec.nf = normalized_frequency(f, sketch.node_total);
            rec.mi = mutual_information(f, sketch.node_total, word_freq(index, collocate),
                                        index.total_tokens);
            rec.t = t_score(f, sketch.node_total, word_freq(index, collocate),
                            index.total_tokens);
            records.push_back(std::move(rec));
        }
        std::sort(records.begin(), records.end(),
                  [](const CollocationRecord& a, const CollocationRecord& b) {
                      if (a.f != b.f) return a.f > b.f;
                      if (a.mi != b.mi) return a.mi > b.mi;
                      return a.collocate < b.collocate;
                  });
    }
    return sketch;
}

}  // namespace lexcontrast
