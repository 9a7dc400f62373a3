// lexcontrast: corpus-contrast toolkit CLI.
//
// Subcommands mirror the analysis pipeline: index, keyness, sketch, diff,
// profile, kwic, report. Informational output goes to stdout (or --out),
// diagnostics to stderr. Exit codes: 0 success, 1 analysis or file errors,
// 2 usage errors.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lexcontrast/contrast.hpp"
#include "lexcontrast/corpus.hpp"
#include "lexcontrast/freq_index.hpp"
#include "lexcontrast/kwic.hpp"
#include "lexcontrast/report.hpp"
#include "lexcontrast/sketch_grammar.hpp"

using namespace lexcontrast;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnalysisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write output file: " + out_path);
    file << content;
    if (!file) throw std::runtime_error("write failed: " + out_path);
}

std::string default_name(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

Corpus load_corpus(const std::string& path, std::string name) {
    if (name.empty()) name = default_name(path);
    CorpusParseResult parsed = parse_vertical_file(path, std::move(name));
    if (!parsed.ok()) {
        std::cerr << format_diagnostics(parsed.diagnostics, path);
        throw AnalysisError("corpus file has errors: " + path);
    }
    return std::move(parsed.corpus);
}

SketchGrammar load_grammar(const std::string& path) {
    if (path.empty()) return builtin_grammar();
    GrammarParseResult parsed = parse_grammar_file(path);
    if (!parsed.ok()) {
        std::cerr << format_diagnostics(parsed.diagnostics, path);
        throw AnalysisError("grammar rejected: " + path);
    }
    return std::move(*parsed.grammar);
}

EventMarkerLexicon load_lexicon(const std::string& path) {
    if (path.empty()) return builtin_lexicon();
    LexiconParseResult parsed = parse_marker_lexicon_file(path);
    if (!parsed.ok()) {
        std::cerr << format_diagnostics(parsed.diagnostics, path);
        throw AnalysisError("marker lexicon rejected: " + path);
    }
    return std::move(*parsed.lexicon);
}

void require_node(const FrequencyIndex& index, const std::string& node) {
    if (word_freq(index, node) == 0)
        throw AnalysisError("node word '" + node + "' not found in corpus " +
                            index.corpus_name);
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// ---- subcommand options ----

struct IndexArgs {
    std::string corpus_path, name, cache_path;
    unsigned workers = 1;
};

struct KeynessArgs {
    std::string corpus_a, corpus_b, name_a, name_b;
    std::vector<std::string> words;
    std::vector<std::uint64_t> manual;
};

struct SketchArgs {
    std::string corpus_path, name, grammar_path, node;
};

struct DiffArgs {
    std::string corpus_path, name, grammar_path, node_a, node_b;
    std::vector<std::string> relations;
    std::uint64_t exclusivity_max = 0;
};

struct ProfileArgs {
    std::string corpus_path, name, lexicon_path, node;
    double strong = 10.0, weak = 0.5;
};

struct KwicArgs {
    std::string corpus_path, name, node, pos;
    std::uint32_t width = 8;
    std::uint64_t max_lines = 25;
    unsigned gutter = 32;
    bool cross_sentence = false;
    bool tsv = false;
};

struct ReportArgs {
    std::string corpus_a, corpus_b, name_a, name_b, node_a, node_b;
    std::string grammar_path, lexicon_path, field_map_path;
    std::uint64_t exclusivity_max = 0;
    double strong = 10.0, weak = 0.5;
};

int run_index(const IndexArgs& args, const std::string& format, const std::string& out) {
    Corpus corpus = load_corpus(args.corpus_path, args.name);
    const std::string digest = corpus_digest(corpus);
    FrequencyIndex index;
    bool reused = false;
    if (!args.cache_path.empty()) {
        if (auto cached = load_index(args.cache_path, digest)) {
            index = std::move(*cached);
            reused = true;
        }
    }
    if (!reused) index = build_index(corpus, args.workers);
    if (!args.cache_path.empty() && !reused) save_index(index, digest, args.cache_path);
    if (!args.cache_path.empty())
        std::cerr << "index cache " << (reused ? "reused: " : "written: ")
                  << args.cache_path << '\n';

    CorpusSummary summary = corpus_summary(corpus);
    if (format == "machine") {
        nlohmann::json tags = nlohmann::json::array();
        for (const auto& [tag, count] : summary.tag_inventory)
            tags.push_back({{"tag", tag}, {"count", count}});
        write_output(out, dump_json({{"corpus", corpus.name},
                                     {"digest", digest},
                                     {"tokens", summary.tokens},
                                     {"sentences", summary.sentences},
                                     {"documents", summary.documents},
                                     {"distinct_surfaces", summary.distinct_surfaces},
                                     {"tags", std::move(tags)}}));
    } else {
        std::ostringstream text;
        text << "corpus: " << corpus.name << '\n'
             << "digest: " << digest << '\n'
             << "tokens: " << summary.tokens << '\n'
             << "sentences: " << summary.sentences << '\n'
             << "documents: " << summary.documents << '\n'
             << "distinct surfaces: " << summary.distinct_surfaces << '\n'
             << "tags:";
        for (const auto& [tag, count] : summary.tag_inventory)
            text << ' ' << tag << '=' << count;
        text << '\n';
        write_output(out, text.str());
    }
    return 0;
}

int run_keyness(const KeynessArgs& args, const std::string& format, const std::string& out) {
    std::vector<KeynessResult> rows;
    if (!args.manual.empty()) {
        if (args.manual.size() != 4)
            throw UsageError("--manual requires exactly 4 integers: a b n1 n2");
        KeynessResult row;
        row.word = "(manual)";
        row.corpus_a_name = "A";
        row.corpus_b_name = "B";
        row.score = log_likelihood(args.manual[0], args.manual[1], args.manual[2],
                                   args.manual[3]);
        rows.push_back(std::move(row));
    } else {
        if (args.corpus_a.empty() || args.corpus_b.empty())
            throw UsageError("keyness needs --corpus-a and --corpus-b (or --manual)");
        if (args.words.empty()) throw UsageError("keyness needs at least one --word");
        Corpus corpus_a = load_corpus(args.corpus_a, args.name_a);
        Corpus corpus_b = load_corpus(args.corpus_b, args.name_b);
        if (corpus_a.name == corpus_b.name)
            throw UsageError("corpus names must be distinct: " + corpus_a.name);
        FrequencyIndex index_a = build_index(corpus_a);
        FrequencyIndex index_b = build_index(corpus_b);
        rows = keyness_table(index_a, index_b, args.words);
    }
    if (format == "machine")
        write_output(out, dump_json(keyness_to_json(rows)));
    else
        write_output(out, render_keyness_text(rows));
    return 0;
}

int run_sketch(const SketchArgs& args, const std::string& format, const std::string& out) {
    Corpus corpus = load_corpus(args.corpus_path, args.name);
    FrequencyIndex index = build_index(corpus);
    require_node(index, args.node);
    SketchGrammar grammar = load_grammar(args.grammar_path);
    WordSketch sketch = word_sketch(index, corpus, args.node, grammar);
    if (format == "machine")
        write_output(out, dump_json(sketch_to_json(sketch)));
    else
        write_output(out, render_sketch_text(sketch));
    return 0;
}

int run_diff(const DiffArgs& args, const std::string& format, const std::string& out) {
    Corpus corpus = load_corpus(args.corpus_path, args.name);
    FrequencyIndex index = build_index(corpus);
    if (word_freq(index, args.node_a) == 0 && word_freq(index, args.node_b) == 0)
        throw AnalysisError("neither node word occurs in corpus " + index.corpus_name);
    SketchGrammar grammar = load_grammar(args.grammar_path);
    WordSketch sketch_a = word_sketch(index, corpus, args.node_a, grammar);
    WordSketch sketch_b = word_sketch(index, corpus, args.node_b, grammar);
    std::vector<std::string> relations = args.relations;
    if (relations.empty())
        for (const RelationRule& rule : grammar.rules) relations.push_back(rule.name);

    if (format == "machine") {
        nlohmann::json tables = nlohmann::json::array();
        for (const std::string& relation : relations)
            tables.push_back(contrast_to_json(
                contrast_table(sketch_a, sketch_b, relation, args.exclusivity_max)));
        write_output(out, dump_json({{"corpus", corpus.name}, {"tables", std::move(tables)}}));
    } else {
        std::ostringstream text;
        for (const std::string& relation : relations)
            text << render_contrast_text(
                contrast_table(sketch_a, sketch_b, relation, args.exclusivity_max));
        write_output(out, text.str());
    }
    return 0;
}

int run_profile(const ProfileArgs& args, const std::string& format, const std::string& out) {
    Corpus corpus = load_corpus(args.corpus_path, args.name);
    FrequencyIndex index = build_index(corpus);
    require_node(index, args.node);
    EventMarkerLexicon lexicon = load_lexicon(args.lexicon_path);
    EventProfile profile =
        event_profile(index, corpus, args.node, lexicon, {args.strong, args.weak});
    if (format == "machine")
        write_output(out, dump_json(profile_to_json(profile)));
    else
        write_output(out, render_profile_text(profile));
    return 0;
}

int run_kwic(const KwicArgs& args, const std::string& format, const std::string& out) {
    Corpus corpus = load_corpus(args.corpus_path, args.name);
    FrequencyIndex index = build_index(corpus);
    require_node(index, args.node);
    ConcordanceOptions opts;
    opts.width = args.width;
    opts.max_lines = args.max_lines;
    if (!args.pos.empty()) opts.pos_filter = args.pos;
    opts.cross_sentence = args.cross_sentence;
    std::vector<KWICLine> lines = concordance(index, corpus, args.node, opts);
    const bool show_pos = opts.pos_filter.has_value();
    if (format == "machine")
        write_output(out, dump_json(kwic_to_json(lines)));
    else if (args.tsv)
        write_output(out, render_kwic_tsv(lines, show_pos));
    else
        write_output(out, render_kwic(lines, args.gutter, show_pos));
    return 0;
}

int run_report(const ReportArgs& args, const std::string& format, const std::string& out) {
    Corpus corpus_a = load_corpus(args.corpus_a, args.name_a);
    Corpus corpus_b = load_corpus(args.corpus_b, args.name_b);
    if (corpus_a.name == corpus_b.name)
        throw UsageError("corpus names must be distinct: " + corpus_a.name);
    FrequencyIndex index_a = build_index(corpus_a);
    FrequencyIndex index_b = build_index(corpus_b);
    SketchGrammar grammar = load_grammar(args.grammar_path);
    EventMarkerLexicon lexicon = load_lexicon(args.lexicon_path);

    ReportOptions options;
    options.exclusivity_max = args.exclusivity_max;
    options.thresholds = {args.strong, args.weak};
    if (!args.field_map_path.empty()) {
        FieldMapParseResult parsed = parse_field_map_file(args.field_map_path);
        if (!parsed.ok()) {
            std::cerr << format_diagnostics(parsed.diagnostics, args.field_map_path);
            throw AnalysisError("field map rejected: " + args.field_map_path);
        }
        options.field_map = std::move(*parsed.field_map);
    }

    CrossCorpusReport report =
        cross_corpus_report(corpus_a, index_a, corpus_b, index_b, args.node_a, args.node_b,
                            grammar, lexicon, options);
    if (format == "machine") {
        write_output(out, dump_json(report_to_json(report)));
    } else {
        write_output(out, render_report_text(report));
        // machine-readable sibling with identical content
        if (!out.empty()) write_output(out + ".json", dump_json(report_to_json(report)));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lexcontrast: cross-corpus collocation and keyness toolkit", "lexcontrast"};
    app.fallthrough();  // global flags may follow the subcommand
    app.set_config("--config", "", "key=value config file; flags on the command line win")
        ->envname("LEXCONTRAST_CONFIG");
    std::string format = "text";
    std::string out_path;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "Write output to a file instead of stdout");
    app.require_subcommand(1);

    IndexArgs index_args;
    CLI::App* index_cmd = app.add_subcommand("index", "Build (and cache) a corpus index");
    index_cmd->add_option("--corpus", index_args.corpus_path, "Vertical corpus file")
        ->required();
    index_cmd->add_option("--name", index_args.name, "Corpus name (default: file stem)");
    index_cmd->add_option("--cache", index_args.cache_path,
                          "Index cache file (reused when the corpus digest matches)");
    index_cmd->add_option("--workers", index_args.workers, "Parallel build workers")
        ->check(CLI::Range(1u, 64u));

    KeynessArgs keyness_args;
    CLI::App* keyness_cmd =
        app.add_subcommand("keyness", "Two-corpus log-likelihood keyness");
    keyness_cmd->add_option("--corpus-a", keyness_args.corpus_a, "Corpus A (vertical file)");
    keyness_cmd->add_option("--corpus-b", keyness_args.corpus_b, "Corpus B (vertical file)");
    keyness_cmd->add_option("--name-a", keyness_args.name_a, "Name of corpus A");
    keyness_cmd->add_option("--name-b", keyness_args.name_b, "Name of corpus B");
    keyness_cmd->add_option("--word", keyness_args.words, "Word to score (repeatable)");
    keyness_cmd->add_option("--manual", keyness_args.manual,
                            "Score published counts directly: a b n1 n2")
        ->expected(4);

    SketchArgs sketch_args;
    CLI::App* sketch_cmd = app.add_subcommand("sketch", "Word sketch for one node word");
    sketch_cmd->add_option("--corpus", sketch_args.corpus_path, "Vertical corpus file")
        ->required();
    sketch_cmd->add_option("--name", sketch_args.name, "Corpus name (default: file stem)");
    sketch_cmd->add_option("--grammar", sketch_args.grammar_path,
                           "Sketch grammar file (default: built-in relations)");
    sketch_cmd->add_option("--node", sketch_args.node, "Node word")->required();

    DiffArgs diff_args;
    CLI::App* diff_cmd =
        app.add_subcommand("diff", "Common/only pattern contrast for two node words");
    diff_cmd->add_option("--corpus", diff_args.corpus_path, "Vertical corpus file")
        ->required();
    diff_cmd->add_option("--name", diff_args.name, "Corpus name (default: file stem)");
    diff_cmd->add_option("--grammar", diff_args.grammar_path,
                         "Sketch grammar file (default: built-in relations)");
    diff_cmd->add_option("--node-a", diff_args.node_a, "First node word")->required();
    diff_cmd->add_option("--node-b", diff_args.node_b, "Second node word")->required();
    diff_cmd->add_option("--relation", diff_args.relations,
                         "Relation to contrast (repeatable; default: all)");
    diff_cmd->add_option("--exclusivity-max", diff_args.exclusivity_max,
                         "Max other-node frequency for an only-pattern")
        ->capture_default_str();

    ProfileArgs profile_args;
    CLI::App* profile_cmd =
        app.add_subcommand("profile", "Event-structure profile from marker evidence");
    profile_cmd->add_option("--corpus", profile_args.corpus_path, "Vertical corpus file")
        ->required();
    profile_cmd->add_option("--name", profile_args.name, "Corpus name (default: file stem)");
    profile_cmd->add_option("--lexicon", profile_args.lexicon_path,
                            "Marker lexicon file (default: built-in markers)");
    profile_cmd->add_option("--node", profile_args.node, "Node word")->required();
    profile_cmd->add_option("--strong", profile_args.strong, "Strong-evidence NF threshold")
        ->capture_default_str();
    profile_cmd->add_option("--weak", profile_args.weak, "Weak-evidence NF threshold")
        ->capture_default_str();

    KwicArgs kwic_args;
    CLI::App* kwic_cmd = app.add_subcommand("kwic", "Keyword-in-context concordance");
    kwic_cmd->add_option("--corpus", kwic_args.corpus_path, "Vertical corpus file")
        ->required();
    kwic_cmd->add_option("--name", kwic_args.name, "Corpus name (default: file stem)");
    kwic_cmd->add_option("--node", kwic_args.node, "Node word")->required();
    kwic_cmd->add_option("--width", kwic_args.width, "Context tokens per side")
        ->capture_default_str();
    kwic_cmd->add_option("--max-lines", kwic_args.max_lines, "Maximum concordance lines")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    kwic_cmd->add_option("--pos", kwic_args.pos, "Only node occurrences bearing this tag");
    kwic_cmd->add_flag("--cross-sentence", kwic_args.cross_sentence,
                       "Borrow context from adjacent sentences");
    kwic_cmd->add_flag("--tsv", kwic_args.tsv, "Tab-separated output");
    kwic_cmd->add_option("--gutter", kwic_args.gutter, "Node column position")
        ->capture_default_str();

    ReportArgs report_args;
    CLI::App* report_cmd =
        app.add_subcommand("report", "Full cross-corpus comparison report");
    report_cmd->add_option("--corpus-a", report_args.corpus_a, "Corpus A (vertical file)")
        ->required();
    report_cmd->add_option("--corpus-b", report_args.corpus_b, "Corpus B (vertical file)")
        ->required();
    report_cmd->add_option("--name-a", report_args.name_a, "Name of corpus A");
    report_cmd->add_option("--name-b", report_args.name_b, "Name of corpus B");
    report_cmd->add_option("--node-a", report_args.node_a, "First node word")->required();
    report_cmd->add_option("--node-b", report_args.node_b, "Second node word")->required();
    report_cmd->add_option("--grammar", report_args.grammar_path,
                           "Sketch grammar file (default: built-in relations)");
    report_cmd->add_option("--lexicon", report_args.lexicon_path,
                           "Marker lexicon file (default: built-in markers)");
    report_cmd->add_option("--field-map", report_args.field_map_path,
                           "Collocate-to-field map for the semantic-field section");
    report_cmd->add_option("--exclusivity-max", report_args.exclusivity_max,
                           "Max other-node frequency for an only-pattern")
        ->capture_default_str();
    report_cmd->add_option("--strong", report_args.strong, "Strong-evidence NF threshold")
        ->capture_default_str();
    report_cmd->add_option("--weak", report_args.weak, "Weak-evidence NF threshold")
        ->capture_default_str();

    if (argc <= 1) {
        std::cerr << app.help();
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(index_cmd)) return run_index(index_args, format, out_path);
        if (app.got_subcommand(keyness_cmd)) return run_keyness(keyness_args, format, out_path);
        if (app.got_subcommand(sketch_cmd)) return run_sketch(sketch_args, format, out_path);
        if (app.got_subcommand(diff_cmd)) return run_diff(diff_args, format, out_path);
        if (app.got_subcommand(profile_cmd)) return run_profile(profile_args, format, out_path);
        if (app.got_subcommand(kwic_cmd)) return run_kwic(kwic_args, format, out_path);
        if (app.got_subcommand(report_cmd)) return run_report(report_args, format, out_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
