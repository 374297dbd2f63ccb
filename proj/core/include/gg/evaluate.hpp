#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gg/chart.hpp"
#include "gg/grammar.hpp"
#include "gg/tree.hpp"

namespace gg {

using TagSequence = std::vector<std::string>;

std::vector<TagSequence> read_corpus(const std::string& path);
std::vector<TagSequence> parse_corpus(std::string_view text);

struct Coverage {
    std::size_t total = 0;
    std::size_t parsed = 0;
    std::vector<std::string> warnings;
    std::size_t edges = 0;
    std::size_t bounded = 0;

    // undefined for an empty corpus
    std::optional<double> fraction() const;
};

// Parses each line with learning off.
Coverage coverage(Grammar& g, const Lexicon& lex, const std::vector<TagSequence>& corpus, const ParserLimits& limits);
std::optional<double> undergen(Grammar& g, const Lexicon& lex, const std::vector<TagSequence>& corpus,
                               const ParserLimits& limits);
std::optional<double> overgen(Grammar& g, const Lexicon& lex, const std::vector<TagSequence>& strings,
                              const ParserLimits& limits);

// Terminals drawn with std::mt19937_64(seed), index = next() % |terminals|,
// in lexicon file order.
std::vector<TagSequence> gen_random(const Lexicon& lex, std::size_t length, std::size_t count, std::uint64_t seed);

std::vector<std::string> normalize_tree(const ParaphraseMap& pm, const FeatureRegistry& reg, const ParseTree& t);
std::vector<std::string> normalize_tree(const LabelledTree& t);

double match_parse(std::vector<std::string> test, const std::vector<std::string>& bench);

struct BenchmarkPair {
    TagSequence sentence;
    LabelledTree tree;
};

// sentence = leaves of the bracketing, one tree per line
std::vector<BenchmarkPair> read_benchmarks(std::string_view text, bool sec_style);

struct Summary {
    double mean = 0;
    double sd = 0;  // sample standard deviation
    std::size_t n = 0;
};
Summary summarize(const std::vector<double>& xs);

struct Plausibility {
    std::vector<double> scores;
    Summary summary;
};

Plausibility plausibility(Grammar& g, const Lexicon& lex, const std::vector<BenchmarkPair>& pairs, std::size_t k,
                          const ParaphraseMap& pm, const ParserLimits& limits);

// Welch two-sample t; throws when both variances vanish
double t_test(const std::vector<double>& a, const std::vector<double>& b);
double t_from_summary(const Summary& a, const Summary& b);

struct EvalReport {
    std::optional<double> undergen;
    std::optional<double> overgen;
    std::optional<Plausibility> plausibility;
    std::size_t test_lines = 0;
    std::size_t random_strings = 0;
    std::size_t edges = 0;
    double seconds = 0;

    std::string to_tsv() const;
    std::string summary_text() const;
};

}  // namespace gg
