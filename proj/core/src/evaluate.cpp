#include "gg/evaluate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace gg {

std::vector<TagSequence> parse_corpus(std::string_view text) {
    std::vector<TagSequence> out;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        line = clean_line(line);
        if (line.empty()) continue;
        out.push_back(tokenize(line));
    }
    return out;
}

std::vector<TagSequence> read_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

std::optional<double> Coverage::fraction() const {
    if (total == 0) return std::nullopt;
    return static_cast<double>(parsed) / static_cast<double>(total);
}

namespace {

ParseOptions recognition(const ParserLimits& limits) {
    ParseOptions opt;
    opt.flags.learning = false;
    opt.limits = limits;
    opt.flags.max_trees = 1;
    return opt;
}

std::string join(const TagSequence& s) {
    std::string out;
    for (const auto& w : s) out += (out.empty() ? "" : " ") + w;
    return out;
}

}  // namespace

Coverage coverage(Grammar& g, const Lexicon& lex, const std::vector<TagSequence>& corpus, const ParserLimits& limits) {
    Coverage c;
    ParseOptions opt = recognition(limits);
    for (const auto& s : corpus) {
        ++c.total;
        try {
            ParseResult r = parse(s, g, lex, opt);
            c.edges += r.edges;
            if (r.bounded) ++c.bounded;
            if (!r.parses.empty()) ++c.parsed;
        } catch (const UnknownWordError& e) {
            c.warnings.push_back(std::string(e.what()) + " in: " + join(s));
        }
    }
    return c;
}

std::optional<double> undergen(Grammar& g, const Lexicon& lex, const std::vector<TagSequence>& corpus,
                               const ParserLimits& limits) {
    return coverage(g, lex, corpus, limits).fraction();
}

std::optional<double> overgen(Grammar& g, const Lexicon& lex, const std::vector<TagSequence>& strings,
                              const ParserLimits& limits) {
    return coverage(g, lex, strings, limits).fraction();
}

std::vector<TagSequence> gen_random(const Lexicon& lex, std::size_t length, std::size_t count, std::uint64_t seed) {
    std::vector<TagSequence> out;
    const auto& terms = lex.terminals();
    if (terms.empty()) {
        if (count && length) throw std::invalid_argument("gen_random: empty lexicon");
        return out;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        TagSequence s;
        for (std::size_t j = 0; j < length; ++j) s.push_back(terms[rng() % terms.size()]);
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<std::string> normalize_tree(const ParaphraseMap& pm, const FeatureRegistry& reg, const ParseTree& t) {
    std::vector<std::string> out;
    auto rec = [&](auto&& self, const ParseTree& n) -> void {
        if (n.is_leaf()) {
            out.push_back(n.token);
            return;
        }
        out.push_back(pm.label(n.category, reg));
        for (const auto& c : n.children) self(self, c);
    };
    rec(rec, t);
    return out;
}

std::vector<std::string> normalize_tree(const LabelledTree& t) {
    std::vector<std::string> out;
    auto rec = [&](auto&& self, const LabelledTree& n) -> void {
        out.push_back(n.label);
        for (const auto& c : n.children) self(self, c);
    };
    rec(rec, t);
    return out;
}

double match_parse(std::vector<std::string> test, const std::vector<std::string>& bench) {
    if (bench.empty()) throw std::invalid_argument("match_parse: empty benchmark");
    std::vector<std::size_t> lengths;
    while (!test.empty()) {
        std::size_t best_len = 0, best_at = 0;
        for (std::size_t i = 0; i < test.size(); ++i)
            for (std::size_t j = 0; j < bench.size(); ++j) {
                std::size_t l = 0;
                while (i + l < test.size() && j + l < bench.size() && test[i + l] == bench[j + l]) ++l;
                if (l > best_len) {
                    best_len = l;
                    best_at = i;
                }
            }
        if (best_len == 0) break;
        lengths.push_back(best_len);
        test.erase(test.begin() + static_cast<std::ptrdiff_t>(best_at),
                   test.begin() + static_cast<std::ptrdiff_t>(best_at + best_len));
    }
    if (lengths.empty()) return 0.0;
    double sum = 0;
    for (auto l : lengths) sum += static_cast<double>(l);
    return sum / static_cast<double>(lengths.size()) / static_cast<double>(bench.size());
}

std::vector<BenchmarkPair> read_benchmarks(std::string_view text, bool sec_style) {
    std::vector<BenchmarkPair> out;
    std::istringstream in{std::string(text)};
    for (std::string line; std::getline(in, line);) {
        line = clean_line(line);
        if (line.empty()) continue;
        BenchmarkPair p;
        p.tree = sec_style ? parse_sec_bracketing(line) : parse_bracketing(line);
        auto rec = [&](auto&& self, const LabelledTree& n) -> void {
            if (n.is_leaf()) {
                p.sentence.push_back(n.label);
                return;
            }
            for (const auto& c : n.children) self(self, c);
        };
        rec(rec, p.tree);
        out.push_back(std::move(p));
    }
    return out;
}

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

Plausibility plausibility(Grammar& g, const Lexicon& lex, const std::vector<BenchmarkPair>& pairs, std::size_t k,
                          const ParaphraseMap& pm, const ParserLimits& limits) {
    Plausibility out;
    ParseOptions opt;
    opt.flags.learning = false;
    opt.flags.max_trees = k;
    opt.limits = limits;
    opt.limits.max_parses = k;
    for (const auto& p : pairs) {
        double best = 0;
        try {
            ParseResult r = parse(p.sentence, g, lex, opt);
            auto bench = normalize_tree(p.tree);
            for (const auto& t : r.parses) best = std::max(best, match_parse(normalize_tree(pm, g.registry(), t), bench));
        } catch (const UnknownWordError&) {
        }
        out.scores.push_back(best);
    }
    out.summary = summarize(out.scores);
    return out;
}

double t_from_summary(const Summary& a, const Summary& b) {
    if (a.n < 2 || b.n < 2) throw std::invalid_argument("t_test: need at least two samples each");
    double se2 = a.sd * a.sd / static_cast<double>(a.n) + b.sd * b.sd / static_cast<double>(b.n);
    if (se2 == 0) {
        if (a.mean == b.mean) return 0.0;
        throw std::invalid_argument("t_test: both samples have zero variance");
    }
    return (a.mean - b.mean) / std::sqrt(se2);
}

double t_test(const std::vector<double>& a, const std::vector<double>& b) {
    return t_from_summary(summarize(a), summarize(b));
}

std::string EvalReport::to_tsv() const {
    std::ostringstream out;
    out.precision(6);
    out << std::fixed;
    auto opt = [&](const char* name, const std::optional<double>& v) {
        out << name << "\t";
        if (v)
            out << *v;
        else
            out << "undefined";
        out << "\n";
    };
    out << "test_lines\t" << test_lines << "\n";
    opt("undergen_fraction", undergen);
    out << "random_strings\t" << random_strings << "\n";
    opt("overgen_fraction", overgen);
    if (plausibility) {
        out << "plausibility_n\t" << plausibility->summary.n << "\n";
        out << "plausibility_mean\t" << plausibility->summary.mean << "\n";
        out << "plausibility_sd\t" << plausibility->summary.sd << "\n";
        for (std::size_t i = 0; i < plausibility->scores.size(); ++i)
            out << "plausibility_" << i + 1 << "\t" << plausibility->scores[i] << "\n";
    }
    out << "edges\t" << edges << "\n";
    return out.str();
}

std::string EvalReport::summary_text() const {
    std::ostringstream out;
    out.precision(1);
    out << std::fixed;
    auto pct = [&](const std::optional<double>& v) {
        if (!v) return std::string("undefined");
        std::ostringstream s;
        s.precision(1);
        s << std::fixed << *v * 100 << "%";
        return s.str();
    };
    out << "Test sentences generated   : " << pct(undergen) << " of " << test_lines << "\n";
    out << "Random strings generated   : " << pct(overgen) << " of " << random_strings << "\n";
    if (plausibility) {
        out.precision(3);
        out << "Plausibility mean          : " << plausibility->summary.mean << "\n";
        out << "Plausibility s.d.          : " << plausibility->summary.sd << "\n";
    }
    return out.str();
}

}  // namespace gg
