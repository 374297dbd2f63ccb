#pragma once

#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gg/grammar.hpp"
#include "gg/tree.hpp"

namespace gg {

struct ParserLimits {
    std::size_t max_parses = 0;  // 0: unbounded
    std::size_t max_edges = 0;   // 0: unbounded
};

inline constexpr std::size_t kTreeCap = 1000;

struct ParseFlags {
    bool learning = true;
    bool super_binary = true;
    bool super_unary = false;
    // drop super instantiations that an existing rule already covers
    bool skip_covered = true;
    std::size_t max_trees = 0;  // 0: up to kTreeCap
};

struct Edge {
    int id = -1;
    int start = 0, end = 0;
    const Rule* rule = nullptr;  // valid during the parse only
    std::string rule_name;       // empty for lexical edges
    std::size_t arity = 0;
    bool is_super = false;
    std::string token;           // lexical edges only
    std::vector<Tuple> alts;     // [mother, daughter...]; lexical: [fs]
    std::size_t dot = 0;
    std::vector<int> found;  // first derivation
    // every derivation as (previous active edge or -1, daughter edge)
    std::vector<std::pair<int, int>> derivations;
    bool bad = false;
    std::vector<std::string> reasons;  // why a bad edge was rejected
    std::optional<double> score;
    std::shared_ptr<Rule> constructed;
    Category category;  // mother category of an inactive edge

    bool lexical() const { return rule_name.empty(); }
    bool inactive() const { return lexical() || dot == arity; }
    // the constructed rule's id once a super edge is accepted
    const std::string& rule_id() const { return constructed ? constructed->id : rule_name; }
    // instantiated category of found daughter i
    Category found_category(std::size_t i) const;
};

struct CriticDecision {
    bool accept = true;
    std::vector<std::string> reasons;
    std::optional<Rule> rule;
    std::optional<double> score;
};

class Chart;

struct ParseHooks {
    // called for a super edge once all its daughters are found
    std::function<CriticDecision(const Chart&, const Edge&)> critic;
    // called for every other new non-lexical inactive edge
    std::function<std::optional<double>(const Chart&, const Edge&)> scorer;
};

class Chart {
public:
    explicit Chart(std::size_t n) : n_(n), starts_(n + 1), ends_(n + 1) {}

    std::size_t length() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[id]; }
    Edge& edge(int id) { return edges_[id]; }

    // id of the new edge, or of the identical edge that absorbed its derivation
    std::pair<int, bool> insert(Edge e, const FeatureRegistry& reg);
    ParseTree tree(int id, const Category* instantiated = nullptr) const;
    // every derivation of an inactive edge, at most `cap`
    std::vector<ParseTree> trees(int id, std::size_t cap) const;
    std::vector<int> spanning(const FeatureStructure& root_pattern) const;

    std::deque<int> agenda;
    std::vector<int> inactive_from(int vertex) const;
    std::vector<int> active_to(int vertex) const;
    void settle(int id);

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, int> keys_;

    std::vector<ParseTree> derive(int id, std::size_t cap, std::vector<char>& open) const;
    std::vector<std::vector<ParseTree>> sequences(int id, std::size_t cap, std::vector<char>& open) const;
    std::vector<std::vector<int>> starts_, ends_;  // settled inactive by start, active by end
};

struct ParseOptions {
    ParseFlags flags;
    ParserLimits limits;
    ParseHooks hooks;
    FeatureStructure root = FeatureStructure::empty();
    std::ostream* trace = nullptr;
};

struct ParseResult {
    std::vector<ParseTree> parses;
    std::vector<std::string> acquired;  // retained learnt rule ids
    std::size_t edges = 0;
    bool bounded = false;
    bool learning_phase = false;  // super rules were seeded
    std::size_t alternative_caps = 0;
    std::shared_ptr<Chart> chart;
};

// Parses a token sequence; in learning mode acquired rules are added to `g`.
ParseResult parse(const std::vector<std::string>& tokens, Grammar& g, const Lexicon& lex, const ParseOptions& opt);

}  // namespace gg
