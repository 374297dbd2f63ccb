#pragma once

#include <map>
#include <string>
#include <vector>

#include "gg/feature_structure.hpp"

namespace gg {

class GrammarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownWordError : public GrammarError {
public:
    explicit UnknownWordError(const std::string& w) : GrammarError("unknown word: " + w), word(w) {}
    std::string word;
};

enum class RuleOrigin { Original, Learnt, SuperUnary, SuperBinary };

// The parse material a learnt rule was seen with: daughter rule ids, or
// |token| markers for lexical daughters.
struct SupportRecord {
    std::vector<std::string> daughters;
    bool operator==(const SupportRecord&) const = default;
};

struct Rule {
    std::string id;
    RuleOrigin origin = RuleOrigin::Original;
    Dag dag;
    std::vector<NodeId> lhs;               // LHS disjunct roots
    std::vector<std::vector<NodeId>> rhs;  // disjunct roots per daughter
    std::vector<SupportRecord> support;

    std::size_t arity() const { return rhs.size(); }
    bool is_super() const { return origin == RuleOrigin::SuperUnary || origin == RuleOrigin::SuperBinary; }
    Category lhs_category() const;
    Category rhs_category(std::size_t i) const;
    // one tuple [lhs, rhs0, ...] per choice of disjuncts
    TupleExpansion alternatives(std::size_t cap = kDefaultExpansionCap) const;
    std::string to_text(const FeatureRegistry& reg) const;

    static Rule super_unary();
    static Rule super_binary();
    static Rule parse(std::string_view line, const FeatureRegistry& reg);
};

class Grammar {
public:
    explicit Grammar(RegistryPtr reg);

    const FeatureRegistry& registry() const { return *reg_; }
    RegistryPtr registry_ptr() const { return reg_; }

    void add(Rule r);
    bool remove(const std::string& id);
    const Rule* find(const std::string& id) const;
    Rule* find(const std::string& id);

    const std::vector<Rule>& rules() const { return rules_; }
    std::vector<Rule>& rules() { return rules_; }
    std::vector<const Rule*> original() const;
    std::vector<const Rule*> learnt() const;
    std::size_t learnt_count() const { return learnt().size(); }

    // retained unless some non-super rule already subsumes it
    bool add_learnt(Rule r);

    int max_bar() const { return max_bar_; }
    void set_max_bar(int b) { max_bar_ = b; }

    // next id for an acquired rule, e.g. *binary7
    std::string fresh_id(std::size_t arity);

    static Grammar parse(std::string_view text, RegistryPtr reg, const std::string& source = "<grammar>");
    static Grammar load(const std::string& path, RegistryPtr reg);
    void merge(const Grammar& other);
    std::string learnt_text() const;

private:
    RegistryPtr reg_;
    std::vector<Rule> rules_;
    int max_bar_ = 0;
    std::size_t counter_ = 0;
};

class Lexicon {
public:
    void add(const std::string& word, FeatureStructure fs);
    // entries for a token in file order, empty when unknown; falls back to lower case
    const std::vector<FeatureStructure>& lookup(const std::string& word) const;
    bool contains(const std::string& word) const;
    const std::vector<std::string>& terminals() const { return order_; }
    std::size_t size() const { return order_.size(); }

    static Lexicon parse(std::string_view text, const FeatureRegistry& reg, const std::string& source = "<lexicon>");
    static Lexicon load(const std::string& path, const FeatureRegistry& reg);
    void merge(const Lexicon& other);

private:
    std::map<std::string, std::vector<FeatureStructure>> entries_;
    std::vector<std::string> order_;
};

class ParaphraseMap {
public:
    struct Entry {
        FeatureStructure pattern;
        std::string name;
        bool phrasal = false;
        bool fixes_bar = false;
    };

    void add(Entry e) { entries_.push_back(std::move(e)); }
    std::string label(const FeatureStructure& fs, const FeatureRegistry& reg) const;
    // distinct labels of the expansions, braced when more than one
    std::string label(const Category& c, const FeatureRegistry& reg) const;
    std::vector<std::string> labels(const Category& c, const FeatureRegistry& reg) const;
    bool empty() const { return entries_.empty(); }

    static ParaphraseMap parse(std::string_view text, const FeatureRegistry& reg, const std::string& source = "<paraphrase>");
    static ParaphraseMap load(const std::string& path, const FeatureRegistry& reg);

private:
    std::vector<Entry> entries_;
};

bool rule_subsumes(const Rule& general, const Rule& specific);

std::vector<std::string> tokenize(std::string_view sentence);
std::string read_file(const std::string& path);
// strips comments ('#' not followed by a digit) and trailing blanks; empty lines yield ""
std::string clean_line(std::string line);

}  // namespace gg
