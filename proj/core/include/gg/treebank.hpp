#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gg/feature_structure.hpp"
#include "gg/tree.hpp"

namespace gg {

struct Triple {
    FeatureStructure mother;
    FeatureStructure daughter;
    std::uint64_t freq = 0;
};

class TripleStore {
public:
    double delta = 0.001;
    double omega = 0.05;

    void add(const FeatureStructure& mother, const FeatureStructure& daughter, std::uint64_t freq = 1);
    const std::vector<Triple>& triples() const { return triples_; }
    std::uint64_t total() const { return total_; }
    std::size_t size() const { return triples_.size(); }
    void clear();

    double lookup(const Category& a, const Category& b) const;
    double lookup(const FeatureStructure& a, const FeatureStructure& b) const;

    static TripleStore parse(std::string_view text, const FeatureRegistry& reg, const std::string& source = "<triples>");
    static TripleStore load(const std::string& path, const FeatureRegistry& reg);
    std::string to_text(const FeatureRegistry& reg) const;

private:
    std::vector<Triple> triples_;
    std::uint64_t total_ = 0;
    mutable std::map<std::pair<std::string, std::string>, double> memo_;
};

// (mother, daughter) pairs of every local tree, in preorder; lexical
// tokens are not daughters
std::vector<std::pair<Category, Category>> decompose(const ParseTree& t);
// pairs are multiplied out into non-disjunctive readings before merging
void train(TripleStore& store, const std::vector<ParseTree>& trees);
void train_pairs(TripleStore& store, const std::vector<std::pair<Category, Category>>& pairs);

// A daughter of a local tree: interior daughters carry their own score,
// lexical daughters none.
struct ScoredDaughter {
    Category category;
    std::optional<double> score;
};

double geometric_mean(const std::vector<double>& xs);

double score_local(const TripleStore& store, const Category& mother, const std::vector<ScoredDaughter>& ds);
double score_tree(const TripleStore& store, const ParseTree& t);
// the value compared against omega
double judge_value(const TripleStore& store, const Category& mother, const std::vector<ScoredDaughter>& ds);
bool judge(const TripleStore& store, const Category& mother, const std::vector<ScoredDaughter>& ds);

}  // namespace gg
