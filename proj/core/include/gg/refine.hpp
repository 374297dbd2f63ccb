#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gg/grammar.hpp"
#include "gg/treebank.hpp"

namespace gg {

struct RefineParams {
    double theta = 0.001;
};

// geometric mean of lookup(lhs, rhs_j) over the daughters
double candidate_score(const TripleStore& store, const Rule& r, const FeatureStructure& lhs);

struct LhsRefinement {
    std::size_t candidates = 0;
    double best = 0;
    bool unique = false;
    std::optional<Rule> rule;  // set when the LHS changed
};

LhsRefinement refine_lhs(const TripleStore& store, const Rule& r);
// best candidate score over the LHS readings
double rule_score(const TripleStore& store, const Rule& r);

std::vector<std::string> prune_low_score(const TripleStore& store, Grammar& g, double theta);
std::vector<std::string> prune_unsupported(Grammar& g);

struct RefineReport {
    std::vector<std::string> lines;
    std::vector<std::string> refined;
    std::vector<std::string> pruned;
    std::vector<std::string> unsupported;

    bool empty() const { return refined.empty() && pruned.empty() && unsupported.empty(); }
};

class ParaphraseMap;
RefineReport refine_grammar(const TripleStore& store, Grammar& g, const RefineParams& params,
                            const ParaphraseMap* labels = nullptr);

// "LHS -> D1 D2" using paraphrase labels
std::string paraphrase_rule(const Rule& r, const ParaphraseMap& pm, const FeatureRegistry& reg);

}  // namespace gg
