#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gg/chart.hpp"
#include "gg/constructor.hpp"
#include "gg/model.hpp"
#include "gg/treebank.hpp"

namespace gg {

struct LearnerFlags {
    bool learning = true;
    bool lp = true;
    bool types = true;
    bool hfc = false;
    bool data = false;  // SBL
    bool training = false;
    bool super_binary = true;
    bool super_unary = false;
    bool skip_covered = true;
};

// Everything one learning parse needs; the grammar is updated in place.
struct Learner {
    Grammar& grammar;
    const Lexicon& lexicon;
    const Model& model;
    TripleStore* store = nullptr;
    LearnerFlags flags;
    ParserLimits limits;
    std::ostream* trace = nullptr;

    XBarConfig xbar() const;
    ParseOptions options() const;
    ParseResult parse(const std::vector<std::string>& tokens) const;
    // parses, then trains the store when training is on
    ParseResult process(const std::vector<std::string>& tokens) const;
};

// Rejections are reported with "lp:NAME", "types", "construct:REASON",
// "hfc" and "data" reasons.
CriticDecision garden_critic(const Chart& chart, const Edge& e, const Model& model, const XBarConfig& xbar,
                             const LearnerFlags& flags, const TripleStore* store, const FeatureRegistry& reg);

// the daughters of an inactive edge, with cached scores for interior ones
std::vector<ScoredDaughter> scored_daughters(const Chart& chart, const Edge& e);

// (mother, daughter) pairs of every inactive, non-lexical, non-bad edge
std::vector<std::pair<Category, Category>> local_pairs(const Chart& chart);

}  // namespace gg
