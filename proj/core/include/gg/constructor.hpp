#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gg/grammar.hpp"
#include "gg/model.hpp"

namespace gg {

class ConstructError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Reject { None, Minor, MaxBar, NoBar, NoHeadCandidate };
const char* to_string(Reject r);

struct Construction {
    std::optional<Rule> rule;
    Reject reason = Reject::None;
};

// Reject::None for a major category with a usable bar level
Reject classify(const Dag& dag, NodeId d, const XBarConfig& cfg, const FeatureRegistry& reg);
std::optional<int> bar_of(const Dag& dag, NodeId d, const XBarConfig& cfg, const FeatureRegistry& reg);

// projection of d at the given bar levels; throws on minor input or a level
// above max_bar
FeatureStructure project(const FeatureStructure& d, std::vector<int> bars, const XBarConfig& cfg,
                         const FeatureRegistry& reg);

Construction construct_unary(const FeatureStructure& d, const XBarConfig& cfg, const FeatureRegistry& reg);
Construction construct_binary(const FeatureStructure& d1, const FeatureStructure& d2, const XBarConfig& cfg,
                              const FeatureRegistry& reg);

// Builds one rule from the instantiations of a super edge. Each tuple holds
// [mother, daughter...]; the mothers are ignored.
Construction construct(const std::vector<const Tuple*>& alts, const XBarConfig& cfg, const FeatureRegistry& reg);

}  // namespace gg
