#pragma once

#include <string>
#include <vector>

#include "gg/feature_structure.hpp"

namespace gg {

// Leaves carry a token and nothing else. A node whose only children are
// leaves is a lexical (preterminal) node.
struct ParseTree {
    Category category;
    std::string rule;
    std::string token;
    int edge = -1;
    std::vector<ParseTree> children;

    bool is_leaf() const { return children.empty() && !token.empty(); }
    bool is_preterminal() const;

    static ParseTree leaf(std::string token);
};

// (("S1" ((|Sam|) ("VP" ...)))) style display
std::string to_display(const ParseTree& t);

// Category-free bracketing: "(S (NP Sam) (VP died))"
struct LabelledTree {
    std::string label;
    std::vector<LabelledTree> children;
    bool is_leaf() const { return children.empty(); }
};

LabelledTree parse_bracketing(std::string_view text);
// "[N It_PPH1 N]" style; leaves become their tags
LabelledTree parse_sec_bracketing(std::string_view text);
std::string to_bracketing(const LabelledTree& t);

}  // namespace gg
