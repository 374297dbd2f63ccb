#include "gg/tree.hpp"

#include <cctype>
#include <stdexcept>

namespace gg {

bool ParseTree::is_preterminal() const {
    if (children.empty()) return false;
    for (const auto& c : children)
        if (!c.is_leaf()) return false;
    return true;
}

ParseTree ParseTree::leaf(std::string token) {
    ParseTree t;
    t.token = std::move(token);
    return t;
}

namespace {

void display(const ParseTree& t, std::string& out) {
    if (t.is_preterminal()) {
        out += "(";
        for (std::size_t i = 0; i < t.children.size(); ++i) {
            if (i) out += " ";
            out += "|" + t.children[i].token + "|";
        }
        out += ")";
        return;
    }
    if (t.is_leaf()) {
        out += "|" + t.token + "|";
        return;
    }
    out += "(\"" + t.rule + "\" (";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (i) out += " ";
        display(t.children[i], out);
    }
    out += "))";
}

struct BracketReader {
    std::string_view s;
    std::size_t pos = 0;

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    std::string atom() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')')
            ++pos;
        if (start == pos) throw std::runtime_error("bracketing: expected a label at offset " + std::to_string(pos));
        return std::string(s.substr(start, pos - start));
    }
    LabelledTree node() {
        ws();
        if (pos >= s.size()) throw std::runtime_error("bracketing: unexpected end");
        if (s[pos] != '(') return LabelledTree{atom(), {}};
        ++pos;
        LabelledTree t{atom(), {}};
        while (true) {
            ws();
            if (pos >= s.size()) throw std::runtime_error("bracketing: unbalanced parentheses");
            if (s[pos] == ')') {
                ++pos;
                return t;
            }
            t.children.push_back(node());
        }
    }
};

}  // namespace

std::string to_display(const ParseTree& t) {
    std::string out = "(";
    display(t, out);
    return out + ")";
}

LabelledTree parse_bracketing(std::string_view text) {
    BracketReader r{text};
    LabelledTree t = r.node();
    r.ws();
    if (r.pos != text.size()) throw std::runtime_error("bracketing: trailing input");
    return t;
}

LabelledTree parse_sec_bracketing(std::string_view text) {
    // rewrite "[N a_X b_Y N]" as "(N X Y)" then reuse the plain reader
    std::string out;
    std::size_t i = 0;
    auto word_end = [&](std::size_t j) {
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '[' && text[j] != ']')
            ++j;
        return j;
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            out += ' ';
            ++i;
        } else if (c == '[') {
            std::size_t j = word_end(i + 1);
            out += "(" + std::string(text.substr(i + 1, j - i - 1));
            i = j;
        } else if (c == ']') {
            out += ")";
            ++i;
        } else {
            std::size_t j = word_end(i);
            std::string w(text.substr(i, j - i));
            i = j;
            auto us = w.rfind('_');
            // the repeated label of a closing "N]"
            if (us == std::string::npos && i < text.size() && text[i] == ']') continue;
            out += us == std::string::npos ? w : w.substr(us + 1);
        }
    }
    return parse_bracketing(out);
}

std::string to_bracketing(const LabelledTree& t) {
    if (t.is_leaf()) return t.label;
    std::string out = "(" + t.label;
    for (const auto& c : t.children) out += " " + to_bracketing(c);
    return out + ")";
}

}  // namespace gg
