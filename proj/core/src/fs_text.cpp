#include <algorithm>
#include <cctype>
#include <functional>
#include <unordered_map>

#include "gg/feature_structure.hpp"

namespace gg {

namespace {

bool word_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && c != '[' && c != ']' && c != '{' && c != '}' &&
           c != ',' && c != '#' && c != '=';
}

}  // namespace

LiteralReader::LiteralReader(std::string_view text, const FeatureRegistry& reg, Dag& dag, LiteralOptions opt)
    : text_(text), reg_(reg), dag_(dag), opt_(opt) {}

void LiteralReader::skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool LiteralReader::at_end() {
    skip_ws();
    return pos_ >= text_.size();
}

bool LiteralReader::peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
}

void LiteralReader::fail(const std::string& msg) const { throw ParseError(msg, pos_); }

void LiteralReader::expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
}

std::string LiteralReader::word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
}

void LiteralReader::expect_word(std::string_view w) {
    std::size_t at = pos_;
    if (word() != w) {
        pos_ = at;
        fail("expected '" + std::string(w) + "'");
    }
}

std::vector<NodeId> LiteralReader::category() {
    if (!peek('{')) return {structure()};
    expect('{');
    std::vector<NodeId> out;
    if (peek('}')) {
        ++pos_;
        return out;
    }
    while (true) {
        out.push_back(structure());
        if (peek(',')) {
            ++pos_;
            continue;
        }
        expect('}');
        return out;
    }
}

NodeId LiteralReader::structure() {
    expect('[');
    NodeId node = dag_.add_complex();
    if (peek(']')) {
        ++pos_;
        return node;
    }
    while (true) {
        std::size_t at = (skip_ws(), pos_);
        std::string name = word();
        auto f = reg_.feature(name);
        if (!f) {
            pos_ = at;
            throw UnknownFeatureError("unknown feature " + name + " at offset " + std::to_string(at));
        }
        if (dag_.arc(node, *f)) fail("feature " + name + " given twice");
        NodeId v = value(*f);
        dag_.set_arc(node, *f, v);
        if (peek(',')) {
            ++pos_;
            continue;
        }
        if (peek(']')) {
            ++pos_;
            return node;
        }
        // commas between pairs are optional
        if (at_end()) fail("unterminated structure");
    }
}

NodeId LiteralReader::value(FeatureId f) {
    if (peek('#')) {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a tag number");
        int tag = std::stoi(std::string(text_.substr(start, pos_ - start)));
        auto it = tags_.find(tag);
        NodeId node = it != tags_.end() ? it->second : dag_.add_var();
        tags_.emplace(tag, node);
        if (pos_ < text_.size() && text_[pos_] == '=') {
            ++pos_;
            NodeId v = value(f);
            if (!dag_.unify(node, v)) fail("tag #" + std::to_string(tag) + " bound to clashing values");
        }
        return node;
    }
    if (peek('*')) {
        if (!opt_.allow_wildcard) fail("wildcard not allowed here");
        ++pos_;
        Node n;
        n.kind = NodeKind::Any;
        return dag_.add(std::move(n));
    }
    if (peek('[')) return structure();
    auto atom = [&]() {
        std::size_t at = (skip_ws(), pos_);
        std::string w = word();
        try {
            return reg_.require_value(f, w);
        } catch (const UnknownValueError& e) {
            throw UnknownValueError(std::string(e.what()) + " at offset " + std::to_string(at));
        }
    };
    if (peek('{')) {
        ++pos_;
        std::vector<Atom> set;
        while (true) {
            set.push_back(atom());
            if (peek(',')) {
                ++pos_;
                continue;
            }
            expect('}');
            break;
        }
        return dag_.add_atoms(std::move(set));
    }
    return dag_.add_atoms({atom()});
}

FeatureStructure parse_fs(std::string_view text, const FeatureRegistry& reg, LiteralOptions opt) {
    Dag dag;
    LiteralReader r(text, reg, dag, opt);
    std::vector<NodeId> roots{r.structure()};
    if (!r.at_end()) throw ParseError("trailing input", r.offset());
    auto c = dag.compact(roots);
    if (!c) throw ParseError("cyclic structure", 0);
    return FeatureStructure{std::move(*c), roots[0]};
}

Category parse_category(std::string_view text, const FeatureRegistry& reg, LiteralOptions opt) {
    Dag dag;
    LiteralReader r(text, reg, dag, opt);
    std::vector<NodeId> roots = r.category();
    if (!r.at_end()) throw ParseError("trailing input", r.offset());
    Category c;
    for (NodeId root : roots) {
        std::vector<NodeId> one{root};
        auto d = dag.compact(one);
        if (!d) throw ParseError("cyclic structure", 0);
        c.disjuncts.push_back(FeatureStructure{std::move(*d), one[0]});
    }
    return c;
}

// ---- printing -------------------------------------------------------------------

std::vector<std::string> to_strings(const Dag& dag, const std::vector<NodeId>& roots, const FeatureRegistry& reg) {
    std::unordered_map<NodeId, int> refs;
    std::function<void(NodeId)> count = [&](NodeId n) {
        n = dag.deref(n);
        if (refs[n]++ > 0) return;
        const Node& node = dag.at(n);
        if (node.kind == NodeKind::Complex)
            for (const auto& [f, c] : node.arcs) count(c);
    };
    for (NodeId r : roots) count(r);

    std::unordered_map<NodeId, int> tags;
    int next = 1;
    std::function<void(NodeId, std::string&, bool)> emit = [&](NodeId n, std::string& out, bool top) {
        n = dag.deref(n);
        const Node& node = dag.at(n);
        bool shared = !top && (refs[n] > 1 || node.kind == NodeKind::Var);
        if (shared) {
            auto it = tags.find(n);
            if (it != tags.end()) {
                out += "#" + std::to_string(it->second);
                return;
            }
            int t = next++;
            tags.emplace(n, t);
            out += "#" + std::to_string(t);
            if (node.kind == NodeKind::Var) return;
            out += "=";
        }
        switch (node.kind) {
            case NodeKind::Var:
                out += "[]";
                break;
            case NodeKind::Any:
                out += "*";
                break;
            case NodeKind::Atoms:
                if (node.atoms.size() == 1) {
                    out += reg.atom_name(node.atoms[0]);
                } else {
                    out += "{";
                    for (std::size_t i = 0; i < node.atoms.size(); ++i) {
                        if (i) out += ",";
                        out += reg.atom_name(node.atoms[i]);
                    }
                    out += "}";
                }
                break;
            case NodeKind::Complex:
                out += "[";
                for (std::size_t i = 0; i < node.arcs.size(); ++i) {
                    if (i) out += ", ";
                    out += reg.feature_name(node.arcs[i].first);
                    out += " ";
                    emit(node.arcs[i].second, out, false);
                }
                out += "]";
                break;
            case NodeKind::Forward:
                break;
        }
    };
    std::vector<std::string> out;
    for (NodeId r : roots) {
        std::string s;
        emit(r, s, true);
        out.push_back(std::move(s));
    }
    return out;
}

std::string fingerprint(const FeatureStructure& fs) {
    std::unordered_map<NodeId, int> seen;
    std::string out;
    std::function<void(NodeId)> rec = [&](NodeId n) {
        n = fs.dag.deref(n);
        if (auto it = seen.find(n); it != seen.end()) {
            out += "#" + std::to_string(it->second);
            return;
        }
        int tag = static_cast<int>(seen.size());
        seen.emplace(n, tag);
        const Node& node = fs.dag.at(n);
        switch (node.kind) {
            case NodeKind::Var:
                out += "_";
                break;
            case NodeKind::Any:
                out += "*";
                break;
            case NodeKind::Atoms:
                out += "{";
                for (Atom a : node.atoms) out += std::to_string(a) + ",";
                out += "}";
                break;
            case NodeKind::Complex:
                out += "[";
                for (const auto& [f, c] : node.arcs) {
                    out += std::to_string(f) + ":";
                    rec(c);
                    out += ";";
                }
                out += "]";
                break;
            case NodeKind::Forward:
                break;
        }
    };
    rec(fs.root);
    return out;
}

std::string fingerprint(const Category& c) {
    std::string out = "(";
    for (const auto& d : c.disjuncts) out += fingerprint(d) + "|";
    return out + ")";
}

std::string to_string(const FeatureStructure& fs, const FeatureRegistry& reg) {
    return to_strings(fs.dag, {fs.root}, reg).front();
}

std::string to_string(const Category& c, const FeatureRegistry& reg) {
    if (c.disjuncts.size() == 1) return to_string(c.disjuncts[0], reg);
    std::string out = "{";
    for (std::size_t i = 0; i < c.disjuncts.size(); ++i) {
        if (i) out += ", ";
        out += to_string(c.disjuncts[i], reg);
    }
    return out + "}";
}

}  // namespace gg
