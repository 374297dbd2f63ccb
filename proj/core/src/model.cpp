#include "gg/model.hpp"

#include <algorithm>
#include <sstream>

namespace gg {

// ---- patterns ---------------------------------------------------------------------

Pattern Pattern::parse(std::string_view text, const FeatureRegistry& reg) {
    Pattern p;
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '~') {
        p.negated = true;
        ++i;
    }
    p.fs = parse_fs(text.substr(i), reg, LiteralOptions{true});
    return p;
}

std::string Pattern::to_text(const FeatureRegistry& reg) const {
    return (negated ? "~" : "") + gg::to_string(fs, reg);
}

bool match(const Pattern& p, const FeatureStructure& c) {
    const Node& top = p.fs.dag.at(p.fs.dag.deref(p.fs.root));
    bool positive = true;
    for (const auto& [f, v] : top.arcs) {
        if (!c.dag.arc(c.root, f)) {
            positive = false;
            break;
        }
    }
    if (positive) positive = unifiable(p.fs, c);
    return p.negated ? !positive : positive;
}

bool match_any(const Pattern& p, const Category& c) {
    for (const auto& m : expand(c).members)
        if (match(p, m)) return true;
    return false;
}

// ---- semantic types -----------------------------------------------------------------

SemType SemType::fn(SemType arg, SemType res) {
    SemType t(Kind::Fn);
    t.arg_ = std::make_shared<const SemType>(std::move(arg));
    t.res_ = std::make_shared<const SemType>(std::move(res));
    return t;
}

bool SemType::operator==(const SemType& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ != Kind::Fn) return true;
    return *arg_ == *o.arg_ && *res_ == *o.res_;
}

std::string SemType::to_string() const {
    switch (kind_) {
        case Kind::E:
            return "e";
        case Kind::T:
            return "t";
        case Kind::Fn:
            return "<" + arg_->to_string() + "," + res_->to_string() + ">";
    }
    return "?";
}

SemType SemType::parse(std::string_view text) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto rec = [&](auto&& self) -> SemType {
        skip();
        if (pos >= text.size()) throw ParseError("unexpected end of type", pos);
        char c = text[pos++];
        if (c == 'e') return e();
        if (c == 't') return t();
        if (c != '<') throw ParseError(std::string("bad type symbol '") + c + "'", pos - 1);
        SemType a = self(self);
        skip();
        if (pos >= text.size() || text[pos] != ',') throw ParseError("expected ','", pos);
        ++pos;
        SemType b = self(self);
        skip();
        if (pos >= text.size() || text[pos] != '>') throw ParseError("expected '>'", pos);
        ++pos;
        return fn(std::move(a), std::move(b));
    };
    SemType out = rec(rec);
    skip();
    if (pos != text.size()) throw ParseError("trailing input after type", pos);
    return out;
}

std::optional<SemType> apply_type(const SemType& f, const SemType& a) {
    if (f.kind() != SemType::Kind::Fn) return std::nullopt;
    if (!(f.arg() == a)) return std::nullopt;
    return f.res();
}

// ---- model file -------------------------------------------------------------------------

Model Model::parse(std::string_view text, const FeatureRegistry& reg, const std::string& source) {
    Model m;
    bool nonhead_given = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        auto where = source + ":" + std::to_string(n) + ": ";
        try {
            std::istringstream ls(line);
            std::string kw;
            ls >> kw;
            if (kw == "nonhead") {
                if (!nonhead_given) m.nonhead.clear();
                nonhead_given = true;
                for (std::string f; ls >> f;) {
                    reg.require_feature(f);
                    m.nonhead.push_back(f);
                }
            } else if (kw == "lp") {
                auto colon = line.find(':');
                auto lt = line.find('<', colon == std::string::npos ? 0 : colon);
                if (colon == std::string::npos || lt == std::string::npos) throw GrammarError("expected 'lp NAME : P < P'");
                LpRule r;
                r.name = clean_line(line.substr(2, colon - 2));
                r.left = Pattern::parse(line.substr(colon + 1, lt - colon - 1), reg);
                r.right = Pattern::parse(line.substr(lt + 1), reg);
                m.lp.push_back(std::move(r));
            } else if (kw == "type") {
                auto colon = line.find(':');
                if (colon == std::string::npos) throw GrammarError("expected 'type PATTERN : TYPE'");
                Pattern p = Pattern::parse(line.substr(4, colon - 4), reg);
                if (p.negated) throw GrammarError("type patterns cannot be negated");
                m.types.push_back(TypeRow{std::move(p), SemType::parse(clean_line(line.substr(colon + 1)))});
            } else {
                throw GrammarError("unknown model line '" + kw + "'");
            }
        } catch (const FsError& e) {
            throw GrammarError(where + e.what());
        } catch (const GrammarError& e) {
            throw GrammarError(where + e.what());
        }
    }
    return m;
}

Model Model::load(const std::string& path, const FeatureRegistry& reg) { return parse(read_file(path), reg, path); }

// ---- checks -------------------------------------------------------------------------------

bool lp_check(const std::vector<FeatureStructure>& rhs, const std::vector<LpRule>& lp, std::string* failed) {
    for (const auto& r : lp)
        for (std::size_t i = 0; i < rhs.size(); ++i)
            for (std::size_t j = i + 1; j < rhs.size(); ++j)
                if (match(r.right, rhs[i]) && match(r.left, rhs[j])) {
                    if (failed) *failed = r.name;
                    return false;
                }
    return true;
}

bool lp_check(const std::vector<Category>& rhs, const std::vector<LpRule>& lp, std::string* failed) {
    std::vector<Expansion> ex;
    for (const auto& c : rhs) ex.push_back(expand(c));
    auto any = [](const Pattern& p, const Expansion& e) {
        return std::any_of(e.members.begin(), e.members.end(), [&](const auto& m) { return match(p, m); });
    };
    for (const auto& r : lp)
        for (std::size_t i = 0; i < rhs.size(); ++i)
            for (std::size_t j = i + 1; j < rhs.size(); ++j)
                if (any(r.right, ex[i]) && any(r.left, ex[j])) {
                    if (failed) *failed = r.name;
                    return false;
                }
    return true;
}

std::optional<SemType> typ_lookup(const std::vector<TypeRow>& tm, const FeatureStructure& c) {
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < tm.size(); ++i)
        if (unifiable(tm[i].pattern.fs, c)) hits.push_back(i);
    for (std::size_t i : hits) {
        bool beaten = false;
        for (std::size_t j : hits) {
            if (i == j) continue;
            const auto& a = tm[i].pattern.fs;
            const auto& b = tm[j].pattern.fs;
            if (subsumes(a, b) && !subsumes(b, a)) {
                beaten = true;
                break;
            }
        }
        if (!beaten) return tm[i].type;
    }
    return std::nullopt;
}

namespace {

bool types_cooccur(const std::optional<SemType>& a, const std::optional<SemType>& b) {
    if (!a || !b) return true;
    return apply_type(*a, *b).has_value() || apply_type(*b, *a).has_value();
}

}  // namespace

bool type_check(const std::vector<FeatureStructure>& rhs, const std::vector<TypeRow>& tm) {
    if (rhs.size() < 2) return true;
    return types_cooccur(typ_lookup(tm, rhs[0]), typ_lookup(tm, rhs[1]));
}

bool type_check(const std::vector<Category>& rhs, const std::vector<TypeRow>& tm) {
    if (rhs.size() < 2) return true;
    std::vector<std::optional<SemType>> left, right;
    for (const auto& m : expand(rhs[0]).members) left.push_back(typ_lookup(tm, m));
    for (const auto& m : expand(rhs[1]).members) right.push_back(typ_lookup(tm, m));
    // one well-typed pairing of readings is enough
    for (const auto& a : left)
        for (const auto& b : right)
            if (types_cooccur(a, b)) return true;
    return false;
}

bool XBarConfig::is_head(const std::string& feature) const {
    return std::find(nonhead.begin(), nonhead.end(), feature) == nonhead.end();
}

bool hfc_check(const Rule& r, const XBarConfig& cfg, const FeatureRegistry& reg) {
    auto bar = reg.feature(cfg.bar_feature);
    auto values_equal = [&](NodeId x, NodeId y) {
        FeatureStructure a = extract(r.dag, x), b = extract(r.dag, y);
        return equal(a, b);
    };
    for (NodeId l : r.lhs) {
        const Node& ln = r.dag.at(r.dag.deref(l));
        bool clean = true;
        for (const auto& [f, v] : ln.arcs)
            if ((!bar || f != *bar) && !cfg.is_head(reg.feature_name(f))) clean = false;
        if (!clean) continue;
        for (const auto& pos : r.rhs)
            for (NodeId d : pos) {
                const Node& dn = r.dag.at(r.dag.deref(d));
                std::vector<FeatureId> feats;
                for (const auto& [f, v] : ln.arcs) feats.push_back(f);
                for (const auto& [f, v] : dn.arcs) feats.push_back(f);
                bool agree = true;
                for (FeatureId f : feats) {
                    if (!cfg.is_head(reg.feature_name(f))) continue;
                    auto a = r.dag.arc(l, f), b = r.dag.arc(d, f);
                    if (!a || !b || !values_equal(*a, *b)) {
                        agree = false;
                        break;
                    }
                }
                if (agree) return true;
            }
    }
    return false;
}

Verdict criticise_rhs(const std::vector<Category>& rhs, const Model& model, const ModelFlags& flags) {
    Verdict v;
    std::string which;
    if (flags.lp && !lp_check(rhs, model.lp, &which)) {
        v.accept = false;
        v.reasons.push_back("lp:" + which);
    }
    if (flags.types && !type_check(rhs, model.types)) {
        v.accept = false;
        v.reasons.push_back("types");
    }
    return v;
}

}  // namespace gg
