#include "gg/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gg {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GrammarError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string clean_line(std::string line) {
    for (std::size_t i = 0; i < line.size(); ++i)
        if (line[i] == '#' && (i + 1 == line.size() || !std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            line.erase(i);
            break;
        }
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    return line.substr(i);
}

std::vector<std::string> tokenize(std::string_view sentence) {
    std::vector<std::string> out;
    std::istringstream in{std::string(sentence)};
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

namespace {

std::string at_line(const std::string& src, int n) { return src + ":" + std::to_string(n) + ": "; }

template <class F>
void each_line(std::string_view text, const std::string& source, F&& f) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        try {
            f(line);
        } catch (const FsError& e) {
            throw GrammarError(at_line(source, n) + e.what());
        } catch (const UnknownWordError&) {
            throw;
        } catch (const GrammarError& e) {
            throw GrammarError(at_line(source, n) + e.what());
        }
    }
}

// "kw NAME : rest" -> (NAME, rest)
std::pair<std::string, std::string> split_header(const std::string& line, std::size_t kwlen) {
    auto colon = line.find(':', kwlen);
    if (colon == std::string::npos) throw GrammarError("expected ':'");
    std::string name = clean_line(line.substr(kwlen, colon - kwlen));
    if (name.empty()) throw GrammarError("missing name");
    return {name, line.substr(colon + 1)};
}

}  // namespace

// ---- rules ----------------------------------------------------------------------

Category Rule::lhs_category() const {
    Category c;
    for (NodeId r : lhs) c.disjuncts.push_back(extract(dag, r));
    return c;
}

Category Rule::rhs_category(std::size_t i) const {
    Category c;
    for (NodeId r : rhs.at(i)) c.disjuncts.push_back(extract(dag, r));
    return c;
}

TupleExpansion Rule::alternatives(std::size_t cap) const {
    TupleExpansion out;
    std::vector<std::size_t> sizes{lhs.size()};
    for (const auto& pos : rhs) sizes.push_back(pos.size());
    for (auto s : sizes)
        if (s == 0) return out;
    std::vector<std::size_t> idx(sizes.size(), 0);
    while (true) {
        if (out.members.size() >= cap) {
            out.capped = true;
            break;
        }
        std::vector<NodeId> roots{lhs[idx[0]]};
        for (std::size_t i = 0; i < rhs.size(); ++i) roots.push_back(rhs[i][idx[i + 1]]);
        Tuple t;
        t.roots = t.dag.import(dag, roots);
        out.members.push_back(std::move(t));
        bool done = true;
        for (std::size_t k = sizes.size(); k-- > 0;) {
            if (++idx[k] < sizes[k]) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done) break;
    }
    return out;
}

std::string Rule::to_text(const FeatureRegistry& reg) const {
    std::vector<NodeId> all;
    for (NodeId r : lhs) all.push_back(r);
    for (const auto& pos : rhs)
        for (NodeId r : pos) all.push_back(r);
    std::vector<std::string> parts = to_strings(dag, all, reg);
    std::size_t k = 0;
    auto group = [&](std::size_t n) {
        if (n == 1) return parts[k++];
        std::string s = "{";
        for (std::size_t i = 0; i < n; ++i) {
            if (i) s += ", ";
            s += parts[k++];
        }
        return s + "}";
    };
    std::string out = id + " : " + group(lhs.size()) + " ->";
    for (const auto& pos : rhs) out += " " + group(pos.size());
    return out;
}

Rule Rule::super_unary() {
    Rule r;
    r.id = "*unary";
    r.origin = RuleOrigin::SuperUnary;
    r.lhs = {r.dag.add_complex()};
    r.rhs = {{r.dag.add_complex()}};
    return r;
}

Rule Rule::super_binary() {
    Rule r;
    r.id = "*binary";
    r.origin = RuleOrigin::SuperBinary;
    r.lhs = {r.dag.add_complex()};
    r.rhs = {{r.dag.add_complex()}, {r.dag.add_complex()}};
    return r;
}

Rule Rule::parse(std::string_view text, const FeatureRegistry& reg) {
    std::string line(text);
    if (line.rfind("rule", 0) != 0) throw GrammarError("expected 'rule'");
    auto [name, body] = split_header(line, 4);
    Rule r;
    r.id = name;
    r.origin = name.rfind("*", 0) == 0 ? RuleOrigin::Learnt : RuleOrigin::Original;
    LiteralReader rd(body, reg, r.dag);
    r.lhs = rd.category();
    rd.expect_word("->");
    while (!rd.at_end()) r.rhs.push_back(rd.category());
    if (r.rhs.empty() || r.rhs.size() > 2) throw GrammarError("rule " + name + " must have one or two daughters");
    std::vector<NodeId> all = r.lhs;
    for (const auto& p : r.rhs) all.insert(all.end(), p.begin(), p.end());
    auto compacted = r.dag.compact(all);
    if (!compacted) throw GrammarError("rule " + name + " is cyclic");
    r.dag = std::move(*compacted);
    std::size_t k = 0;
    for (auto& x : r.lhs) x = all[k++];
    for (auto& p : r.rhs)
        for (auto& x : p) x = all[k++];
    if (r.lhs.empty()) throw GrammarError("rule " + name + " has a bottom mother");
    return r;
}

// ---- grammar ----------------------------------------------------------------------

Grammar::Grammar(RegistryPtr reg) : reg_(std::move(reg)) {
    if (auto bar = reg_->feature("BAR")) {
        for (Atom a : reg_->values(*bar)) {
            const std::string& s = reg_->atom_name(a);
            if (!s.empty() && std::all_of(s.begin(), s.end(), ::isdigit)) max_bar_ = std::max(max_bar_, std::stoi(s));
        }
    }
}

void Grammar::add(Rule r) {
    if (find(r.id)) throw GrammarError("duplicate rule id " + r.id);
    // keep acquired ids unique even after loading saved rules
    for (const char* prefix : {"*binary", "*unary"}) {
        std::string p(prefix);
        if (r.id.rfind(p, 0) == 0 && r.id.size() > p.size()) {
            std::string rest = r.id.substr(p.size());
            if (std::all_of(rest.begin(), rest.end(), ::isdigit))
                counter_ = std::max(counter_, static_cast<std::size_t>(std::stoul(rest)));
        }
    }
    rules_.push_back(std::move(r));
}

bool Grammar::remove(const std::string& id) {
    auto it = std::find_if(rules_.begin(), rules_.end(), [&](const Rule& r) { return r.id == id; });
    if (it == rules_.end()) return false;
    rules_.erase(it);
    return true;
}

const Rule* Grammar::find(const std::string& id) const {
    for (const auto& r : rules_)
        if (r.id == id) return &r;
    return nullptr;
}

Rule* Grammar::find(const std::string& id) {
    for (auto& r : rules_)
        if (r.id == id) return &r;
    return nullptr;
}

std::vector<const Rule*> Grammar::original() const {
    std::vector<const Rule*> out;
    for (const auto& r : rules_)
        if (r.origin == RuleOrigin::Original) out.push_back(&r);
    return out;
}

std::vector<const Rule*> Grammar::learnt() const {
    std::vector<const Rule*> out;
    for (const auto& r : rules_)
        if (r.origin == RuleOrigin::Learnt) out.push_back(&r);
    return out;
}

bool rule_subsumes(const Rule& general, const Rule& specific) {
    if (general.arity() != specific.arity()) return false;
    if (!cat_subsumes(general.lhs_category(), specific.lhs_category())) return false;
    for (std::size_t i = 0; i < general.arity(); ++i)
        if (!cat_subsumes(general.rhs_category(i), specific.rhs_category(i))) return false;
    return true;
}

bool Grammar::add_learnt(Rule r) {
    for (const auto& existing : rules_)
        if (!existing.is_super() && rule_subsumes(existing, r)) return false;
    r.origin = RuleOrigin::Learnt;
    if (find(r.id)) r.id = fresh_id(r.arity());
    add(std::move(r));
    return true;
}

std::string Grammar::fresh_id(std::size_t arity) {
    ++counter_;
    return (arity == 1 ? "*unary" : "*binary") + std::to_string(counter_);
}

Grammar Grammar::parse(std::string_view text, RegistryPtr reg, const std::string& source) {
    Grammar g(reg);
    each_line(text, source, [&](const std::string& line) { g.add(Rule::parse(line, *reg)); });
    return g;
}

Grammar Grammar::load(const std::string& path, RegistryPtr reg) { return parse(read_file(path), reg, path); }

void Grammar::merge(const Grammar& other) {
    for (const auto& r : other.rules()) add(r);
}

std::string Grammar::learnt_text() const {
    std::string out;
    for (const Rule* r : learnt()) out += "rule " + r->to_text(*reg_) + "\n";
    return out;
}

// ---- lexicon ----------------------------------------------------------------------

void Lexicon::add(const std::string& word, FeatureStructure fs) {
    auto& slot = entries_[word];
    if (slot.empty()) order_.push_back(word);
    slot.push_back(std::move(fs));
}

const std::vector<FeatureStructure>& Lexicon::lookup(const std::string& word) const {
    auto it = entries_.find(word);
    if (it != entries_.end()) return it->second;
    std::string lower = word;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    it = entries_.find(lower);
    if (it != entries_.end()) return it->second;
    static const std::vector<FeatureStructure> none;
    return none;
}

bool Lexicon::contains(const std::string& word) const {
    return !lookup(word).empty();
}

Lexicon Lexicon::parse(std::string_view text, const FeatureRegistry& reg, const std::string& source) {
    Lexicon lex;
    each_line(text, source, [&](const std::string& line) {
        if (line.rfind("lex", 0) != 0) throw GrammarError("expected 'lex'");
        auto [word, body] = split_header(line, 3);
        for (auto& d : parse_category(body, reg).disjuncts) lex.add(word, std::move(d));
    });
    return lex;
}

Lexicon Lexicon::load(const std::string& path, const FeatureRegistry& reg) { return parse(read_file(path), reg, path); }

void Lexicon::merge(const Lexicon& other) {
    for (const auto& w : other.order_)
        for (const auto& c : other.entries_.at(w)) add(w, c);
}

// ---- paraphrase ----------------------------------------------------------------------

std::string ParaphraseMap::label(const FeatureStructure& fs, const FeatureRegistry& reg) const {
    auto bar_f = reg.feature("BAR");
    for (const auto& e : entries_) {
        if (!subsumes(e.pattern, fs)) continue;
        if (e.fixes_bar || !bar_f) return e.name;
        auto bar = top_atoms(fs, *bar_f);
        if (!bar || bar->size() != 1) return e.name;
        const std::string& b = reg.atom_name(bar->front());
        if (e.phrasal && std::all_of(b.begin(), b.end(), ::isdigit) && std::stoi(b) > 1) return e.name + "P";
        return e.name + b;
    }
    return "X";
}

std::vector<std::string> ParaphraseMap::labels(const Category& c, const FeatureRegistry& reg) const {
    std::vector<std::string> out;
    for (const auto& m : expand(c).members) {
        std::string l = label(m, reg);
        if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    }
    return out;
}

std::string ParaphraseMap::label(const Category& c, const FeatureRegistry& reg) const {
    auto ls = labels(c, reg);
    if (ls.size() == 1) return ls[0];
    std::string s = "{";
    for (std::size_t i = 0; i < ls.size(); ++i) {
        if (i) s += ",";
        s += ls[i];
    }
    return s + "}";
}

ParaphraseMap ParaphraseMap::parse(std::string_view text, const FeatureRegistry& reg, const std::string& source) {
    ParaphraseMap map;
    auto bar_f = reg.feature("BAR");
    each_line(text, source, [&](const std::string& line) {
        if (line.rfind("label", 0) != 0) throw GrammarError("expected 'label'");
        auto arrow = line.find("->");
        if (arrow == std::string::npos) throw GrammarError("expected '->'");
        Entry e;
        e.pattern = parse_fs(line.substr(5, arrow - 5), reg);
        std::istringstream rest(line.substr(arrow + 2));
        if (!(rest >> e.name)) throw GrammarError("missing label name");
        for (std::string w; rest >> w;) {
            if (w != "phrasal") throw GrammarError("unexpected '" + w + "'");
            e.phrasal = true;
        }
        e.fixes_bar = bar_f && e.pattern.dag.arc(e.pattern.root, *bar_f).has_value();
        map.add(std::move(e));
    });
    return map;
}

ParaphraseMap ParaphraseMap::load(const std::string& path, const FeatureRegistry& reg) {
    return parse(read_file(path), reg, path);
}

}  // namespace gg
