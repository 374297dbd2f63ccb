#include "gg/treebank.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gg/grammar.hpp"

namespace gg {

void TripleStore::add(const FeatureStructure& mother, const FeatureStructure& daughter, std::uint64_t freq) {
    if (freq == 0) return;
    memo_.clear();
    total_ += freq;
    for (auto& t : triples_)
        if (equal(t.mother, mother) && equal(t.daughter, daughter)) {
            t.freq += freq;
            return;
        }
    triples_.push_back(Triple{mother, daughter, freq});
}

void TripleStore::clear() {
    triples_.clear();
    total_ = 0;
    memo_.clear();
}

double TripleStore::lookup(const Category& a, const Category& b) const {
    if (total_ == 0) return delta;
    auto key = std::make_pair(fingerprint(a), fingerprint(b));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::uint64_t sum = 0;
    bool any = false;
    for (const auto& t : triples_) {
        bool m = false, d = false;
        for (const auto& x : a.disjuncts)
            if (unifiable(t.mother, x)) {
                m = true;
                break;
            }
        if (!m) continue;
        for (const auto& y : b.disjuncts)
            if (unifiable(t.daughter, y)) {
                d = true;
                break;
            }
        if (!d) continue;
        any = true;
        sum += t.freq;
    }
    double v = any ? static_cast<double>(sum) / static_cast<double>(total_) : delta;
    memo_.emplace(std::move(key), v);
    return v;
}

double TripleStore::lookup(const FeatureStructure& a, const FeatureStructure& b) const {
    return lookup(Category::of(a), Category::of(b));
}

TripleStore TripleStore::parse(std::string_view text, const FeatureRegistry& reg, const std::string& source) {
    TripleStore store;
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        std::string line = clean_line(raw);
        if (line.empty()) continue;
        auto where = source + ":" + std::to_string(n) + ": ";
        try {
            if (line.rfind("params", 0) == 0) {
                std::istringstream ls(line.substr(6));
                for (std::string k; ls >> k;) {
                    double v;
                    if (!(ls >> v)) throw GrammarError("missing value for " + k);
                    if (k == "delta")
                        store.delta = v;
                    else if (k == "omega")
                        store.omega = v;
                    else
                        throw GrammarError("unknown parameter " + k);
                }
                continue;
            }
            if (line.rfind("triple", 0) != 0) throw GrammarError("expected 'triple'");
            Dag dag;
            std::string body = line.substr(6);
            LiteralReader rd(body, reg, dag);
            std::vector<NodeId> roots{rd.structure(), rd.structure()};
            std::string count = rd.word();
            if (!rd.at_end()) throw GrammarError("trailing input");
            auto c = dag.compact(roots);
            if (!c) throw GrammarError("cyclic triple");
            unsigned long long f = std::stoull(count);
            store.add(extract(*c, roots[0]), extract(*c, roots[1]), f);
        } catch (const FsError& e) {
            throw GrammarError(where + e.what());
        } catch (const GrammarError& e) {
            throw GrammarError(where + e.what());
        } catch (const std::invalid_argument&) {
            throw GrammarError(where + "bad frequency");
        }
    }
    if (!(store.delta > 0 && store.delta < 1)) throw GrammarError(source + ": delta must lie in (0,1)");
    return store;
}

TripleStore TripleStore::load(const std::string& path, const FeatureRegistry& reg) {
    return parse(read_file(path), reg, path);
}

std::string TripleStore::to_text(const FeatureRegistry& reg) const {
    std::ostringstream out;
    out << "params delta " << delta << " omega " << omega << "\n";
    for (const auto& t : triples_)
        out << "triple " << to_string(t.mother, reg) << " " << to_string(t.daughter, reg) << " " << t.freq << "\n";
    return out.str();
}

// ---- decomposition -----------------------------------------------------------------

std::vector<std::pair<Category, Category>> decompose(const ParseTree& t) {
    std::vector<std::pair<Category, Category>> out;
    auto rec = [&](auto&& self, const ParseTree& n) -> void {
        if (n.is_leaf() || n.is_preterminal()) return;
        for (const auto& c : n.children)
            if (!c.is_leaf()) out.emplace_back(n.category, c.category);
        for (const auto& c : n.children) self(self, c);
    };
    rec(rec, t);
    return out;
}

void train_pairs(TripleStore& store, const std::vector<std::pair<Category, Category>>& pairs) {
    for (const auto& [m, d] : pairs) {
        auto ms = expand(m).members;
        auto ds = expand(d).members;
        for (const auto& a : ms)
            for (const auto& b : ds) store.add(a, b);
    }
}

void train(TripleStore& store, const std::vector<ParseTree>& trees) {
    for (const auto& t : trees) train_pairs(store, decompose(t));
}

// ---- scoring -------------------------------------------------------------------------

double geometric_mean(const std::vector<double>& xs) {
    if (xs.empty()) return 1.0;
    if (std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); })) return xs.front();
    double acc = 0;
    for (double x : xs) acc += std::log(x);
    return std::exp(acc / static_cast<double>(xs.size()));
}

double score_local(const TripleStore& store, const Category& mother, const std::vector<ScoredDaughter>& ds) {
    if (ds.empty()) return 1.0;
    std::vector<Expansion> dexp;
    for (const auto& d : ds) dexp.push_back(expand(d.category));
    double best = 0;
    for (const auto& a0 : expand(mother).members) {
        Category m = Category::of(a0);
        std::vector<double> parts;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            double top = 0;
            for (const auto& ai : dexp[i].members) top = std::max(top, store.lookup(m, Category::of(ai)));
            if (dexp[i].members.empty()) top = store.delta;
            parts.push_back(top * ds[i].score.value_or(1.0));
        }
        best = std::max(best, geometric_mean(parts));
    }
    return best;
}

double score_tree(const TripleStore& store, const ParseTree& t) {
    if (t.is_leaf() || t.is_preterminal()) return 1.0;
    std::vector<ScoredDaughter> ds;
    for (const auto& c : t.children) {
        if (c.is_leaf()) continue;
        ScoredDaughter d{c.category, std::nullopt};
        if (!c.is_preterminal()) d.score = score_tree(store, c);
        ds.push_back(std::move(d));
    }
    return score_local(store, t.category, ds);
}

double judge_value(const TripleStore& store, const Category& mother, const std::vector<ScoredDaughter>& ds) {
    std::vector<double> xs{score_local(store, mother, ds)};
    for (const auto& d : ds)
        if (d.score) xs.push_back(*d.score);
    return geometric_mean(xs);
}

bool judge(const TripleStore& store, const Category& mother, const std::vector<ScoredDaughter>& ds) {
    return judge_value(store, mother, ds) > store.omega;
}

}  // namespace gg
