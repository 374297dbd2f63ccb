#include "gg/chart.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gg {

Category Edge::found_category(std::size_t i) const {
    Category c;
    for (const auto& t : alts) c.disjuncts.push_back(extract(t.dag, t.roots.at(i + 1)));
    return simplify(c);
}

std::pair<int, bool> Chart::insert(Edge e, const FeatureRegistry& reg) {
    std::string key;
    if (e.lexical() || e.bad) {
        key = "#" + std::to_string(edges_.size());
    } else {
        key = e.rule_name + "|" + std::to_string(e.start) + "|" + std::to_string(e.end) + "|" + std::to_string(e.dot);
        std::vector<std::string> parts;
        for (const auto& t : e.alts) {
            std::string s;
            for (const auto& p : to_strings(t.dag, t.roots, reg)) s += p + "\x1f";
            parts.push_back(std::move(s));
        }
        std::sort(parts.begin(), parts.end());
        for (const auto& p : parts) key += "|" + p;
    }
    auto [it, fresh] = keys_.emplace(key, static_cast<int>(edges_.size()));
    if (!fresh) {
        Edge& old = edges_[it->second];
        for (const auto& d : e.derivations)
            if (std::find(old.derivations.begin(), old.derivations.end(), d) == old.derivations.end())
                old.derivations.push_back(d);
        return {it->second, false};
    }
    e.id = static_cast<int>(edges_.size());
    edges_.push_back(std::move(e));
    return {edges_.back().id, true};
}

void Chart::settle(int id) {
    const Edge& e = edges_[id];
    if (e.bad) return;
    if (e.inactive())
        starts_[e.start].push_back(id);
    else
        ends_[e.end].push_back(id);
}

std::vector<int> Chart::inactive_from(int vertex) const { return starts_[vertex]; }
std::vector<int> Chart::active_to(int vertex) const { return ends_[vertex]; }

std::vector<int> Chart::spanning(const FeatureStructure& root_pattern) const {
    std::vector<int> out;
    Category root = Category::of(root_pattern);
    for (const auto& e : edges_)
        if (!e.bad && e.inactive() && e.start == 0 && e.end == static_cast<int>(n_) && compatible(root, e.category))
            out.push_back(e.id);
    return out;
}

ParseTree Chart::tree(int id, const Category* instantiated) const {
    const Edge& e = edges_[id];
    ParseTree t;
    t.category = instantiated ? *instantiated : e.category;
    t.edge = id;
    if (e.lexical()) {
        t.children.push_back(ParseTree::leaf(e.token));
        return t;
    }
    t.rule = e.rule_id();
    for (std::size_t i = 0; i < e.found.size(); ++i) {
        Category c = e.found_category(i);
        t.children.push_back(tree(e.found[i], &c));
    }
    return t;
}

std::vector<std::vector<ParseTree>> Chart::sequences(int id, std::size_t cap, std::vector<char>& open) const {
    std::vector<std::vector<ParseTree>> out;
    for (const auto& [prev, child] : edges_[id].derivations) {
        std::vector<std::vector<ParseTree>> heads;
        if (prev < 0)
            heads.emplace_back();
        else
            heads = sequences(prev, cap, open);
        if (heads.empty()) continue;
        std::vector<ParseTree> tails = derive(child, cap, open);
        for (const auto& h : heads)
            for (const auto& t : tails) {
                if (out.size() >= cap) return out;
                out.push_back(h);
                out.back().push_back(t);
            }
    }
    return out;
}

std::vector<ParseTree> Chart::derive(int id, std::size_t cap, std::vector<char>& open) const {
    const Edge& e = edges_[id];
    if (e.lexical()) return {tree(id)};
    if (open[id]) return {};
    open[id] = 1;
    std::vector<Category> cats;
    for (std::size_t i = 0; i < e.arity; ++i) cats.push_back(e.found_category(i));
    std::vector<ParseTree> out;
    for (auto& seq : sequences(id, cap, open)) {
        ParseTree t;
        t.category = e.category;
        t.edge = id;
        t.rule = e.rule_id();
        for (std::size_t i = 0; i < seq.size(); ++i) seq[i].category = cats[i];
        t.children = std::move(seq);
        out.push_back(std::move(t));
    }
    open[id] = 0;
    return out;
}

std::vector<ParseTree> Chart::trees(int id, std::size_t cap) const {
    std::vector<char> open(edges_.size(), 0);
    return derive(id, cap, open);
}

namespace {

struct Run {
    Grammar& g;
    const ParseOptions& opt;
    Chart& chart;
    ParseResult& result;
    std::vector<std::pair<const Rule*, std::vector<Tuple>>> proposers;
    std::size_t parses = 0;
    bool stop = false;

    std::vector<Tuple> alternatives_of(const Rule& r) {
        TupleExpansion te = r.alternatives();
        if (te.capped) ++result.alternative_caps;
        return std::move(te.members);
    }

    void add_proposer(const Rule& r) { proposers.emplace_back(&r, alternatives_of(r)); }

    // unify daughter slot `slot` of each tuple with each reading of `cat`
    std::vector<Tuple> advance(const std::vector<Tuple>& alts, std::size_t slot, const Category& cat) {
        std::vector<Tuple> out;
        for (const auto& alt : alts)
            for (const auto& d : cat.disjuncts) {
                if (out.size() >= kDefaultExpansionCap) {
                    ++result.alternative_caps;
                    return out;
                }
                Tuple t;
                t.roots = t.dag.import(alt.dag, alt.roots);
                NodeId c = t.dag.import(d.dag, d.root);
                if (!t.dag.unify(t.roots[slot], c)) continue;
                auto compacted = t.dag.compact(t.roots);
                if (!compacted) continue;
                t.dag = std::move(*compacted);
                out.push_back(std::move(t));
            }
        return out;
    }

    bool covered(const Edge& e) {
        for (const auto& [rule, alts] : proposers) {
            if (rule->is_super() || rule->arity() != e.arity) continue;
            for (const auto& alt : alts)
                for (const auto& inst : e.alts) {
                    Tuple t;
                    t.roots = t.dag.import(alt.dag, alt.roots);
                    std::vector<NodeId> ds(inst.roots.begin() + 1, inst.roots.end());
                    std::vector<NodeId> copied = t.dag.import(inst.dag, ds);
                    bool ok = true;
                    for (std::size_t i = 0; i < copied.size() && ok; ++i) ok = t.dag.unify(t.roots[i + 1], copied[i]);
                    if (ok && t.dag.compact(t.roots)) return true;
                }
        }
        return false;
    }

    void criticise(Edge& e) {
        if (opt.flags.skip_covered && covered(e)) {
            e.bad = true;
            e.reasons = {"covered"};
            return;
        }
        if (!opt.hooks.critic) throw std::logic_error("learning requires a critic");
        CriticDecision d = opt.hooks.critic(chart, e);
        if (!d.accept || !d.rule) {
            e.bad = true;
            e.reasons = d.reasons;
            return;
        }
        Rule r = std::move(*d.rule);
        r.id = g.fresh_id(e.arity);
        r.origin = RuleOrigin::Learnt;
        SupportRecord sup;
        for (int c : e.found) {
            const Edge& ce = chart.edge(c);
            sup.daughters.push_back(ce.lexical() ? "|" + ce.token + "|" : ce.rule_id());
        }
        r.support = {sup};
        TupleExpansion te = r.alternatives();
        if (te.capped) ++result.alternative_caps;
        e.alts = std::move(te.members);
        e.category = r.lhs_category();
        e.constructed = std::make_shared<Rule>(std::move(r));
        e.score = d.score;
    }

    void add(Edge e) {
        if (stop) return;
        if (opt.limits.max_edges && chart.edges().size() >= opt.limits.max_edges) {
            result.bounded = true;
            stop = true;
            return;
        }
        if (e.inactive() && !e.lexical()) {
            if (e.is_super) {
                criticise(e);
            } else {
                Category c;
                for (const auto& t : e.alts) c.disjuncts.push_back(extract(t.dag, t.roots[0]));
                e.category = simplify(c);
                if (opt.hooks.scorer) e.score = opt.hooks.scorer(chart, e);
            }
        }
        bool bad = e.bad;
        bool spans = e.inactive() && e.start == 0 && e.end == static_cast<int>(chart.length());
        auto [id, fresh] = chart.insert(std::move(e), g.registry());
        if (!fresh) {
            if (spans && compatible(Category::of(opt.root), chart.edge(id).category)) count_parse();
            return;
        }
        const Edge& in = chart.edge(id);
        if (opt.trace) {
            *opt.trace << "edge " << in.id << " [" << in.start << "," << in.end << "] "
                       << (in.lexical() ? "|" + in.token + "|" : in.rule_id()) << " " << in.dot << "/" << in.arity;
            if (bad) {
                *opt.trace << " bad";
                for (const auto& r : in.reasons) *opt.trace << " " << r;
            }
            if (in.score) *opt.trace << " score " << *in.score;
            *opt.trace << "\n";
        }
        if (bad) return;
        chart.agenda.push_back(in.id);
        if (spans && compatible(Category::of(opt.root), in.category)) count_parse();
    }

    void count_parse() {
        ++parses;
        if (opt.limits.max_parses && parses >= opt.limits.max_parses) stop = true;
    }

    void propose(int id, const Rule& rule, const std::vector<Tuple>& alts) {
        const Edge& x = chart.edge(id);
        std::vector<Tuple> next = advance(alts, 1, x.category);
        if (next.empty()) return;
        Edge e;
        e.start = x.start;
        e.end = x.end;
        e.rule = &rule;
        e.rule_name = rule.id;
        e.arity = rule.arity();
        e.is_super = rule.is_super();
        e.alts = std::move(next);
        e.dot = 1;
        e.found = {id};
        e.derivations = {{-1, id}};
        add(std::move(e));
    }

    void extend(int active, int inactive) {
        const Edge& a = chart.edge(active);
        const Edge& i = chart.edge(inactive);
        std::vector<Tuple> next = advance(a.alts, a.dot + 1, i.category);
        if (next.empty()) return;
        Edge e;
        e.start = a.start;
        e.end = i.end;
        e.rule = a.rule;
        e.rule_name = a.rule_name;
        e.arity = a.arity;
        e.is_super = a.is_super;
        e.alts = std::move(next);
        e.dot = a.dot + 1;
        e.found = a.found;
        e.found.push_back(inactive);
        e.derivations = {{active, inactive}};
        add(std::move(e));
    }

    void fixpoint() {
        while (!chart.agenda.empty() && !stop) {
            int id = chart.agenda.front();
            chart.agenda.pop_front();
            chart.settle(id);
            if (chart.edge(id).inactive()) {
                for (std::size_t k = 0; k < proposers.size() && !stop; ++k)
                    propose(id, *proposers[k].first, proposers[k].second);
                for (int a : chart.active_to(chart.edge(id).start)) {
                    if (stop) break;
                    extend(a, id);
                }
            } else {
                for (int i : chart.inactive_from(chart.edge(id).end)) {
                    if (stop) break;
                    extend(id, i);
                }
            }
        }
    }
};

void collect_constructed(const Chart& chart, const ParseTree& t, std::set<int>& out) {
    if (t.edge >= 0 && chart.edge(t.edge).constructed) out.insert(t.edge);
    for (const auto& c : t.children) collect_constructed(chart, c, out);
}

}  // namespace

ParseResult parse(const std::vector<std::string>& tokens, Grammar& g, const Lexicon& lex, const ParseOptions& opt) {
    ParseResult result;
    result.chart = std::make_shared<Chart>(tokens.size());
    Chart& chart = *result.chart;
    Run run{g, opt, chart, result, {}, 0, false};

    for (const auto& r : g.rules()) {
        if (r.is_super()) continue;
        if (opt.flags.learning && r.origin != RuleOrigin::Original) continue;
        run.add_proposer(r);
    }
    std::vector<std::vector<FeatureStructure>> entries;
    for (const auto& tok : tokens) {
        entries.push_back(lex.lookup(tok));
        if (entries.back().empty()) throw UnknownWordError(tok);
    }
    for (std::size_t i = 0; i < tokens.size(); ++i)
        for (const auto& fs : entries[i]) {
            Edge e;
            e.start = static_cast<int>(i);
            e.end = static_cast<int>(i + 1);
            e.token = tokens[i];
            Tuple t;
            t.roots = {t.dag.import(fs.dag, fs.root)};
            e.alts.push_back(std::move(t));
            e.category = Category::of(fs);
            run.add(std::move(e));
        }
    run.fixpoint();

    static const Rule super_binary = Rule::super_binary();
    static const Rule super_unary = Rule::super_unary();
    if (opt.flags.learning && !run.stop && run.parses == 0 && !tokens.empty() &&
        (opt.flags.super_binary || opt.flags.super_unary)) {
        result.learning_phase = true;
        std::size_t first_super = run.proposers.size();
        if (opt.flags.super_binary) run.add_proposer(super_binary);
        if (opt.flags.super_unary) run.add_proposer(super_unary);
        std::size_t seeded = chart.edges().size();
        for (std::size_t id = 0; id < seeded && !run.stop; ++id) {
            const Edge& e = chart.edge(static_cast<int>(id));
            if (e.bad || !e.inactive()) continue;
            for (std::size_t k = first_super; k < run.proposers.size() && !run.stop; ++k)
                run.propose(static_cast<int>(id), *run.proposers[k].first, run.proposers[k].second);
        }
        run.fixpoint();
    }

    std::size_t cap = opt.flags.max_trees ? opt.flags.max_trees : kTreeCap;
    for (int id : chart.spanning(opt.root)) {
        if (result.parses.size() >= cap) break;
        for (auto& t : chart.trees(id, cap - result.parses.size())) result.parses.push_back(std::move(t));
    }

    if (result.learning_phase) {
        std::set<int> used;
        for (const auto& t : result.parses) collect_constructed(chart, t, used);
        // daughters are committed before their mothers (lower edge ids), so a
        // dropped rule can be replaced in later support records by its subsumer
        std::map<std::string, std::string> alias;
        for (int id : used) {
            Rule r = *chart.edge(id).constructed;
            for (auto& rec : r.support)
                for (auto& d : rec.daughters)
                    if (auto it = alias.find(d); it != alias.end()) d = it->second;
            std::string rid = r.id;
            if (g.add_learnt(r)) {
                result.acquired.push_back(g.rules().back().id);
                if (g.rules().back().id != rid) alias[rid] = g.rules().back().id;
                continue;
            }
            for (const auto& x : g.rules())
                if (!x.is_super() && rule_subsumes(x, r)) {
                    alias[rid] = x.id;
                    break;
                }
        }
    }
    result.edges = chart.edges().size();
    return result;
}

}  // namespace gg
