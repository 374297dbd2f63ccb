#include "gg/refine.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gg {

double candidate_score(const TripleStore& store, const Rule& r, const FeatureStructure& lhs) {
    Category m = Category::of(lhs);
    std::vector<double> parts;
    for (std::size_t j = 0; j < r.arity(); ++j) parts.push_back(store.lookup(m, r.rhs_category(j)));
    return geometric_mean(parts);
}

namespace {

struct Candidate {
    std::size_t disjunct;
    FeatureStructure reading;
    double score;
};

std::vector<Candidate> candidates_of(const TripleStore& store, const Rule& r) {
    std::vector<Candidate> out;
    for (std::size_t k = 0; k < r.lhs.size(); ++k)
        for (auto& m : expand(extract(r.dag, r.lhs[k])).members) {
            double s = candidate_score(store, r, m);
            out.push_back(Candidate{k, std::move(m), s});
        }
    return out;
}

// new LHS root for `reading`, reusing the original value nodes (and so any
// sharing with the daughters) wherever the reading left them unchanged
NodeId narrow(Dag& dag, NodeId root, const FeatureStructure& reading) {
    NodeId out = dag.add_complex();
    auto arcs = dag.at(dag.deref(root)).arcs;
    for (const auto& [f, v] : arcs) {
        auto rv = reading.dag.arc(reading.root, f);
        if (!rv) continue;
        FeatureStructure was = extract(dag, v);
        FeatureStructure now = extract(reading.dag, *rv);
        if (equal(was, now))
            dag.set_arc(out, f, v);
        else
            dag.set_arc(out, f, dag.import(now.dag, now.root));
    }
    return out;
}

}  // namespace

LhsRefinement refine_lhs(const TripleStore& store, const Rule& r) {
    LhsRefinement res;
    auto cands = candidates_of(store, r);
    res.candidates = cands.size();
    if (cands.empty()) return res;
    std::size_t best = 0;
    std::size_t ties = 1;
    for (std::size_t i = 1; i < cands.size(); ++i) {
        if (cands[i].score > cands[best].score) {
            best = i;
            ties = 1;
        } else if (cands[i].score == cands[best].score) {
            ++ties;
        }
    }
    res.best = cands[best].score;
    res.unique = ties == 1;
    if (!res.unique || cands.size() == 1) return res;
    Rule out = r;
    NodeId root = narrow(out.dag, out.lhs[cands[best].disjunct], cands[best].reading);
    out.lhs = {root};
    std::vector<NodeId> all = out.lhs;
    for (const auto& pos : out.rhs) all.insert(all.end(), pos.begin(), pos.end());
    auto c = out.dag.compact(all);
    if (!c) return res;
    out.dag = std::move(*c);
    std::size_t k = 0;
    for (auto& x : out.lhs) x = all[k++];
    for (auto& pos : out.rhs)
        for (auto& x : pos) x = all[k++];
    res.rule = std::move(out);
    return res;
}

double rule_score(const TripleStore& store, const Rule& r) {
    double best = 0;
    for (const auto& c : candidates_of(store, r)) best = std::max(best, c.score);
    return best;
}

std::vector<std::string> prune_low_score(const TripleStore& store, Grammar& g, double theta) {
    std::vector<std::string> doomed;
    for (const Rule* r : g.learnt())
        if (rule_score(store, *r) <= theta) doomed.push_back(r->id);
    for (const auto& id : doomed) g.remove(id);
    return doomed;
}

std::vector<std::string> prune_unsupported(Grammar& g) {
    std::vector<std::string> removed;
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::string> doomed;
        for (const Rule* r : g.learnt()) {
            if (r->support.empty()) continue;
            bool all_broken = true;
            for (const auto& rec : r->support) {
                bool broken = false;
                for (const auto& d : rec.daughters) {
                    if (!d.empty() && d.front() == '|') continue;
                    if (!g.find(d)) broken = true;
                }
                if (!broken) all_broken = false;
            }
            if (all_broken) doomed.push_back(r->id);
        }
        for (const auto& id : doomed) {
            g.remove(id);
            removed.push_back(id);
            changed = true;
        }
    }
    return removed;
}

std::string paraphrase_rule(const Rule& r, const ParaphraseMap& pm, const FeatureRegistry& reg) {
    std::string out = pm.label(r.lhs_category(), reg) + " ->";
    for (std::size_t i = 0; i < r.arity(); ++i) out += " " + pm.label(r.rhs_category(i), reg);
    return out;
}

RefineReport refine_grammar(const TripleStore& store, Grammar& g, const RefineParams& params,
                            const ParaphraseMap* labels) {
    RefineReport rep;
    auto fmt = [](double x) {
        std::ostringstream s;
        s.precision(17);
        s << x;
        return s.str();
    };
    std::vector<std::string> ids;
    for (const Rule* r : g.learnt()) ids.push_back(r->id);
    for (const auto& id : ids) {
        Rule* r = g.find(id);
        LhsRefinement ref = refine_lhs(store, *r);
        if (!ref.rule) continue;
        rep.lines.push_back(" Refining " + std::to_string(ref.candidates) + " rules encoded in " + id +
                            " score: " + fmt(ref.best));
        *r = std::move(*ref.rule);
        if (labels) rep.lines.push_back("rule is " + paraphrase_rule(*r, *labels, g.registry()));
        rep.refined.push_back(id);
    }
    for (const Rule* r : g.learnt())
        if (double s = rule_score(store, *r); s <= params.theta)
            rep.lines.push_back(" Deleting " + r->id + " score: " + fmt(s));
    rep.pruned = prune_low_score(store, g, params.theta);
    rep.unsupported = prune_unsupported(g);
    for (const auto& id : rep.unsupported) rep.lines.push_back(" Deleting " + id + " (support withdrawn)");
    return rep;
}

}  // namespace gg
