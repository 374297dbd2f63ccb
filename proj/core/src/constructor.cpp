#include "gg/constructor.hpp"

#include <algorithm>

namespace gg {

const char* to_string(Reject r) {
    switch (r) {
        case Reject::None:
            return "none";
        case Reject::Minor:
            return "minor";
        case Reject::MaxBar:
            return "max-bar";
        case Reject::NoBar:
            return "no-bar";
        case Reject::NoHeadCandidate:
            return "no-head-candidate";
    }
    return "?";
}

namespace {

std::optional<int> as_level(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) return std::nullopt;
    return std::stoi(s);
}

// Adds the projection of daughter `d` (a node of `dag`) at `bars` to the
// arena and returns its root.
NodeId project_into(Dag& dag, NodeId d, const std::vector<int>& bars, const XBarConfig& cfg,
                    const FeatureRegistry& reg) {
    FeatureId bar_f = reg.require_feature(cfg.bar_feature);
    std::vector<Atom> atoms;
    for (int b : bars) atoms.push_back(reg.require_value(bar_f, std::to_string(b)));
    NodeId root;
    if (cfg.hfc) {
        root = dag.add_complex();
        auto arcs = dag.at(dag.deref(d)).arcs;
        for (const auto& [f, v] : arcs)
            if (f != bar_f && cfg.is_head(reg.feature_name(f))) dag.set_arc(root, f, v);
    } else {
        FeatureStructure copy = extract(dag, d);
        root = dag.import(copy.dag, copy.root);
    }
    dag.set_arc(root, bar_f, dag.add_atoms(std::move(atoms)));
    return root;
}

std::vector<int> levels(int bar, bool binary, int max_bar) {
    std::vector<int> out;
    if (binary && bar <= max_bar) out.push_back(bar);
    if (bar + 1 <= max_bar) out.push_back(bar + 1);
    return out;
}

}  // namespace

std::optional<int> bar_of(const Dag& dag, NodeId d, const XBarConfig& cfg, const FeatureRegistry& reg) {
    auto bar_f = reg.feature(cfg.bar_feature);
    if (!bar_f) return std::nullopt;
    auto v = dag.arc(d, *bar_f);
    if (!v) return std::nullopt;
    const Node& n = dag.at(dag.deref(*v));
    if (n.kind != NodeKind::Atoms) return std::nullopt;
    std::optional<int> best;
    for (Atom a : n.atoms) {
        auto l = as_level(reg.atom_name(a));
        if (l && (!best || *l > *best)) best = l;
    }
    return best;
}

Reject classify(const Dag& dag, NodeId d, const XBarConfig& cfg, const FeatureRegistry& reg) {
    std::optional<bool> minor_none;
    if (auto mf = reg.feature(cfg.minor_feature)) {
        if (auto v = dag.arc(d, *mf)) {
            const Node& n = dag.at(dag.deref(*v));
            bool none = n.kind == NodeKind::Atoms && n.atoms.size() == 1 &&
                        reg.atom_name(n.atoms[0]) == cfg.minor_none;
            minor_none = none;
        }
    }
    if (minor_none && !*minor_none) return Reject::Minor;
    auto bar_f = reg.feature(cfg.bar_feature);
    bool has_bar = bar_f && dag.arc(d, *bar_f).has_value();
    if (!has_bar) return minor_none ? Reject::NoBar : Reject::Minor;
    if (!bar_of(dag, d, cfg, reg)) return Reject::NoBar;
    return Reject::None;
}

FeatureStructure project(const FeatureStructure& d, std::vector<int> bars, const XBarConfig& cfg,
                         const FeatureRegistry& reg) {
    if (Reject r = classify(d.dag, d.root, cfg, reg); r != Reject::None)
        throw ConstructError(std::string("cannot project: ") + to_string(r));
    for (int b : bars)
        if (b < 0 || b > cfg.max_bar) throw ConstructError("bar level out of range");
    FeatureStructure out;
    NodeId src = out.dag.import(d.dag, d.root);
    NodeId root = project_into(out.dag, src, bars, cfg, reg);
    std::vector<NodeId> roots{root};
    auto c = out.dag.compact(roots);
    return FeatureStructure{std::move(*c), roots[0]};
}

Construction construct(const std::vector<const Tuple*>& alts, const XBarConfig& cfg, const FeatureRegistry& reg) {
    Construction out;
    if (alts.empty()) {
        out.reason = Reject::NoHeadCandidate;
        return out;
    }
    std::size_t arity = alts.front()->roots.size() - 1;
    bool binary = arity == 2;
    Rule r;
    r.origin = RuleOrigin::Learnt;
    r.rhs.resize(arity);
    Reject last = Reject::NoHeadCandidate;
    for (const Tuple* t : alts) {
        std::vector<NodeId> ds(t->roots.begin() + 1, t->roots.end());
        std::vector<NodeId> copied = r.dag.import(t->dag, ds);
        for (std::size_t i = 0; i < arity; ++i) r.rhs[i].push_back(copied[i]);
        for (NodeId d : copied) {
            Reject why = classify(r.dag, d, cfg, reg);
            if (why != Reject::None) {
                last = why;
                continue;
            }
            auto ls = levels(*bar_of(r.dag, d, cfg, reg), binary, cfg.max_bar);
            if (ls.empty()) {
                last = Reject::MaxBar;
                continue;
            }
            r.lhs.push_back(project_into(r.dag, d, ls, cfg, reg));
        }
    }
    if (r.lhs.empty()) {
        out.reason = binary ? Reject::NoHeadCandidate : last;
        return out;
    }
    // drop subsumed or repeated disjuncts, keeping the arena (and sharing) intact
    auto prune = [&](std::vector<NodeId>& roots) {
        std::vector<FeatureStructure> fs;
        for (NodeId n : roots) fs.push_back(extract(r.dag, n));
        std::vector<NodeId> kept;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            bool drop = false;
            for (std::size_t j = 0; j < roots.size() && !drop; ++j) {
                if (i == j || !subsumes(fs[j], fs[i])) continue;
                drop = !subsumes(fs[i], fs[j]) || j < i;
            }
            if (!drop) kept.push_back(roots[i]);
        }
        roots = std::move(kept);
    };
    prune(r.lhs);
    if (alts.size() > 1)
        for (auto& pos : r.rhs) {
            std::vector<FeatureStructure> fs;
            for (NodeId n : pos) fs.push_back(extract(r.dag, n));
            std::vector<NodeId> kept;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                bool dup = false;
                for (std::size_t j = 0; j < i && !dup; ++j) dup = equal(fs[i], fs[j]);
                if (!dup) kept.push_back(pos[i]);
            }
            pos = std::move(kept);
        }
    std::vector<NodeId> all = r.lhs;
    for (const auto& pos : r.rhs) all.insert(all.end(), pos.begin(), pos.end());
    auto compacted = r.dag.compact(all);
    if (!compacted) throw ConstructError("cyclic construction");
    r.dag = std::move(*compacted);
    std::size_t k = 0;
    for (auto& x : r.lhs) x = all[k++];
    for (auto& pos : r.rhs)
        for (auto& x : pos) x = all[k++];
    out.rule = std::move(r);
    return out;
}

Construction construct_unary(const FeatureStructure& d, const XBarConfig& cfg, const FeatureRegistry& reg) {
    Tuple t;
    t.roots = {t.dag.add_complex()};
    t.roots.push_back(t.dag.import(d.dag, d.root));
    return construct({&t}, cfg, reg);
}

Construction construct_binary(const FeatureStructure& d1, const FeatureStructure& d2, const XBarConfig& cfg,
                              const FeatureRegistry& reg) {
    Tuple t;
    t.roots = {t.dag.add_complex()};
    t.roots.push_back(t.dag.import(d1.dag, d1.root));
    t.roots.push_back(t.dag.import(d2.dag, d2.root));
    return construct({&t}, cfg, reg);
}

}  // namespace gg
