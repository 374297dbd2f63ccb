#include "gg/feature_structure.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gg {

// ---- registry ---------------------------------------------------------------

Atom FeatureRegistry::intern(const std::string& value) {
    auto it = atom_ids_.find(value);
    if (it != atom_ids_.end()) return it->second;
    Atom id = static_cast<Atom>(atoms_.size());
    atoms_.push_back(value);
    atom_ids_.emplace(value, id);
    return id;
}

FeatureId FeatureRegistry::declare(const std::string& feature, const std::vector<std::string>& values) {
    if (by_name_.count(feature)) throw FsError("feature declared twice: " + feature);
    Entry e;
    e.name = feature;
    for (const auto& v : values) {
        Atom a = intern(v);
        if (std::find(e.values.begin(), e.values.end(), a) != e.values.end())
            throw FsError("value listed twice for " + feature + ": " + v);
        e.values.push_back(a);
    }
    FeatureId id = static_cast<FeatureId>(features_.size());
    features_.push_back(std::move(e));
    by_name_.emplace(feature, id);
    return id;
}

std::optional<FeatureId> FeatureRegistry::feature(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

FeatureId FeatureRegistry::require_feature(std::string_view name) const {
    auto f = feature(name);
    if (!f) throw UnknownFeatureError("unknown feature: " + std::string(name));
    return *f;
}

Atom FeatureRegistry::require_value(FeatureId f, std::string_view value) const {
    auto it = atom_ids_.find(std::string(value));
    if (it == atom_ids_.end() || !permits(f, it->second))
        throw UnknownValueError("value " + std::string(value) + " not permitted for " + feature_name(f));
    return it->second;
}

bool FeatureRegistry::permits(FeatureId f, Atom a) const {
    const auto& v = features_[f].values;
    return std::find(v.begin(), v.end(), a) != v.end();
}

FeatureRegistry FeatureRegistry::parse(std::string_view text, const std::string& source) {
    FeatureRegistry reg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "feature") throw FsError(source + ":" + std::to_string(lineno) + ": expected 'feature'");
        std::string name;
        if (!(ls >> name)) throw FsError(source + ":" + std::to_string(lineno) + ": missing feature name");
        std::vector<std::string> vals;
        for (std::string v; ls >> v;) vals.push_back(v);
        if (vals.empty()) throw FsError(source + ":" + std::to_string(lineno) + ": feature " + name + " has no values");
        try {
            reg.declare(name, vals);
        } catch (const FsError& e) {
            throw FsError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return reg;
}

FeatureRegistry FeatureRegistry::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FsError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

// ---- dag ----------------------------------------------------------------------

NodeId Dag::add_atoms(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    Node n;
    n.kind = NodeKind::Atoms;
    n.atoms = std::move(atoms);
    return add(std::move(n));
}

NodeId Dag::deref(NodeId id) const {
    while (nodes_[id].kind == NodeKind::Forward) id = nodes_[id].fwd;
    return id;
}

std::optional<NodeId> Dag::arc(NodeId id, FeatureId f) const {
    const Node& n = nodes_[deref(id)];
    if (n.kind != NodeKind::Complex) return std::nullopt;
    auto it = std::lower_bound(n.arcs.begin(), n.arcs.end(), f,
                               [](const auto& p, FeatureId k) { return p.first < k; });
    if (it == n.arcs.end() || it->first != f) return std::nullopt;
    return it->second;
}

void Dag::set_arc(NodeId id, FeatureId f, NodeId target) {
    Node& n = nodes_[deref(id)];
    auto it = std::lower_bound(n.arcs.begin(), n.arcs.end(), f,
                               [](const auto& p, FeatureId k) { return p.first < k; });
    if (it != n.arcs.end() && it->first == f)
        it->second = target;
    else
        n.arcs.insert(it, {f, target});
}

void Dag::erase_arc(NodeId id, FeatureId f) {
    Node& n = nodes_[deref(id)];
    auto it = std::find_if(n.arcs.begin(), n.arcs.end(), [f](const auto& p) { return p.first == f; });
    if (it != n.arcs.end()) n.arcs.erase(it);
}

std::vector<NodeId> Dag::import(const Dag& src, const std::vector<NodeId>& roots) {
    std::unordered_map<NodeId, NodeId> memo;
    std::vector<NodeId> out;
    out.reserve(roots.size());
    // explicit stack keeps deep structures off the call stack
    auto copy = [&](NodeId r) -> NodeId {
        r = src.deref(r);
        if (auto it = memo.find(r); it != memo.end()) return it->second;
        std::vector<std::pair<NodeId, NodeId>> todo;  // (src, dst)
        auto clone = [&](NodeId s) -> NodeId {
            const Node& sn = src.at(s);
            Node dn;
            dn.kind = sn.kind;
            dn.atoms = sn.atoms;
            NodeId d = add(std::move(dn));
            memo.emplace(s, d);
            if (sn.kind == NodeKind::Complex) todo.emplace_back(s, d);
            return d;
        };
        NodeId result = clone(r);
        while (!todo.empty()) {
            auto [s, d] = todo.back();
            todo.pop_back();
            std::vector<std::pair<FeatureId, NodeId>> arcs;
            arcs.reserve(src.at(s).arcs.size());
            for (const auto& [f, child] : src.at(s).arcs) {
                NodeId c = src.deref(child);
                auto it = memo.find(c);
                arcs.emplace_back(f, it != memo.end() ? it->second : clone(c));
            }
            nodes_[d].arcs = std::move(arcs);
        }
        return result;
    };
    for (NodeId r : roots) out.push_back(copy(r));
    return out;
}

bool Dag::unify(NodeId a, NodeId b) {
    a = deref(a);
    b = deref(b);
    if (a == b) return true;
    NodeKind ka = nodes_[a].kind, kb = nodes_[b].kind;
    auto forward = [&](NodeId from, NodeId to) {
        nodes_[from].kind = NodeKind::Forward;
        nodes_[from].fwd = to;
        nodes_[from].atoms.clear();
        nodes_[from].arcs.clear();
    };
    if (ka == NodeKind::Var || ka == NodeKind::Any) {
        forward(a, b);
        return true;
    }
    if (kb == NodeKind::Var || kb == NodeKind::Any) {
        forward(b, a);
        return true;
    }
    if (ka == NodeKind::Atoms && kb == NodeKind::Atoms) {
        std::vector<Atom> both;
        std::set_intersection(nodes_[a].atoms.begin(), nodes_[a].atoms.end(), nodes_[b].atoms.begin(),
                              nodes_[b].atoms.end(), std::back_inserter(both));
        if (both.empty()) return false;
        nodes_[a].atoms = std::move(both);
        forward(b, a);
        return true;
    }
    if (ka == NodeKind::Complex && kb == NodeKind::Complex) {
        auto arcs = std::move(nodes_[b].arcs);
        forward(b, a);
        for (const auto& [f, child] : arcs) {
            auto mine = arc(a, f);
            if (mine) {
                if (!unify(*mine, child)) return false;
            } else {
                set_arc(a, f, child);
            }
        }
        return true;
    }
    return false;
}

std::optional<Dag> Dag::compact(std::vector<NodeId>& roots) const {
    Dag out;
    std::unordered_map<NodeId, NodeId> memo;
    std::unordered_map<NodeId, bool> open;
    bool cyclic = false;
    auto rec = [&](auto&& self, NodeId s) -> NodeId {
        s = deref(s);
        if (auto it = memo.find(s); it != memo.end()) {
            if (open[s]) cyclic = true;
            return it->second;
        }
        const Node& sn = nodes_[s];
        Node dn;
        dn.kind = sn.kind;
        dn.atoms = sn.atoms;
        NodeId d = out.add(std::move(dn));
        memo.emplace(s, d);
        if (sn.kind == NodeKind::Complex) {
            open[s] = true;
            std::vector<std::pair<FeatureId, NodeId>> arcs;
            arcs.reserve(sn.arcs.size());
            for (const auto& [f, child] : sn.arcs) {
                arcs.emplace_back(f, self(self, child));
                if (cyclic) return d;
            }
            out.nodes_[d].arcs = std::move(arcs);
            open[s] = false;
        }
        return d;
    };
    for (auto& r : roots) {
        r = rec(rec, r);
        if (cyclic) return std::nullopt;
    }
    return out;
}

FeatureStructure FeatureStructure::empty() {
    FeatureStructure fs;
    fs.root = fs.dag.add_complex();
    return fs;
}

// ---- subsumption ----------------------------------------------------------------

namespace {

bool subsume_node(const Dag& a, NodeId x, const Dag& b, NodeId y, std::unordered_map<NodeId, NodeId>& map) {
    x = a.deref(x);
    y = b.deref(y);
    if (auto it = map.find(x); it != map.end()) return it->second == y;
    map.emplace(x, y);
    const Node& nx = a.at(x);
    const Node& ny = b.at(y);
    switch (nx.kind) {
        case NodeKind::Var:
        case NodeKind::Any:
            return true;
        case NodeKind::Atoms:
            return ny.kind == NodeKind::Atoms &&
                   std::includes(nx.atoms.begin(), nx.atoms.end(), ny.atoms.begin(), ny.atoms.end());
        case NodeKind::Complex:
            if (nx.arcs.empty()) return ny.kind == NodeKind::Complex || ny.kind == NodeKind::Var;
            if (ny.kind != NodeKind::Complex) return false;
            for (const auto& [f, child] : nx.arcs) {
                auto other = b.arc(y, f);
                if (!other || !subsume_node(a, child, b, *other, map)) return false;
            }
            return true;
        case NodeKind::Forward:
            break;
    }
    return false;
}

void collect_sets(const Dag& d, NodeId n, std::vector<NodeId>& out, std::vector<char>& seen) {
    n = d.deref(n);
    if (seen[n]) return;
    seen[n] = 1;
    const Node& node = d.at(n);
    if (node.kind == NodeKind::Atoms && node.atoms.size() > 1) out.push_back(n);
    if (node.kind == NodeKind::Complex)
        for (const auto& [f, c] : node.arcs) collect_sets(d, c, out, seen);
}

}  // namespace

bool subsumes_roots(const Dag& a, const std::vector<NodeId>& ra, const Dag& b, const std::vector<NodeId>& rb) {
    if (ra.size() != rb.size()) return false;
    std::unordered_map<NodeId, NodeId> map;
    for (std::size_t i = 0; i < ra.size(); ++i)
        if (!subsume_node(a, ra[i], b, rb[i], map)) return false;
    return true;
}

bool subsumes(const FeatureStructure& general, const FeatureStructure& specific) {
    std::unordered_map<NodeId, NodeId> map;
    return subsume_node(general.dag, general.root, specific.dag, specific.root, map);
}

bool equal(const FeatureStructure& a, const FeatureStructure& b) { return subsumes(a, b) && subsumes(b, a); }

std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b) {
    Dag work;
    NodeId ra = work.import(a.dag, a.root);
    NodeId rb = work.import(b.dag, b.root);
    if (!work.unify(ra, rb)) return std::nullopt;
    std::vector<NodeId> roots{ra};
    auto compacted = work.compact(roots);
    if (!compacted) return std::nullopt;
    return FeatureStructure{std::move(*compacted), roots[0]};
}

bool unifiable(const FeatureStructure& a, const FeatureStructure& b) {
    Dag work;
    NodeId ra = work.import(a.dag, a.root);
    NodeId rb = work.import(b.dag, b.root);
    if (!work.unify(ra, rb)) return false;
    std::vector<NodeId> roots{ra};
    return work.compact(roots).has_value();
}

FeatureStructure extract(const Dag& dag, NodeId root) {
    FeatureStructure fs;
    fs.root = fs.dag.import(dag, root);
    return fs;
}

TupleExpansion expand_roots(const Dag& dag, const std::vector<NodeId>& roots, std::size_t cap) {
    TupleExpansion out;
    std::vector<NodeId> sets;
    std::vector<char> seen(dag.size(), 0);
    for (NodeId r : roots) collect_sets(dag, r, sets, seen);
    std::vector<std::size_t> idx(sets.size(), 0);
    while (true) {
        if (out.members.size() >= cap) {
            out.capped = true;
            break;
        }
        Tuple t;
        t.roots = t.dag.import(dag, roots);
        // import preserves arc order, so the walk meets the copies in the
        // same order as the originals
        std::vector<NodeId> csets;
        std::vector<char> cseen(t.dag.size(), 0);
        for (NodeId r : t.roots) collect_sets(t.dag, r, csets, cseen);
        for (std::size_t i = 0; i < csets.size(); ++i) {
            Atom pick = t.dag.at(csets[i]).atoms[idx[i]];
            t.dag.at(csets[i]).atoms = {pick};
        }
        out.members.push_back(std::move(t));
        bool done = true;
        for (std::size_t k = sets.size(); k-- > 0;) {
            if (++idx[k] < dag.at(sets[k]).atoms.size()) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done) break;
    }
    return out;
}

Expansion expand(const FeatureStructure& fs, std::size_t cap) {
    TupleExpansion te = expand_roots(fs.dag, {fs.root}, cap);
    Expansion e;
    e.capped = te.capped;
    for (auto& t : te.members) e.members.push_back(FeatureStructure{std::move(t.dag), t.roots[0]});
    return e;
}

bool has_value_sets(const FeatureStructure& fs) {
    std::vector<NodeId> sets;
    std::vector<char> seen(fs.dag.size(), 0);
    collect_sets(fs.dag, fs.root, sets, seen);
    return !sets.empty();
}

std::optional<std::vector<Atom>> top_atoms(const FeatureStructure& fs, FeatureId f) {
    auto a = fs.dag.arc(fs.root, f);
    if (!a) return std::nullopt;
    const Node& n = fs.dag.at(fs.dag.deref(*a));
    if (n.kind != NodeKind::Atoms) return std::nullopt;
    return n.atoms;
}

// ---- categories ---------------------------------------------------------------

Category unify_cat(const Category& a, const Category& b) {
    Category out;
    for (const auto& x : a.disjuncts)
        for (const auto& y : b.disjuncts)
            if (auto u = unify(x, y)) out.disjuncts.push_back(std::move(*u));
    return out;
}

bool compatible(const Category& a, const Category& b) {
    for (const auto& x : a.disjuncts)
        for (const auto& y : b.disjuncts)
            if (unifiable(x, y)) return true;
    return false;
}

Expansion expand(const Category& c, std::size_t cap) {
    Expansion out;
    for (const auto& d : c.disjuncts) {
        if (out.members.size() >= cap) {
            out.capped = true;
            break;
        }
        Expansion e = expand(d, cap - out.members.size());
        out.capped = out.capped || e.capped;
        for (auto& m : e.members) out.members.push_back(std::move(m));
    }
    return out;
}

Category simplify(const Category& c) {
    const auto& ds = c.disjuncts;
    Category out;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < ds.size() && !drop; ++j) {
            if (i == j || !subsumes(ds[j], ds[i])) continue;
            // of two equal disjuncts keep the earlier one
            drop = !subsumes(ds[i], ds[j]) || j < i;
        }
        if (!drop) out.disjuncts.push_back(ds[i]);
    }
    return out;
}

Category disjoin(const Category& a, const Category& b) {
    Category out = a;
    for (const auto& d : b.disjuncts) out.disjuncts.push_back(d);
    return out;
}

bool cat_subsumes(const Category& general, const Category& specific) {
    for (const auto& s : expand(specific, 4096).members) {
        bool covered = false;
        for (const auto& g : general.disjuncts)
            if (subsumes(g, s)) {
                covered = true;
                break;
            }
        if (!covered) return false;
    }
    return true;
}

bool cat_equal(const Category& a, const Category& b) {
    Category ea{expand(a, 4096).members};
    Category eb{expand(b, 4096).members};
    ea = simplify(ea);
    eb = simplify(eb);
    auto covered = [](const Category& x, const Category& y) {
        for (const auto& d : x.disjuncts) {
            bool hit = false;
            for (const auto& e : y.disjuncts)
                if (equal(d, e)) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
        return true;
    };
    return covered(ea, eb) && covered(eb, ea);
}

}  // namespace gg
