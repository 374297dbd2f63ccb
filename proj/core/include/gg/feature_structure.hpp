#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gg {

using Atom = std::uint16_t;
using FeatureId = std::uint16_t;
using NodeId = std::uint32_t;

class FsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public FsError {
public:
    ParseError(std::string msg, std::size_t pos)
        : FsError(msg + " at offset " + std::to_string(pos)), offset(pos) {}
    std::size_t offset;
};

class UnknownFeatureError : public FsError {
public:
    using FsError::FsError;
};

class UnknownValueError : public FsError {
public:
    using FsError::FsError;
};

// Features and their permitted atomic values. Declaration order doubles as
// canonical print order.
class FeatureRegistry {
public:
    FeatureId declare(const std::string& feature, const std::vector<std::string>& values);

    std::optional<FeatureId> feature(std::string_view name) const;
    FeatureId require_feature(std::string_view name) const;
    Atom require_value(FeatureId f, std::string_view value) const;
    bool permits(FeatureId f, Atom a) const;

    const std::string& feature_name(FeatureId f) const { return features_[f].name; }
    const std::string& atom_name(Atom a) const { return atoms_[a]; }
    const std::vector<Atom>& values(FeatureId f) const { return features_[f].values; }
    std::size_t size() const { return features_.size(); }

    static FeatureRegistry parse(std::string_view text, const std::string& source = "<registry>");
    static FeatureRegistry load(const std::string& path);

private:
    struct Entry {
        std::string name;
        std::vector<Atom> values;
    };
    Atom intern(const std::string& value);

    std::vector<Entry> features_;
    std::unordered_map<std::string, FeatureId> by_name_;
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, Atom> atom_ids_;
};

using RegistryPtr = std::shared_ptr<const FeatureRegistry>;

enum class NodeKind : std::uint8_t { Var, Atoms, Complex, Any, Forward };

struct Node {
    NodeKind kind = NodeKind::Var;
    NodeId fwd = 0;
    std::vector<Atom> atoms;                           // sorted, non-empty
    std::vector<std::pair<FeatureId, NodeId>> arcs;    // sorted by feature
};

// Node arena. Several roots can share nodes; that is how reentrancy across
// the members of a rule is expressed.
class Dag {
public:
    NodeId add(Node n) {
        nodes_.push_back(std::move(n));
        return static_cast<NodeId>(nodes_.size() - 1);
    }
    NodeId add_var() { return add(Node{}); }
    NodeId add_atoms(std::vector<Atom> atoms);
    NodeId add_complex() {
        Node n;
        n.kind = NodeKind::Complex;
        return add(std::move(n));
    }

    Node& at(NodeId id) { return nodes_[id]; }
    const Node& at(NodeId id) const { return nodes_[id]; }
    NodeId deref(NodeId id) const;
    std::size_t size() const { return nodes_.size(); }

    // value of feature f under a complex node, or nullopt
    std::optional<NodeId> arc(NodeId id, FeatureId f) const;
    void set_arc(NodeId id, FeatureId f, NodeId target);
    void erase_arc(NodeId id, FeatureId f);

    // Copies the sub-graph below each root of `src` into this arena;
    // sharing is preserved across all roots of one call.
    std::vector<NodeId> import(const Dag& src, const std::vector<NodeId>& roots);
    NodeId import(const Dag& src, NodeId root) { return import(src, std::vector<NodeId>{root}).front(); }

    // destructive; leaves forwarding pointers behind
    bool unify(NodeId a, NodeId b);

    // Rebuilds an arena without forwards; nullopt on a cycle.
    std::optional<Dag> compact(std::vector<NodeId>& roots) const;

private:
    std::vector<Node> nodes_;
};

// A single non-disjunctive feature structure (value sets are allowed).
struct FeatureStructure {
    Dag dag;
    NodeId root = 0;

    static FeatureStructure empty();
};

// A disjunction of feature structures. No disjuncts means bottom.
struct Category {
    std::vector<FeatureStructure> disjuncts;

    bool is_bottom() const { return disjuncts.empty(); }
    static Category bottom() { return {}; }
    static Category of(FeatureStructure fs) {
        Category c;
        c.disjuncts.push_back(std::move(fs));
        return c;
    }
};

constexpr std::size_t kDefaultExpansionCap = 64;

struct Expansion {
    std::vector<FeatureStructure> members;
    bool capped = false;
};

// ---- multi-root helpers used by rules and chart edges -------------------

// Several roots in one arena: a rule or edge instantiation, mother first.
struct Tuple {
    Dag dag;
    std::vector<NodeId> roots;
};

struct TupleExpansion {
    std::vector<Tuple> members;
    bool capped = false;
};

// true when every root of `a` subsumes the matching root of `b` under one
// consistent node mapping
bool subsumes_roots(const Dag& a, const std::vector<NodeId>& ra, const Dag& b, const std::vector<NodeId>& rb);

// Expands the value sets reachable from `roots` into non-disjunctive copies.
TupleExpansion expand_roots(const Dag& dag, const std::vector<NodeId>& roots, std::size_t cap = kDefaultExpansionCap);

// Extracts one root into a standalone structure.
FeatureStructure extract(const Dag& dag, NodeId root);

// ---- single structures ---------------------------------------------------

bool subsumes(const FeatureStructure& general, const FeatureStructure& specific);
std::optional<FeatureStructure> unify(const FeatureStructure& a, const FeatureStructure& b);
bool unifiable(const FeatureStructure& a, const FeatureStructure& b);
bool equal(const FeatureStructure& a, const FeatureStructure& b);
Expansion expand(const FeatureStructure& fs, std::size_t cap = kDefaultExpansionCap);
bool has_value_sets(const FeatureStructure& fs);

// value of a top-level feature, if atomic
std::optional<std::vector<Atom>> top_atoms(const FeatureStructure& fs, FeatureId f);

// ---- categories ------------------------------------------------------------

Category unify_cat(const Category& a, const Category& b);
bool compatible(const Category& a, const Category& b);
Expansion expand(const Category& c, std::size_t cap = kDefaultExpansionCap);
Category simplify(const Category& c);
Category disjoin(const Category& a, const Category& b);
// every expansion of `specific` is subsumed by some disjunct of `general`
bool cat_subsumes(const Category& general, const Category& specific);
// same denotation: simplified expansion sets agree modulo structural equality
bool cat_equal(const Category& a, const Category& b);

// ---- text ------------------------------------------------------------------

struct LiteralOptions {
    bool allow_wildcard = false;
};

FeatureStructure parse_fs(std::string_view text, const FeatureRegistry& reg, LiteralOptions opt = {});
Category parse_category(std::string_view text, const FeatureRegistry& reg, LiteralOptions opt = {});

// Parses several structures that share one tag namespace, e.g. the members
// of a rule. `text` holds them back to back; returns roots into `dag`.
class LiteralReader {
public:
    LiteralReader(std::string_view text, const FeatureRegistry& reg, Dag& dag, LiteralOptions opt = {});
    bool at_end();
    bool peek(char c);
    void expect(char c);
    void expect_word(std::string_view w);
    std::string word();
    // a structure or a {..} disjunction of structures
    std::vector<NodeId> category();
    NodeId structure();
    std::size_t offset() const { return pos_; }

private:
    void skip_ws();
    NodeId value(FeatureId f);
    [[noreturn]] void fail(const std::string& msg) const;

    std::string_view text_;
    const FeatureRegistry& reg_;
    Dag& dag_;
    LiteralOptions opt_;
    std::size_t pos_ = 0;
    std::unordered_map<int, NodeId> tags_;
};

std::string to_string(const FeatureStructure& fs, const FeatureRegistry& reg);
// registry-free canonical text, usable as a map key
std::string fingerprint(const FeatureStructure& fs);
std::string fingerprint(const Category& c);
std::string to_string(const Category& c, const FeatureRegistry& reg);
// prints several roots with one shared tag numbering
std::vector<std::string> to_strings(const Dag& dag, const std::vector<NodeId>& roots, const FeatureRegistry& reg);

}  // namespace gg
