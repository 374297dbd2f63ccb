#include <doctest.h>

#include "gg/constructor.hpp"
#include "support.hpp"

using namespace gg;

namespace {

const FeatureRegistry& demo() {
    static const FeatureRegistry reg = FeatureRegistry::load(ggt::data("demo/registry.txt"));
    return reg;
}
const FeatureRegistry& claws() {
    static const FeatureRegistry reg = FeatureRegistry::load(ggt::data("claws/registry.txt"));
    return reg;
}
const ParaphraseMap& demo_labels() {
    static const ParaphraseMap pm = ParaphraseMap::load(ggt::data("demo/paraphrase.txt"), demo());
    return pm;
}

FeatureStructure d(const std::string& s) { return parse_fs(s, demo()); }

XBarConfig cfg(bool hfc = false) {
    XBarConfig x;
    x.max_bar = 2;
    x.hfc = hfc;
    return x;
}

FeatureStructure drop(FeatureStructure fs, const std::vector<std::string>& names, const FeatureRegistry& reg) {
    for (const auto& n : names)
        if (auto f = reg.feature(n)) fs.dag.erase_arc(fs.dag.deref(fs.root), *f);
    return fs;
}

int bar(const FeatureStructure& fs) {
    auto a = top_atoms(fs, *demo().feature("BAR"));
    REQUIRE(a);
    REQUIRE(a->size() == 1);
    return std::stoi(demo().atom_name(a->front()));
}

int max_bar(const FeatureStructure& fs) {
    auto a = top_atoms(fs, *demo().feature("BAR"));
    int best = -1;
    for (Atom x : *a) best = std::max(best, std::stoi(demo().atom_name(x)));
    return best;
}

bool has(const FeatureStructure& fs, const std::string& name) {
    return fs.dag.arc(fs.dag.deref(fs.root), *demo().feature(name)).has_value();
}

const FeatureStructure kHappy = d("[N +, V +, BAR 1, DET -, ADV -]");
const FeatureStructure kCat = d("[N +, V -, BAR 1, DET -, PER 3, PLU -, NTYPE COUNT]");
const FeatureStructure kThe = d("[DET +, DEF +, CONJ NULL]");

// random major categories over the demo registry
std::string major(ggt::Gen& g) {
    static const char* pm[] = {"+", "-"};
    std::string s = "[N " + std::string(pm[g.pick(2)]) + ", V " + pm[g.pick(2)] + ", BAR ";
    if (g.chance(20))
        s += "{" + std::to_string(g.pick(2)) + "," + std::to_string(2) + "}";
    else
        s += std::to_string(g.pick(3));
    if (g.chance(50)) s += ", PLU " + std::string(pm[g.pick(2)]);
    if (g.chance(50)) s += std::string(", NTYPE ") + (g.chance(50) ? "COUNT" : "{NAME,MASS}");
    if (g.chance(40)) s += std::string(", CASE ") + (g.chance(50) ? "NOM" : "ACC");
    if (g.chance(40)) s += ", PER " + std::to_string(1 + g.pick(3));
    if (g.chance(30)) s += ", DET -";
    return s + "]";
}

}  // namespace

TEST_SUITE("rule_constructor") {
    TEST_CASE("projection") {
        auto x = cfg();
        CHECK(equal(project(kCat, {1}, x, demo()), kCat));
        auto up = project(kCat, {2}, x, demo());
        CHECK(bar(up) == 2);
        CHECK(equal(drop(up, {"BAR"}, demo()), drop(kCat, {"BAR"}, demo())));
        CHECK(has(up, "NTYPE"));

        auto h = project(kCat, {1, 2}, cfg(true), demo());
        CHECK_FALSE(has(h, "NTYPE"));
        CHECK(has(h, "PER"));
        CHECK_THROWS(project(kCat, {3}, x, demo()));
        CHECK_THROWS(project(kThe, {1}, x, demo()));
    }

    TEST_CASE("classification") {
        auto x = cfg();
        auto cl = [&](const std::string& s, const FeatureRegistry& reg) {
            auto fs = parse_fs(s, reg);
            return classify(fs.dag, fs.root, x, reg);
        };
        CHECK(cl("[MINOR DET]", claws()) == Reject::Minor);
        CHECK(cl("[N +, V -, MINOR NONE]", claws()) == Reject::NoBar);
        CHECK(cl("[N +, V -, BAR 1, MINOR NONE]", claws()) == Reject::None);
        CHECK(cl("[DET +, DEF +]", demo()) == Reject::Minor);
        CHECK(cl("[N +, V -, BAR 2]", demo()) == Reject::None);
        auto b = d("[N +, BAR {0,2}]");
        CHECK(bar_of(b.dag, b.root, x, demo()) == 2);
    }

    TEST_CASE("unary construction") {
        auto r = construct_unary(kHappy, cfg(), demo());
        REQUIRE(r.rule);
        CHECK(demo_labels().label(r.rule->lhs_category(), demo()) == "AP");
        CHECK(demo_labels().label(r.rule->rhs_category(0), demo()) == "Adj");

        CHECK(construct_unary(d("[N +, V -, BAR 2]"), cfg(), demo()).reason == Reject::MaxBar);
        CHECK(construct_unary(kThe, cfg(), demo()).reason == Reject::Minor);
        CHECK(construct_unary(parse_fs("[MINOR DET]", claws()), cfg(), claws()).reason == Reject::Minor);
        CHECK(construct_unary(parse_fs("[N +, V -, MINOR NONE]", claws()), cfg(), claws()).reason == Reject::NoBar);
    }

    TEST_CASE("binary construction") {
        auto r = construct_binary(kHappy, kCat, cfg(), demo());
        REQUIRE(r.rule);
        CHECK(demo_labels().label(r.rule->lhs_category(), demo()) == "{Adj,AP,N1,NP}");
        CHECK(r.rule->arity() == 2);
        CHECK(equal(r.rule->rhs_category(0).disjuncts.at(0), kHappy));
        CHECK(equal(r.rule->rhs_category(1).disjuncts.at(0), kCat));

        auto det = construct_binary(kThe, kCat, cfg(), demo());
        REQUIRE(det.rule);
        CHECK(demo_labels().label(det.rule->lhs_category(), demo()) == "{N1,NP}");

        CHECK(construct_binary(kThe, kThe, cfg(), demo()).reason == Reject::NoHeadCandidate);
        auto two = construct_binary(parse_fs("[MINOR DET]", claws()), parse_fs("[MINOR DEG]", claws()), cfg(), claws());
        CHECK_FALSE(two.rule);
        CHECK(two.reason == Reject::NoHeadCandidate);

        // both daughters at the top level still project at their own bar
        auto top = construct_binary(d("[N +, V -, BAR 2]"), d("[N -, V -, BAR 2]"), cfg(), demo());
        REQUIRE(top.rule);
        CHECK(top.rule->lhs.size() == 2);
    }

    TEST_CASE("HFC removes non-head features from the mother") {
        auto off = construct_binary(kHappy, kCat, cfg(false), demo());
        auto on = construct_binary(kHappy, kCat, cfg(true), demo());
        REQUIRE(off.rule);
        REQUIRE(on.rule);
        bool any_ntype = false;
        for (const auto& m : off.rule->lhs_category().disjuncts) any_ntype = any_ntype || has(m, "NTYPE");
        CHECK(any_ntype);
        for (const auto& m : on.rule->lhs_category().disjuncts) CHECK_FALSE(has(m, "NTYPE"));
        CHECK(hfc_check(*on.rule, cfg(true), demo()));
    }

    TEST_CASE("constructed mothers differ from a daughter only in bar") {
        ggt::Gen g(11);
        std::size_t built = 0;
        for (int i = 0; i < 400; ++i) {
            bool hfc = g.chance(50);
            auto x = cfg(hfc);
            std::vector<FeatureStructure> ds{d(major(g)), g.chance(20) ? kThe : d(major(g))};
            auto c = construct_binary(ds[0], ds[1], x, demo());
            REQUIRE(c.rule);
            ++built;
            CHECK(c.rule->lhs.size() <= 4);
            std::vector<std::string> removed{"BAR"};
            if (hfc) removed = x.nonhead;
            for (const auto& m : expand(c.rule->lhs_category(), 4096).members) {
                int b = bar(m);
                CHECK(b <= x.max_bar);
                bool sourced = false;
                for (const auto& dd : ds) {
                    if (!has(dd, "BAR")) continue;
                    int db = max_bar(dd);
                    if (b != db && b != db + 1) continue;
                    for (const auto& dm : expand(dd, 4096).members)
                        if (equal(drop(m, removed, demo()), drop(dm, removed, demo()))) sourced = true;
                }
                CHECK(sourced);
                if (hfc)
                    for (const auto& n : x.nonhead)
                        if (n != "BAR") CHECK_FALSE(has(m, n));
            }

            auto u = construct_unary(ds[0], x, demo());
            int b0 = max_bar(ds[0]);
            if (b0 >= x.max_bar) {
                CHECK(u.reason == Reject::MaxBar);
            } else {
                REQUIRE(u.rule);
                for (const auto& m : u.rule->lhs_category().disjuncts) {
                    CHECK(bar(m) == b0 + 1);
                    CHECK(bar(m) != b0);
                }
            }
        }
        CHECK(built == 400);
    }

    TEST_CASE("from a super edge instantiation") {
        Tuple t;
        auto m = FeatureStructure::empty();
        t.roots = {t.dag.import(m.dag, m.root), t.dag.import(kHappy.dag, kHappy.root), t.dag.import(kCat.dag, kCat.root)};
        auto c = construct({&t}, cfg(), demo());
        REQUIRE(c.rule);
        auto direct = construct_binary(kHappy, kCat, cfg(), demo());
        CHECK(cat_equal(c.rule->lhs_category(), direct.rule->lhs_category()));
    }
}
