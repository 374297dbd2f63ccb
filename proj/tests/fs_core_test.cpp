#include <doctest.h>

#include "oracles.hpp"

using namespace gg;
using ggt::cat;
using ggt::denotation;
using ggt::fs;
using ggt::readings;
using ggt::same_set;

TEST_SUITE("fs_core") {

TEST_CASE("parse and print") {
    auto a = fs("[N +, V -, BAR 2]");
    CHECK(to_string(a, ggt::toy()) == "[N +, V -, BAR 2]");
    CHECK(cat("{[DET +], [N +, V -]}").disjuncts.size() == 2);
    auto b = fs("[BAR {1,2}]");
    CHECK(expand(b).members.size() == 2);
    CHECK(cat("{}").is_bottom());
    CHECK(to_string(fs("[]"), ggt::toy()) == "[]");
    CHECK(to_string(fs("[A #1, B #1]"), ggt::toy()) == "[A #1, B #1]");
    CHECK(to_string(fs("[A #1=2, B #1]"), ggt::toy()) == "[A #1=2, B #1]");
    CHECK(to_string(fs("[V -, N +]"), ggt::toy()) == "[N +, V -]");
    CHECK(to_string(fs("[BAR {1}]"), ggt::toy()) == "[BAR 1]");
}

TEST_CASE("literal errors") {
    CHECK_THROWS_AS(fs("[Colour red]"), UnknownFeatureError);
    CHECK_THROWS_AS(fs("[N x]"), UnknownValueError);
    CHECK_THROWS_AS(fs("[N +"), ParseError);
    CHECK_THROWS_AS(fs("[N *]"), ParseError);
    CHECK_THROWS(fs("[A #1=1, B #1=2]"));
    CHECK_NOTHROW(parse_fs("[N *]", ggt::toy(), LiteralOptions{true}));
}

TEST_CASE("subsumption examples") {
    CHECK(subsumes(fs("[]"), fs("[Person 3]")));
    CHECK_FALSE(subsumes(fs("[Person 3]"), fs("[Person 2]")));
    CHECK(subsumes(fs("[BAR {1,2}]"), fs("[BAR 1]")));
    CHECK_FALSE(subsumes(fs("[BAR 1]"), fs("[BAR {1,2}]")));
    CHECK(subsumes(fs("[A 1, B 1]"), fs("[A #1=1, B #1]")));
    CHECK_FALSE(subsumes(fs("[A #1=1, B #1]"), fs("[A 1, B 1]")));
    CHECK(subsumes(fs("[A #1, B #1]"), fs("[A #2=1, B #2, N +]")));
}

TEST_CASE("unification examples") {
    auto r = unify(fs("[Cat NP, Person 3]"), fs("[Cat NP, Person 3]"));
    REQUIRE(r);
    CHECK(equal(*r, fs("[Cat NP, Person 3]")));
    CHECK_FALSE(unify(fs("[Cat NP, Person 3]"), fs("[Cat NP, Person 2]")));
    auto s = unify(fs("[BAR {1,2}]"), fs("[BAR {2,3}]"));
    REQUIRE(s);
    CHECK(equal(*s, fs("[BAR 2]")));
    CHECK_FALSE(unify(fs("[BAR {0,1}]"), fs("[BAR {2,3}]")));
    auto t = unify(fs("[A #1, B #1]"), fs("[A 2]"));
    REQUIRE(t);
    CHECK(equal(*t, fs("[A #1=2, B #1]")));
    CHECK_FALSE(unify(fs("[A #1, B #1]"), fs("[A 1, B 2]")));
}

TEST_CASE("empty structure is the unit of unification") {
    ggt::Gen gen(11);
    for (int i = 0; i < 50; ++i) {
        auto d = gen.structure();
        auto r = unify(FeatureStructure::empty(), d);
        REQUIRE(r);
        CHECK(equal(*r, d));
    }
}

TEST_CASE("category operations") {
    auto u = unify_cat(cat("{[N +], [N -]}"), cat("[N +]"));
    REQUIRE(u.disjuncts.size() == 1);
    CHECK(equal(u.disjuncts[0], fs("[N +]")));
    CHECK(unify_cat(Category::bottom(), cat("[N +]")).is_bottom());
    CHECK(cat_equal(unify_cat(cat("{[N +], [V -]}"), cat("[]")), cat("{[N +], [V -]}")));
    CHECK(unify_cat(cat("[N +]"), cat("[N -]")).is_bottom());
    auto cross = unify_cat(cat("{[A 1], [A 2]}"), cat("{[B 1], [B 2]}"));
    CHECK(cross.disjuncts.size() == 4);

    CHECK(expand(fs("[N +, BAR {1,2}]")).members.size() == 2);
    CHECK(expand(cat("{[A 1], [A 2]}")).members.size() == 2);
    auto four = expand(fs("[BAR {1,2}, PLU {+,-}]")).members;
    REQUIRE(four.size() == 4);
    CHECK(to_string(four[0], ggt::toy()) == "[BAR 1, PLU +]");
    CHECK(to_string(four[1], ggt::toy()) == "[BAR 1, PLU -]");
    CHECK(to_string(four[3], ggt::toy()) == "[BAR 2, PLU -]");

    CHECK(equal(fs("[A 1, B 2]"), fs("[B 2, A 1]")));
    CHECK(cat_equal(cat("[BAR {1,2}]"), cat("{[BAR 1], [BAR 2]}")));
    CHECK_FALSE(cat_equal(cat("[BAR {1,2}]"), cat("[BAR 1]")));

    auto s = simplify(cat("{[N +], [N +, V -]}"));
    REQUIRE(s.disjuncts.size() == 1);
    CHECK(equal(s.disjuncts[0], fs("[N +]")));
    CHECK(simplify(cat("{[A 1], [A 1]}")).disjuncts.size() == 1);
    CHECK(cat_subsumes(cat("[BAR {1,2}]"), cat("{[BAR 1], [BAR 2]}")));
    CHECK_FALSE(cat_subsumes(cat("[BAR 1]"), cat("[BAR {1,2}]")));
    CHECK(compatible(cat("{[N +], [N -]}"), cat("[N -, V +]")));
}

TEST_CASE("expansion cap is reported") {
    auto e = expand(fs("[Cat {NP,N1,VP,S}, Person {1,2,3}, BAR {0,1,2,3}, PLU {+,-}]"), 10);
    CHECK(e.capped);
    CHECK(e.members.size() == 10);
}

TEST_CASE("property: subsumption is a preorder") {
    ggt::Gen gen(1);
    for (int i = 0; i < 500; ++i) {
        auto a = gen.structure(), b = gen.structure(), c = gen.structure();
        CHECK(subsumes(a, a));
        // chains built by unification, so transitivity is exercised
        auto ab = unify(a, b);
        if (!ab) continue;
        auto abc = unify(*ab, c);
        if (!abc) continue;
        CHECK(subsumes(a, *ab));
        CHECK(subsumes(*ab, *abc));
        CHECK(subsumes(a, *abc));
        if (subsumes(a, b) && subsumes(b, c)) CHECK(subsumes(a, c));
    }
}

TEST_CASE("property: unification algebra") {
    ggt::Gen gen(2);
    int lub_checked = 0;
    for (int i = 0; i < 500; ++i) {
        auto a = gen.structure(), b = gen.structure(), c = gen.structure();
        auto aa = unify(a, a);
        REQUIRE(aa);
        CHECK(equal(*aa, a));
        auto ab = unify(a, b), ba = unify(b, a);
        REQUIRE(ab.has_value() == ba.has_value());
        if (ab) CHECK(equal(*ab, *ba));
        std::optional<FeatureStructure> l, r;
        if (ab) l = unify(*ab, c);
        if (auto bc = unify(b, c)) r = unify(a, *bc);
        REQUIRE(l.has_value() == r.has_value());
        if (l) CHECK(equal(*l, *r));
        if (ab) {
            CHECK(subsumes(a, *ab));
            CHECK(subsumes(b, *ab));
            // any common extension lies below the unifier
            for (int k = 0; k < 3; ++k) {
                auto e0 = unify(*ab, gen.structure());
                if (!e0) continue;
                CHECK(subsumes(*ab, *e0));
                ++lub_checked;
            }
            if (subsumes(a, c) && subsumes(b, c)) CHECK(subsumes(*ab, c));
        }
        CHECK(unifiable(a, b) == ab.has_value());
    }
    CHECK(lub_checked > 50);
}

TEST_CASE("property: printing is canonical") {
    ggt::Gen gen(3);
    for (int i = 0; i < 500; ++i) {
        auto a = gen.structure();
        std::string once = to_string(a, ggt::rand_reg());
        auto back = parse_fs(once, ggt::rand_reg());
        CHECK(to_string(back, ggt::rand_reg()) == once);
        CHECK(equal(back, a));
        CHECK(fingerprint(back) == fingerprint(a));
    }
}

TEST_CASE("property: unify_cat matches the cross-product oracle") {
    ggt::Gen gen(4);
    int checked = 0;
    for (int i = 0; i < 500; ++i) {
        auto a = gen.category(), b = gen.category();
        if (readings(a) > 8 || readings(b) > 8) continue;
        ++checked;
        std::vector<FeatureStructure> cross;
        for (const auto& x : expand(a, 4096).members)
            for (const auto& y : expand(b, 4096).members)
                if (auto u = unify(x, y)) cross.push_back(*u);
        auto got = unify_cat(a, b);
        CHECK(same_set(denotation(got.disjuncts), denotation(cross)));
        CHECK(got.is_bottom() == cross.empty());
    }
    CHECK(checked > 200);
}

TEST_CASE("property: disjunction laws") {
    ggt::Gen gen(5);
    const Category top = Category::of(FeatureStructure::empty());
    for (int i = 0; i < 500; ++i) {
        auto a = gen.category(2), b = gen.category(2), c = gen.category(2);
        // distribution
        CHECK(cat_equal(unify_cat(a, disjoin(b, c)), disjoin(unify_cat(a, b), unify_cat(a, c))));
        // idempotency
        CHECK(cat_equal(disjoin(a, a), a));
        // bottom
        CHECK(cat_equal(disjoin(Category::bottom(), a), a));
        // top
        CHECK(cat_equal(disjoin(top, a), top));
        // interdefinability, with subsumption read as "at least as general"
        CHECK(cat_subsumes(a, b) == cat_equal(disjoin(a, b), a));
        auto ab = unify_cat(a, b);
        if (!ab.is_bottom()) CHECK(cat_equal(disjoin(a, ab), a));
        // simplify never changes the denotation
        CHECK(same_set(denotation(simplify(a).disjuncts), denotation(a.disjuncts)));
    }
}

}
