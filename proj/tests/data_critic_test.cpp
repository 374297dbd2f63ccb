#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace gg;
using namespace ggt::tb;

TEST_SUITE("data_critic") {
    TEST_CASE("decomposition") {
        auto pairs = decompose(tree(kLaughs));
        REQUIRE(pairs.size() == 3);
        CHECK(cat_equal(pairs[0].first, c("[Cat S]")));
        CHECK(cat_equal(pairs[0].second, c("[Cat NP]")));
        CHECK(cat_equal(pairs[1].second, c("[Cat VP]")));
        CHECK(cat_equal(pairs[2].first, c("[Cat VP]")));
        CHECK(cat_equal(pairs[2].second, c("[Cat V]")));
        CHECK(decompose(tree("(NP Sam)")).empty());
    }

    TEST_CASE("the six triples") {
        auto s = six();
        CHECK(s.size() == 6);
        CHECK(s.total() == 9);
        std::vector<std::pair<std::string, std::uint64_t>> want = {{"S NP", 2}, {"S VP", 2}, {"VP V", 2},
                                                                   {"VP NP", 1}, {"NP Det", 1}, {"NP N", 1}};
        for (const auto& [pair, freq] : want) {
            auto sp = pair.find(' ');
            auto m = f("[Cat " + pair.substr(0, sp) + "]");
            auto d = f("[Cat " + pair.substr(sp + 1) + "]");
            bool found = false;
            for (const auto& t : s.triples())
                if (equal(t.mother, m) && equal(t.daughter, d)) {
                    CHECK(t.freq == freq);
                    found = true;
                }
            CHECK_MESSAGE(found, pair);
        }
    }

    TEST_CASE("training is additive") {
        auto s = six();
        train(s, {tree(kLaughs), tree(kChases)});
        CHECK(s.size() == 6);
        CHECK(s.total() == 18);
        for (const auto& t : s.triples()) CHECK(t.freq % 2 == 0);
        auto before = s.total();
        train(s, {});
        CHECK(s.total() == before);
    }

    TEST_CASE("lookup") {
        auto s = six();
        CHECK(s.lookup(c("[Cat S]"), c("[Cat NP]")) == doctest::Approx(2.0 / 9));
        CHECK(s.lookup(c("[Cat VP]"), c("[Cat NP]")) == doctest::Approx(1.0 / 9));
        CHECK(s.lookup(c("[ ]"), c("[ ]")) == doctest::Approx(1.0));
        CHECK(s.lookup(c("[Cat S]"), c("[Cat PP]")) == s.delta);
        CHECK(s.lookup(c("[Cat {S,VP}]"), c("[Cat NP]")) == doctest::Approx(3.0 / 9));
        CHECK(s.lookup(c("{[Cat S], [Cat VP]}"), c("[Cat NP]")) == doctest::Approx(3.0 / 9));
        TripleStore empty;
        CHECK(empty.lookup(c("[ ]"), c("[ ]")) == empty.delta);
    }

    TEST_CASE("lookup matches its definition and shrinks with specialisation") {
        ggt::Gen g(3);
        for (int i = 0; i < 300; ++i) {
            auto s = random_store(g);
            auto a = c(random_label(g));
            auto b = c(random_label(g));
            for (const auto& am : expand(a).members)
                for (const auto& bm : expand(b).members)
                    CHECK(s.lookup(am, bm) == doctest::Approx(brute_lookup(s, am, bm)));
            auto narrower = unify_cat(a, c(g.chance(50) ? "[PLU +]" : "[PER 3]"));
            if (!narrower.is_bottom()) {
                REQUIRE(cat_subsumes(a, narrower));
                CHECK(s.lookup(narrower, b) <= s.lookup(a, b) + 1e-12);
                CHECK(s.lookup(b, narrower) <= s.lookup(b, a) + 1e-12);
            }
        }
    }

    TEST_CASE("frequencies are recovered from exact lookups") {
        auto s = six();
        for (const auto& t : s.triples()) {
            double want = double(t.freq) / double(s.total());
            CHECK(s.lookup(t.mother, t.daughter) == doctest::Approx(want));
        }
    }

    TEST_CASE("tree scores") {
        auto s = six();
        // (S (NP lex) (VP lex)): both positions are preterminal
        CHECK(score_tree(s, tree("(S (NP Sam) (VP died))")) == doctest::Approx(2.0 / 9));
        CHECK(score_tree(s, tree("(VP (V saw))")) == doctest::Approx(2.0 / 9));
        CHECK(score_tree(s, tree("(NP Sam)")) == 1.0);
        // interior daughter carries its own score
        double vp = score_tree(s, tree("(VP (V chases) (NP (Det the) (N cat)))"));
        double np = score_tree(s, tree("(NP (Det the) (N cat))"));
        CHECK(np == doctest::Approx(1.0 / 9));
        CHECK(vp == doctest::Approx(std::sqrt((2.0 / 9) * (1.0 / 9) * np)));
    }

    TEST_CASE("tree scores agree with the brute-force oracle") {
        ggt::Gen g(17);
        for (int i = 0; i < 200; ++i) {
            auto s = g.chance(30) ? six() : random_store(g);
            auto t = random_tree(g, 3);
            CHECK(score_tree(s, t) == doctest::Approx(brute_score(s, t)).epsilon(1e-9));
        }
    }

    TEST_CASE("geometric mean") {
        for (double x : {0.001, 0.2, 0.5, 1.0})
            for (int k = 1; k <= 6; ++k) CHECK(geometric_mean(std::vector<double>(k, x)) == x);
        CHECK(geometric_mean({0.5, 0.125}) == doctest::Approx(0.25));
    }

    TEST_CASE("judgement") {
        auto s = six();
        auto m = c("[Cat S]");
        std::vector<ScoredDaughter> ds{{c("[Cat NP]"), std::nullopt}, {c("[Cat VP]"), 0.5}};
        double v = judge_value(s, m, ds);
        CHECK(v == doctest::Approx(std::sqrt(score_local(s, m, ds) * 0.5)));
        // lexical daughters stay out of the outer mean
        std::vector<ScoredDaughter> lex{{c("[Cat NP]"), std::nullopt}, {c("[Cat VP]"), std::nullopt}};
        CHECK(judge_value(s, m, lex) == doctest::Approx(score_local(s, m, lex)));

        s.omega = 0;
        CHECK(judge(s, m, ds));
        s.omega = 1;
        CHECK_FALSE(judge(s, m, ds));
    }

    TEST_CASE("acceptance is antitone in omega") {
        ggt::Gen g(23);
        std::vector<double> omegas{0.0, 0.001, 0.01, 0.05, 0.1, 0.2, 0.35, 0.4, 0.6, 1.0};
        for (int i = 0; i < 200; ++i) {
            auto s = random_store(g);
            auto m = c(random_label(g));
            std::vector<ScoredDaughter> ds;
            for (int k = 0, n = 1 + g.pick(2); k < n; ++k)
                ds.push_back({c(random_label(g)), g.chance(50) ? std::optional<double>(0.05 + 0.9 * g.pick(100) / 100.0)
                                                                : std::nullopt});
            bool prev = true;
            for (double w : omegas) {
                s.omega = w;
                bool ok = judge(s, m, ds);
                if (!prev) CHECK_FALSE(ok);
                prev = ok;
            }
        }
    }

    TEST_CASE("triple files") {
        auto s = six();
        s.omega = 0.2;
        auto text = s.to_text(tb_reg());
        auto back = TripleStore::parse(text, tb_reg());
        CHECK(back.size() == s.size());
        CHECK(back.total() == s.total());
        CHECK(back.omega == doctest::Approx(0.2));
        CHECK(back.delta == doctest::Approx(s.delta));
        CHECK_THROWS_AS(TripleStore::parse("params delta 2\n", tb_reg()), GrammarError);
        CHECK_THROWS_AS(TripleStore::parse("triple [Cat S] [Cat NP] many\n", tb_reg()), GrammarError);
        CHECK_THROWS_AS(TripleStore::parse("triple [Cat S]\n", tb_reg()), GrammarError);
        CHECK_THROWS_AS(TripleStore::parse("params colour 1\n", tb_reg()), GrammarError);
    }
}
