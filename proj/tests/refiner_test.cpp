#include <doctest.h>

#include <set>
#include <sstream>

#include "gg/refine.hpp"
#include "oracles.hpp"

using namespace gg;

namespace {

RegistryPtr reg() {
    static RegistryPtr r = std::make_shared<const FeatureRegistry>(
        FeatureRegistry::parse("feature Cat A B C E F N1 N2 A1 A2\nfeature PLU + -\n"));
    return r;
}

FeatureStructure f(const std::string& s) { return parse_fs(s, *reg()); }

Rule learnt(const std::string& id, const std::string& body, std::vector<SupportRecord> sup = {}) {
    Rule r = Rule::parse("rule " + id + " : " + body, *reg());
    r.origin = RuleOrigin::Learnt;
    r.support = std::move(sup);
    return r;
}

SupportRecord rec(std::vector<std::string> ds) { return SupportRecord{std::move(ds)}; }

std::set<std::string> ids(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_SUITE("refiner") {
    TEST_CASE("LHS refinement picks a unique best reading") {
        TripleStore s;
        s.add(f("[Cat N1]"), f("[Cat A1]"), 3);
        s.add(f("[Cat N1]"), f("[Cat N1]"), 3);
        s.add(f("[Cat A2]"), f("[Cat A1]"), 1);
        auto r = learnt("*binary1", "{[Cat N1], [Cat N2], [Cat A1], [Cat A2]} -> [Cat A1] [Cat N1]");
        auto out = refine_lhs(s, r);
        CHECK(out.candidates == 4);
        CHECK(out.unique);
        REQUIRE(out.rule);
        CHECK(out.rule->id == r.id);
        CHECK(out.rule->arity() == 2);
        CHECK(cat_equal(out.rule->lhs_category(), parse_category("[Cat N1]", *reg())));
        for (std::size_t i = 0; i < 2; ++i) CHECK(cat_equal(out.rule->rhs_category(i), r.rhs_category(i)));
        CHECK(out.best == doctest::Approx(std::sqrt((3.0 / 7) * (3.0 / 7))));
        CHECK(candidate_score(s, r, f("[Cat A2]")) == doctest::Approx(std::sqrt((1.0 / 7) * s.delta)));
    }

    TEST_CASE("ties and plain rules are left alone") {
        TripleStore empty;
        auto r = learnt("*binary1", "{[Cat N1], [Cat N2], [Cat A1], [Cat A2]} -> [Cat A1] [Cat N1]");
        auto tied = refine_lhs(empty, r);
        CHECK(tied.candidates == 4);
        CHECK_FALSE(tied.unique);
        CHECK_FALSE(tied.rule);

        TripleStore s;
        s.add(f("[Cat N1]"), f("[Cat A1]"), 2);
        auto plain = learnt("*binary2", "[Cat N1] -> [Cat A1] [Cat N1]");
        CHECK_FALSE(refine_lhs(s, plain).rule);

        // value sets in the mother are multiplied out too
        auto sets = learnt("*binary3", "[Cat {N1,N2}] -> [Cat A1] [Cat N1]");
        auto out = refine_lhs(s, sets);
        CHECK(out.candidates == 2);
        REQUIRE(out.rule);
        CHECK(cat_equal(out.rule->lhs_category(), parse_category("[Cat N1]", *reg())));
    }

    TEST_CASE("low score pruning") {
        Grammar g(reg());
        g.add(Rule::parse("rule O1 : [Cat A] -> [Cat B] [Cat C]", *reg()));
        g.add(learnt("*binary1", "[Cat N1] -> [Cat A1] [Cat N1]"));
        g.add(learnt("*unary2", "[Cat A2] -> [Cat A1]"));
        TripleStore s;
        s.add(f("[Cat N1]"), f("[Cat A1]"), 1);
        s.add(f("[Cat N1]"), f("[Cat N1]"), 1);

        Grammar keep = g;
        CHECK(prune_low_score(s, keep, 0).empty());
        CHECK(keep.learnt_count() == 2);

        Grammar some = g;
        CHECK(ids(prune_low_score(s, some, s.delta)) == std::set<std::string>{"*unary2"});

        Grammar all = g;
        CHECK(prune_low_score(s, all, 1.0).size() == 2);
        CHECK(all.learnt_count() == 0);
        CHECK(all.find("O1"));
        CHECK(rule_score(s, *g.find("O1")) <= s.delta);
    }

    TEST_CASE("support withdrawal") {
        Grammar g(reg());
        g.add(Rule::parse("rule O1 : [Cat A] -> [Cat C]", *reg()));
        // (A (B (E F)) C)
        g.add(learnt("*binary1", "[Cat B] -> [Cat E] [Cat F]", {rec({"|e|", "|f|"})}));
        g.add(learnt("*binary2", "[Cat A] -> [Cat B] [Cat C]", {rec({"*binary1", "|c|"})}));
        CHECK(prune_unsupported(g).empty());
        g.remove("*binary1");
        CHECK(prune_unsupported(g) == std::vector<std::string>{"*binary2"});

        Grammar chain(reg());
        chain.add(Rule::parse("rule O1 : [Cat A] -> [Cat C]", *reg()));
        chain.add(learnt("*unary1", "[Cat B] -> [Cat E]", {rec({"O1"})}));
        chain.add(learnt("*unary2", "[Cat C] -> [Cat B]", {rec({"*unary1"})}));
        chain.add(learnt("*unary3", "[Cat E] -> [Cat C]", {rec({"*unary2"})}));
        chain.remove("O1");
        CHECK(ids(prune_unsupported(chain)) == std::set<std::string>{"*unary1", "*unary2", "*unary3"});

        // another record still holds
        Grammar alt(reg());
        alt.add(Rule::parse("rule O1 : [Cat A] -> [Cat C]", *reg()));
        alt.add(learnt("*unary1", "[Cat B] -> [Cat E]", {rec({"GONE"}), rec({"O1"})}));
        CHECK(prune_unsupported(alt).empty());
    }

    TEST_CASE("support withdrawal matches a single ordered pass") {
        ggt::Gen gen(31);
        for (int trial = 0; trial < 150; ++trial) {
            int n = 2 + gen.pick(48);
            std::set<std::string> originals{"O1", "O2", "O3"};
            std::vector<std::pair<std::string, std::vector<SupportRecord>>> plan;
            for (int i = 0; i < n; ++i) {
                std::vector<SupportRecord> sup;
                for (int k = 0, m = gen.pick(3); k < m; ++k) {
                    SupportRecord r;
                    for (int j = 0, w = 1 + gen.pick(2); j < w; ++j) {
                        int c = gen.pick(10);
                        if (c < 2)
                            r.daughters.push_back("|w|");
                        else if (c < 4)
                            r.daughters.push_back("O" + std::to_string(1 + gen.pick(3)));
                        else if (i > 0)
                            r.daughters.push_back("*binary" + std::to_string(1 + gen.pick(i)));
                        else
                            r.daughters.push_back("|w|");
                    }
                    sup.push_back(r);
                }
                plan.emplace_back("*binary" + std::to_string(i + 1), sup);
            }
            std::set<std::string> deleted;
            for (const auto& o : originals)
                if (gen.chance(25)) deleted.insert(o);
            for (const auto& [id, s] : plan)
                if (gen.chance(10)) deleted.insert(id);
            auto want = ggt::doomed_oracle(plan, originals, deleted);

            // insertion order must not matter
            for (int shuffle = 0; shuffle < 2; ++shuffle) {
                auto order = plan;
                if (shuffle) std::shuffle(order.begin(), order.end(), gen.rng());
                Grammar g(reg());
                for (const auto& o : originals) g.add(Rule::parse("rule " + o + " : [Cat A] -> [Cat C]", *reg()));
                for (const auto& [id, s] : order) g.add(learnt(id, "[Cat B] -> [Cat E]", s));
                for (const auto& d : deleted) g.remove(d);
                std::size_t originals_left = g.original().size();
                CHECK(ids(prune_unsupported(g)) == want);
                CHECK(g.original().size() == originals_left);
                CHECK(prune_unsupported(g).empty());
            }
        }
    }

    TEST_CASE("whole-grammar refinement") {
        Grammar g(reg());
        TripleStore s;
        CHECK(refine_grammar(s, g, RefineParams{}).empty());

        g.add(Rule::parse("rule O1 : [Cat A] -> [Cat B] [Cat C]", *reg()));
        g.add(learnt("*binary1", "{[Cat N1], [Cat A2]} -> [Cat A1] [Cat N1]", {rec({"|a|", "|n|"})}));
        g.add(learnt("*binary2", "[Cat E] -> [Cat F] [Cat F]", {rec({"|f|", "|f|"})}));
        g.add(learnt("*binary3", "[Cat C] -> [Cat E] [Cat A1]", {rec({"*binary2", "|a|"})}));
        s.add(f("[Cat N1]"), f("[Cat A1]"), 2);
        s.add(f("[Cat N1]"), f("[Cat N1]"), 2);
        s.add(f("[Cat C]"), f("[Cat E]"), 1);
        s.add(f("[Cat C]"), f("[Cat A1]"), 1);
        auto rep = refine_grammar(s, g, RefineParams{s.delta});
        CHECK(rep.refined == std::vector<std::string>{"*binary1"});
        CHECK(rep.pruned == std::vector<std::string>{"*binary2"});
        CHECK(rep.unsupported == std::vector<std::string>{"*binary3"});
        CHECK_FALSE(rep.lines.empty());
        CHECK(g.learnt_count() == 1);
        CHECK(g.find("O1"));
        CHECK(refine_grammar(s, g, RefineParams{s.delta}).empty());
    }

    TEST_CASE("the happy happy session") {
        std::ostringstream out, err;
        Session sess(out, err);
        ggt::load_demo(sess);
        REQUIRE(sess.execute("train-corpus " + ggt::data("demo/pretrain.txt")) == kOk);
        sess.execute("Sam chases the happy cat");
        REQUIRE(sess.grammar().learnt_count() == 1);
        for (const char* c : {"set learning off", "set sbl on", "set omega 0", "set training on"})
            REQUIRE(sess.execute(c) == kOk);
        sess.execute("Sam chases the happy happy cat");
        const std::string before = sess.grammar().learnt_text();
        auto rep = sess.refine();
        REQUIRE(rep.refined.size() == 1);
        const Rule* r = sess.grammar().find(rep.refined[0]);
        REQUIRE(r);
        CHECK(paraphrase_rule(*r, sess.paraphrase(), sess.grammar().registry()) == "N1 -> Adj N1");
        bool scored = false;
        for (const auto& line : rep.lines)
            if (line.find("score: ") != std::string::npos) scored = std::stod(line.substr(line.find("score: ") + 7)) > 0;
        CHECK(scored);
        CHECK(sess.grammar().learnt_text() != before);
        CHECK(sess.refine().empty());
    }
}
