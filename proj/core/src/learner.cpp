#include "gg/learner.hpp"

namespace gg {

XBarConfig Learner::xbar() const {
    XBarConfig x;
    x.max_bar = grammar.max_bar();
    x.nonhead = model.nonhead;
    x.hfc = flags.hfc;
    return x;
}

std::vector<ScoredDaughter> scored_daughters(const Chart& chart, const Edge& e) {
    std::vector<ScoredDaughter> out;
    for (std::size_t i = 0; i < e.found.size(); ++i) {
        const Edge& c = chart.edge(e.found[i]);
        ScoredDaughter d{e.found_category(i), std::nullopt};
        if (!c.lexical()) d.score = c.score.value_or(1.0);
        out.push_back(std::move(d));
    }
    return out;
}

CriticDecision garden_critic(const Chart& chart, const Edge& e, const Model& model, const XBarConfig& xbar,
                             const LearnerFlags& flags, const TripleStore* store, const FeatureRegistry& reg) {
    CriticDecision d;
    std::vector<Category> rhs;
    for (std::size_t i = 0; i < e.found.size(); ++i) rhs.push_back(e.found_category(i));
    Verdict v = criticise_rhs(rhs, model, ModelFlags{flags.lp, flags.types, flags.hfc});
    if (!v.accept) {
        d.accept = false;
        d.reasons = v.reasons;
        return d;
    }
    std::vector<const Tuple*> alts;
    for (const auto& t : e.alts) alts.push_back(&t);
    Construction c = construct(alts, xbar, reg);
    if (!c.rule) {
        d.accept = false;
        d.reasons = {std::string("construct:") + to_string(c.reason)};
        return d;
    }
    if (flags.hfc && !hfc_check(*c.rule, xbar, reg)) {
        d.accept = false;
        d.reasons = {"hfc"};
        return d;
    }
    if (flags.data && store) {
        auto ds = scored_daughters(chart, e);
        Category mother = c.rule->lhs_category();
        if (!judge(*store, mother, ds)) {
            d.accept = false;
            d.reasons = {"data"};
            return d;
        }
        d.score = score_local(*store, mother, ds);
    }
    d.rule = std::move(c.rule);
    return d;
}

ParseOptions Learner::options() const {
    ParseOptions opt;
    opt.flags.learning = flags.learning;
    opt.flags.super_binary = flags.super_binary;
    opt.flags.super_unary = flags.super_unary;
    opt.flags.skip_covered = flags.skip_covered;
    opt.flags.max_trees = limits.max_parses;
    opt.limits = limits;
    opt.trace = trace;
    XBarConfig x = xbar();
    const Model* m = &model;
    const TripleStore* s = store;
    LearnerFlags f = flags;
    const FeatureRegistry* reg = &grammar.registry();
    opt.hooks.critic = [m, x, f, s, reg](const Chart& chart, const Edge& e) {
        return garden_critic(chart, e, *m, x, f, s, *reg);
    };
    if (flags.data && store) {
        opt.hooks.scorer = [s](const Chart& chart, const Edge& e) -> std::optional<double> {
            return score_local(*s, e.category, scored_daughters(chart, e));
        };
    }
    return opt;
}

ParseResult Learner::parse(const std::vector<std::string>& tokens) const {
    return gg::parse(tokens, grammar, lexicon, options());
}

std::vector<std::pair<Category, Category>> local_pairs(const Chart& chart) {
    std::vector<std::pair<Category, Category>> out;
    for (const auto& e : chart.edges()) {
        if (e.bad || e.lexical() || !e.inactive()) continue;
        for (std::size_t i = 0; i < e.found.size(); ++i) out.emplace_back(e.category, e.found_category(i));
    }
    return out;
}

ParseResult Learner::process(const std::vector<std::string>& tokens) const {
    ParseResult r = parse(tokens);
    if (flags.training && store) {
        if (!r.parses.empty())
            train(*store, r.parses);
        else if (r.chart)
            train_pairs(*store, local_pairs(*r.chart));
    }
    return r;
}

}  // namespace gg
