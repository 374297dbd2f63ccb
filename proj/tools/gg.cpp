#include <CLI11.hpp>

#include <iostream>
#include <unistd.h>

#include "gg/session.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Grammar Garden: a learner for unification grammars"};
    app.require_subcommand(0, 1);
    bool trace = false;
    std::string bundle;
    app.add_flag("--trace", trace, "log chart edges to stderr");
    app.add_option("-b,--bundle", bundle, "resource directory to load first")->check(CLI::ExistingDirectory);

    auto* repl = app.add_subcommand("repl", "interactive session (default)");

    std::string script;
    auto* run = app.add_subcommand("run", "execute a command script");
    run->add_option("script", script, "command file")->required()->check(CLI::ExistingFile);

    std::vector<std::string> words;
    bool learn = false;
    auto* parse = app.add_subcommand("parse", "parse one sentence");
    parse->add_option("words", words, "sentence")->required();
    parse->add_flag("--learn", learn, "acquire rules while parsing");

    gg::EvalRequest req;
    std::uint64_t seed = 0;
    bool seeded = false;
    std::size_t k = 5;
    auto* eval = app.add_subcommand("eval", "undergeneration, overgeneration and plausibility");
    eval->add_option("--test", req.test, "test sentences, one per line")->required()->check(CLI::ExistingFile);
    eval->add_option("--bench", req.bench, "bracketed benchmark trees")->check(CLI::ExistingFile);
    eval->add_flag("--sec", req.sec, "benchmark uses [N w_TAG N] bracketing");
    eval->add_option("--random", req.random, "random strings")->capture_default_str();
    eval->add_option("--length", req.length, "random string length")->capture_default_str();
    eval->add_option("--out", req.out, "report prefix");
    eval->add_option("-k", k, "parses considered per benchmark sentence")->capture_default_str();
    eval->add_option("--seed", seed, "random seed (default GG_SEED or 1)")->each([&](const std::string&) { seeded = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : gg::kUsage;
    }

    gg::Session s(std::cout, std::cerr);
    s.trace = trace;
    if (!bundle.empty()) {
        int rc = s.execute("load-bundle " + bundle);
        if (rc != gg::kOk) return rc;
    }
    try {
        if (*run) return s.run_script(script);
        if (*parse) {
            s.flags.learning = learn;
            std::string line = "parse";
            for (const auto& w : words) line += " " + w;
            int rc = s.execute(line);
            if (rc == gg::kOk)
                for (const auto& t : s.last_parses()) std::cout << gg::to_display(t) << "\n";
            return rc;
        }
        if (*eval) {
            if (seeded) s.flags.seed = seed;
            s.flags.k = k;
            auto rep = s.eval(req);
            std::cout << rep.summary_text();
            return gg::kOk;
        }
        (void)repl;
        return s.run_repl(std::cin, isatty(0));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return gg::kResource;
    }
}
