#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gg/evaluate.hpp"
#include "gg/learner.hpp"
#include "gg/refine.hpp"

namespace gg {

enum ExitCode { kOk = 0, kUsage = 1, kResource = 2, kInternal = 3 };

struct SessionFlags {
    bool learning = true;
    bool lp = true;
    bool types = true;
    bool hfc = false;
    bool data = false;
    bool training = false;
    bool super_binary = true;
    bool super_unary = false;
    ParserLimits limits;
    std::uint64_t seed = 1;
    std::size_t k = 5;
};

struct EvalRequest {
    std::string test;
    std::string bench;
    bool sec = false;
    std::size_t random = 20;
    std::size_t length = 6;
    std::string out;  // report prefix; empty writes nothing
};

class Session {
public:
    Session(std::ostream& out, std::ostream& err);

    SessionFlags flags;
    bool trace = false;

    // one command or sentence; returns an ExitCode, or -1 for quit
    int execute(const std::string& line);
    int run_repl(std::istream& in, bool interactive);
    int run_script(const std::string& path);

    static std::string flag_table(const SessionFlags& f);

    // resources
    void load_registry(const std::string& path);
    void load_grammar(const std::string& path);
    void load_lexicon(const std::string& path);
    void load_model(const std::string& path);
    void load_triples(const std::string& path);
    void load_paraphrase(const std::string& path);
    void load_bundle(const std::string& dir);

    ParseResult sentence(const std::vector<std::string>& tokens);
    EvalReport eval(const EvalRequest& req);
    RefineReport refine();

    bool has_grammar() const { return grammar_.has_value(); }
    Grammar& grammar();
    const Lexicon& lexicon() const { return lexicon_; }
    TripleStore* store() { return store_ ? &*store_ : nullptr; }
    const ParaphraseMap& paraphrase() const { return paraphrase_; }
    const std::vector<ParseTree>& last_parses() const { return parses_; }

private:
    Learner learner();
    const FeatureRegistry& registry() const;
    int set_flag(const std::vector<std::string>& args);
    int learn_corpus(const std::string& path, bool train_only);
    void print_rules();

    std::ostream& out_;
    std::ostream& err_;
    RegistryPtr reg_;
    std::optional<Grammar> grammar_;
    Lexicon lexicon_;
    Model model_;
    std::optional<TripleStore> store_;
    ParaphraseMap paraphrase_;
    std::vector<ParseTree> parses_;
    std::size_t counter_ = 0;
};

}  // namespace gg
