#include "gg/session.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace gg {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const char* onoff(bool b) { return b ? "ON" : "OFF"; }

bool parse_bool(const std::string& s) {
    if (s == "on" || s == "ON" || s == "1" || s == "true") return true;
    if (s == "off" || s == "OFF" || s == "0" || s == "false") return false;
    throw UsageError("expected on|off, got '" + s + "'");
}

std::size_t parse_size(const std::string& s) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw UsageError("not a number: " + s);
        return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
        throw UsageError("not a number: " + s);
    }
}

double parse_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw UsageError("not a number: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw UsageError("not a number: " + s);
    }
}

std::vector<std::string> words(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string unquote(std::string s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    s = s.substr(b);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw GrammarError("cannot write " + path);
    f << text;
}

const char* kHelp =
    "Commands:\n"
    "  load-registry FILE | load-grammar FILE | load-lexicon FILE | load-model FILE\n"
    "  load-triples FILE | load-paraphrase FILE | load-bundle DIR\n"
    "  flags | set FLAG on|off | set omega|delta|seed|k VALUE | limits PARSES EDGES\n"
    "  parse SENTENCE | SENTENCE | !*parses* | rules\n"
    "  learn-corpus FILE | train-corpus FILE | refine-grammar\n"
    "  eval test=FILE [bench=FILE] [sec=on] [random=N] [length=L] [out=PREFIX]\n"
    "  save-learnt FILE | save-triples FILE | help | quit\n"
    "Flags: learning types lp hfc sbl training binary unary\n";

}  // namespace

Session::Session(std::ostream& out, std::ostream& err) : out_(out), err_(err) {
    if (const char* s = std::getenv("GG_SEED")) {
        try {
            flags.seed = std::stoull(s);
        } catch (const std::logic_error&) {
            err_ << "warning: ignoring GG_SEED='" << s << "'\n";
        }
    }
}

std::string Session::flag_table(const SessionFlags& f) {
    std::ostringstream o;
    auto row = [&](const char* name, bool v) { o << std::left << std::setw(24) << name << ": " << onoff(v) << "\n"; };
    o << "Current flag settings:\n\n";
    row("Learning", f.learning);
    row("Type checking", f.types);
    row("LP rules", f.lp);
    row("HFC", f.hfc);
    row("SBL", f.data);
    row("Training", f.training);
    return o.str();
}

const FeatureRegistry& Session::registry() const {
    if (!reg_) throw UsageError("no feature registry loaded");
    return *reg_;
}

Grammar& Session::grammar() {
    if (!grammar_) throw UsageError("no grammar loaded");
    return *grammar_;
}

void Session::load_registry(const std::string& path) {
    reg_ = std::make_shared<const FeatureRegistry>(FeatureRegistry::load(path));
    grammar_.reset();
    lexicon_ = Lexicon{};
    model_ = Model{};
    store_.reset();
    paraphrase_ = ParaphraseMap{};
    parses_.clear();
    flags.data = flags.training = false;
}

void Session::load_grammar(const std::string& path) {
    registry();
    Grammar g = Grammar::load(path, reg_);
    grammar_.emplace(std::move(g));
    parses_.clear();
}

void Session::load_lexicon(const std::string& path) { lexicon_.merge(Lexicon::load(path, registry())); }

void Session::load_model(const std::string& path) { model_ = Model::load(path, registry()); }

void Session::load_triples(const std::string& path) { store_ = TripleStore::load(path, registry()); }

void Session::load_paraphrase(const std::string& path) { paraphrase_ = ParaphraseMap::load(path, registry()); }

void Session::load_bundle(const std::string& dir) {
    namespace fs = std::filesystem;
    fs::path d(dir);
    if (!fs::is_directory(d)) throw GrammarError("not a directory: " + dir);
    load_registry((d / "registry.txt").string());
    load_grammar((d / "grammar.txt").string());
    load_lexicon((d / "lexicon.txt").string());
    if (fs::exists(d / "model.txt")) load_model((d / "model.txt").string());
    if (fs::exists(d / "paraphrase.txt")) load_paraphrase((d / "paraphrase.txt").string());
    if (fs::exists(d / "triples.txt")) load_triples((d / "triples.txt").string());
}

Learner Session::learner() {
    Learner l{grammar(), lexicon_, model_, nullptr, {}, {}, nullptr};
    l.store = store_ ? &*store_ : nullptr;
    l.flags.learning = flags.learning;
    l.flags.lp = flags.lp;
    l.flags.types = flags.types;
    l.flags.hfc = flags.hfc;
    l.flags.data = flags.data && store_;
    l.flags.training = flags.training && store_;
    l.flags.super_binary = flags.super_binary;
    l.flags.super_unary = flags.super_unary;
    l.limits = flags.limits;
    l.trace = trace ? &err_ : nullptr;
    return l;
}

ParseResult Session::sentence(const std::vector<std::string>& tokens) {
    ParseResult r = learner().process(tokens);
    parses_ = r.parses;
    return r;
}

RefineReport Session::refine() {
    if (!store_) throw UsageError("refine-grammar needs a triple store");
    return refine_grammar(*store_, grammar(), RefineParams{store_->delta}, paraphrase_.empty() ? nullptr : &paraphrase_);
}

EvalReport Session::eval(const EvalRequest& req) {
    auto t0 = std::chrono::steady_clock::now();
    EvalReport rep;
    Grammar& g = grammar();
    auto test = read_corpus(req.test);
    Coverage cu = coverage(g, lexicon_, test, flags.limits);
    rep.test_lines = cu.total;
    rep.undergen = cu.fraction();
    rep.edges += cu.edges;
    for (const auto& w : cu.warnings) err_ << "warning: " << w << "\n";
    auto random = gen_random(lexicon_, req.length, req.random, flags.seed);
    Coverage co = coverage(g, lexicon_, random, flags.limits);
    rep.random_strings = co.total;
    rep.overgen = co.fraction();
    rep.edges += co.edges;
    if (!req.bench.empty()) {
        auto pairs = read_benchmarks(read_file(req.bench), req.sec);
        rep.plausibility = plausibility(g, lexicon_, pairs, flags.k, paraphrase_, flags.limits);
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!req.out.empty()) {
        write_file(req.out + ".tsv", rep.to_tsv());
        std::string random_text;
        for (const auto& s : random) {
            std::string line;
            for (const auto& w : s) line += (line.empty() ? "" : " ") + w;
            random_text += line + "\n";
        }
        write_file(req.out + ".random.txt", random_text);
    }
    return rep;
}

int Session::set_flag(const std::vector<std::string>& a) {
    if (a.size() != 3) throw UsageError("usage: set FLAG on|off | set omega|delta|seed|k VALUE");
    const std::string& f = a[1];
    const std::string& v = a[2];
    if (f == "omega" || f == "delta") {
        if (!store_) throw UsageError("no triple store loaded");
        double x = parse_double(v);
        if (f == "delta") {
            if (!(x > 0 && x < 1)) throw UsageError("delta must lie in (0,1)");
            store_->delta = x;
        } else {
            store_->omega = x;
        }
        return kOk;
    }
    if (f == "seed") {
        flags.seed = parse_size(v);
        return kOk;
    }
    if (f == "k") {
        flags.k = parse_size(v);
        if (flags.k == 0) throw UsageError("k must be positive");
        return kOk;
    }
    bool b = parse_bool(v);
    if (f == "learning")
        flags.learning = b;
    else if (f == "types")
        flags.types = b;
    else if (f == "lp")
        flags.lp = b;
    else if (f == "hfc")
        flags.hfc = b;
    else if (f == "sbl" || f == "data") {
        if (b && !store_) throw UsageError("SBL needs a triple store (load-triples)");
        flags.data = b;
        if (!b) flags.training = false;
    } else if (f == "training") {
        if (b && !flags.data) throw UsageError("training needs SBL on");
        flags.training = b;
    } else if (f == "binary")
        flags.super_binary = b;
    else if (f == "unary")
        flags.super_unary = b;
    else
        throw UsageError("unknown flag: " + f);
    return kOk;
}

void Session::print_rules() {
    const auto& reg = registry();
    for (const auto& r : grammar().rules()) {
        out_ << r.to_text(reg) << "\n";
        if (r.origin == RuleOrigin::Learnt && !paraphrase_.empty())
            out_ << "  # " << paraphrase_rule(r, paraphrase_, reg) << "\n";
    }
}

int Session::learn_corpus(const std::string& path, bool train_only) {
    auto corpus = read_corpus(path);
    SessionFlags saved = flags;
    if (train_only) {
        if (!store_) store_.emplace();
        flags.learning = false;
        flags.training = true;
        flags.data = true;
    }
    std::size_t parsed = 0, acquired = 0, unknown = 0;
    try {
        for (const auto& s : corpus) {
            try {
                ParseResult r = sentence(s);
                if (!r.parses.empty()) ++parsed;
                acquired += r.acquired.size();
            } catch (const UnknownWordError& e) {
                ++unknown;
                err_ << "warning: " << e.what() << "\n";
            }
        }
    } catch (...) {
        flags = saved;
        throw;
    }
    flags = saved;
    out_ << corpus.size() << " sentence(s), " << parsed << " parsed";
    if (!train_only) out_ << ", " << acquired << " rule(s) acquired";
    if (unknown) out_ << ", " << unknown << " skipped";
    out_ << ".\n";
    if (train_only) out_ << store_->size() << " triple(s), total frequency " << store_->total() << ".\n";
    return kOk;
}

int Session::execute(const std::string& raw) {
    std::string line = clean_line(raw);
    auto a = words(line);
    if (a.empty()) return kOk;
    const std::string& cmd = a[0];
    auto arg1 = [&]() -> const std::string& {
        if (a.size() != 2) throw UsageError("usage: " + cmd + " ARG");
        return a[1];
    };
    try {
        if (cmd == "quit" || cmd == "exit") return -1;
        if (cmd == "help") {
            out_ << kHelp;
        } else if (cmd == "load-registry") {
            load_registry(arg1());
        } else if (cmd == "load-grammar") {
            load_grammar(arg1());
        } else if (cmd == "load-lexicon") {
            load_lexicon(arg1());
        } else if (cmd == "load-model") {
            load_model(arg1());
        } else if (cmd == "load-triples") {
            load_triples(arg1());
        } else if (cmd == "load-paraphrase") {
            load_paraphrase(arg1());
        } else if (cmd == "load-bundle") {
            load_bundle(arg1());
        } else if (cmd == "flags") {
            out_ << flag_table(flags);
        } else if (cmd == "set") {
            return set_flag(a);
        } else if (cmd == "limits") {
            if (a.size() != 3) throw UsageError("usage: limits MAX_PARSES MAX_EDGES (0 = unbounded)");
            flags.limits.max_parses = parse_size(a[1]);
            flags.limits.max_edges = parse_size(a[2]);
        } else if (cmd == "!*parses*") {
            for (const auto& t : parses_) out_ << to_display(t) << "\n";
        } else if (cmd == "rules") {
            print_rules();
        } else if (cmd == "learn-corpus") {
            return learn_corpus(arg1(), false);
        } else if (cmd == "train-corpus") {
            return learn_corpus(arg1(), true);
        } else if (cmd == "refine-grammar" || cmd == "!(refine-grammar)") {
            RefineReport rep = refine();
            out_ << "Refining and deleting rules ...\n";
            for (const auto& l : rep.lines) out_ << l << "\n";
        } else if (cmd == "eval") {
            EvalRequest req;
            for (std::size_t i = 1; i < a.size(); ++i) {
                auto eq = a[i].find('=');
                if (eq == std::string::npos) throw UsageError("eval options are KEY=VALUE");
                std::string k = a[i].substr(0, eq), v = a[i].substr(eq + 1);
                if (k == "test")
                    req.test = v;
                else if (k == "bench")
                    req.bench = v;
                else if (k == "sec")
                    req.sec = parse_bool(v);
                else if (k == "random")
                    req.random = parse_size(v);
                else if (k == "length")
                    req.length = parse_size(v);
                else if (k == "out")
                    req.out = v;
                else
                    throw UsageError("unknown eval option: " + k);
            }
            if (req.test.empty()) throw UsageError("eval needs test=FILE");
            out_ << eval(req).summary_text();
        } else if (cmd == "save-learnt") {
            write_file(arg1(), grammar().learnt_text());
        } else if (cmd == "save-triples") {
            if (!store_) throw UsageError("no triple store loaded");
            write_file(arg1(), store_->to_text(registry()));
        } else {
            std::string text = line;
            if (cmd == "parse") text = unquote(line.substr(line.find("parse") + 5));
            auto tokens = tokenize(text);
            if (tokens.empty()) throw UsageError("nothing to parse");
            if (cmd != "parse" && !reg_) throw UsageError("unknown command '" + cmd + "' (try help)");
            ParseResult r = sentence(tokens);
            if (r.learning_phase) out_ << "learning\n";
            if (flags.learning && r.learning_phase) {
                out_ << r.acquired.size() << " rule(s) acquired.\n";
                if (!paraphrase_.empty())
                    for (const auto& id : r.acquired)
                        if (const Rule* rule = grammar().find(id))
                            out_ << "  " << id << ": " << paraphrase_rule(*rule, paraphrase_, registry()) << "\n";
            }
            out_ << r.parses.size() << " parse(s)\n";
            if (r.bounded) out_ << "(resource bound reached)\n";
        }
        return kOk;
    } catch (const UsageError& e) {
        err_ << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownWordError& e) {
        err_ << "error: " << e.what() << "\n";
        return kResource;
    } catch (const ParseError& e) {
        err_ << "error: " << e.what() << "\n";
        return kResource;
    } catch (const FsError& e) {
        err_ << "error: " << e.what() << "\n";
        return kResource;
    } catch (const GrammarError& e) {
        err_ << "error: " << e.what() << "\n";
        return kResource;
    } catch (const std::invalid_argument& e) {
        err_ << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err_ << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

int Session::run_repl(std::istream& in, bool interactive) {
    if (interactive) out_ << ": Entering Grammar Garden Parser  ... (level 2)\n";
    int worst = kOk;
    std::string line;
    while (true) {
        if (interactive) out_ << ++counter_ << " Parse+>> " << std::flush;
        if (!std::getline(in, line)) break;
        int rc = execute(line);
        if (rc < 0) break;
        if (rc == kInternal) return kInternal;
        if (!interactive && rc != kOk && worst == kOk) worst = rc;
    }
    if (interactive) out_ << "\n";
    return worst;
}

int Session::run_script(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        err_ << "error: cannot open " << path << "\n";
        return kResource;
    }
    return run_repl(f, false);
}

}  // namespace gg
