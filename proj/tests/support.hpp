#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gg/feature_structure.hpp"
#include "gg/session.hpp"

#ifndef GG_DATA_DIR
#define GG_DATA_DIR "data"
#endif

namespace ggt {

inline std::string data(const std::string& rel) { return std::string(GG_DATA_DIR) + "/" + rel; }

inline const gg::FeatureRegistry& toy() {
    static const gg::FeatureRegistry reg = gg::FeatureRegistry::parse(
        "feature Cat NP N1 VP S\n"
        "feature Person 1 2 3\n"
        "feature A 1 2\n"
        "feature B 1 2\n"
        "feature N + -\n"
        "feature V + -\n"
        "feature BAR 0 1 2 3\n"
        "feature PLU + -\n"
        "feature DET + -\n");
    return reg;
}

// every feature shares one value set, so tags can bind any two paths
inline const gg::FeatureRegistry& rand_reg() {
    static const gg::FeatureRegistry reg =
        gg::FeatureRegistry::parse("feature F a b c\nfeature G a b c\nfeature H a b c\nfeature K a b c\n");
    return reg;
}

inline gg::FeatureStructure fs(const std::string& s, const gg::FeatureRegistry& reg = toy()) {
    return gg::parse_fs(s, reg);
}
inline gg::Category cat(const std::string& s, const gg::FeatureRegistry& reg = toy()) {
    return gg::parse_category(s, reg);
}

// Random literals over rand_reg(): nested structures, value sets and
// occasional reentrancy. Inconsistent tag bindings are retried.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }
    bool chance(int pct) { return pick(100) < pct; }

    std::string literal(int depth = 2) {
        static const char* names[] = {"F", "G", "H", "K"};
        std::vector<int> fs = {0, 1, 2, 3};
        std::shuffle(fs.begin(), fs.end(), rng_);
        int n = chance(10) ? 0 : 1 + pick(3);
        std::string out = "[";
        for (int i = 0; i < n; ++i) {
            if (i) out += ", ";
            out += names[fs[i]];
            out += " ";
            int r = pick(100);
            if (r < 12 && tags_ > 0) {
                out += "#" + std::to_string(1 + pick(tags_));
            } else if (r < 22 && depth > 0) {
                out += literal(depth - 1);
            } else if (r < 40) {
                out += set();
            } else {
                out += atom();
            }
        }
        return out + "]";
    }

    gg::FeatureStructure structure(int depth = 2) {
        for (int tries = 0;; ++tries) {
            tags_ = chance(30) ? 1 + pick(2) : 0;
            std::string text = literal(depth);
            if (tags_) text = bind_tags(text);
            try {
                return gg::parse_fs(text, rand_reg());
            } catch (const gg::FsError&) {
                if (tries > 50) throw;
            }
        }
    }

    gg::Category category(int max_disjuncts = 3) {
        gg::Category c;
        int n = 1 + pick(max_disjuncts);
        for (int i = 0; i < n; ++i) c.disjuncts.push_back(structure());
        return c;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::string atom() { return std::string(1, "abc"[pick(3)]); }
    std::string set() {
        std::vector<std::string> vs;
        for (const char* v : {"a", "b", "c"})
            if (chance(60)) vs.push_back(v);
        if (vs.size() < 2) return atom();
        std::string s = "{";
        for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + vs[i];
        return s + "}";
    }
    // the first occurrence of each tag sometimes carries a value
    std::string bind_tags(std::string text) {
        for (int t = 1; t <= tags_; ++t) {
            std::string tag = "#" + std::to_string(t);
            auto at = text.find(tag);
            if (at == std::string::npos) continue;
            if (chance(50)) text.insert(at + tag.size(), "=" + atom());
        }
        return text;
    }

    std::mt19937_64 rng_;
    int tags_ = 0;
};

// the grammar garden demonstration session
inline void load_demo(gg::Session& s) {
    if (s.execute("load-bundle " + data("demo")) != gg::kOk) throw std::runtime_error("demo bundle did not load");
}

}  // namespace ggt
