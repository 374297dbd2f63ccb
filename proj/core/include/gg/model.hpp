#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gg/feature_structure.hpp"
#include "gg/grammar.hpp"

namespace gg {

struct Pattern {
    FeatureStructure fs;
    bool negated = false;

    static Pattern parse(std::string_view text, const FeatureRegistry& reg);
    std::string to_text(const FeatureRegistry& reg) const;
};

// every pattern feature present in c with a compatible value; '*' means present
bool match(const Pattern& p, const FeatureStructure& c);
// true when some reading of c (an expansion) matches
bool match_any(const Pattern& p, const Category& c);

class SemType {
public:
    enum class Kind { E, T, Fn };

    static SemType e() { return SemType(Kind::E); }
    static SemType t() { return SemType(Kind::T); }
    static SemType fn(SemType arg, SemType res);
    static SemType parse(std::string_view text);

    Kind kind() const { return kind_; }
    const SemType& arg() const { return *arg_; }
    const SemType& res() const { return *res_; }
    bool operator==(const SemType& o) const;
    std::string to_string() const;

private:
    explicit SemType(Kind k) : kind_(k) {}
    Kind kind_;
    std::shared_ptr<const SemType> arg_, res_;
};

std::optional<SemType> apply_type(const SemType& f, const SemType& a);

struct LpRule {
    std::string name;
    Pattern left, right;
};

struct TypeRow {
    Pattern pattern;
    SemType type;
};

struct ModelFlags {
    bool lp = true;
    bool types = true;
    bool hfc = false;
};

struct Model {
    std::vector<LpRule> lp;
    std::vector<TypeRow> types;
    std::vector<std::string> nonhead{"NTYPE", "CASE", "CONJ", "NULL", "BAR"};

    static Model parse(std::string_view text, const FeatureRegistry& reg, const std::string& source = "<model>");
    static Model load(const std::string& path, const FeatureRegistry& reg);
};

struct Verdict {
    bool accept = true;
    std::vector<std::string> reasons;
};

// single readings
bool lp_check(const std::vector<FeatureStructure>& rhs, const std::vector<LpRule>& lp, std::string* failed = nullptr);
std::optional<SemType> typ_lookup(const std::vector<TypeRow>& tm, const FeatureStructure& c);
bool type_check(const std::vector<FeatureStructure>& rhs, const std::vector<TypeRow>& tm);

// Disjunctive daughters. LP fails if any combination of readings is
// misordered; types pass if some combination is well typed.
bool lp_check(const std::vector<Category>& rhs, const std::vector<LpRule>& lp, std::string* failed = nullptr);
bool type_check(const std::vector<Category>& rhs, const std::vector<TypeRow>& tm);

struct XBarConfig {
    std::string bar_feature = "BAR";
    std::string minor_feature = "MINOR";
    std::string minor_none = "NONE";
    int max_bar = 2;
    std::vector<std::string> nonhead{"NTYPE", "CASE", "CONJ", "NULL", "BAR"};
    bool hfc = false;

    bool is_head(const std::string& feature) const;
};

bool hfc_check(const Rule& r, const XBarConfig& cfg, const FeatureRegistry& reg);

Verdict criticise_rhs(const std::vector<Category>& rhs, const Model& model, const ModelFlags& flags);

}  // namespace gg
