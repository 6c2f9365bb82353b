#include "ftc/fis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace ftc {

double GaussianMF::value(double x) const {
    const double d = (x - center) / sigma;
    return std::exp(-0.5 * d * d);
}

LinguisticVariable::LinguisticVariable(std::string name, double lo, double hi,
                                       std::vector<Term> terms)
    : name_(std::move(name)), lo_(lo), hi_(hi), terms_(std::move(terms)) {
    if (!(lo_ < hi_)) {
        throw ConfigError("variable '" + name_ + "': range must satisfy lo < hi");
    }
    if (terms_.empty()) {
        throw ConfigError("variable '" + name_ + "': needs at least one term");
    }
    std::set<std::string> seen;
    double prev_center = -std::numeric_limits<double>::infinity();
    for (const Term& t : terms_) {
        if (t.label.empty()) {
            throw ConfigError("variable '" + name_ + "': empty term label");
        }
        if (!seen.insert(t.label).second) {
            throw ConfigError("variable '" + name_ + "': duplicate term label '" + t.label + "'");
        }
        if (!(t.mf.sigma > 0.0)) {
            throw ConfigError("variable '" + name_ + "', term '" + t.label +
                              "': sigma must be > 0");
        }
        if (t.mf.center < lo_ || t.mf.center > hi_) {
            throw ConfigError("variable '" + name_ + "', term '" + t.label +
                              "': center lies outside the range");
        }
        if (t.mf.center < prev_center) {
            throw ConfigError("variable '" + name_ + "': term centers must be non-decreasing");
        }
        prev_center = t.mf.center;
    }
}

double LinguisticVariable::clamp(double x) const {
    return std::min(std::max(x, lo_), hi_);
}

int LinguisticVariable::term_index(const std::string& label) const {
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].label == label) return static_cast<int>(i);
    }
    return -1;
}

std::map<std::string, double> LinguisticVariable::fuzzify(double x) const {
    const double cx = clamp(x);
    std::map<std::string, double> degrees;
    for (const Term& t : terms_) {
        degrees[t.label] = t.mf.value(cx);
    }
    return degrees;
}

double rule_strength(const Rule& rule,
                     const std::vector<std::map<std::string, double>>& fuzzified) {
    if (rule.antecedent.size() != fuzzified.size()) {
        throw ConfigError("rule_strength: antecedent arity does not match input count");
    }
    double strength = rule.weight;
    for (size_t i = 0; i < rule.antecedent.size(); ++i) {
        const std::string& label = rule.antecedent[i];
        if (label.empty()) continue;  // don't care
        auto it = fuzzified[i].find(label);
        if (it == fuzzified[i].end()) {
            throw ConfigError("rule_strength: unknown term label '" + label + "'");
        }
        strength = std::min(strength, it->second);
    }
    return strength;
}

Fis::Fis(std::string name, std::vector<LinguisticVariable> inputs, LinguisticVariable output,
         std::vector<Rule> rules, int defuzz_resolution, std::optional<double> default_output)
    : name_(std::move(name)),
      inputs_(std::move(inputs)),
      output_(std::move(output)),
      rules_(std::move(rules)),
      defuzz_resolution_(defuzz_resolution),
      default_output_(default_output.value_or(0.0)) {
    if (inputs_.empty()) {
        throw ConfigError("FIS '" + name_ + "': needs at least one input variable");
    }
    if (rules_.empty()) {
        throw ConfigError("FIS '" + name_ + "': needs at least one rule");
    }
    if (defuzz_resolution_ < kMinResolution) {
        throw ConfigError("FIS '" + name_ + "': defuzz resolution must be >= " +
                          std::to_string(kMinResolution));
    }
    if (!default_output.has_value()) {
        default_output_ = output_.lo();
    }
    if (default_output_ < output_.lo() || default_output_ > output_.hi()) {
        throw ConfigError("FIS '" + name_ + "': default output lies outside the output range");
    }

    antecedent_idx_.reserve(rules_.size());
    consequent_idx_.reserve(rules_.size());
    for (size_t r = 0; r < rules_.size(); ++r) {
        const Rule& rule = rules_[r];
        if (rule.antecedent.size() != inputs_.size()) {
            throw ConfigError("FIS '" + name_ + "': rule " + std::to_string(r + 1) +
                              " has wrong antecedent arity");
        }
        if (!(rule.weight > 0.0) || rule.weight > 1.0) {
            throw ConfigError("FIS '" + name_ + "': rule " + std::to_string(r + 1) +
                              " weight must be in (0, 1]");
        }
        std::vector<int> idx(inputs_.size(), -1);
        for (size_t i = 0; i < inputs_.size(); ++i) {
            const std::string& label = rule.antecedent[i];
            if (label.empty()) continue;
            idx[i] = inputs_[i].term_index(label);
            if (idx[i] < 0) {
                throw ConfigError("FIS '" + name_ + "': rule " + std::to_string(r + 1) +
                                  " references unknown term '" + label + "' of variable '" +
                                  inputs_[i].name() + "'");
            }
        }
        const int consequent = output_.term_index(rule.consequent);
        if (consequent < 0) {
            throw ConfigError("FIS '" + name_ + "': rule " + std::to_string(r + 1) +
                              " references unknown output term '" + rule.consequent + "'");
        }
        antecedent_idx_.push_back(std::move(idx));
        consequent_idx_.push_back(consequent);
    }
}

InferenceResult Fis::infer(std::span<const double> xs) const {
    if (xs.size() != inputs_.size()) {
        throw ConfigError("infer: got " + std::to_string(xs.size()) + " values for " +
                          std::to_string(inputs_.size()) + " inputs");
    }
    for (double x : xs) {
        if (!std::isfinite(x)) throw ConfigError("infer: inputs must be finite");
    }

    // term degrees per input, at the clamped crisp values
    std::vector<std::vector<double>> degrees(inputs_.size());
    for (size_t i = 0; i < inputs_.size(); ++i) {
        const double cx = inputs_[i].clamp(xs[i]);
        degrees[i].reserve(inputs_[i].terms().size());
        for (const Term& t : inputs_[i].terms()) {
            degrees[i].push_back(t.mf.value(cx));
        }
    }

    // Max aggregation commutes with grouping rules by consequent term, so the
    // aggregate is the max over output terms of each term's strongest clip.
    const auto& out_terms = output_.terms();
    std::vector<double> clip(out_terms.size(), 0.0);
    double strongest = 0.0;
    for (size_t r = 0; r < rules_.size(); ++r) {
        double s = rules_[r].weight;
        for (size_t i = 0; i < inputs_.size(); ++i) {
            const int idx = antecedent_idx_[r][i];
            if (idx >= 0) s = std::min(s, degrees[i][idx]);
        }
        clip[consequent_idx_[r]] = std::max(clip[consequent_idx_[r]], s);
        strongest = std::max(strongest, s);
    }
    if (strongest <= std::numeric_limits<double>::epsilon()) {
        return {default_output_, false};
    }

    // Centroid over a uniform grid whose step is set by the resolution across
    // [lo, hi]; the grid extends past the range so a term centered on a bound
    // still contributes its full, symmetric mass. The crisp result is clamped
    // back into the range.
    const double lo = output_.lo();
    const double hi = output_.hi();
    const double step = (hi - lo) / (defuzz_resolution_ - 1);
    double sigma_max = 0.0;
    for (const Term& t : out_terms) sigma_max = std::max(sigma_max, t.mf.sigma);
    long pad = static_cast<long>(std::ceil(10.0 * sigma_max / step));
    pad = std::min(pad, 50L * (defuzz_resolution_ - 1));
    const long n = defuzz_resolution_ + 2 * pad;

    double num = 0.0;
    double den = 0.0;
    for (long k = 0; k < n; ++k) {
        const double y = lo + (static_cast<double>(k) - static_cast<double>(pad)) * step;
        double mu = 0.0;
        for (size_t t = 0; t < out_terms.size(); ++t) {
            if (clip[t] <= 0.0) continue;
            mu = std::max(mu, std::min(clip[t], out_terms[t].mf.value(y)));
        }
        num += y * mu;
        den += mu;
    }
    if (den <= 0.0) {
        return {default_output_, false};
    }
    const double value = std::min(std::max(num / den, lo), hi);
    return {value, true};
}

namespace {

constexpr double kInputCenters[5] = {0.0, 10.0, 20.0, 30.0, 40.0};
constexpr double kOutputCenters[5] = {0.0, 2.5, 5.0, 7.5, 10.0};
constexpr const char* kInputLabels[5] = {"VS", "S", "L", "VL", "EL"};
constexpr const char* kOutputLabels[5] = {"Z", "S", "L", "VL", "EL"};
constexpr double kSigma = 2.0;

// Consequent index by (W term, Q term).
constexpr int kConsequent[5][5] = {
    {0, 0, 1, 1, 2},
    {0, 1, 1, 2, 2},
    {1, 1, 2, 2, 2},
    {1, 1, 2, 3, 4},
    {2, 2, 2, 3, 4},
};

LinguisticVariable make_input(const std::string& name) {
    std::vector<Term> terms;
    for (int i = 0; i < 5; ++i) {
        terms.push_back({kInputLabels[i], {kInputCenters[i], kSigma}});
    }
    return {name, 0.0, 50.0, std::move(terms)};
}

}  // namespace

Fis build_traffic_fis() {
    std::vector<Term> out_terms;
    for (int i = 0; i < 5; ++i) {
        out_terms.push_back({kOutputLabels[i], {kOutputCenters[i], kSigma}});
    }
    LinguisticVariable span{"span", 0.0, 10.0, std::move(out_terms)};

    std::vector<Rule> rules;
    rules.reserve(25);
    for (int w = 0; w < 5; ++w) {
        for (int q = 0; q < 5; ++q) {
            rules.push_back({{kInputLabels[w], kInputLabels[q]},
                             kOutputLabels[kConsequent[w][q]],
                             1.0});
        }
    }
    return {"traffic", {make_input("W"), make_input("Q")}, std::move(span), std::move(rules)};
}

std::vector<std::vector<std::string>> complete_rule_matrix(const Fis& fis) {
    if (fis.inputs().size() != 2) return {};
    const size_t n0 = fis.inputs()[0].terms().size();
    const size_t n1 = fis.inputs()[1].terms().size();
    if (fis.rules().size() != n0 * n1) return {};

    std::vector<std::vector<std::string>> matrix(n0, std::vector<std::string>(n1));
    for (const Rule& r : fis.rules()) {
        if (r.antecedent[0].empty() || r.antecedent[1].empty()) return {};
        const int i = fis.inputs()[0].term_index(r.antecedent[0]);
        const int j = fis.inputs()[1].term_index(r.antecedent[1]);
        if (i < 0 || j < 0) return {};
        if (!matrix[i][j].empty()) return {};  // duplicate cell
        matrix[i][j] = r.consequent;
    }
    return matrix;
}

namespace {

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool variables_equal(const LinguisticVariable& a, const LinguisticVariable& b, double tol) {
    if (a.name() != b.name()) return false;
    if (!near(a.lo(), b.lo(), tol) || !near(a.hi(), b.hi(), tol)) return false;
    if (a.terms().size() != b.terms().size()) return false;
    for (size_t i = 0; i < a.terms().size(); ++i) {
        const Term& ta = a.terms()[i];
        const Term& tb = b.terms()[i];
        if (ta.label != tb.label) return false;
        if (!near(ta.mf.center, tb.mf.center, tol)) return false;
        if (!near(ta.mf.sigma, tb.mf.sigma, tol)) return false;
    }
    return true;
}

}  // namespace

bool structurally_equal(const Fis& a, const Fis& b, double tol) {
    if (a.name() != b.name()) return false;
    if (a.inputs().size() != b.inputs().size()) return false;
    for (size_t i = 0; i < a.inputs().size(); ++i) {
        if (!variables_equal(a.inputs()[i], b.inputs()[i], tol)) return false;
    }
    if (!variables_equal(a.output(), b.output(), tol)) return false;
    if (a.rules().size() != b.rules().size()) return false;
    for (size_t r = 0; r < a.rules().size(); ++r) {
        const Rule& ra = a.rules()[r];
        const Rule& rb = b.rules()[r];
        if (ra.antecedent != rb.antecedent) return false;
        if (ra.consequent != rb.consequent) return false;
        if (!near(ra.weight, rb.weight, tol)) return false;
    }
    if (a.defuzz_resolution() != b.defuzz_resolution()) return false;
    return near(a.default_output(), b.default_output(), tol);
}

}  // namespace ftc
