#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftc {

/// Thrown when a value violates a documented invariant: a bad scenario key,
/// a malformed membership function, an inconsistent rule base, and so on.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gaussian membership function mu(x) = exp(-(x - center)^2 / (2 sigma^2)).
struct GaussianMF {
    double center = 0.0;
    double sigma = 1.0;

    double value(double x) const;
};

struct Term {
    std::string label;
    GaussianMF mf;
};

/// A named crisp quantity partitioned into fuzzy terms over a closed range.
/// Labels are unique and term centers are non-decreasing in list order.
class LinguisticVariable {
public:
    LinguisticVariable(std::string name, double lo, double hi, std::vector<Term> terms);

    const std::string& name() const { return name_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::vector<Term>& terms() const { return terms_; }

    double clamp(double x) const;
    /// Index of the term with this label, or -1.
    int term_index(const std::string& label) const;

    /// Degree of every term at clamp(x). Out-of-range inputs saturate at the
    /// nearest bound instead of decaying to zero membership.
    std::map<std::string, double> fuzzify(double x) const;

private:
    std::string name_;
    double lo_;
    double hi_;
    std::vector<Term> terms_;
};

/// One all-AND rule. An empty antecedent label means "don't care" for that
/// input (encoded as index 0 in rule files).
struct Rule {
    std::vector<std::string> antecedent;  // one entry per input variable
    std::string consequent;
    double weight = 1.0;
};

/// Min over the rule's constrained antecedent degrees, times the rule weight.
/// Throws ConfigError when a label is missing from its degree map.
double rule_strength(const Rule& rule,
                     const std::vector<std::map<std::string, double>>& fuzzified);

struct InferenceResult {
    double value = 0.0;
    /// False when every rule strength is zero (within machine epsilon); the
    /// value then equals the system's default output.
    bool rule_fired = false;
};

/// Mamdani inference system: min AND, min implication, max aggregation,
/// centroid defuzzification on a uniform grid. Immutable once built; infer
/// is a pure function and safe to call concurrently.
class Fis {
public:
    static constexpr int kDefaultResolution = 1001;
    static constexpr int kMinResolution = 101;

    Fis(std::string name,
        std::vector<LinguisticVariable> inputs,
        LinguisticVariable output,
        std::vector<Rule> rules,
        int defuzz_resolution = kDefaultResolution,
        std::optional<double> default_output = std::nullopt);

    const std::string& name() const { return name_; }
    const std::vector<LinguisticVariable>& inputs() const { return inputs_; }
    const LinguisticVariable& output() const { return output_; }
    const std::vector<Rule>& rules() const { return rules_; }
    int defuzz_resolution() const { return defuzz_resolution_; }
    double default_output() const { return default_output_; }

    /// Crisp output for one crisp value per input variable. Inputs are
    /// clamped to their variable's range before fuzzification.
    InferenceResult infer(std::span<const double> inputs) const;

private:
    std::string name_;
    std::vector<LinguisticVariable> inputs_;
    LinguisticVariable output_;
    std::vector<Rule> rules_;
    int defuzz_resolution_;
    double default_output_;

    // resolved at construction so infer never touches labels
    std::vector<std::vector<int>> antecedent_idx_;  // -1 = don't care
    std::vector<int> consequent_idx_;
};

/// The traffic-signal extension FIS: inputs W (max waiting time, s) and
/// Q (queue length, vehicles) on [0, 50] with terms VS/S/L/VL/EL at centers
/// 0/10/20/30/40 and sigma 2; output "span" (green extension, s) on [0, 10]
/// with terms Z/S/L/VL/EL at centers 0/2.5/5/7.5/10 and sigma 2; and the
/// complete 25-rule base.
Fis build_traffic_fis();

/// Consequent labels arranged by (first-input term, second-input term) for a
/// two-input rule base that covers the full product of terms exactly once.
/// Empty when the system has a different shape or the base is incomplete,
/// duplicated, or uses don't-care antecedents.
std::vector<std::vector<std::string>> complete_rule_matrix(const Fis& fis);

/// Field-by-field equality with |a - b| <= tol on every numeric field.
bool structurally_equal(const Fis& a, const Fis& b, double tol);

}  // namespace ftc
