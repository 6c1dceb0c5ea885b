#pragma once

#include "odolab/criteria.hpp"
#include "odolab/shift.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace odolab {

enum class Status { satisfied, satisfied_up_to_horizon, violated, inconclusive };
enum class Mode { closed_form, numeric_horizon };
std::string to_string(Status s);
std::string to_string(Mode m);

/// A hand-registered asymptotic answer for one theorem on one family.
struct ClosedForm {
    bool holds = true;
    std::string formula;
};

struct Verdict {
    std::string theorem;
    Status status = Status::inconclusive;
    Status numeric_status = Status::inconclusive;  // before any registered closed form is applied
    Mode mode = Mode::numeric_horizon;
    json evidence = json::object();
    std::string note;
    json to_json() const;
};

struct VerdictParams {
    int horizon = 400;
    Rational kappa = Rational(1, 5);
    int gamma_horizon = 48;
    int n_max = 200;
    std::int64_t max_dense_m = 4096;  // translation quantities skip larger alphabets
    double tail_budget = 1;           // thm:hc gap budget b/s^2
    SearchLimits limits{20000, 60000};
    std::map<std::string, ClosedForm> closed_forms;
};

std::vector<std::string> theorem_ids(MapKind kind);
std::vector<std::string> shift_theorem_ids();

template <class S>
Verdict evaluate(const SystemSpec<S>& spec, const std::string& theorem, const VerdictParams& params = {});
Verdict evaluate_shift(const ShiftSystem& sys, const std::string& theorem, const VerdictParams& params = {});

// numeric rules on a finite prefix of a sequence
struct RuleOutcome {
    Status status = Status::inconclusive;
    json evidence = json::object();
};
/// limsup v = 1
RuleOutcome rule_limsup_one(const std::vector<double>& v);
/// lim v = 1
RuleOutcome rule_lim_one(const std::vector<double>& v);
/// limsup v > 0; margin = min over the second half
RuleOutcome rule_limsup_positive(const std::vector<double>& v);
/// v -> infinity (or limsup = infinity); head = size of the reference prefix
RuleOutcome rule_unbounded(const std::vector<double>& v, std::size_t head);

/// thm:hc greedy subsequence: candidates with theta >= tau, gap products bounded by budget / s^2
struct HcSubsequence {
    std::vector<std::int64_t> indices;
    std::vector<double> statistic;  // (1/n)(sum theta)^2
    double tau = 0;
    double gap_sum = 0;             // sum of the gap products actually used
};
HcSubsequence hc_subsequence(const std::vector<double>& theta, const std::vector<double>& last_weight, double tau, double budget);

}  // namespace odolab
