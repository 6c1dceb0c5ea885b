#pragma once

#include "odolab/scalar.hpp"

#include <json.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace odolab {

using json = nlohmann::json;

/// rule(i) == rule(i + period) for every i >= start
struct Periodicity {
    std::int64_t start = 1;
    std::int64_t period = 1;
};

std::optional<Periodicity> combine(const std::optional<Periodicity>& a, const std::optional<Periodicity>& b);

class AlphabetRule {
public:
    virtual ~AlphabetRule() = default;
    /// m_i for i >= 1
    virtual std::int64_t size(std::int64_t i) const = 0;
    virtual json to_json() const = 0;
    virtual std::optional<Periodicity> periodicity() const { return std::nullopt; }
    /// sup_i m_i when the family is bounded
    virtual std::optional<std::int64_t> bound() const { return std::nullopt; }
};

class MeasureRule {
public:
    virtual ~MeasureRule() = default;
    /// true when rational() is available
    virtual bool exact() const = 0;
    virtual std::vector<Rational> rational(std::int64_t i, const AlphabetRule& alphabet) const;
    virtual std::vector<double> floating(std::int64_t i, const AlphabetRule& alphabet) const;
    virtual json to_json() const = 0;
    /// periodicity in i once m_i is fixed
    virtual std::optional<Periodicity> periodicity() const { return std::nullopt; }
};

std::shared_ptr<const AlphabetRule> make_alphabet(const json& config);
std::shared_ptr<const MeasureRule> make_measure(const json& config);

// parameter solvers

/// c with sum_{j<m} c^j = (i+1)/i, bisection on (1/(i+1), 1/i]
double solve_geometric_c(std::int64_t i, std::int64_t m, double tol = 1e-13);
/// eps with lead*eps + (rho^n - 1)/(rho - 1) * eps = 1
Rational sumhc_epsilon(std::int64_t lead, const Rational& rho, std::int64_t n);

struct SolverSpec {
    std::string equation;  // "geometric-c" | "sumhc-epsilon"
    double tolerance = 1e-12;
    // sumhc-epsilon inputs
    std::int64_t lead = 0;
    Rational rho = 1;
    std::int64_t n = 0;
    // geometric-c input
    std::int64_t m = 2;
};

/// exact is set for sumhc-epsilon and for geometric-c when m = 2
struct SolverResult {
    double value = 0;
    std::optional<Rational> exact;
};
SolverResult solve_parameter(const SolverSpec& spec, std::int64_t i);

/// Weights eps on [0,lead), rho^{n-1-k} eps at lead+k (k < n), eps on the trailing run.
std::vector<Rational> geometric_block_rational(std::int64_t lead, std::int64_t n, std::int64_t trail, const Rational& rho);
std::vector<double> geometric_block_double(std::int64_t lead, std::int64_t n, std::int64_t trail, double rho);

}  // namespace odolab
