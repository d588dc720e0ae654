#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypflow/common.hpp"

namespace hypflow {

// One verified inequality instance: lhs <= rhs expected, slack = rhs - lhs.
// Everything needed to replay the evaluation is captured in `inputs`.
struct TheoremReport {
    std::string theorem;
    nlohmann::json inputs = nlohmann::json::object();
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
    double delta_check = 0;
    double epsilon_cvx = 0;
    std::uint64_t seed = 0;
    std::optional<std::string> skipped_reason;

    double slack() const { return rhs - lhs; }
    bool skipped() const { return skipped_reason.has_value(); }

    // pass iff slack >= -tol_check(|rhs|)
    static TheoremReport make(std::string theorem, double lhs, double rhs,
                              nlohmann::json inputs = nlohmann::json::object());
    static TheoremReport make_skipped(std::string theorem, std::string reason,
                                      nlohmann::json inputs = nlohmann::json::object());

    nlohmann::json to_json() const;
};

std::string reports_to_csv(const std::vector<TheoremReport>& reports);

}  // namespace hypflow
