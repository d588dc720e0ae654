#include "hypflow/report.hpp"

#include <cstdio>
#include <sstream>

namespace hypflow {

TheoremReport TheoremReport::make(std::string theorem, double lhs, double rhs,
                                  nlohmann::json inputs) {
    TheoremReport r;
    r.theorem = std::move(theorem);
    r.inputs = std::move(inputs);
    r.lhs = lhs;
    r.rhs = rhs;
    r.pass = (rhs - lhs) >= -tol_check(rhs);
    return r;
}

TheoremReport TheoremReport::make_skipped(std::string theorem, std::string reason,
                                          nlohmann::json inputs) {
    TheoremReport r;
    r.theorem = std::move(theorem);
    r.inputs = std::move(inputs);
    r.skipped_reason = std::move(reason);
    r.pass = true;
    return r;
}

nlohmann::json TheoremReport::to_json() const {
    nlohmann::json j{{"theorem", theorem}, {"inputs", inputs},   {"lhs", lhs},
                     {"rhs", rhs},         {"slack", slack()},   {"pass", pass},
                     {"delta_check", delta_check},               {"epsilon_cvx", epsilon_cvx},
                     {"seed", seed}};
    if (skipped_reason) j["skipped"] = *skipped_reason;
    return j;
}

std::string reports_to_csv(const std::vector<TheoremReport>& reports) {
    std::ostringstream out;
    out << "trial,theorem,pass,skipped,lhs,rhs,slack,delta_check,epsilon_cvx,seed\n";
    char buf[512];
    for (size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        const long long trial =
            r.inputs.contains("trial") ? r.inputs["trial"].get<long long>()
                                       : static_cast<long long>(i);
        std::snprintf(buf, sizeof(buf), "%lld,%s,%d,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%llu\n",
                      trial, r.theorem.c_str(), r.pass ? 1 : 0,
                      r.skipped_reason ? r.skipped_reason->c_str() : "", r.lhs, r.rhs, r.slack(),
                      r.delta_check, r.epsilon_cvx, static_cast<unsigned long long>(r.seed));
        out << buf;
    }
    return out.str();
}

}  // namespace hypflow
