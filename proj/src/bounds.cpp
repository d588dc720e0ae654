#include "hypflow/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hypflow/metric_ops.hpp"
#include "hypflow/serialize.hpp"

namespace hypflow {

namespace {

// The delta-dependent drift term of the tendency estimate.
double conv_term(double K, double L, double tau, double delta) {
    return 4.0 * std::sqrt(2.0 * tau * L * delta) / std::sqrt(K * tau + 1.0);
}

// Additive slack charged to reports whose objective carries an audited
// convexity deficit (perturbed-tree instances).
double approx_convexity_allowance(const Space& space, const Objective& f, double tau) {
    if (f.eps_cvx() <= 0) return 0.0;
    return f.eps_cvx() * (2.0 * tau + space.diameter_hint()) / std::min(1.0, f.L());
}

nlohmann::json base_inputs(const Space& space, const Objective& f, double tau, double delta) {
    nlohmann::json j{{"space", space.name()},
                     {"objective", f.descriptor()},
                     {"tau", tau},
                     {"delta", delta}};
    if (f.eps_cvx() > 0) j["approximate_convexity"] = true;
    if (2.0 * tau * f.L() < delta) j["outside_useful_regime"] = true;
    return j;
}

void stamp(TheoremReport& rep, const Objective& f, double delta) {
    rep.delta_check = delta;
    rep.epsilon_cvx = f.eps_cvx();
}

}  // namespace

BoundConstants constants(double K, double L, double D, double tau, double delta) {
    if (K < 0 || !(L > 0) || D < 0 || !(tau > 0) || delta < 0)
        throw Error("constants: arguments out of range");
    BoundConstants c;
    c.K = K; c.L = L; c.D = D; c.tau = tau; c.delta = delta;
    c.C1 = 2.0 * std::sqrt(2.0 * tau * L * delta) / std::sqrt(K * tau + 1.0) + 2.0 * delta;
    c.C2 = std::sqrt((2.0 * tau / (K * tau + 1.0)) * (L + D / tau) * c.C1);
    c.C3 = std::sqrt((16.0 * tau / (K * tau + 1.0)) * (L + (D + 2.0 * delta) / tau) * delta);
    c.C = 12.0 * delta + 10.0 * c.C1 + 6.0 * c.C2 + c.C3;
    return c;
}

double delta_check_for(const Space& space, std::span<const Point> pts) {
    double empirical = 0;
    if (pts.size() >= 4) empirical = four_point_delta_exact(space, pts).delta_hat;
    return std::max(space.declared_delta(), empirical);
}

TheoremReport check_conv(const Space& space, const Objective& f, const Point& x, double tau,
                         double delta, const ProxResult& r) {
    const Point& p = f.minimizer();
    auto inputs = base_inputs(space, f, tau, delta);
    inputs["x"] = point_to_json(x);
    inputs["y"] = point_to_json(r.y);
    const double lhs = space.distance(p, r.y);
    const double rhs = space.distance(p, x) - r.displacement +
                       conv_term(f.K(), f.L(), tau, delta) +
                       approx_convexity_allowance(space, f, tau);
    auto rep = TheoremReport::make("conv", lhs, rhs, std::move(inputs));
    stamp(rep, f, delta);
    return rep;
}

TheoremReport check_conv_d(const Space& space, const Objective& f, const Point& x, double tau,
                           double delta, const ProxResult& r) {
    auto inputs = base_inputs(space, f, tau, delta);
    inputs["x"] = point_to_json(x);
    inputs["y"] = point_to_json(r.y);
    if (!(f.K() > 0) || !(tau > 1.0 / f.K())) {
        auto rep = TheoremReport::make_skipped("conv_d", "requires K>0 and tau>1/K",
                                               std::move(inputs));
        stamp(rep, f, delta);
        return rep;
    }
    const Point& p = f.minimizer();
    const double lhs = space.distance(p, r.y);
    const double rhs = space.distance(p, x) -
                       (1.0 - 1.0 / (f.K() * tau)) * (f(x) - f.min_value()) / f.L() +
                       conv_term(f.K(), f.L(), tau, delta) +
                       approx_convexity_allowance(space, f, tau);
    auto rep = TheoremReport::make("conv_d", lhs, rhs, std::move(inputs));
    stamp(rep, f, delta);
    return rep;
}

std::vector<TheoremReport> check_step_bounds(const Space& space, const Objective& f,
                                             const Point& x, double tau, const ProxResult& r) {
    auto inputs = base_inputs(space, f, tau, 0.0);
    inputs["x"] = point_to_json(x);
    inputs["y"] = point_to_json(r.y);
    if (!(f.K() > 0) || !(tau > 1.0 / f.K())) {
        auto rep = TheoremReport::make_skipped("step_lower", "requires K>0 and tau>1/K", inputs);
        auto rep2 = TheoremReport::make_skipped("conv_f", "requires K>0 and tau>1/K", inputs);
        stamp(rep, f, 0.0);
        stamp(rep2, f, 0.0);
        return {rep, rep2};
    }
    const double K = f.K(), L = f.L();
    const double gap = f(x) - f.min_value();
    const double alw = approx_convexity_allowance(space, f, tau);

    // d(x,y) >= (1 - 1/(K tau)) (f(x) - f(p)) / L
    auto lower = TheoremReport::make("step_lower", (1.0 - 1.0 / (K * tau)) * gap / L - alw,
                                     r.displacement, inputs);
    stamp(lower, f, 0.0);

    // f(y) <= f(x) - (K tau - 1)^2 (f(x) - f(p))^2 / (2 (K L)^2 tau^3)
    const double drop = (K * tau - 1.0) * (K * tau - 1.0) * gap * gap /
                        (2.0 * (K * L) * (K * L) * tau * tau * tau);
    auto value = TheoremReport::make("conv_f", r.f_y, f(x) - drop + alw, inputs);
    stamp(value, f, 0.0);
    return {lower, value};
}

std::vector<TheoremReport> check_iteration(const Space& space, const Objective& f,
                                           const Point& x0, double tau, double epsilon,
                                           double delta, const FlowTrace& trace) {
    auto inputs = base_inputs(space, f, tau, delta);
    inputs["x0"] = point_to_json(x0);
    inputs["epsilon"] = epsilon;
    inputs["stop_reason"] = trace.stop_reason;
    inputs["iterates"] = trace.iterates.size();

    if (!(f.K() > 0) || !(tau > 1.0 / f.K())) {
        auto rep = TheoremReport::make_skipped("iteration", "requires K>0 and tau>1/K",
                                               std::move(inputs));
        stamp(rep, f, delta);
        return {rep};
    }
    if (trace.iterates.empty()) throw Error("check_iteration: empty trace");

    const double K = f.K(), L = f.L();
    const double fp = f.min_value();
    const double alw = approx_convexity_allowance(space, f, tau);
    const double eps2 = epsilon * epsilon;

    std::vector<TheoremReport> out;
    auto emit = [&](const char* theorem, double lhs, double rhs,
                    std::optional<bool> force_pass = std::nullopt) {
        auto rep = TheoremReport::make(theorem, lhs, rhs, inputs);
        if (force_pass) rep.pass = *force_pass;
        stamp(rep, f, delta);
        out.push_back(std::move(rep));
    };

    // target ball of the delta-aware estimate
    const double ball =
        (2.0 * L * tau / (K * tau - 1.0)) * (conv_term(K, L, tau, delta) + eps2) + alw;
    long long ball_n = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < trace.iterates.size(); ++i) {
        const double d2 = trace.iterates[i].dist_to_p * trace.iterates[i].dist_to_p;
        best_d2 = std::min(best_d2, d2);
        if (d2 <= ball + tol_check(ball)) {
            ball_n = static_cast<long long>(i);
            break;
        }
    }
    if (ball_n < 0) {
        inputs["diagnostic"] = "flow ended before reaching the target ball";
        emit("iteration.ball", best_d2, ball);
        emit("iteration.ball_budget", static_cast<double>(trace.iterates.size()),
             space.distance(f.minimizer(), x0) / eps2, false);
    } else {
        const double d2 = trace.iterates[static_cast<size_t>(ball_n)].dist_to_p *
                          trace.iterates[static_cast<size_t>(ball_n)].dist_to_p;
        emit("iteration.ball", d2, ball);
        const double budget = space.distance(f.minimizer(), x0) / eps2;
        emit("iteration.ball_budget", static_cast<double>(ball_n), budget,
             ball_n == 0 || static_cast<double>(ball_n) < budget);
    }

    // value-threshold pair (independent of delta)
    const double f_thr = fp + K * L * tau * std::sqrt(2.0 * tau) * epsilon / (K * tau - 1.0) + alw;
    long long f_n = -1;
    double best_f = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < trace.iterates.size(); ++i) {
        best_f = std::min(best_f, trace.iterates[i].f_value);
        if (trace.iterates[i].f_value <= f_thr + tol_check(f_thr)) {
            f_n = static_cast<long long>(i);
            break;
        }
    }
    if (f_n < 0) {
        inputs["diagnostic"] = "flow ended before reaching the value threshold";
        emit("iteration.f", best_f, f_thr);
        emit("iteration.f_budget", static_cast<double>(trace.iterates.size()),
             (trace.iterates[0].f_value - fp) / eps2, false);
        emit("iteration.d2", std::numeric_limits<double>::infinity(),
             2.0 * L * tau * std::sqrt(2.0 * tau) * epsilon / (K * tau - 1.0), false);
    } else {
        const auto& it = trace.iterates[static_cast<size_t>(f_n)];
        emit("iteration.f", it.f_value, f_thr);
        const double budget = (trace.iterates[0].f_value - fp) / eps2;
        emit("iteration.f_budget", static_cast<double>(f_n), budget,
             f_n == 0 || static_cast<double>(f_n) < budget);
        emit("iteration.d2", it.dist_to_p * it.dist_to_p,
             2.0 * L * tau * std::sqrt(2.0 * tau) * epsilon / (K * tau - 1.0) + alw);
    }
    return out;
}

std::vector<TheoremReport> check_contraction(const Space& space, const Objective& f,
                                             const Point& x1_in, const Point& x2_in, double tau,
                                             double delta, const ProxResult& r1_in,
                                             const ProxResult& r2_in) {
    const Point& p = f.minimizer();
    const Point* x1 = &x1_in;
    const Point* x2 = &x2_in;
    const ProxResult* r1 = &r1_in;
    const ProxResult* r2 = &r2_in;
    if (space.distance(p, r1->y) > space.distance(p, r2->y)) {
        std::swap(x1, x2);
        std::swap(r1, r2);
    }
    const double dpy1 = space.distance(p, r1->y);
    const double product = gromov_product(space, p, *x1, *x2);
    const double dyy = space.distance(r1->y, r2->y);
    const double dxx = space.distance(*x1, *x2);
    const double term = 2.0 * conv_term(f.K(), f.L(), tau, delta) + 12.0 * delta;
    const double alw = approx_convexity_allowance(space, f, tau);

    auto inputs = base_inputs(space, f, tau, delta);
    inputs["x1"] = point_to_json(*x1);
    inputs["x2"] = point_to_json(*x2);
    inputs["y1"] = point_to_json(r1->y);
    inputs["y2"] = point_to_json(r2->y);
    inputs["gromov_x1x2_p"] = product;
    inputs["d_p_y1"] = dpy1;

    const bool tie = std::abs(dpy1 - product) <= tol_check(product);
    const bool case_i = dpy1 >= product || tie;
    const bool case_ii = dpy1 < product || tie;

    std::vector<TheoremReport> out;
    if (case_i) {
        auto rep = TheoremReport::make(
            "cont1", dyy, dxx - r1->displacement - r2->displacement + term + alw, inputs);
        stamp(rep, f, delta);
        out.push_back(std::move(rep));
        if (f.K() > 0 && tau > 1.0 / f.K()) {
            const double fgap = f(*x1) + f(*x2) - 2.0 * f.min_value();
            auto rep2 = TheoremReport::make(
                "cont1+", dyy,
                dxx - (1.0 - 1.0 / (f.K() * tau)) * fgap / f.L() + term + alw, inputs);
            stamp(rep2, f, delta);
            out.push_back(std::move(rep2));
        }
    }
    if (case_ii) {
        const double D = std::max(space.distance(p, *x1), space.distance(p, *x2));
        const BoundConstants c = constants(f.K(), f.L(), D, tau, delta);
        const double px2_x1 = gromov_product(space, *x1, p, *x2);
        auto in2 = inputs;
        in2["D"] = D;
        in2["C"] = c.C;
        auto rep = TheoremReport::make("cont2", dyy, dxx - px2_x1 + c.C + alw, std::move(in2));
        stamp(rep, f, delta);
        out.push_back(std::move(rep));
    }
    return out;
}

}  // namespace hypflow
