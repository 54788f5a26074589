#include "moutard/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "moutard/errors.hpp"

namespace moutard {

namespace {

using C = std::complex<double>;

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int kN = 15;
constexpr double kNodes[kN] = {
    -0.98799251802048542849, -0.93727339240070590431, -0.84820658341042721620,
    -0.72441773136017004742, -0.57097217260853884754, -0.39415134707756336990,
    -0.20119409399743452230,  0.0,
     0.20119409399743452230,  0.39415134707756336990,  0.57097217260853884754,
     0.72441773136017004742,  0.84820658341042721620,  0.93727339240070590431,
     0.98799251802048542849};
constexpr double kWeights[kN] = {
    0.03075324199611726835, 0.07036604748810812471, 0.10715922046717193501,
    0.13957067792615431445, 0.16626920581699393355, 0.18616100001556221103,
    0.19843148532711157646, 0.20257824192556127288, 0.19843148532711157646,
    0.18616100001556221103, 0.16626920581699393355, 0.13957067792615431445,
    0.10715922046717193501, 0.07036604748810812471, 0.03075324199611726835};

struct Panel {
    double a, b;
    C value;
    double err;
};

C gl15(const std::function<C(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    C acc(0.0, 0.0);
    for (int i = 0; i < kN; ++i)
        acc += kWeights[i] * f(mid + half * kNodes[i]);
    return acc * half;
}

Panel make_panel(const std::function<C(double)>& f, double a, double b) {
    const C whole = gl15(f, a, b);
    const double mid = 0.5 * (a + b);
    const C halves = gl15(f, a, mid) + gl15(f, mid, b);
    // Keep the refined value; the coarse/fine difference is the indicator.
    return Panel{a, b, halves, std::abs(whole - halves)};
}

} // namespace

QuadResult integrate_adaptive(const std::function<C(double)>& f,
                              double a, double b,
                              std::vector<double> breakpoints,
                              double rel_tol, double abs_tol, int max_panels) {
    breakpoints.push_back(a);
    breakpoints.push_back(b);
    std::sort(breakpoints.begin(), breakpoints.end());
    std::vector<double> edges;
    for (double t : breakpoints) {
        if (t < a || t > b) continue;
        if (edges.empty() || t - edges.back() > 1e-14 * (std::abs(a) + std::abs(b) + 1.0))
            edges.push_back(t);
    }
    if (edges.size() < 2)
        throw ConfigError("empty integration interval");

    auto cmp = [](const Panel& p, const Panel& q) { return p.err < q.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(cmp)> queue(cmp);

    C total(0.0, 0.0);
    double toterr = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = make_panel(f, edges[i], edges[i + 1]);
        total += p.value;
        toterr += p.err;
        queue.push(p);
    }

    int panels = static_cast<int>(edges.size()) - 1;
    const double width_floor = (b - a) * 1e-15;
    while (true) {
        const double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (toterr <= tol)
            break;
        if (panels >= max_panels)
            throw NonConvergence("adaptive quadrature: panel budget exhausted (err=" +
                                 std::to_string(toterr) + ", tol=" + std::to_string(tol) + ")");
        Panel worst = queue.top();
        queue.pop();
        if (worst.b - worst.a < width_floor) {
            // Refinement saturated; report what is left as the error estimate.
            queue.push(worst);
            break;
        }
        total -= worst.value;
        toterr -= worst.err;
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = make_panel(f, worst.a, mid);
        Panel right = make_panel(f, mid, worst.b);
        total += left.value + right.value;
        toterr += left.err + right.err;
        queue.push(left);
        queue.push(right);
        ++panels;
    }

    // Re-sum in interval order: drops the drift of incremental updates and
    // makes the result independent of the refinement schedule.
    std::vector<Panel> all;
    all.reserve(queue.size());
    while (!queue.empty()) {
        all.push_back(queue.top());
        queue.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
    C final_sum(0.0, 0.0);
    double final_err = 0.0;
    for (const Panel& p : all) {
        final_sum += p.value;
        final_err += p.err;
    }
    return QuadResult{final_sum, final_err, panels};
}

} // namespace moutard
