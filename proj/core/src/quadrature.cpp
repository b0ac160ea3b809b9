#include "gbpwalk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "gbpwalk/errors.hpp"

namespace gbp {
namespace {

constexpr double xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980914563, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk21(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * wgk[10];
    double g = 0.0;
    for (int j = 0; j < 10; ++j) {
        const double dx = h * xgk[j];
        const double s = f(c - dx) + f(c + dx);
        k += wgk[j] * s;
        if (j % 2 == 1) g += wg[j / 2] * s;
    }
    Piece p{a, b, k * h, std::abs((k - g) * h)};
    if (!std::isfinite(p.value)) p.error = INFINITY;
    return p;
}

}  // namespace

QuadResult integrate_adaptive(const Integrand& f, double a, double b, const QuadControl& ctl) {
    QuadResult r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    std::priority_queue<Piece> heap;
    Piece first = gk21(f, a, b);
    r.evaluations = 21;
    double total = first.value, err = first.error;
    heap.push(first);
    while (true) {
        const double target = std::max(ctl.abs_tol, ctl.rel_tol * std::abs(total));
        if (err <= target) {
            r.converged = true;
            break;
        }
        if (static_cast<int>(heap.size()) >= ctl.max_intervals || !std::isfinite(err)) break;
        Piece worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;
        heap.pop();
        Piece l = gk21(f, worst.a, mid);
        Piece u = gk21(f, mid, worst.b);
        r.evaluations += 42;
        total += l.value + u.value - worst.value;
        err += l.error + u.error - worst.error;
        heap.push(l);
        heap.push(u);
    }
    // Re-sum to shed drift from the running updates.
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().value;
        e += heap.top().error;
        heap.pop();
    }
    r.value = v;
    r.error = e;
    if (!r.converged) r.converged = e <= std::max(ctl.abs_tol, ctl.rel_tol * std::abs(v));
    return r;
}

double integrate(const Integrand& f, double a, double b, const QuadControl& ctl) {
    const QuadResult r = integrate_adaptive(f, a, b, ctl);
    if (!r.converged) throw AccuracyError("adaptive quadrature did not reach tolerance", r.value, r.error);
    return r.value;
}

double integrate_to_infinity(const Integrand& f, double a, const QuadControl& ctl) {
    auto g = [&](double u) {
        if (u >= 1.0) return 0.0;
        const double d = 1.0 - u;
        const double v = f(a + u / d);
        return v == 0.0 ? 0.0 : v / (d * d);
    };
    return integrate(g, 0.0, 1.0, ctl);
}

double integrate_left_power(const Integrand& f, double a, double b, double beta, const QuadControl& ctl) {
    if (beta >= 1.0)
        return integrate([&](double x) { return f(x) * std::pow(x - a, beta - 1.0); }, a, b, ctl);
    const double wmax = std::pow(b - a, beta);
    const double inv = 1.0 / beta;
    auto g = [&](double w) { return f(a + std::pow(w, inv)); };
    return integrate(g, 0.0, wmax, ctl) * inv;
}

double integrate_right_power(const Integrand& f, double a, double b, double beta, const QuadControl& ctl) {
    if (beta >= 1.0)
        return integrate([&](double x) { return f(x) * std::pow(b - x, beta - 1.0); }, a, b, ctl);
    const double wmax = std::pow(b - a, beta);
    const double inv = 1.0 / beta;
    auto g = [&](double w) { return f(b - std::pow(w, inv)); };
    return integrate(g, 0.0, wmax, ctl) * inv;
}

}  // namespace gbp
