// integrator.hpp: explicit Runge-Kutta time stepping for linear ODE states.
//
// Dormand-Prince 5(4) with FSAL and error control in the weighted RMS norm
//   err = sqrt(mean(|e_i|^2 / (atol + rtol max(|y_i|, |y_new_i|))^2)).
// Output times between steps are filled from the method's fourth-order
// continuous extension; only the last output time is hit by a step. A
// fixed-step classical RK4 is kept for cross-checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "coopemit/errors.hpp"

namespace coopemit {

enum class IntegratorMethod { dormand_prince, rk4_fixed };

struct IntegratorOptions {
    double rtol{1e-9};
    double atol{1e-12};
    double initial_step{0.0};      // 0 selects automatically
    double fixed_step{1e-3};       // rk4_fixed only
    std::size_t max_steps{20'000'000};
};

struct IntegratorStats {
    std::size_t steps{0};
    std::size_t rejected{0};
    std::size_t rhs_evals{0};
    double min_step{std::numeric_limits<double>::infinity()};
    double max_step{0.0};
};

namespace detail {

template <class V>
double weighted_rms(const V& err, const V& y0, const V& y1, double rtol, double atol) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + rtol * std::sqrt(std::max(std::norm(y0[i]), std::norm(y1[i])));
        acc += std::norm(err[i]) / (sc * sc);
    }
    return std::sqrt(acc / static_cast<double>(err.size()));
}

} // namespace detail

// f(t, y, dydt) fills dydt. observe(t, y) is invoked at t0 and at each output time.
template <class V, class Rhs, class Observer>
IntegratorStats integrate_dopri5(Rhs&& f, V& y, double t0, const std::vector<double>& out_times,
                                 Observer&& observe, const IntegratorOptions& opt) {
    // Dormand & Prince (1980) tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                     b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    // Dense output coefficients from Hairer's DOPRI5 (contd5).
    constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                     d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                     d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

    IntegratorStats st;
    double t = t0;
    observe(t, static_cast<const V&>(y));
    if (out_times.empty()) return st;

    V k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
    V r2, r3, r4, r5, yout;
    f(t, y, k1);
    ++st.rhs_evals;

    double h = opt.initial_step;
    if (!(h > 0.0)) {
        const V zero = V::Zero(y.size());
        const double d0 = detail::weighted_rms(y, y, zero, opt.rtol, opt.atol);
        const double dd1 = detail::weighted_rms(k1, y, zero, opt.rtol, opt.atol);
        h = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
        ytmp = y + h * k1;
        f(t + h, ytmp, k2);
        ++st.rhs_evals;
        const double dd2 = detail::weighted_rms((k2 - k1).eval(), y, zero, opt.rtol, opt.atol) / h;
        const double dm = std::max(dd1, dd2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min(100.0 * h, h1);
    }

    constexpr double safety = 0.9, fac_min = 0.2, fac_max = 10.0;
    double err_prev = 1e-4;
    const double t_final = out_times.back();
    std::size_t next_out = 0;

    while (next_out < out_times.size()) {
        if (st.steps + st.rejected >= opt.max_steps) throw IntegrationError("step budget exhausted", t);
        const double remaining = t_final - t;
        const bool last = h >= remaining;
        const double h_try = last ? remaining : h;
        if (h_try < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw IntegrationError("step size underflow", t);

        ytmp = y + h_try * (a21 * k1);
        f(t + c2 * h_try, ytmp, k2);
        ytmp = y + h_try * (a31 * k1 + a32 * k2);
        f(t + c3 * h_try, ytmp, k3);
        ytmp = y + h_try * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h_try, ytmp, k4);
        ytmp = y + h_try * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h_try, ytmp, k5);
        ytmp = y + h_try * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h_try, ytmp, k6);
        ynew = y + h_try * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h_try, ynew, k7);
        st.rhs_evals += 6;

        err = h_try * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double e = detail::weighted_rms(err, y, ynew, opt.rtol, opt.atol);
        if (!std::isfinite(e)) throw IntegrationError("non-finite error estimate", t);

        if (e > 1.0) {
            ++st.rejected;
            h = h_try * std::max(fac_min, safety * std::pow(e, -0.2));
            continue;
        }

        const double t_new = last ? t_final : t + h_try;
        const bool interior_output = next_out < out_times.size() && out_times[next_out] < t_new;
        if (interior_output) {
            r2 = ynew - y;
            r3 = h_try * k1 - r2;
            r4 = r2 - h_try * k7 - r3;
            r5 = h_try * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
            while (next_out < out_times.size() && out_times[next_out] < t_new) {
                const double th = (out_times[next_out] - t) / h_try;
                const double th1 = 1.0 - th;
                yout = y + th * (r2 + th1 * (r3 + th * (r4 + th1 * r5)));
                observe(out_times[next_out], static_cast<const V&>(yout));
                ++next_out;
            }
        }

        // PI step-size control (Hairer, Norsett & Wanner, II.4).
        double fac = e == 0.0 ? fac_max : safety * std::pow(e, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
        fac = std::clamp(fac, fac_min, fac_max);
        err_prev = std::max(e, 1e-4);
        t = t_new;
        y.swap(ynew);
        k1.swap(k7);
        ++st.steps;
        st.min_step = std::min(st.min_step, h_try);
        st.max_step = std::max(st.max_step, h_try);
        h = last ? h : h_try * fac;
        if (next_out < out_times.size() && out_times[next_out] <= t) {
            observe(t, static_cast<const V&>(y));
            ++next_out;
        }
    }
    return st;
}

template <class V, class Rhs, class Observer>
IntegratorStats integrate_rk4(Rhs&& f, V& y, double t0, const std::vector<double>& out_times,
                              Observer&& observe, const IntegratorOptions& opt) {
    IntegratorStats st;
    double t = t0;
    observe(t, static_cast<const V&>(y));
    V k1, k2, k3, k4, ytmp;
    for (double t_out : out_times) {
        const double span = t_out - t;
        const auto n_sub = static_cast<std::size_t>(std::max(1.0, std::ceil(span / opt.fixed_step - 1e-9)));
        const double h = span / static_cast<double>(n_sub);
        for (std::size_t s = 0; s < n_sub; ++s) {
            f(t, y, k1);
            ytmp = y + (0.5 * h) * k1;
            f(t + 0.5 * h, ytmp, k2);
            ytmp = y + (0.5 * h) * k2;
            f(t + 0.5 * h, ytmp, k3);
            ytmp = y + h * k3;
            f(t + h, ytmp, k4);
            y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t = (s + 1 == n_sub) ? t_out : t + h;
            st.rhs_evals += 4;
            ++st.steps;
        }
        if (n_sub > 0) {
            st.min_step = std::min(st.min_step, h);
            st.max_step = std::max(st.max_step, h);
        }
        observe(t, static_cast<const V&>(y));
    }
    return st;
}

} // namespace coopemit
