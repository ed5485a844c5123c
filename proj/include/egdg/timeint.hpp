#ifndef EGDG_TIMEINT_HPP
#define EGDG_TIMEINT_HPP

#include "egdg/error.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace egdg {

/// Fixed dt, or dt = kappa * h / (2 pi).
struct StepRule {
    enum class Kind { Fixed, Proportional };
    Kind kind = Kind::Fixed;
    double value = 0.01;

    static StepRule fixed(double dt) { return {Kind::Fixed, dt}; }
    static StepRule proportional(double kappa) { return {Kind::Proportional, kappa}; }

    double dt(double h) const
    {
        const double r = kind == Kind::Fixed ? value : value * h / (2.0 * std::numbers::pi);
        if (!(r > 0.0))
            throw std::invalid_argument("StepRule: time step must be positive");
        return r;
    }
};

/// Number of steps to reach T with nominal step dt; the last one is shortened.
inline long step_count(double T, double dt)
{
    if (!(T > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("step_count: T and dt must be positive");
    return static_cast<long>(std::ceil(T / dt - 1e-9));
}

/// Classical RK4 with stage weights 1/6, 1/3, 1/3, 1/6. Y needs Y + Y and
/// double * Y; f(t, y) returns dy/dt.
template <class Y, class F>
Y rk4_step(const Y& y, double t, double dt, F&& f)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("rk4_step: dt must be positive");
    const Y k1 = f(t, y);
    const Y k2 = f(t + 0.5 * dt, y + (0.5 * dt) * k1);
    const Y k3 = f(t + 0.5 * dt, y + (0.5 * dt) * k2);
    const Y k4 = f(t + dt, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct IntegrateResult {
    long steps = 0;
    double t = 0.0;
    bool aborted = false;
    std::string error;
    int error_element = -1;
};

/// March y from t0 to t0 + T in fixed steps. observe(step, t, y) runs at
/// step 0, every `stride` steps and at the final step. A NumericalBreakdown
/// stops the march; y keeps the last good state.
template <class Y, class F, class Obs>
IntegrateResult integrate(Y& y, double t0, double T, double dt, F&& f, Obs&& observe, long stride = 1)
{
    const long n = step_count(T, dt);
    if (stride < 1)
        stride = 1;
    IntegrateResult res;
    double t = t0;
    observe(0L, t, y);
    for (long i = 0; i < n; ++i) {
        const double h = (i == n - 1) ? (t0 + T) - t : dt;
        try {
            Y next = rk4_step(y, t, h, f);
            y = std::move(next);
        } catch (const NumericalBreakdown& e) {
            res.aborted = true;
            res.error = e.what();
            res.error_element = e.element();
            break;
        }
        t = (i == n - 1) ? t0 + T : t + h;
        if constexpr (requires { y.t; })
            y.t = t;
        res.steps = i + 1;
        if ((i + 1) % stride == 0 || i == n - 1)
            observe(i + 1, t, y);
    }
    res.t = t;
    return res;
}

} // namespace egdg

#endif
