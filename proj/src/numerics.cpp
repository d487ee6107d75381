#include "rydxpm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rydxpm/errors.hpp"

namespace rydxpm {

namespace {

bool finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

double inf_norm(const Complex2x2& m) {
    return std::max(std::abs(m.m00) + std::abs(m.m01),
                    std::abs(m.m10) + std::abs(m.m11));
}

// Scaling-and-squaring Taylor series for exp(A); used near degenerate
// eigenvalues where the closed form cancels catastrophically.
Complex2x2 expm_taylor_scaled(const Complex2x2& a) {
    int squarings = 0;
    double norm = inf_norm(a);
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const double scale = std::ldexp(1.0, -squarings);
    const Complex2x2 b = a * Complex(scale, 0.0);

    Complex2x2 result = Complex2x2::identity();
    Complex2x2 term = Complex2x2::identity();
    for (int k = 1; k <= 25; ++k) {
        term = term * b * Complex(1.0 / k, 0.0);
        result = result + term;
        if (inf_norm(term) < 1e-18 * inf_norm(result)) break;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

}  // namespace

bool Complex2x2::finite() const {
    return rydxpm::finite(m00) && rydxpm::finite(m01) && rydxpm::finite(m10) &&
           rydxpm::finite(m11);
}

Complex2x2 Complex2x2::operator+(const Complex2x2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
}

Complex2x2 Complex2x2::operator-(const Complex2x2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
}

Complex2x2 Complex2x2::operator*(const Complex2x2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

Complex2x2 Complex2x2::operator*(Complex s) const {
    return {m00 * s, m01 * s, m10 * s, m11 * s};
}

CVec2 operator*(const Complex2x2& m, const CVec2& v) {
    return {m.m00 * v.x0 + m.m01 * v.x1, m.m10 * v.x0 + m.m11 * v.x1};
}

TimeGrid::TimeGrid(double t0_, double t1_, int n_steps_)
    : t0(t0_), t1(t1_), n_steps(n_steps_) {
    if (!(std::isfinite(t0) && std::isfinite(t1)) || t1 <= t0) {
        throw std::invalid_argument("TimeGrid: require finite t1 > t0");
    }
    if (n_steps <= 0) {
        throw std::invalid_argument("TimeGrid: require n_steps > 0");
    }
}

Complex2x2 expm2(const Complex2x2& m, double dt) {
    if (!m.finite() || !std::isfinite(dt)) {
        throw std::invalid_argument("expm2: non-finite input");
    }
    const Complex2x2 a = m * Complex(dt, 0.0);

    // exp(A) = e^mu [cosh(d) I + sinh(d)/d (A - mu I)], mu = tr/2,
    // d^2 = mu^2 - det = ((a-d)/2)^2 + bc; the eigenvalue gap is 2|d|.
    const Complex mu = a.trace() * 0.5;
    const Complex half_diff = (a.m00 - a.m11) * 0.5;
    const Complex d = std::sqrt(half_diff * half_diff + a.m01 * a.m10);

    if (2.0 * std::abs(d) < 1e-6) {
        return expm_taylor_scaled(a);
    }

    const Complex emu = std::exp(mu);
    const Complex ch = std::cosh(d);
    const Complex shc = std::sinh(d) / d;

    Complex2x2 dev = a;
    dev.m00 -= mu;
    dev.m11 -= mu;

    Complex2x2 result = dev * shc;
    result.m00 += ch;
    result.m11 += ch;
    return result * emu;
}

std::vector<CVec2> solve_driven_ode(const std::function<Complex2x2(double)>& m_of_t,
                                    const CVec2& source, const TimeGrid& grid) {
    std::vector<CVec2> out(grid.n_samples());
    out[0] = CVec2{};

    const double h = grid.dt();
    CVec2 x{};
    for (int k = 0; k < grid.n_steps; ++k) {
        const double t = grid.time(k);
        const Complex2x2 m0 = m_of_t(t);
        const Complex2x2 mh = m_of_t(t + 0.5 * h);
        const Complex2x2 m1 = m_of_t(t + h);

        const CVec2 k1 = m0 * x + source;
        const CVec2 k2 = mh * (x + k1 * (0.5 * h)) + source;
        const CVec2 k3 = mh * (x + k2 * (0.5 * h)) + source;
        const CVec2 k4 = m1 * (x + k3 * h) + source;

        x = x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        out[k + 1] = x;
    }
    return out;
}

namespace {

struct QuadBudget {
    long evals = 0;
    long max_evals = 4'000'000;
    bool exhausted = false;
};

Complex simpson(Complex fa, Complex fm, Complex fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

Complex adaptive_step(const std::function<Complex(double)>& f, double a,
                      double b, double tol, int depth, Complex fa, Complex fm,
                      Complex fb, Complex whole, QuadBudget& budget) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const Complex flm = f(lm);
    const Complex frm = f(rm);
    budget.evals += 2;

    const Complex left = simpson(fa, flm, fm, m - a);
    const Complex right = simpson(fm, frm, fb, b - m);
    const Complex diff = left + right - whole;

    if (std::abs(diff) <= 15.0 * tol || depth <= 0 ||
        budget.evals > budget.max_evals) {
        if (std::abs(diff) > 15.0 * tol) budget.exhausted = true;
        return left + right + diff / 15.0;  // Richardson correction
    }
    return adaptive_step(f, a, m, 0.5 * tol, depth - 1, fa, flm, fm, left, budget) +
           adaptive_step(f, m, b, 0.5 * tol, depth - 1, fm, frm, fb, right, budget);
}

}  // namespace

Complex quad1d(const std::function<Complex(double)>& f, double a, double b,
               double tol) {
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
        throw std::invalid_argument("quad1d: require finite a < b");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("quad1d: require tol > 0");
    }

    QuadBudget budget;
    const double m = 0.5 * (a + b);
    const Complex fa = f(a);
    const Complex fm = f(m);
    const Complex fb = f(b);
    budget.evals = 3;
    const Complex whole = simpson(fa, fm, fb, b - a);
    const Complex result =
        adaptive_step(f, a, b, tol, 60, fa, fm, fb, whole, budget);

    if (budget.exhausted) {
        throw AccuracyError("quad1d: refinement budget exhausted", result);
    }
    return result;
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("central_diff: require h > 0");
    }
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace rydxpm
