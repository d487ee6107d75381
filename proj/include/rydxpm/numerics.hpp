// Shared numerical kernels: closed-form 2x2 complex matrix exponential, a
// driven two-state ODE integrator, adaptive quadrature and central
// differences. No physics knowledge lives here.
#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace rydxpm {

using Complex = std::complex<double>;

/// Dense complex 2x2 matrix, row major.
struct Complex2x2 {
    Complex m00{}, m01{}, m10{}, m11{};

    static Complex2x2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Complex2x2 zero() { return {}; }

    Complex trace() const { return m00 + m11; }
    Complex det() const { return m00 * m11 - m01 * m10; }
    bool finite() const;

    Complex2x2 operator+(const Complex2x2& o) const;
    Complex2x2 operator-(const Complex2x2& o) const;
    Complex2x2 operator*(const Complex2x2& o) const;
    Complex2x2 operator*(Complex s) const;
};

/// Complex 2-vector used as the ODE state.
struct CVec2 {
    Complex x0{}, x1{};

    CVec2 operator+(const CVec2& o) const { return {x0 + o.x0, x1 + o.x1}; }
    CVec2 operator-(const CVec2& o) const { return {x0 - o.x0, x1 - o.x1}; }
    CVec2 operator*(Complex s) const { return {x0 * s, x1 * s}; }
    CVec2 operator*(double s) const { return {x0 * s, x1 * s}; }
};

CVec2 operator*(const Complex2x2& m, const CVec2& v);

/// Uniform time grid with n_steps intervals (n_steps + 1 samples).
struct TimeGrid {
    TimeGrid(double t0, double t1, int n_steps);

    double t0;
    double t1;
    int n_steps;

    double dt() const { return (t1 - t0) / n_steps; }
    double time(int k) const { return t0 + k * dt(); }
    int n_samples() const { return n_steps + 1; }
};

/// exp(m * dt) via the eigen-decomposed closed form. Switches to a scaled
/// Taylor series when the eigenvalue gap |l1 - l2| * dt drops below 1e-6,
/// where the divided-difference form loses digits.
/// Relative accuracy <= 1e-12; throws std::invalid_argument on non-finite
/// input.
Complex2x2 expm2(const Complex2x2& m, double dt);

/// Integrates x' = M(t) x + s with x(t0) = 0 on the grid; classical
/// fourth-order one-step scheme with midpoint sampling of M. Returns x at
/// every grid sample (including t0).
std::vector<CVec2> solve_driven_ode(const std::function<Complex2x2(double)>& m_of_t,
                                    const CVec2& source, const TimeGrid& grid);

/// Adaptive Simpson quadrature of a complex-valued integrand on [a, b] with
/// absolute error target tol. Throws AccuracyError (carrying the best
/// estimate) if the refinement budget is exhausted.
Complex quad1d(const std::function<Complex(double)>& f, double a, double b,
               double tol);

/// Symmetric difference quotient (f(x+h) - f(x-h)) / (2h).
double central_diff(const std::function<double(double)>& f, double x, double h);

}  // namespace rydxpm
