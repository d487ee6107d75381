// Independent oracles used by the tests. These deliberately avoid the
// library's own code paths: a long Taylor series for the matrix exponential,
// a time-ordered product evaluator for the driven solution, brute-force
// trapezoid quadrature, and hand-differentiated closed forms for the steady
// susceptibility slope.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "rydxpm/atomic_response.hpp"
#include "rydxpm/numerics.hpp"

namespace oracles {

using rydxpm::Complex;
using rydxpm::Complex2x2;
using rydxpm::CVec2;

// 200-term Taylor series with scaling and squaring.
inline Complex2x2 taylor_expm(const Complex2x2& m, double dt) {
    Complex2x2 a = m * Complex(dt, 0.0);
    const double norm =
        std::max(std::abs(a.m00) + std::abs(a.m01), std::abs(a.m10) + std::abs(a.m11));
    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    a = a * Complex(std::ldexp(1.0, -squarings), 0.0);

    Complex2x2 sum = Complex2x2::identity();
    Complex2x2 term = Complex2x2::identity();
    for (int k = 1; k <= 200; ++k) {
        term = term * a * Complex(1.0 / k, 0.0);
        sum = sum + term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

// Direct evaluation of the time-ordered double-integral solution
//   x(T) = Int_0^T dtau U(T, tau) s,  U built from midpoint-sampled
// short-step exponentials on a fine grid. O(h^2) accurate.
inline CVec2 time_ordered_solution(const std::function<Complex2x2(double)>& m_of_t,
                                   const CVec2& source, double t_end, int n_fine) {
    const double h = t_end / n_fine;
    // Suffix products S_j = P_{n-1} ... P_j = U(T, t_j).
    std::vector<Complex2x2> suffix(n_fine + 1);
    suffix[n_fine] = Complex2x2::identity();
    for (int j = n_fine - 1; j >= 0; --j) {
        const Complex2x2 p = taylor_expm(m_of_t((j + 0.5) * h), h);
        suffix[j] = suffix[j + 1] * p;
    }
    // Midpoint panels: Int over [t_j, t_j+1] U(T,tau) s dtau
    //   ~ U(T, t_{j+1}) * exp(M(mid) h/2) * s * h.
    CVec2 x{};
    for (int j = 0; j < n_fine; ++j) {
        const Complex2x2 half = taylor_expm(m_of_t((j + 0.5) * h), 0.5 * h);
        x = x + (suffix[j + 1] * (half * source)) * h;
    }
    return x;
}

// Plain composite trapezoid for real integrands.
inline double trapezoid(const std::function<double(double)>& f, double a, double b,
                        long n) {
    const double h = (b - a) / n;
    double sum = 0.5 * (f(a) + f(b));
    for (long i = 1; i < n; ++i) sum += f(a + i * h);
    return sum * h;
}

// Hand-differentiated slope of the steady susceptibility
//   chi = i A / Q,  Q = gamma/2 + i d1 + (Oc^2/4)/(grg/2 + i(d1+d2+dr)),
//   dchi/dd1 = -i A (dQ/dd1) / Q^2,  dQ/dd1 = i - i (Oc^2/4)/(grg/2+iD)^2.
inline Complex steady_chi_slope(const rydxpm::SystemParams& p, double delta_r) {
    const Complex i(0.0, 1.0);
    const Complex inner(0.5 * p.gamma_rg, p.delta1 + p.delta2 + delta_r);
    const double oc2 = 0.25 * p.omega_c * p.omega_c;
    const Complex q = Complex(0.5 * p.gamma, p.delta1) + oc2 / inner;
    const Complex dq = i - i * oc2 / (inner * inner);
    return -i * p.chi_amp * dq / (q * q);
}

// Group velocity implied by an analytic susceptibility slope:
// n_g = n + omega_p dn/domega_p with dn/domega_p = -0.5 Re(dchi/dDelta1).
inline double vg_from_slope(const rydxpm::SystemParams& p, Complex chi,
                            Complex dchi_dd1) {
    const double n = 1.0 + 0.5 * chi.real();
    const double ng = n - p.omega_p() * 0.5 * dchi_dd1.real();
    return rydxpm::units::c_light / ng;
}

}  // namespace oracles
