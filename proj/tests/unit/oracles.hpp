#pragma once

// Independent reference computations for the tests. Nothing here calls into the
// library's solvers: currents come from direct complex division, roots from plain
// bisection and boundary angles from exhaustive scans.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

inline cplx polar_deg(double mag, double deg) { return std::polar(mag, deg * pi / 180.0); }

/// Reference test system impedances, entered independently of the library.
struct Reference
{
    cplx e{1.0, 0.0};
    double v_g = 1.0;
    cplx z_g = polar_deg(0.6, 84.29);
    cplx z_l = polar_deg(0.3, 84.29);
    cplx z_tr = polar_deg(0.16, 88.57);
    double i_max = 1.2;
    double i_th = 1.0;

    cplx z_sum() const { return z_g + z_l + z_tr; }
    double alpha() const { return std::tan(std::arg(z_sum())); }
    cplx grid(double delta) const { return std::polar(v_g, -delta); }
    cplx current(double delta) const { return (e - grid(delta)) / z_sum(); }
};

/// Plain bisection for f(lo) and f(hi) of opposite sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200)
{
    double f_lo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// First delta on a uniform grid over [0, pi] where |I(delta)| reaches `level`, refined
/// by linear interpolation between the bracketing grid points.
inline double scan_crossing(const Reference& ref, double level, int n)
{
    double prev_d = 0.0;
    double prev_m = std::abs(ref.current(0.0));
    for (int k = 1; k <= n; ++k) {
        const double d = pi * k / n;
        const double m = std::abs(ref.current(d));
        if (prev_m < level && m >= level) {
            return prev_d + (level - prev_m) * (d - prev_d) / (m - prev_m);
        }
        prev_d = d;
        prev_m = m;
    }
    return std::nan("");
}

/// |I| under a variable VI of gain k: root of m |Z + k (m - I_th)(1 + j alpha)| = |dE| by bisection.
inline double variable_vi_magnitude(cplx d_e, cplx z, double k, double alpha, double i_th)
{
    const double unlimited = std::abs(d_e / z);
    if (unlimited <= i_th) {
        return unlimited;
    }
    auto r = [&](double m) { return m * std::abs(z + k * (m - i_th) * cplx(1.0, alpha)) - std::abs(d_e); };
    return bisect(r, i_th, unlimited);
}

struct Line
{
    cplx point;
    cplx direction; ///< unit
};

/// Total-least-squares line through the points.
inline Line fit_line(const std::vector<cplx>& pts)
{
    cplx c{0.0, 0.0};
    for (const auto& p : pts) {
        c += p;
    }
    c /= static_cast<double>(pts.size());
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        const cplx d = p - c;
        sxx += d.real() * d.real();
        syy += d.imag() * d.imag();
        sxy += d.real() * d.imag();
    }
    const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
    return {c, std::polar(1.0, theta)};
}

inline double line_distance(const Line& line, cplx p)
{
    const cplx d = (p - line.point) / line.direction;
    return std::abs(d.imag());
}

struct Circle
{
    cplx center;
    double radius = 0.0;
};

/// Algebraic (Kasa) circle fit: minimizes sum (x^2 + y^2 + a x + b y + c)^2.
inline Circle fit_circle(const std::vector<cplx>& pts)
{
    double m[3][4] = {};
    for (const auto& p : pts) {
        const double row[3] = {p.real(), p.imag(), 1.0};
        const double rhs = -(p.real() * p.real() + p.imag() * p.imag());
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                m[i][j] += row[i] * row[j];
            }
            m[i][3] += row[i] * rhs;
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) {
                pivot = r;
            }
        }
        for (int j = 0; j < 4; ++j) {
            std::swap(m[col][j], m[pivot][j]);
        }
        for (int r = 0; r < 3; ++r) {
            if (r != col) {
                const double f = m[r][col] / m[col][col];
                for (int j = col; j < 4; ++j) {
                    m[r][j] -= f * m[col][j];
                }
            }
        }
    }
    const double a = m[0][3] / m[0][0];
    const double b = m[1][3] / m[1][1];
    const double c = m[2][3] / m[2][2];
    const cplx center{-a / 2.0, -b / 2.0};
    return {center, std::sqrt(std::norm(center) - c)};
}

inline double circle_distance(const Circle& circle, cplx p) { return std::abs(std::abs(p - circle.center) - circle.radius); }

} // namespace oracle
