#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace testsupport {

/// Deterministic test-data source. Raw mt19937_64 bits are pinned by the
/// standard; the uniform/normal transforms below avoid the
/// implementation-defined std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }
    int uniform_int(int lo, int hi) {   // inclusive bounds
        return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double radius = std::sqrt(-2.0 * std::log(uniform01()));
        double angle = 2.0 * 3.141592653589793 * uniform01();
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Adaptive Simpson quadrature, independent of any library code under test.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double eps = 1e-9, int max_depth = 48) {
    std::function<double(double, double, double, double, double, double, int)> recurse =
        [&](double lo, double hi, double flo, double fhi, double fmid, double whole,
            int depth) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = f(lm), frm = f(rm);
        double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return recurse(lo, mid, flo, fmid, flm, left, depth - 1) +
               recurse(mid, hi, fmid, fhi, frm, right, depth - 1);
    };
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return recurse(a, b, fa, fb, fm, whole, max_depth);
}

/// Eigenvalues of a symmetric 3x3 matrix from the characteristic cubic
/// (trigonometric closed form), descending. No iteration involved.
inline std::vector<double> symmetric3_eigen_oracle(double a00, double a01, double a02, double a11,
                                                   double a12, double a22) {
    double p1 = a01 * a01 + a02 * a02 + a12 * a12;
    if (p1 == 0.0) {
        std::vector<double> d{a00, a11, a22};
        std::sort(d.begin(), d.end(), std::greater<>());
        return d;
    }
    double q = (a00 + a11 + a22) / 3.0;
    double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    // B = (A - qI) / p
    double b00 = (a00 - q) / p, b11 = (a11 - q) / p, b22 = (a22 - q) / p;
    double b01 = a01 / p, b02 = a02 / p, b12 = a12 / p;
    double detb = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                  b02 * (b01 * b12 - b11 * b02);
    double r = std::clamp(detb / 2.0, -1.0, 1.0);
    double phi = std::acos(r) / 3.0;
    double e1 = q + 2.0 * p * std::cos(phi);
    double e3 = q + 2.0 * p * std::cos(phi + 2.0 * 3.141592653589793 / 3.0);
    double e2 = 3.0 * q - e1 - e3;
    std::vector<double> out{e1, e2, e3};
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

} // namespace testsupport
