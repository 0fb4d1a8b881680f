#include "rankfd/distributions.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rankfd/errors.hpp"

namespace rankfd::num {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

double gamma_series(double a, double x) {
    // P(a,x) by its power series, for x < a + 1
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_cf(double a, double x) {
    // Q(a,x) by Lentz's continued fraction, for x >= a + 1
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double beta_cf(double x, double a, double b) {
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

/// Generic quantile by bracketed bisection on a monotone CDF.
template <typename Cdf>
double invert_cdf(Cdf cdf, double p, double lo, double hi) {
    // expand the bracket until it contains p
    double fhi = cdf(hi);
    for (int i = 0; i < 200 && fhi < p; ++i) {
        lo = hi;
        hi *= 2.0;
        fhi = cdf(hi);
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double regularized_gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0)
        throw domain_error("regularized_gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_series(a, x);
    return 1.0 - gamma_cf(a, x);
}

double regularized_beta(double x, double a, double b) {
    if (a <= 0.0 || b <= 0.0)
        throw domain_error("regularized_beta: need a, b > 0");
    if (x < 0.0 || x > 1.0)
        throw domain_error("regularized_beta: x outside [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front =
        std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                 a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(x, a, b) / a;
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw domain_error("normal_quantile: p outside (0, 1)");
    // Wichura (1988), algorithm AS241 PPND16
    const double q = p - 0.5;
    double r, num, den;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        num = ((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                   6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
               1.3314166789178437745e2) * r + 3.3871328727963666080e0;
        den = ((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                   3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
               4.2313330701600911252e1) * r + 1.0;
        return q * num / den;
    }
    r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        num = ((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                   2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
               4.63033784615654529590e0) * r + 1.42343711074968357734e0;
        den = ((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                   1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
               2.05319162663775882187e0) * r + 1.0;
        x = num / den;
    } else {
        r -= 5.0;
        num = ((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                   1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
               5.46378491116411436990e0) * r + 6.65790464350110377720e0;
        den = ((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                   1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
               5.99832206555887937690e-1) * r + 1.0;
        x = num / den;
    }
    return q < 0.0 ? -x : x;
}

double chi_square_cdf(double x, double df) {
    if (df <= 0.0) throw domain_error("chi_square_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double p, double df) {
    if (df <= 0.0) throw domain_error("chi_square_quantile: df must be positive");
    if (!(p >= 0.0 && p < 1.0))
        throw domain_error("chi_square_quantile: p outside [0, 1)");
    if (p == 0.0) return 0.0;
    return invert_cdf([df](double x) { return chi_square_cdf(x, df); }, p, 0.0,
                      std::max(df, 1.0) * 4.0);
}

double f_cdf(double x, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0) throw domain_error("f_cdf: df must be positive");
    if (x <= 0.0) return 0.0;
    return regularized_beta(df1 * x / (df1 * x + df2), 0.5 * df1, 0.5 * df2);
}

double f_quantile(double p, double df1, double df2) {
    if (df1 <= 0.0 || df2 <= 0.0)
        throw domain_error("f_quantile: df must be positive");
    if (!(p >= 0.0 && p < 1.0)) throw domain_error("f_quantile: p outside [0, 1)");
    if (p == 0.0) return 0.0;
    return invert_cdf([df1, df2](double x) { return f_cdf(x, df1, df2); }, p, 0.0,
                      16.0);
}

} // namespace rankfd::num
