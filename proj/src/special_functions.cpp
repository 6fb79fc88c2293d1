#include "wavespec/special_functions.hpp"

#include "wavespec/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace wavespec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kAgmTol = 1e-15;
constexpr int kAgmMaxIter = 40;
// Allow beta to exceed pi/2 by a few ulps (callers pass std::asin(1), M_PI/2, ...).
constexpr double kBetaSlack = 1e-14;

void require_finite(double v, const char* what)
{
    if (!std::isfinite(v))
        throw DomainError(std::string(what) + ": non-finite argument");
}

double clamp_beta(double beta, const char* what)
{
    require_finite(beta, what);
    if (beta < 0.0 || beta > kHalfPi + kBetaSlack)
        throw DomainError(std::string(what) + ": amplitude must lie in [0, pi/2], got " +
                          std::to_string(beta));
    return std::min(beta, kHalfPi);
}

} // namespace

Modulus::Modulus(double k) : k_(k), kprime_(0.0)
{
    if (!(k > 0.0 && k < 1.0))
        throw DomainError("modulus must lie in the open interval (0,1), got " + std::to_string(k));
    kprime_ = std::sqrt((1.0 - k) * (1.0 + k));
}

double complete_K(double k)
{
    require_finite(k, "complete_K");
    if (k < 0.0)
        throw DomainError("complete_K: modulus must be non-negative");
    if (k >= 1.0)
        throw DomainError("complete_K: K(k) diverges for k >= 1");
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    for (int it = 0; it < kAgmMaxIter; ++it) {
        if (std::abs(a - b) < kAgmTol * a)
            return kHalfPi / a;
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    throw NumericError("complete_K: AGM failed to converge");
}

double complete_E(double k)
{
    require_finite(k, "complete_E");
    if (k < 0.0 || k > 1.0)
        throw DomainError("complete_E: modulus must lie in [0,1]");
    if (k == 1.0)
        return 1.0;
    // E = K (1 - sum_{n>=0} 2^{n-1} c_n^2),  c_0 = k, c_{n+1} = (a_n - b_n)/2.
    double a = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    double c = k;
    double weight = 0.5;
    double sum = weight * c * c;
    for (int it = 0; it < kAgmMaxIter; ++it) {
        if (std::abs(a - b) < kAgmTol * a)
            return kHalfPi / a * (1.0 - sum);
        c = 0.5 * (a - b);
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
        weight *= 2.0;
        sum += weight * c * c;
    }
    throw NumericError("complete_E: AGM failed to converge");
}

namespace detail {

// Carlson (1995), duplication with fifth-order truncation.
double carlson_rf(double x, double y, double z)
{
    constexpr double tol = 2.7e-3; // (eps/4)^(1/6) scaled for double
    double xn = x, yn = y, zn = z;
    double mu = (xn + yn + zn) / 3.0;
    for (int it = 0; it < 64; ++it) {
        mu = (xn + yn + zn) / 3.0;
        const double dx = 1.0 - xn / mu;
        const double dy = 1.0 - yn / mu;
        const double dz = 1.0 - zn / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < tol * 1e-1) {
            const double e2 = dx * dy - dz * dz;
            const double e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / std::sqrt(mu);
        }
        const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
        const double lambda = sx * (sy + sz) + sy * sz;
        xn = 0.25 * (xn + lambda);
        yn = 0.25 * (yn + lambda);
        zn = 0.25 * (zn + lambda);
    }
    throw NumericError("carlson_rf: duplication did not converge");
}

double carlson_rd(double x, double y, double z)
{
    constexpr double tol = 1.5e-4;
    double xn = x, yn = y, zn = z;
    double sum = 0.0;
    double fac = 1.0;
    for (int it = 0; it < 64; ++it) {
        const double mu = (xn + yn + 3.0 * zn) / 5.0;
        const double dx = 1.0 - xn / mu;
        const double dy = 1.0 - yn / mu;
        const double dz = 1.0 - zn / mu;
        if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) < tol * 1e-1) {
            const double ea = dx * dy;
            const double eb = dz * dz;
            const double ec = ea - eb;
            const double ed = ea - 6.0 * eb;
            const double ee = ed + ec + ec;
            const double series = 1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 9.0 / 52.0 * dz * ee) +
                                  dz * (ee / 6.0 + dz * (-9.0 / 22.0 * ec + dz * 3.0 / 26.0 * ea));
            return 3.0 * sum + fac * series / (mu * std::sqrt(mu));
        }
        const double sx = std::sqrt(xn), sy = std::sqrt(yn), sz = std::sqrt(zn);
        const double lambda = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zn + lambda));
        fac *= 0.25;
        xn = 0.25 * (xn + lambda);
        yn = 0.25 * (yn + lambda);
        zn = 0.25 * (zn + lambda);
    }
    throw NumericError("carlson_rd: duplication did not converge");
}

} // namespace detail

double incomplete_F(double beta, double k)
{
    beta = clamp_beta(beta, "incomplete_F");
    require_finite(k, "incomplete_F");
    if (k < 0.0 || k >= 1.0)
        throw DomainError("incomplete_F: modulus must lie in [0,1)");
    if (beta == 0.0)
        return 0.0;
    if (k == 0.0)
        return beta;
    if (beta == kHalfPi)
        return complete_K(k);
    const double s = std::sin(beta);
    const double c = std::cos(beta);
    const double ks = k * s;
    return s * detail::carlson_rf(c * c, (1.0 - ks) * (1.0 + ks), 1.0);
}

double incomplete_E(double beta, double k)
{
    beta = clamp_beta(beta, "incomplete_E");
    require_finite(k, "incomplete_E");
    if (k < 0.0 || k > 1.0)
        throw DomainError("incomplete_E: modulus must lie in [0,1]");
    if (beta == 0.0)
        return 0.0;
    if (k == 0.0)
        return beta;
    if (beta == kHalfPi)
        return complete_E(k);
    const double s = std::sin(beta);
    const double c = std::cos(beta);
    const double ks = k * s;
    const double x = c * c;
    const double y = (1.0 - ks) * (1.0 + ks);
    return s * detail::carlson_rf(x, y, 1.0) -
           (k * k / 3.0) * s * s * s * detail::carlson_rd(x, y, 1.0);
}

EllipticTriple jacobi(double u, double k)
{
    require_finite(u, "jacobi");
    require_finite(k, "jacobi");
    if (k < 0.0 || k >= 1.0)
        throw DomainError("jacobi: modulus must lie in [0,1)");
    if (k == 0.0)
        return {std::sin(u), std::cos(u), 1.0};

    const double quarter = complete_K(k);
    const double period = 4.0 * quarter;
    u -= period * std::round(u / period);

    std::array<double, kAgmMaxIter + 1> a{};
    std::array<double, kAgmMaxIter + 1> c{};
    a[0] = 1.0;
    double b = std::sqrt((1.0 - k) * (1.0 + k));
    c[0] = k;
    int n = 0;
    while (std::abs(a[n] - b) >= kAgmTol * a[n]) {
        if (n == kAgmMaxIter)
            throw NumericError("jacobi: AGM failed to converge");
        a[n + 1] = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = std::sqrt(a[n] * b);
        ++n;
    }
    double amp = std::ldexp(a[n] * u, n);
    for (int j = n; j > 0; --j)
        amp = 0.5 * (amp + std::asin(c[j] / a[j] * std::sin(amp)));
    const double sn = std::sin(amp);
    const double cn = std::cos(amp);
    // dn^2 = k'^2 + k^2 cn^2 has no cancellation, unlike 1 - k^2 sn^2 or the
    // Landen ratio cos(phi_0)/cos(phi_1 - phi_0), which is 0/0 at u = K.
    const double dn = std::sqrt((1.0 - k) * (1.0 + k) + k * k * cn * cn);
    return {sn, cn, dn};
}

double heuman_lambda(double beta, double k)
{
    beta = clamp_beta(beta, "heuman_lambda");
    require_finite(k, "heuman_lambda");
    if (!(k > 0.0 && k < 1.0))
        throw DomainError("heuman_lambda: modulus must lie in (0,1)");
    const double kp = std::sqrt((1.0 - k) * (1.0 + k));
    const double big_k = complete_K(k);
    const double big_e = complete_E(k);
    const double f = incomplete_F(beta, kp);
    const double e = incomplete_E(beta, kp);
    return 2.0 / kPi * (big_e * f + big_k * e - big_k * f);
}

} // namespace wavespec
