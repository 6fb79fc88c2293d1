#include "wavespec/wave_profiles.hpp"

#include "wavespec/errors.hpp"

#include <cmath>
#include <sstream>

namespace wavespec {

namespace {

double root_quartic(double k)
{
    const double k2 = k * k;
    return std::sqrt(k2 * k2 - k2 + 1.0);
}

// dK/dk = (E - k'^2 K) / (k k'^2)
double dK_dk(double k, double big_k, double big_e)
{
    const double kp2 = (1.0 - k) * (1.0 + k);
    return (big_e - kp2 * big_k) / (k * kp2);
}

void check_period(double L)
{
    if (!(L > 0.0) || !std::isfinite(L))
        throw DomainError("period L must be positive and finite");
}

void check_finite(double v, const char* name)
{
    if (!std::isfinite(v))
        throw NumericError(std::string("non-finite profile parameter ") + name);
}

} // namespace

std::string_view family_name(WaveFamily f)
{
    switch (f) {
    case WaveFamily::CkdvDnoidal:
        return "ckdv-dnoidal";
    case WaveFamily::CkdvCnoidal:
        return "ckdv-cnoidal";
    case WaveFamily::GardnerCnoidal:
        return "gardner";
    }
    return "unknown";
}

std::optional<WaveFamily> parse_family(std::string_view name)
{
    for (auto f : {WaveFamily::CkdvDnoidal, WaveFamily::CkdvCnoidal, WaveFamily::GardnerCnoidal})
        if (family_name(f) == name)
            return f;
    return std::nullopt;
}

double nonlinearity(WaveFamily f, double s)
{
    if (f == WaveFamily::GardnerCnoidal)
        return s * s + s * s * s;
    const double s2 = s * s;
    return s2 * s2 * s;
}

double nonlinearity_prime(WaveFamily f, double s)
{
    if (f == WaveFamily::GardnerCnoidal)
        return 2.0 * s + 3.0 * s * s;
    const double s2 = s * s;
    return 5.0 * s2 * s2;
}

int expected_negative_count(WaveFamily f)
{
    return f == WaveFamily::CkdvDnoidal ? 1 : 2;
}

double WaveProfile::wavenumber() const noexcept
{
    return (family == WaveFamily::CkdvDnoidal ? 2.0 : 4.0) * K / L;
}

double omega_of_k(WaveFamily family, double L, double k)
{
    check_period(L);
    const double big_k = complete_K(k);
    const double L2 = L * L;
    switch (family) {
    case WaveFamily::CkdvDnoidal:
        return 4.0 * big_k * big_k * root_quartic(k) / L2;
    case WaveFamily::CkdvCnoidal:
        return 16.0 * big_k * big_k * root_quartic(k) / L2;
    case WaveFamily::GardnerCnoidal:
        return -1.0 / 3.0 - 16.0 * big_k * big_k * (1.0 - 2.0 * k * k) / L2;
    }
    return 0.0;
}

double A_of_k(WaveFamily family, double L, double k)
{
    check_period(L);
    if (family != WaveFamily::GardnerCnoidal)
        return 0.0;
    const double big_k = complete_K(k);
    return 1.0 / 27.0 + 144.0 * big_k * big_k * (1.0 - 2.0 * k * k) / (27.0 * L * L);
}

double dA_dk(WaveFamily family, double L, double k)
{
    check_period(L);
    if (family != WaveFamily::GardnerCnoidal)
        return 0.0;
    const double big_k = complete_K(k);
    const double big_e = complete_E(k);
    const double kk = dK_dk(k, big_k, big_e);
    return 144.0 / (27.0 * L * L) * (2.0 * big_k * kk * (1.0 - 2.0 * k * k) - 4.0 * k * big_k * big_k);
}

WaveProfile make_profile(WaveFamily family, double L, double k)
{
    check_period(L);
    const Modulus mod(k);
    const double big_k = complete_K(k);
    const double big_e = complete_E(k);
    const double k2 = k * k;
    const double r = root_quartic(k);

    WaveProfile p{family, L, mod, 0.0, 0.0, 0.0, 0.0, big_k, big_e};
    switch (family) {
    case WaveFamily::CkdvDnoidal:
        p.a = std::pow(4.0 * (2.0 * k2 - 1.0 + 2.0 * r) * big_k * big_k * L * L, 0.25) / L;
        p.b = 1.0 - k2 - r;
        break;
    case WaveFamily::CkdvCnoidal:
        p.a = 2.0 * std::pow((2.0 - k2 + 2.0 * r) * big_k * big_k * L * L, 0.25) / L;
        p.b = -1.0 + k2 - r;
        break;
    case WaveFamily::GardnerCnoidal:
        p.b = 4.0 * std::sqrt(2.0) * k * big_k / L;
        break;
    }
    p.omega = omega_of_k(family, L, k);
    p.A = A_of_k(family, L, k);
    check_finite(p.a, "a");
    check_finite(p.b, "b");
    check_finite(p.omega, "omega");
    check_finite(p.A, "A");
    return p;
}

PhiValues eval_phi(const WaveProfile& p, double x)
{
    const double kappa = p.wavenumber();
    const double k = p.k();
    const EllipticTriple t = jacobi(kappa * x, k);
    double phi = 0.0;
    double dphi = 0.0;
    if (p.family == WaveFamily::GardnerCnoidal) {
        phi = -1.0 / 3.0 + p.b * t.cn;
        dphi = -p.b * kappa * t.sn * t.dn;
    } else {
        const double denom = 1.0 - p.b * t.sn * t.sn;
        const double root = std::sqrt(denom);
        double f = 0.0;
        double fprime = 0.0;
        if (p.family == WaveFamily::CkdvDnoidal) {
            f = t.dn;
            fprime = -k * k * t.sn * t.cn;
        } else {
            f = t.cn;
            fprime = -t.sn * t.dn;
        }
        phi = p.a * f / root;
        dphi = p.a * kappa * (fprime * denom + p.b * f * t.sn * t.cn * t.dn) / (denom * root);
    }
    const double d2phi = p.omega * phi - nonlinearity(p.family, phi) - p.A;
    return {phi, dphi, d2phi};
}

double hill_potential(const WaveProfile& p, double x)
{
    return p.omega - nonlinearity_prime(p.family, eval_phi(p, x).phi);
}

OmegaRange admissible_omega(WaveFamily family, double L)
{
    return {omega_of_k(family, L, kMinModulus), omega_of_k(family, L, kMaxModulus)};
}

Modulus omega_to_k(WaveFamily family, double L, double omega)
{
    const OmegaRange range = admissible_omega(family, L);
    if (!(omega > range.lo && omega < range.hi)) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "wave speed " << omega << " outside admissible interval (" << range.lo << ", "
            << range.hi << ") for family " << family_name(family) << " at L=" << L;
        throw RangeError(msg.str(), range.lo, range.hi);
    }
    // omega is strictly increasing in k on every family.
    double lo = kMinModulus;
    double hi = kMaxModulus;
    while (hi - lo >= 1e-13) {
        const double mid = 0.5 * (lo + hi);
        if (omega_of_k(family, L, mid) < omega)
            lo = mid;
        else
            hi = mid;
    }
    return Modulus(0.5 * (lo + hi));
}

double domega_dk(WaveFamily family, double L, double k)
{
    check_period(L);
    const Modulus mod(k);
    const double big_k = complete_K(k);
    const double big_e = complete_E(k);
    const double k2 = k * k;
    const double kp2 = mod.kprime() * mod.kprime();
    const double L2 = L * L;
    if (family == WaveFamily::GardnerCnoidal)
        return -32.0 * big_k * ((1.0 - 2.0 * k2) * big_e - kp2 * big_k) / (k * kp2 * L2);
    const double cnoidal = -16.0 * big_k *
                           (big_k * (k2 * k2 - 3.0 * k2 + 2.0) - 2.0 * big_e * (k2 * k2 - k2 + 1.0)) /
                           (L2 * k * kp2 * root_quartic(k));
    // The dnoidal speed is exactly a quarter of the cnoidal one at equal (L, k).
    return family == WaveFamily::CkdvDnoidal ? 0.25 * cnoidal : cnoidal;
}

} // namespace wavespec
