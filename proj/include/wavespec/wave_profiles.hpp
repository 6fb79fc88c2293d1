#ifndef WAVESPEC_WAVE_PROFILES_HPP
#define WAVESPEC_WAVE_PROFILES_HPP

#include "wavespec/special_functions.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace wavespec {

enum class WaveFamily {
    CkdvDnoidal,    ///< positive dnoidal wave of u_t + (u^5)_x + u_xxx = 0
    CkdvCnoidal,    ///< zero-mean cnoidal wave of the same equation
    GardnerCnoidal, ///< cnoidal wave of u_t + (u^2)_x + (u^3)_x + u_xxx = 0
};

std::string_view family_name(WaveFamily f);
std::optional<WaveFamily> parse_family(std::string_view name);

/// g(s) in -phi'' + omega phi - g(phi) - A = 0.
double nonlinearity(WaveFamily f, double s);
/// g'(s).
double nonlinearity_prime(WaveFamily f, double s);

/// Number of negative eigenvalues of the linearised operator on the family.
int expected_negative_count(WaveFamily f);

/// Admissible modulus range used for inversion and sweeps.
inline constexpr double kMinModulus = 1e-6;
inline constexpr double kMaxModulus = 1.0 - 1e-6;

/// A periodic travelling wave of period L on one of the explicit curves.
struct WaveProfile {
    WaveFamily family;
    double L;
    Modulus modulus;
    double a;     ///< amplitude factor (zero for the Gardner family)
    double b;     ///< shape parameter, or the cn amplitude for Gardner
    double omega; ///< wave speed
    double A;     ///< integration constant
    double K;     ///< K(k), cached
    double E;     ///< E(k), cached

    double k() const noexcept { return modulus.k(); }
    /// Scale factor between x and the elliptic argument.
    double wavenumber() const noexcept;
};

WaveProfile make_profile(WaveFamily family, double L, double k);

struct PhiValues {
    double phi;
    double dphi;
    double d2phi;
};

/// phi and phi' in closed form; phi'' from the profile ODE.
PhiValues eval_phi(const WaveProfile& p, double x);

/// The Hill potential omega - g'(phi(x)).
double hill_potential(const WaveProfile& p, double x);

/// omega(k) on the explicit curve of a family.
double omega_of_k(WaveFamily family, double L, double k);

/// A(k) on the explicit curve (identically zero for the critical KdV families).
double A_of_k(WaveFamily family, double L, double k);

/// dA/dk; zero for the critical KdV families.
double dA_dk(WaveFamily family, double L, double k);

struct OmegaRange {
    double lo;
    double hi;
};

/// Speeds reachable with k in [kMinModulus, kMaxModulus].
OmegaRange admissible_omega(WaveFamily family, double L);

/// Inverts omega(k) by bisection; throws RangeError outside admissible_omega.
Modulus omega_to_k(WaveFamily family, double L, double omega);

double domega_dk(WaveFamily family, double L, double k);

} // namespace wavespec

#endif
