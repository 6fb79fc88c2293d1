#ifndef WAVESPEC_SPECIAL_FUNCTIONS_HPP
#define WAVESPEC_SPECIAL_FUNCTIONS_HPP

// Complete and incomplete elliptic integrals, Jacobi elliptic functions and
// the Heuman Lambda function.  Everything is parameterised by the modulus k
// (not the parameter m = k^2).  All functions are pure.

namespace wavespec {

/// Elliptic modulus restricted to the open interval (0,1).
class Modulus {
public:
    /// Throws DomainError unless 0 < k < 1.
    explicit Modulus(double k);

    double k() const noexcept { return k_; }
    /// Complementary modulus sqrt(1 - k^2), computed as sqrt((1-k)(1+k)).
    double kprime() const noexcept { return kprime_; }
    double parameter() const noexcept { return k_ * k_; }

private:
    double k_;
    double kprime_;
};

struct EllipticTriple {
    double sn;
    double cn;
    double dn;
};

/// K(k) by the arithmetic-geometric mean.  Accepts 0 <= k < 1.
double complete_K(double k);

/// E(k) by the AGM series.  Accepts 0 <= k <= 1.
double complete_E(double k);

/// F(beta, k) = int_0^beta dt / sqrt(1 - k^2 sin^2 t), 0 <= beta <= pi/2, 0 <= k < 1.
double incomplete_F(double beta, double k);

/// E(beta, k) = int_0^beta sqrt(1 - k^2 sin^2 t) dt, 0 <= beta <= pi/2, 0 <= k <= 1.
double incomplete_E(double beta, double k);

/// sn, cn, dn by descending Landen transformation.  u is reduced modulo 4K
/// before the recursion, so large arguments keep their accuracy.
EllipticTriple jacobi(double u, double k);

/// Heuman's Lambda function Lambda_0(beta, k), 0 <= beta <= pi/2, 0 < k < 1.
double heuman_lambda(double beta, double k);

namespace detail {
// Carlson symmetric integrals, exposed for testing.
double carlson_rf(double x, double y, double z);
double carlson_rd(double x, double y, double z);
} // namespace detail

} // namespace wavespec

#endif
