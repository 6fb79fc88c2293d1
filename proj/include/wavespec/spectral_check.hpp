#ifndef WAVESPEC_SPECTRAL_CHECK_HPP
#define WAVESPEC_SPECTRAL_CHECK_HPP

#include "wavespec/wave_profiles.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace wavespec {

/// Dense symmetric matrix, row-major.
struct SymmetricMatrix {
    std::size_t n = 0;
    std::vector<double> a;

    explicit SymmetricMatrix(std::size_t size = 0) : n(size), a(size * size, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenSystem {
    std::vector<double> values;  ///< ascending
    SymmetricMatrix vectors;     ///< column j pairs with values[j]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm is below 1e-12 ||M||_F.
/// Throws ContractError on a non-symmetric input.
EigenSystem eigen_symmetric(const SymmetricMatrix& m, bool want_vectors = true);

/// Galerkin matrix of -d^2/dx^2 + c0 - V(x) in the basis exp(2 pi i m x / L),
/// |m| <= N, for an even L-periodic V.  Row/column index m + N.
struct FourierHillMatrix {
    double L = 0.0;
    std::size_t N = 0;
    SymmetricMatrix M;
    std::vector<double> coefficients; ///< cosine coefficients of V, indices 0..2N
};

/// Fourier coefficients of V by a cosine DFT on 8N samples; ResolutionError
/// (with a suggested N) when |V_j| for N <= j <= 2N has not fallen below 1e-12.
FourierHillMatrix assemble_hill(const std::function<double(double)>& V, double c0, double L, std::size_t N);

/// The linearised operator around a profile: c0 = omega, V = g'(phi).
FourierHillMatrix assemble(const WaveProfile& p, std::size_t N);

struct InertialIndex {
    int n_neg = 0;
    int n_zero = 0;
    double z_tol = 0.0;
    std::vector<double> eigensample; ///< five smallest eigenvalues
};

/// Counts with z_tol = 1e-6 * scale; spectral_check uses scale = max|q|.
InertialIndex inertial_index(const std::vector<double>& eigs, double scale);

/// Checks n_neg against the theta-sign prediction (theta < 0 -> 1, theta > 0 -> 2)
/// and n_zero == 1; throws ConsistencyError otherwise.
void check_theta_correspondence(const InertialIndex& idx, double theta);

/// The potential is even, so M splits into a cosine block (modes 0..N) and a
/// sine block (modes 1..N) in the real bases sqrt(2) cos, sqrt(2) sin.
struct ParityBlocks {
    SymmetricMatrix even;
    SymmetricMatrix odd;
};

ParityBlocks parity_blocks(const FourierHillMatrix& m);

struct SpectralResult {
    FourierHillMatrix matrix;
    EigenSystem even;            ///< cosine block
    EigenSystem odd;             ///< sine block; phi' lives here
    std::vector<double> eigenvalues; ///< union of both blocks, ascending
    InertialIndex index;
    double kernel_correlation = 0.0;
    /// <L^-1 1, 1> = L (M^+)_{00}, the pseudo-inverse skipping the kernel.
    double lone_one = 0.0;
};

/// Assembles with N modes, doubling N on ResolutionError up to max_modes.
SpectralResult spectral_check(const WaveProfile& p, std::size_t N = 64, std::size_t max_modes = 256);

} // namespace wavespec

#endif
