#ifndef WAVESPEC_HILL_SOLVER_HPP
#define WAVESPEC_HILL_SOLVER_HPP

#include "wavespec/wave_profiles.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace wavespec {

using Coefficient = std::function<double(double)>;

/// Solution of a second-order linear IVP sampled on N+1 equispaced nodes of [0,L].
struct Trajectory {
    double L = 0.0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> yp;
    /// Richardson estimate of the nodal error (max over nodes of |y_h - y_{h/2}|/15).
    double error_estimate = 0.0;

    std::size_t intervals() const noexcept { return x.empty() ? 0 : x.size() - 1; }
};

/// Solves -y'' + q(x) y = r(x), y(0) = y0, y'(0) = yp0 on [0,L] with classical
/// RK4 at steps L/n and L/(2n); nodal values are the Richardson combination.
/// Throws NumericError (with the abscissa) if the state becomes non-finite.
Trajectory integrate_second_order(const Coefficient& q, const Coefficient& r, double y0, double yp0,
                                  double L, std::size_t n);

/// Coefficients sampled at the 4n+1 nodes j L/(4n); the fast path used by the
/// wave analysis, where q and r are expensive elliptic-function evaluations.
Trajectory integrate_second_order_sampled(std::span<const double> q, std::span<const double> r,
                                          double y0, double yp0, double L, std::size_t n);

/// Trapezoid rule on a closed uniform grid; spectrally accurate for smooth
/// periodic integrands.  Throws ContractError on a non-uniform grid.
double periodic_quadrature(std::span<const double> x, std::span<const double> values);

/// Composite Simpson rule on a closed uniform grid with an even number of intervals.
/// Used for integrands that are not periodic (anything involving ybar).
double simpson_quadrature(std::span<const double> x, std::span<const double> values);

/// Default number of RK intervals for a profile: max(2048, 64 * ceil(4 K(k))), even.
std::size_t default_grid_size(const WaveProfile& p);

/// How a Gardner wave is presented to the operator.  Galilean uses the mKdV
/// wave phi + 1/3 with speed omega + 1/3 and potential omega + 1/3 - 3 (phi + 1/3)^2.
enum class Presentation { Native, Galilean };

/// The Hill operator -d^2/dx^2 + omega - g'(phi) around a profile, with phi
/// and the potential tabulated on the fine grid the integrator needs.
class HillOperatorSpec {
public:
    /// Galilean is only meaningful for the Gardner family (ContractError otherwise).
    HillOperatorSpec(const WaveProfile& profile, std::size_t n,
                     Presentation presentation = Presentation::Native);

    const WaveProfile& profile() const noexcept { return profile_; }
    std::size_t intervals() const noexcept { return n_; }
    double L() const noexcept { return profile_.L; }
    Presentation presentation() const noexcept { return presentation_; }

    /// Samples on the 4n+1 fine nodes (phi + 1/3 in the Galilean presentation).
    std::span<const double> fine_phi() const noexcept { return phi_; }
    std::span<const double> fine_potential() const noexcept { return q_; }

    /// phi, phi', phi'' at the n+1 trajectory nodes.
    std::span<const double> node_phi() const noexcept { return node_phi_; }
    std::span<const double> node_dphi() const noexcept { return node_dphi_; }
    std::span<const double> node_d2phi() const noexcept { return node_d2phi_; }
    std::span<const double> nodes() const noexcept { return nodes_; }

    double d2phi_at_origin() const noexcept { return node_d2phi_.front(); }

private:
    WaveProfile profile_;
    std::size_t n_;
    Presentation presentation_;
    std::vector<double> phi_;
    std::vector<double> q_;
    std::vector<double> nodes_;
    std::vector<double> node_phi_;
    std::vector<double> node_dphi_;
    std::vector<double> node_d2phi_;
};

inline constexpr double kThetaMin = 1e-8;

struct YbarResult {
    Trajectory ybar;
    double theta;
};

/// Non-periodic even solution with ybar(0) = -1/phi''(0), ybar'(0) = 0, and
/// theta = ybar'(L)/phi''(0).  Throws DegenerateProfileError if |phi''(0)| < 1e-12
/// and KernelError if |theta| < kThetaMin.
YbarResult compute_ybar(const HillOperatorSpec& spec);

/// Periodic solution of L psi = -phi.
Trajectory compute_psi(const HillOperatorSpec& spec, const Trajectory& ybar);

/// Periodic solution of L eta = 1.
Trajectory compute_eta(const HillOperatorSpec& spec, const Trajectory& ybar);

/// Periodic solution of L y = f for an even forcing f given on the fine and
/// trajectory grids; y(0) = int f ybar / ybar'(L), y'(0) = 0.
Trajectory periodic_response(const HillOperatorSpec& spec, const Trajectory& ybar,
                             std::span<const double> fine_forcing, std::span<const double> node_forcing);

/// |y(L) - y(0)| / max|y| and |y'(L) - y'(0)| / max|y'|.
struct PeriodicityResidual {
    double value;
    double slope;
};

PeriodicityResidual periodicity_residual(const Trajectory& t);

/// max_i |y(L - x_i) - y(x_i)| / max|y|.
double parity_residual(const Trajectory& t);

/// max_i |phi'(x_i) ybar'(x_i) - phi''(x_i) ybar(x_i) - 1|.
double wronskian_drift(const HillOperatorSpec& spec, const Trajectory& ybar);

struct HillData {
    Trajectory ybar;
    double theta = 0.0;
    Trajectory psi;
    Trajectory eta;
    double wronskian_drift = 0.0;
    PeriodicityResidual psi_periodicity{};
    PeriodicityResidual eta_periodicity{};
};

/// Runs the three IVPs for a profile.  n = 0 selects default_grid_size(p).
HillData solve_hill(const WaveProfile& p, std::size_t n = 0);
HillData solve_hill(const HillOperatorSpec& spec);

struct HillSolution {
    HillOperatorSpec spec;
    HillData data;
};

inline constexpr double kRefinePeriodicity = 1e-8;
inline constexpr double kRefineWronskian = 1e-9;
inline constexpr std::size_t kMaxGrid = 65536;

/// Starts from default_grid_size(p) and doubles the grid while the psi/eta
/// periodicity residuals exceed kRefinePeriodicity or the Wronskian drift
/// exceeds kRefineWronskian, up to kMaxGrid.  Needed as k -> 1, where the
/// shooting constants suffer cancellation.  n > 0 fixes the grid instead.
HillSolution solve_hill_refined(const WaveProfile& p, std::size_t n = 0,
                                Presentation presentation = Presentation::Native);

} // namespace wavespec

#endif
