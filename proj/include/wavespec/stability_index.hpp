#ifndef WAVESPEC_STABILITY_INDEX_HPP
#define WAVESPEC_STABILITY_INDEX_HPP

#include "wavespec/hill_solver.hpp"
#include "wavespec/wave_profiles.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wavespec {

/// <L^-1 phi, phi>, <L^-1 phi, 1>, <L^-1 1, 1>.
struct InnerProducts {
    double lphi_phi = 0.0;
    double lphi_one = 0.0;
    double lone_one = 0.0;
};

/// -int psi phi, -int psi, int eta over one period.
InnerProducts inner_products(const HillData& hd, const HillOperatorSpec& spec);

inline constexpr double kIMinPerLength = 1e-10;
inline constexpr double kDetMin = 1e-12;

/// D = (1/I) [[lphi_phi, lphi_one], [lphi_one, I]].
struct DMatrix {
    std::array<std::array<double, 2>, 2> entries{};
    double det_raw = 0.0;         ///< determinant of the bracketed matrix
    double det_prefactored = 0.0; ///< det_raw / I^2
    double det_schur = 0.0;       ///< det_raw / I; the tabulated "det(D)"
    std::array<double, 2> eigenvalues{}; ///< of the prefactored matrix, ascending
};

/// Throws AtThreshold when |I| <= kIMinPerLength * L.
DMatrix build_D(const InnerProducts& ip, double L);

enum class Verdict { Stable, Unstable, Indeterminate };

std::string_view verdict_name(Verdict v);

struct IndexCount {
    int nL = 0;
    int nI = 0;
    int nD = 0;
    int nD_prefactored = 0; ///< eigenvalue count of (1/I) M, reported only
    int K_ham = 0;
    Verdict verdict = Verdict::Indeterminate;
    std::string note;
};

/// nI = [I < 0]; nD = [det_schur < 0]; K_Ham = nL - nI - nD.
/// Throws AtThreshold when |det_schur| <= kDetMin.
IndexCount krein_classify(const InnerProducts& ip, const DMatrix& D, int nL);

/// int_0^L phi^2 for the critical-KdV cnoidal wave via Heuman's Lambda.
double closed_form_norm_cnoidal(double L, double k);
/// d/dk of the above by a centred difference.
double closed_form_norm_cnoidal_dk(double L, double k);

/// int_0^L phi^2 = L/9 + 32 K [E - k'^2 K] / L for the Gardner wave.
double closed_form_norm_gardner(double L, double k);
double closed_form_norm_gardner_dk(double L, double k);

inline constexpr double kClosedFormMinModulus = 0.05;

/// -1/2 d/domega int phi^2 along the explicit curve.  Cnoidal and Gardner
/// only, k >= kClosedFormMinModulus; DomainError otherwise.
double detD_closed_form(WaveFamily family, double L, double k);

struct SpectralSummary {
    int n_neg = 0;
    int n_zero = 0;
    std::size_t modes = 0;
    double kernel_correlation = 0.0;
    std::array<double, 5> smallest{};
};

struct StabilityReport {
    WaveFamily family{};
    double L = 0.0;
    double k = 0.0;
    double omega = 0.0;
    double A = 0.0;
    double theta = 0.0;
    std::size_t grid_n = 0; ///< RK intervals actually used
    InnerProducts ip;
    std::optional<DMatrix> D;
    IndexCount index;
    std::optional<SpectralSummary> spectral;
    std::optional<double> det_closed_form;
    std::map<std::string, double> crosschecks;
};

struct AnalyzeOptions {
    std::size_t grid_n = 0;      ///< 0 selects solve_hill_refined's automatic grid
    bool spectral_check = true;  ///< cross-validate n(L) before emitting a verdict
    std::size_t fourier_modes = 64;
};

/// Full pipeline for one (family, L, k).  Threshold and consistency failures
/// come back as an INDETERMINATE report with a note rather than an exception.
StabilityReport analyze(WaveFamily family, double L, double k, const AnalyzeOptions& opt = {});

/// I alone, for root finding.
double lone_one(WaveFamily family, double L, double k, std::size_t grid_n = 0);

} // namespace wavespec

#endif
