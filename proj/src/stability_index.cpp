#include "wavespec/stability_index.hpp"

#include "wavespec/errors.hpp"
#include "wavespec/spectral_check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace wavespec {

namespace {

double integrate_product(std::span<const double> x, std::span<const double> f, std::span<const double> g)
{
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = f[i] * g[i];
    return periodic_quadrature(x, prod);
}

double relative_gap(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

// Five-point centred difference.
template <class F>
double derivative(F&& f, double k)
{
    const double h = 1e-3 * std::min({1.0, k, 1.0 - k});
    return (f(k - 2.0 * h) - 8.0 * f(k - h) + 8.0 * f(k + h) - f(k + 2.0 * h)) / (12.0 * h);
}

} // namespace

InnerProducts inner_products(const HillData& hd, const HillOperatorSpec& spec)
{
    InnerProducts ip;
    const auto x = spec.nodes();
    ip.lphi_phi = -integrate_product(x, hd.psi.y, spec.node_phi());
    ip.lphi_one = -periodic_quadrature(x, hd.psi.y);
    ip.lone_one = periodic_quadrature(x, hd.eta.y);
    return ip;
}

DMatrix build_D(const InnerProducts& ip, double L)
{
    const double I = ip.lone_one;
    if (!(std::abs(I) > kIMinPerLength * L))
        throw AtThreshold("|I| = " + std::to_string(std::abs(I)) + " is below the classification tolerance");
    DMatrix d;
    d.entries = {{{ip.lphi_phi / I, ip.lphi_one / I}, {ip.lphi_one / I, 1.0}}};
    d.det_raw = ip.lphi_phi * I - ip.lphi_one * ip.lphi_one;
    d.det_prefactored = d.det_raw / (I * I);
    d.det_schur = d.det_raw / I;
    const double tr = d.entries[0][0] + d.entries[1][1];
    const double gap = std::hypot(d.entries[0][0] - d.entries[1][1], 2.0 * d.entries[0][1]);
    d.eigenvalues = {0.5 * (tr - gap), 0.5 * (tr + gap)};
    return d;
}

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Stable:
        return "SPECTRALLY_STABLE";
    case Verdict::Unstable:
        return "SPECTRALLY_UNSTABLE";
    case Verdict::Indeterminate:
        return "INDETERMINATE";
    }
    return "INDETERMINATE";
}

IndexCount krein_classify(const InnerProducts& ip, const DMatrix& D, int nL)
{
    if (!(std::abs(D.det_schur) > kDetMin))
        throw AtThreshold("det(D) = " + std::to_string(D.det_schur) + " is below the classification tolerance");
    IndexCount c;
    c.nL = nL;
    c.nI = ip.lone_one < 0.0 ? 1 : 0;
    c.nD = D.det_schur < 0.0 ? 1 : 0;
    c.nD_prefactored = (D.eigenvalues[0] < 0.0 ? 1 : 0) + (D.eigenvalues[1] < 0.0 ? 1 : 0);
    c.K_ham = c.nL - c.nI - c.nD;
    if (c.K_ham == 0) {
        c.verdict = Verdict::Stable;
    } else if (c.K_ham == 1) {
        c.verdict = Verdict::Unstable;
    } else {
        c.verdict = Verdict::Indeterminate;
        c.note = c.K_ham < 0 ? "negative Krein index: inconsistent counts"
                             : "K_Ham >= 2: instability not decidable from the index alone";
    }
    return c;
}

double closed_form_norm_cnoidal(double L, double k)
{
    const Modulus mod(k);
    if (!(L > 0.0))
        throw DomainError("closed_form_norm_cnoidal: L must be positive");
    const double k2 = k * k;
    const double b = -1.0 + k2 - std::sqrt(k2 * k2 - k2 + 1.0);
    const double outer = (k2 - 2.0 * b) * (1.0 - b);
    const double inner = b * (b - k2);
    if (!(outer > 0.0) || !(inner > 0.0))
        throw DomainError("closed_form_norm_cnoidal: negative radicand");
    const double beta = std::asin(1.0 / std::sqrt(1.0 - b));
    return 2.0 * std::numbers::pi * std::sqrt(outer) * (1.0 - heuman_lambda(beta, k)) / std::sqrt(inner);
}

double closed_form_norm_cnoidal_dk(double L, double k)
{
    return derivative([L](double q) { return closed_form_norm_cnoidal(L, q); }, k);
}

double closed_form_norm_gardner(double L, double k)
{
    const Modulus mod(k);
    if (!(L > 0.0))
        throw DomainError("closed_form_norm_gardner: L must be positive");
    const double big_k = complete_K(k);
    const double big_e = complete_E(k);
    const double kp2 = mod.kprime() * mod.kprime();
    return L / 9.0 + 32.0 * big_k * (big_e - kp2 * big_k) / L;
}

double closed_form_norm_gardner_dk(double L, double k)
{
    const Modulus mod(k);
    const double big_k = complete_K(k);
    const double big_e = complete_E(k);
    const double kp2 = mod.kprime() * mod.kprime();
    return -32.0 * (kp2 * big_k * (2.0 * big_e - big_k) - big_e * big_e) / (k * kp2 * L);
}

double detD_closed_form(WaveFamily family, double L, double k)
{
    if (k < kClosedFormMinModulus)
        throw DomainError("detD_closed_form: d omega/dk and the norm derivative both vanish like k^3; "
                          "the ratio is not resolvable for k < " + std::to_string(kClosedFormMinModulus));
    switch (family) {
    case WaveFamily::CkdvCnoidal:
        return -0.5 * closed_form_norm_cnoidal_dk(L, k) / domega_dk(family, L, k);
    case WaveFamily::GardnerCnoidal:
        return -0.5 * closed_form_norm_gardner_dk(L, k) / domega_dk(family, L, k);
    case WaveFamily::CkdvDnoidal:
        break;
    }
    throw DomainError("detD_closed_form: no closed form for the dnoidal family");
}

double lone_one(WaveFamily family, double L, double k, std::size_t grid_n)
{
    const HillSolution sol = solve_hill_refined(make_profile(family, L, k), grid_n);
    return periodic_quadrature(sol.data.eta.x, sol.data.eta.y);
}

StabilityReport analyze(WaveFamily family, double L, double k, const AnalyzeOptions& opt)
{
    const WaveProfile p = make_profile(family, L, k);
    StabilityReport r;
    r.family = family;
    r.L = L;
    r.k = k;
    r.omega = p.omega;
    r.A = p.A;
    r.index.nL = expected_negative_count(family);

    std::optional<HillSolution> sol;
    try {
        sol = solve_hill_refined(p, opt.grid_n);
    } catch (const KernelError& e) {
        r.index.note = e.what();
        return r;
    }
    const HillOperatorSpec& spec = sol->spec;
    const HillData& hd = sol->data;
    r.grid_n = spec.intervals();
    r.theta = hd.theta;
    r.ip = inner_products(hd, spec);
    r.crosschecks["wronskian_drift"] = hd.wronskian_drift;
    r.crosschecks["psi_periodicity"] = std::max(hd.psi_periodicity.value, hd.psi_periodicity.slope);
    r.crosschecks["eta_periodicity"] = std::max(hd.eta_periodicity.value, hd.eta_periodicity.slope);
    r.crosschecks["ivp_error_estimate"] =
        std::max({hd.ybar.error_estimate, hd.psi.error_estimate, hd.eta.error_estimate});

    if (family == WaveFamily::GardnerCnoidal) {
        const HillSolution gal = solve_hill_refined(p, spec.intervals(), Presentation::Galilean);
        const InnerProducts ig = inner_products(gal.data, gal.spec);
        r.crosschecks["galilean_lphi_phi"] = ig.lphi_phi;
        r.crosschecks["galilean_lphi_one"] = ig.lphi_one;
        r.crosschecks["galilean_lone_one"] = ig.lone_one;
    }

    if (family != WaveFamily::CkdvDnoidal && k >= kClosedFormMinModulus)
        r.det_closed_form = detD_closed_form(family, L, k);

    try {
        r.D = build_D(r.ip, L);
    } catch (const AtThreshold& e) {
        r.index.note = e.what();
        return r;
    }
    if (r.det_closed_form)
        r.crosschecks["detD_closed_form_gap"] = relative_gap(*r.det_closed_form, r.D->det_schur);

    if (opt.spectral_check) {
        try {
            const SpectralResult s = spectral_check(p, opt.fourier_modes);
            SpectralSummary sum;
            sum.n_neg = s.index.n_neg;
            sum.n_zero = s.index.n_zero;
            sum.modes = s.matrix.N;
            sum.kernel_correlation = s.kernel_correlation;
            for (std::size_t i = 0; i < sum.smallest.size() && i < s.index.eigensample.size(); ++i)
                sum.smallest[i] = s.index.eigensample[i];
            r.spectral = sum;
            r.crosschecks["kernel_correlation"] = s.kernel_correlation;
            r.crosschecks["fourier_lone_one_gap"] = relative_gap(s.lone_one, r.ip.lone_one);
            check_theta_correspondence(s.index, r.theta);
            if (s.index.n_neg != r.index.nL)
                throw ConsistencyError("Fourier count n(L) = " + std::to_string(s.index.n_neg) +
                                       " differs from the family's expected value " + std::to_string(r.index.nL));
        } catch (const Error& e) {
            r.index.note = e.what();
            return r;
        }
    }

    try {
        const int nL = r.index.nL;
        r.index = krein_classify(r.ip, *r.D, nL);
    } catch (const AtThreshold& e) {
        r.index.note = e.what();
    }
    return r;
}

} // namespace wavespec
