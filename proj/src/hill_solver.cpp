#include "wavespec/hill_solver.hpp"

#include "wavespec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wavespec {

namespace {

struct State {
    double y;
    double v;
};

// One RK4 step of y'' = q y - r; q/r given at start, midpoint and end.
State rk4_step(State s, double h, double q0, double qm, double q1, double r0, double rm, double r1)
{
    const double k1y = s.v;
    const double k1v = q0 * s.y - r0;
    const double y2 = s.y + 0.5 * h * k1y;
    const double v2 = s.v + 0.5 * h * k1v;
    const double k2y = v2;
    const double k2v = qm * y2 - rm;
    const double y3 = s.y + 0.5 * h * k2y;
    const double v3 = s.v + 0.5 * h * k2v;
    const double k3y = v3;
    const double k3v = qm * y3 - rm;
    const double y4 = s.y + h * k3y;
    const double v4 = s.v + h * k3v;
    const double k4y = v4;
    const double k4v = q1 * y4 - r1;
    return {s.y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
            s.v + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
}

// Integrates with `steps` RK4 steps, reading coefficients every `stride`
// fine samples, and records the state every `record_every` steps.
std::vector<State> run_rk4(std::span<const double> q, std::span<const double> r, State s, double L,
                           std::size_t steps, std::size_t stride, std::size_t record_every)
{
    const double h = L / static_cast<double>(steps);
    std::vector<State> out;
    out.reserve(steps / record_every + 1);
    out.push_back(s);
    for (std::size_t i = 0; i < steps; ++i) {
        const std::size_t j = i * stride;
        const std::size_t m = j + stride / 2;
        const std::size_t e = j + stride;
        s = rk4_step(s, h, q[j], q[m], q[e], r[j], r[m], r[e]);
        if (!std::isfinite(s.y) || !std::isfinite(s.v))
            throw NumericError("non-finite state in IVP integration at x = " +
                               std::to_string(static_cast<double>(i + 1) * h));
        if ((i + 1) % record_every == 0)
            out.push_back(s);
    }
    return out;
}

std::vector<double> uniform_nodes(double L, std::size_t n)
{
    std::vector<double> x(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        x[i] = L * static_cast<double>(i) / static_cast<double>(n);
    return x;
}

double check_uniform(std::span<const double> x, std::span<const double> values)
{
    if (x.size() != values.size())
        throw ContractError("quadrature: grid and values differ in length");
    if (x.size() < 2)
        throw ContractError("quadrature: need at least two nodes");
    const std::size_t n = x.size() - 1;
    const double h = (x.back() - x.front()) / static_cast<double>(n);
    if (!(h > 0.0))
        throw ContractError("quadrature: grid must be increasing");
    for (std::size_t i = 1; i <= n; ++i)
        if (std::abs((x[i] - x[i - 1]) - h) > 1e-9 * h)
            throw ContractError("quadrature: grid is not uniform");
    return h;
}

double max_abs(std::span<const double> v)
{
    double m = 0.0;
    for (double a : v)
        m = std::max(m, std::abs(a));
    return m;
}

} // namespace

Trajectory integrate_second_order_sampled(std::span<const double> q, std::span<const double> r,
                                          double y0, double yp0, double L, std::size_t n)
{
    if (n < 64)
        throw ContractError("integrate_second_order: need at least 64 intervals");
    if (q.size() != 4 * n + 1 || r.size() != 4 * n + 1)
        throw ContractError("integrate_second_order: coefficients must be sampled on 4n+1 nodes");
    const State start{y0, yp0};
    const auto coarse = run_rk4(q, r, start, L, n, 4, 1);
    const auto fine = run_rk4(q, r, start, L, 2 * n, 2, 2);

    Trajectory t;
    t.L = L;
    t.x = uniform_nodes(L, n);
    t.y.resize(n + 1);
    t.yp.resize(n + 1);
    double err = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        t.y[i] = (16.0 * fine[i].y - coarse[i].y) / 15.0;
        t.yp[i] = (16.0 * fine[i].v - coarse[i].v) / 15.0;
        err = std::max(err, std::abs(fine[i].y - coarse[i].y) / 15.0);
    }
    t.error_estimate = err;
    return t;
}

Trajectory integrate_second_order(const Coefficient& q, const Coefficient& r, double y0, double yp0,
                                  double L, std::size_t n)
{
    if (!(L > 0.0))
        throw ContractError("integrate_second_order: interval length must be positive");
    if (n < 64)
        throw ContractError("integrate_second_order: need at least 64 intervals");
    std::vector<double> qs(4 * n + 1);
    std::vector<double> rs(4 * n + 1);
    for (std::size_t j = 0; j <= 4 * n; ++j) {
        const double x = L * static_cast<double>(j) / static_cast<double>(4 * n);
        qs[j] = q(x);
        rs[j] = r(x);
    }
    return integrate_second_order_sampled(qs, rs, y0, yp0, L, n);
}

double periodic_quadrature(std::span<const double> x, std::span<const double> values)
{
    const double h = check_uniform(x, values);
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        sum += values[i];
    return h * sum;
}

double simpson_quadrature(std::span<const double> x, std::span<const double> values)
{
    const double h = check_uniform(x, values);
    const std::size_t n = values.size() - 1;
    if (n % 2 != 0)
        throw ContractError("simpson_quadrature: number of intervals must be even");
    double sum = values.front() + values.back();
    for (std::size_t i = 1; i < n; ++i)
        sum += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    return h / 3.0 * sum;
}

std::size_t default_grid_size(const WaveProfile& p)
{
    const auto scaled = static_cast<std::size_t>(64.0 * std::ceil(4.0 * p.K));
    std::size_t n = std::max<std::size_t>(2048, scaled);
    return n + (n % 2);
}

HillOperatorSpec::HillOperatorSpec(const WaveProfile& profile, std::size_t n, Presentation presentation)
    : profile_(profile), n_(n), presentation_(presentation)
{
    if (n < 64 || n % 2 != 0)
        throw ContractError("HillOperatorSpec: grid size must be even and at least 64");
    const bool galilean = presentation == Presentation::Galilean;
    if (galilean && profile.family != WaveFamily::GardnerCnoidal)
        throw ContractError("HillOperatorSpec: Galilean presentation needs a Gardner profile");
    const std::size_t fine = 4 * n;
    phi_.resize(fine + 1);
    q_.resize(fine + 1);
    nodes_ = uniform_nodes(profile.L, n);
    node_phi_.resize(n + 1);
    node_dphi_.resize(n + 1);
    node_d2phi_.resize(n + 1);
    for (std::size_t j = 0; j <= fine; ++j) {
        const double x = profile.L * static_cast<double>(j) / static_cast<double>(fine);
        const PhiValues v = eval_phi(profile, x);
        const double shifted = v.phi + 1.0 / 3.0;
        phi_[j] = galilean ? shifted : v.phi;
        q_[j] = galilean ? profile.omega + 1.0 / 3.0 - 3.0 * shifted * shifted
                         : profile.omega - nonlinearity_prime(profile.family, v.phi);
        if (j % 4 == 0) {
            node_phi_[j / 4] = phi_[j];
            node_dphi_[j / 4] = v.dphi;
            node_d2phi_[j / 4] = v.d2phi;
        }
    }
}

YbarResult compute_ybar(const HillOperatorSpec& spec)
{
    const double d2 = spec.d2phi_at_origin();
    if (std::abs(d2) < 1e-12)
        throw DegenerateProfileError("phi''(0) vanishes; cannot normalise the auxiliary solution");
    const std::vector<double> zero(spec.fine_potential().size(), 0.0);
    Trajectory ybar =
        integrate_second_order_sampled(spec.fine_potential(), zero, -1.0 / d2, 0.0, spec.L(), spec.intervals());
    const double theta = ybar.yp.back() / d2;
    if (!std::isfinite(theta))
        throw NumericError("theta is not finite");
    if (std::abs(theta) < kThetaMin)
        throw KernelError("kernel not simple at tolerance: |theta| = " + std::to_string(std::abs(theta)));
    return {std::move(ybar), theta};
}

Trajectory periodic_response(const HillOperatorSpec& spec, const Trajectory& ybar,
                             std::span<const double> fine_forcing, std::span<const double> node_forcing)
{
    const double slope = ybar.yp.back();
    if (std::abs(slope / spec.d2phi_at_origin()) < kThetaMin)
        throw KernelError("kernel not simple at tolerance");
    if (node_forcing.size() != ybar.y.size())
        throw ContractError("periodic_response: forcing and trajectory grids differ");
    std::vector<double> prod(ybar.y.size());
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = node_forcing[i] * ybar.y[i];
    const double y0 = simpson_quadrature(ybar.x, prod) / slope;
    return integrate_second_order_sampled(spec.fine_potential(), fine_forcing, y0, 0.0, spec.L(),
                                          spec.intervals());
}

Trajectory compute_psi(const HillOperatorSpec& spec, const Trajectory& ybar)
{
    std::vector<double> fine(spec.fine_phi().begin(), spec.fine_phi().end());
    std::vector<double> nodes(spec.node_phi().begin(), spec.node_phi().end());
    for (double& f : fine)
        f = -f;
    for (double& f : nodes)
        f = -f;
    return periodic_response(spec, ybar, fine, nodes);
}

Trajectory compute_eta(const HillOperatorSpec& spec, const Trajectory& ybar)
{
    const std::vector<double> fine(spec.fine_potential().size(), 1.0);
    const std::vector<double> nodes(ybar.y.size(), 1.0);
    return periodic_response(spec, ybar, fine, nodes);
}

PeriodicityResidual periodicity_residual(const Trajectory& t)
{
    const double ymax = max_abs(t.y);
    const double ypmax = max_abs(t.yp);
    return {ymax > 0.0 ? std::abs(t.y.back() - t.y.front()) / ymax : 0.0,
            ypmax > 0.0 ? std::abs(t.yp.back() - t.yp.front()) / ypmax : 0.0};
}

double parity_residual(const Trajectory& t)
{
    const double ymax = max_abs(t.y);
    if (ymax == 0.0)
        return 0.0;
    const std::size_t n = t.intervals();
    double worst = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
        worst = std::max(worst, std::abs(t.y[n - i] - t.y[i]));
    return worst / ymax;
}

double wronskian_drift(const HillOperatorSpec& spec, const Trajectory& ybar)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < ybar.y.size(); ++i) {
        const double w = spec.node_dphi()[i] * ybar.yp[i] - spec.node_d2phi()[i] * ybar.y[i];
        worst = std::max(worst, std::abs(w - 1.0));
    }
    return worst;
}

HillData solve_hill(const HillOperatorSpec& spec)
{
    HillData hd;
    YbarResult yb = compute_ybar(spec);
    hd.theta = yb.theta;
    hd.ybar = std::move(yb.ybar);
    hd.psi = compute_psi(spec, hd.ybar);
    hd.eta = compute_eta(spec, hd.ybar);
    hd.wronskian_drift = wronskian_drift(spec, hd.ybar);
    hd.psi_periodicity = periodicity_residual(hd.psi);
    hd.eta_periodicity = periodicity_residual(hd.eta);
    return hd;
}

HillData solve_hill(const WaveProfile& p, std::size_t n)
{
    return solve_hill(HillOperatorSpec(p, n == 0 ? default_grid_size(p) : n));
}

HillSolution solve_hill_refined(const WaveProfile& p, std::size_t n, Presentation presentation)
{
    const bool fixed = n != 0;
    std::size_t grid = fixed ? n : default_grid_size(p);
    for (;;) {
        HillOperatorSpec spec(p, grid, presentation);
        HillData data = solve_hill(spec);
        const double worst = std::max({data.psi_periodicity.value, data.psi_periodicity.slope,
                                       data.eta_periodicity.value, data.eta_periodicity.slope});
        const bool converged = worst <= kRefinePeriodicity && data.wronskian_drift <= kRefineWronskian;
        if (fixed || converged || 2 * grid > kMaxGrid)
            return {std::move(spec), std::move(data)};
        grid *= 2;
    }
}

} // namespace wavespec
