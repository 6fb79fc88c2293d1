#include "doctest.h"

#include "wavespec/errors.hpp"
#include "wavespec/hill_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace wavespec;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

TEST_CASE("integrator on problems with known solutions")
{
    SUBCASE("y'' = y gives cosh")
    {
        const auto t = integrate_second_order([](double) { return 1.0; }, [](double) { return 0.0; }, 1.0, 0.0, 1.0, 64);
        CHECK(t.intervals() == 64);
        CHECK(t.y.back() == doctest::Approx(std::cosh(1.0)).epsilon(1e-12));
        CHECK(t.yp.back() == doctest::Approx(std::sinh(1.0)).epsilon(1e-12));
        CHECK(t.error_estimate < 1e-9);
    }
    SUBCASE("-y'' = 1 gives -x^2/2")
    {
        const auto t = integrate_second_order([](double) { return 0.0; }, [](double) { return 1.0; }, 0.0, 0.0, 2.0, 64);
        for (std::size_t i = 0; i < t.x.size(); ++i)
            CHECK(t.y[i] == doctest::Approx(-0.5 * t.x[i] * t.x[i]).epsilon(1e-14).scale(1.0));
    }
    SUBCASE("Richardson gives better than fourth order")
    {
        auto err = [](std::size_t n) {
            const auto t = integrate_second_order([](double x) { return -1.0 - 0.5 * std::cos(x); },
                                                  [](double) { return 0.0; }, 1.0, 0.0, 2 * kPi, n);
            const auto ref = integrate_second_order([](double x) { return -1.0 - 0.5 * std::cos(x); },
                                                    [](double) { return 0.0; }, 1.0, 0.0, 2 * kPi, 4096);
            return std::abs(t.y.back() - ref.y.back());
        };
        CHECK(err(64) / err(128) > 20.0);
    }
    SUBCASE("blow-up is reported")
    {
        CHECK_THROWS_AS(integrate_second_order([](double) { return 1e8; }, [](double) { return 0.0; }, 1.0, 0.0, 1.0, 100),
                        NumericError);
    }
}

TEST_CASE("quadrature rules")
{
    const int n = 64;
    std::vector<double> x(n + 1), c2(n + 1), cubic(n + 1);
    for (int i = 0; i <= n; ++i) {
        x[i] = 2 * kPi * i / n;
        c2[i] = std::cos(x[i]) * std::cos(x[i]);
        cubic[i] = x[i] * x[i] * x[i];
    }
    CHECK(periodic_quadrature(x, c2) == doctest::Approx(kPi).epsilon(1e-14));
    const double top = 2 * kPi;
    CHECK(simpson_quadrature(x, cubic) == doctest::Approx(top * top * top * top / 4).epsilon(1e-13));
    x[3] += 0.01;
    CHECK_THROWS_AS(periodic_quadrature(x, c2), ContractError);
    std::vector<double> odd_x(4), odd_v(4, 1.0);
    for (int i = 0; i < 4; ++i)
        odd_x[i] = i;
    CHECK_THROWS_AS(simpson_quadrature(odd_x, odd_v), ContractError);
}

TEST_CASE("default grid")
{
    const auto p = make_profile(WaveFamily::CkdvDnoidal, 20.0, 0.5);
    CHECK(default_grid_size(p) == 2048);
    const auto q = make_profile(WaveFamily::CkdvDnoidal, 20.0, 1 - 1e-6);
    CHECK(default_grid_size(q) % 2 == 0);
    CHECK(default_grid_size(q) >= static_cast<std::size_t>(64 * std::ceil(4 * q.K)));
}

TEST_CASE("operator specification")
{
    const auto c = make_profile(WaveFamily::CkdvCnoidal, 20.0, 0.5);
    CHECK_THROWS_AS(HillOperatorSpec(c, 256, Presentation::Galilean), ContractError);
    const HillOperatorSpec spec(c, 256);
    CHECK(spec.fine_potential().size() == 4 * 256 + 1);
    CHECK(spec.nodes().size() == 257);
    CHECK(spec.fine_potential()[7] == doctest::Approx(hill_potential(c, 7 * 20.0 / 1024)));
}

TEST_CASE("Hill data invariants")
{
    for (auto f : {WaveFamily::CkdvDnoidal, WaveFamily::CkdvCnoidal, WaveFamily::GardnerCnoidal})
        for (double L : {2 * kPi, 50.0})
            for (double k : {0.2, 0.6, 0.9}) {
                CAPTURE(family_name(f));
                CAPTURE(L);
                CAPTURE(k);
                const auto p = make_profile(f, L, k);
                const auto hd = solve_hill(p);
                CHECK(hd.wronskian_drift < 1e-8);
                CHECK(hd.psi_periodicity.value < 1e-6);
                CHECK(hd.psi_periodicity.slope < 1e-6);
                CHECK(hd.eta_periodicity.value < 1e-6);
                CHECK(hd.eta_periodicity.slope < 1e-6);
                CHECK(parity_residual(hd.psi) < 1e-6);
                CHECK(parity_residual(hd.eta) < 1e-6);
                // ybar is even about 0, so its values over [0,L] are not symmetric; only its start is pinned
                CHECK(hd.ybar.yp.front() == 0.0);
                if (f == WaveFamily::CkdvDnoidal)
                    CHECK(hd.theta < 0.0);
                else
                    CHECK(hd.theta > 0.0);
            }
}

TEST_CASE("eta solves L eta = 1")
{
    const auto p = make_profile(WaveFamily::CkdvCnoidal, 20.0, 0.5);
    const auto hd = solve_hill(p, 4096);
    const auto& t = hd.eta;
    const double h = t.x[1] - t.x[0];
    const double scale = max_abs(t.y);
    for (std::size_t i = 2; i + 2 < t.x.size(); i += 97) {
        const double d2 = (-t.y[i + 2] + 16 * t.y[i + 1] - 30 * t.y[i] + 16 * t.y[i - 1] - t.y[i - 2]) / (12 * h * h);
        const double residual = -d2 + hill_potential(p, t.x[i]) * t.y[i] - 1.0;
        CHECK(std::abs(residual) < 1e-5 * std::max(1.0, scale));
    }
}

TEST_CASE("psi is the derivative of the wave along the speed curve")
{
    SUBCASE("critical KdV: L dphi/domega = -phi")
    {
        const double L = 20.0, k = 0.5, dk = 1e-4;
        const auto p = make_profile(WaveFamily::CkdvCnoidal, L, k);
        const auto hd = solve_hill(p);
        const auto plus = make_profile(WaveFamily::CkdvCnoidal, L, k + dk);
        const auto minus = make_profile(WaveFamily::CkdvCnoidal, L, k - dk);
        const double dw = omega_of_k(WaveFamily::CkdvCnoidal, L, k + dk) - omega_of_k(WaveFamily::CkdvCnoidal, L, k - dk);
        const double scale = max_abs(hd.psi.y);
        for (std::size_t i = 0; i < hd.psi.x.size(); i += 131) {
            const double x = hd.psi.x[i];
            const double fd = (eval_phi(plus, x).phi - eval_phi(minus, x).phi) / dw;
            CHECK(std::abs(hd.psi.y[i] - fd) < 1e-6 * scale);
        }
    }
    SUBCASE("Gardner: dphi/domega = psi + dA/domega eta")
    {
        const double L = 20.0, k = 0.6, dk = 1e-4;
        const auto f = WaveFamily::GardnerCnoidal;
        const auto p = make_profile(f, L, k);
        const auto hd = solve_hill(p);
        const auto plus = make_profile(f, L, k + dk);
        const auto minus = make_profile(f, L, k - dk);
        const double dw = omega_of_k(f, L, k + dk) - omega_of_k(f, L, k - dk);
        const double dA_dw = dA_dk(f, L, k) / domega_dk(f, L, k);
        double scale = 0.0;
        for (std::size_t i = 0; i < hd.psi.x.size(); ++i)
            scale = std::max(scale, std::abs(hd.psi.y[i] + dA_dw * hd.eta.y[i]));
        for (std::size_t i = 0; i < hd.psi.x.size(); i += 131) {
            const double x = hd.psi.x[i];
            const double fd = (eval_phi(plus, x).phi - eval_phi(minus, x).phi) / dw;
            CHECK(std::abs(hd.psi.y[i] + dA_dw * hd.eta.y[i] - fd) < 1e-6 * scale);
        }
    }
}

TEST_CASE("grid refinement near k = 1")
{
    const auto p = make_profile(WaveFamily::CkdvDnoidal, 20.0, 0.9999);
    const auto fixed = solve_hill_refined(p, 2048);
    CHECK(fixed.spec.intervals() == 2048);
    const auto sol = solve_hill_refined(p);
    CHECK(sol.spec.intervals() > default_grid_size(p));
    CHECK(sol.spec.intervals() <= kMaxGrid);
    CHECK(sol.data.psi_periodicity.value < kRefinePeriodicity);
    CHECK(sol.data.eta_periodicity.value < kRefinePeriodicity);
    CHECK(sol.data.wronskian_drift < kRefineWronskian);
}

TEST_CASE("degenerate and threshold guards")
{
    // phi''(0) vanishes as the dnoidal wave flattens out
    const auto flat = make_profile(WaveFamily::CkdvDnoidal, 20.0, 1e-6);
    CHECK_THROWS_AS(solve_hill(flat), DegenerateProfileError);
}
