#include "doctest.h"

#include "wavespec/errors.hpp"
#include "wavespec/wave_profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

using namespace wavespec;

namespace {

constexpr double kPi = std::numbers::pi;
const WaveFamily kFamilies[] = {WaveFamily::CkdvDnoidal, WaveFamily::CkdvCnoidal, WaveFamily::GardnerCnoidal};

// Antiderivative of g with G(0) = 0.
double G(WaveFamily f, double s)
{
    if (f == WaveFamily::GardnerCnoidal)
        return s * s * s / 3.0 + s * s * s * s / 4.0;
    return std::pow(s, 6) / 6.0;
}

double g(WaveFamily f, double s)
{
    if (f == WaveFamily::GardnerCnoidal)
        return s * s + s * s * s;
    return std::pow(s, 5);
}

// phi'^2/2 - omega phi^2/2 + G(phi) + A phi is constant along any solution of
// -phi'' + omega phi - g(phi) - A = 0.
double energy(const WaveProfile& p, double x)
{
    const auto v = eval_phi(p, x);
    return 0.5 * v.dphi * v.dphi - 0.5 * p.omega * v.phi * v.phi + G(p.family, v.phi) + p.A * v.phi;
}

} // namespace

TEST_CASE("family names round-trip")
{
    for (auto f : kFamilies)
        CHECK(parse_family(family_name(f)) == f);
    CHECK_FALSE(parse_family("kdv").has_value());
}

TEST_CASE("profiles solve the travelling-wave ODE")
{
    for (auto f : kFamilies)
        for (double L : {2 * kPi, 20.0, 100.0})
            for (double k : {0.05, 0.3, 0.7, 0.95, 0.9999}) {
                CAPTURE(family_name(f));
                CAPTURE(L);
                CAPTURE(k);
                const auto p = make_profile(f, L, k);
                double scale = 0.0, lo = 1e300, hi = -1e300;
                for (int i = 0; i <= 400; ++i) {
                    const double x = L * i / 400.0;
                    const auto v = eval_phi(p, x);
                    const double e = energy(p, x);
                    scale = std::max({scale, std::abs(0.5 * v.dphi * v.dphi), std::abs(0.5 * p.omega * v.phi * v.phi),
                                      std::abs(G(f, v.phi))});
                    lo = std::min(lo, e);
                    hi = std::max(hi, e);
                }
                CHECK((hi - lo) / scale < 1e-10);

                // phi'' reported from the ODE against a fourth-order difference of phi
                const double h = 1e-3 * L / (4 * p.K);
                for (double x : {0.1 * L, 0.37 * L, 0.8 * L}) {
                    auto phi = [&](double s) { return eval_phi(p, s).phi; };
                    const double fd = (-phi(x + 2 * h) + 16 * phi(x + h) - 30 * phi(x) + 16 * phi(x - h) -
                                       phi(x - 2 * h)) / (12 * h * h);
                    const auto v = eval_phi(p, x);
                    CHECK(v.d2phi == doctest::Approx(p.omega * v.phi - g(f, v.phi) - p.A).epsilon(1e-12).scale(1.0));
                    CHECK(std::abs(fd - v.d2phi) < 1e-5 * std::max(1.0, std::abs(p.omega * v.phi)));
                    const double d1 = (phi(x - 2 * h) - 8 * phi(x - h) + 8 * phi(x + h) - phi(x + 2 * h)) / (12 * h);
                    CHECK(std::abs(d1 - v.dphi) < 1e-7 * std::max(1.0, std::abs(v.dphi)));
                }
            }
}

TEST_CASE("periodicity, parity and mean")
{
    for (auto f : kFamilies) {
        const double L = 20.0;
        const auto p = make_profile(f, L, 0.6);
        const int n = 512;
        double mean = 0.0, amp = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = L * i / n;
            const double v = eval_phi(p, x).phi;
            mean += v / n;
            amp = std::max(amp, std::abs(v));
            CHECK(eval_phi(p, x + L).phi == doctest::Approx(v).epsilon(1e-11).scale(amp));
            CHECK(eval_phi(p, L - x).phi == doctest::Approx(v).epsilon(1e-11).scale(amp));
        }
        CAPTURE(family_name(f));
        if (f == WaveFamily::CkdvDnoidal) {
            CHECK(mean > 0.0);
            for (int i = 0; i < n; ++i)
                CHECK(eval_phi(p, L * i / n).phi > 0.0);
        } else if (f == WaveFamily::CkdvCnoidal) {
            CHECK(std::abs(mean) < 1e-12 * amp);
        } else {
            // the Gardner wave is the zero-mean mKdV wave shifted by -1/3
            CHECK(std::abs(mean + 1.0 / 3.0) < 1e-12);
        }
        CHECK(std::abs(eval_phi(p, 0.0).dphi) < 1e-12 * amp);
    }
}

TEST_CASE("speed curves")
{
    for (auto f : kFamilies)
        for (double L : {2 * kPi, 50.0}) {
            CAPTURE(family_name(f));
            // small-amplitude limit of the cnoidal branches: linearise about 0 or -1/3
            const double wave = 2 * kPi / L;
            double floor = wave * wave;
            if (f == WaveFamily::CkdvDnoidal)
                floor = wave * wave / 4.0;
            if (f == WaveFamily::GardnerCnoidal)
                floor = -1.0 / 3.0 - wave * wave;
            for (int i = 0; i < 50; ++i) {
                const double k = 0.01 + 0.98 * i / 49.0;
                CAPTURE(k);
                const double h = 1e-5;
                const double fd = (omega_of_k(f, L, k + h) - omega_of_k(f, L, k - h)) / (2 * h);
                const double d = domega_dk(f, L, k);
                CHECK(d > 0.0);
                CHECK(d == doctest::Approx(fd).epsilon(1e-6));
                CHECK(omega_of_k(f, L, k) > floor);
                const double fdA = (A_of_k(f, L, k + h) - A_of_k(f, L, k - h)) / (2 * h);
                CHECK(dA_dk(f, L, k) == doctest::Approx(fdA).epsilon(1e-6).scale(1e-6));
            }
            if (f != WaveFamily::CkdvDnoidal)
                CHECK(omega_of_k(f, L, 1e-4) == doctest::Approx(floor).epsilon(1e-6));
            if (f != WaveFamily::GardnerCnoidal)
                CHECK(A_of_k(f, L, 0.5) == 0.0);
        }
}

TEST_CASE("omega to k inversion")
{
    for (auto f : kFamilies) {
        const double L = 20.0;
        for (double k : {0.01, 0.2, 0.745, 0.99}) {
            const double w = omega_of_k(f, L, k);
            CHECK(omega_to_k(f, L, w).k() == doctest::Approx(k).epsilon(1e-10));
        }
        const auto range = admissible_omega(f, L);
        CHECK(range.lo < range.hi);
        CHECK_THROWS_AS(omega_to_k(f, L, range.lo - 1.0), RangeError);
        CHECK_THROWS_AS(omega_to_k(f, L, range.hi + std::abs(range.hi) + 1.0), RangeError);
    }
}

TEST_CASE("argument validation")
{
    CHECK_THROWS_AS(make_profile(WaveFamily::CkdvDnoidal, -1.0, 0.5), Error);
    CHECK_THROWS_AS(make_profile(WaveFamily::CkdvDnoidal, 20.0, 1.0), DomainError);
    CHECK_THROWS_AS(make_profile(WaveFamily::CkdvCnoidal, 20.0, 0.0), DomainError);
    CHECK(expected_negative_count(WaveFamily::CkdvDnoidal) == 1);
    CHECK(expected_negative_count(WaveFamily::CkdvCnoidal) == 2);
    CHECK(expected_negative_count(WaveFamily::GardnerCnoidal) == 2);
    CHECK(nonlinearity_prime(WaveFamily::GardnerCnoidal, 0.5) == doctest::Approx(2 * 0.5 + 3 * 0.25));
    CHECK(nonlinearity_prime(WaveFamily::CkdvCnoidal, 0.5) == doctest::Approx(5 * 0.0625));
}

TEST_CASE("hill potential")
{
    const auto p = make_profile(WaveFamily::CkdvCnoidal, 20.0, 0.5);
    for (double x : {0.0, 3.0, 7.5}) {
        const double v = eval_phi(p, x).phi;
        CHECK(hill_potential(p, x) == doctest::Approx(p.omega - 5 * std::pow(v, 4)));
    }
}
