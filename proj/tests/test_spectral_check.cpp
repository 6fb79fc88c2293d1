#include "doctest.h"

#include "wavespec/errors.hpp"
#include "wavespec/hill_solver.hpp"
#include "wavespec/spectral_check.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace wavespec;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_CASE("Jacobi eigensolver")
{
    SUBCASE("2x2")
    {
        SymmetricMatrix m(2);
        m(0, 0) = 2;
        m(1, 1) = 2;
        m(0, 1) = m(1, 0) = 1;
        const auto e = eigen_symmetric(m);
        CHECK(e.values[0] == doctest::Approx(1.0));
        CHECK(e.values[1] == doctest::Approx(3.0));
        CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(std::sqrt(0.5)));
    }
    SUBCASE("diagonal input needs no sweeps")
    {
        SymmetricMatrix m(3);
        m(0, 0) = 5;
        m(1, 1) = -1;
        m(2, 2) = 2;
        const auto e = eigen_symmetric(m);
        CHECK(e.sweeps == 0);
        CHECK(e.values == std::vector<double>{-1, 2, 5});
    }
    SUBCASE("random 50x50 reconstruction")
    {
        std::mt19937 rng(12345);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const std::size_t n = 50;
        SymmetricMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                m(i, j) = m(j, i) = u(rng);
        const auto e = eigen_symmetric(m);
        CHECK(std::is_sorted(e.values.begin(), e.values.end()));
        double worst = 0.0, orth = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double a = 0.0, d = 0.0;
                for (std::size_t r = 0; r < n; ++r) {
                    a += e.vectors(i, r) * e.values[r] * e.vectors(j, r);
                    d += e.vectors(r, i) * e.vectors(r, j);
                }
                worst = std::max(worst, std::abs(a - m(i, j)));
                orth = std::max(orth, std::abs(d - (i == j ? 1.0 : 0.0)));
            }
        CHECK(worst < 1e-11);
        CHECK(orth < 1e-12);
        double trace = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += m(i, i);
            sum += e.values[i];
        }
        CHECK(sum == doctest::Approx(trace).epsilon(1e-12));
    }
    SUBCASE("non-symmetric input")
    {
        SymmetricMatrix m(2);
        m(0, 1) = 1.0;
        CHECK_THROWS_AS(eigen_symmetric(m), ContractError);
    }
}

TEST_CASE("constant potential")
{
    const double L = 2.0, c0 = 0.3, C = 1.0;
    const auto m = assemble_hill([C](double) { return C; }, c0, L, 32);
    const auto e = eigen_symmetric(m.M, false);
    std::vector<double> expected;
    for (int j = -32; j <= 32; ++j)
        expected.push_back(std::pow(2 * kPi * j / L, 2) + c0 - C);
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(e.values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("Mathieu characteristic values")
{
    // -y'' + 2q cos(2x) y = a y on period pi, q = 1
    const auto m = assemble_hill([](double x) { return -2.0 * std::cos(2.0 * x); }, 0.0, kPi, 32);
    const auto e = eigen_symmetric(m.M, false);
    CHECK(e.values[0] == doctest::Approx(-0.4551386041).epsilon(1e-9));
    CHECK(e.values[1] == doctest::Approx(3.9170247729).epsilon(1e-9));
    CHECK(e.values[2] == doctest::Approx(4.3713009827).epsilon(1e-9));

    SUBCASE("parity blocks reproduce the full spectrum")
    {
        const auto b = parity_blocks(m);
        CHECK(b.even.n == 33);
        CHECK(b.odd.n == 32);
        auto all = eigen_symmetric(b.even, false).values;
        const auto odd = eigen_symmetric(b.odd, false).values;
        all.insert(all.end(), odd.begin(), odd.end());
        std::sort(all.begin(), all.end());
        REQUIRE(all.size() == e.values.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            CHECK(all[i] == doctest::Approx(e.values[i]).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("assembly guards")
{
    CHECK_THROWS_AS(assemble_hill([](double) { return 0.0; }, 0.0, 1.0, 16), ContractError);
    try {
        assemble_hill([](double x) { return std::abs(std::sin(x)); }, 0.0, 2 * kPi, 32);
        FAIL("expected ResolutionError");
    } catch (const ResolutionError& e) {
        CHECK(e.suggested_modes() == 64);
    }
}

TEST_CASE("inertial index")
{
    const auto idx = inertial_index({-2.0, -1e-9, 1e-8, 0.5, 3.0, 7.0}, 1.0);
    CHECK(idx.n_neg == 1);
    CHECK(idx.n_zero == 2);
    CHECK(idx.z_tol == doctest::Approx(1e-6));
    CHECK(idx.eigensample.size() == 5);

    InertialIndex one{1, 1, 1e-6, {}};
    CHECK_NOTHROW(check_theta_correspondence(one, -3.0));
    CHECK_THROWS_AS(check_theta_correspondence(one, 3.0), ConsistencyError);
    InertialIndex two{2, 1, 1e-6, {}};
    CHECK_NOTHROW(check_theta_correspondence(two, 3.0));
    InertialIndex wide{1, 2, 1e-6, {}};
    CHECK_THROWS_AS(check_theta_correspondence(wide, -3.0), ConsistencyError);
}

TEST_CASE("linearised operators around the waves")
{
    for (auto f : {WaveFamily::CkdvDnoidal, WaveFamily::CkdvCnoidal, WaveFamily::GardnerCnoidal})
        for (double k : {0.2, 0.5, 0.8, 0.95}) {
            CAPTURE(family_name(f));
            CAPTURE(k);
            const auto p = make_profile(f, 20.0, k);
            const auto s = spectral_check(p);
            CHECK(s.index.n_neg == expected_negative_count(f));
            CHECK(s.index.n_zero == 1);
            CHECK(s.kernel_correlation > 0.999);
            const double theta = solve_hill(p).theta;
            CHECK_NOTHROW(check_theta_correspondence(s.index, theta));
            CHECK(s.eigenvalues.size() == 2 * s.matrix.N + 1);
        }
}
