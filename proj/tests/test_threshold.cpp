#include "doctest.h"

#include "wavespec/errors.hpp"
#include "wavespec/stability_index.hpp"
#include "wavespec/threshold.hpp"

#include <cmath>
#include <numbers>

using namespace wavespec;

TEST_CASE("Gardner threshold")
{
    for (double L : {2 * std::numbers::pi, 20.0}) {
        CAPTURE(L);
        const auto r = find_k0(WaveFamily::GardnerCnoidal, L);
        CHECK(r.k0 == doctest::Approx(0.909).epsilon(0.002));
        CHECK(r.k_hi - r.k_lo < 1e-6);
        CHECK(r.sign_changes == 1);
        CHECK(lone_one(WaveFamily::GardnerCnoidal, L, r.k_lo) < 0.0);
        CHECK(lone_one(WaveFamily::GardnerCnoidal, L, r.k_hi) > 0.0);
        CHECK(r.omega_at_k0 == doctest::Approx(omega_of_k(WaveFamily::GardnerCnoidal, L, r.k0)));
    }
}

TEST_CASE("bracket grows outward")
{
    ThresholdOptions opt;
    opt.k_lo = 0.3;
    opt.k_hi = 0.5;
    opt.scan = false;
    const auto r = find_k0(WaveFamily::GardnerCnoidal, 20.0, opt);
    CHECK(r.k0 == doctest::Approx(0.909).epsilon(0.002));
    CHECK(r.sign_changes == 0);
}

TEST_CASE("dnoidal waves have no threshold")
{
    CHECK_THROWS_AS(find_k0(WaveFamily::CkdvDnoidal, 20.0), NoThreshold);
}

TEST_CASE("bracket validation")
{
    ThresholdOptions opt;
    opt.k_lo = 0.8;
    opt.k_hi = 0.2;
    CHECK_THROWS_AS(find_k0(WaveFamily::GardnerCnoidal, 20.0, opt), ContractError);
}
