#include "wavespec/threshold.hpp"

#include "wavespec/errors.hpp"
#include "wavespec/stability_index.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wavespec {

namespace {

constexpr double kExpandStep = 0.05;
constexpr int kScanPoints = 100;

} // namespace

ThresholdResult find_k0(WaveFamily family, double L, const ThresholdOptions& opt)
{
    if (!(opt.k_lo < opt.k_hi))
        throw ContractError("find_k0: bracket must satisfy k_lo < k_hi");
    auto I = [&](double k) { return lone_one(family, L, k, opt.grid_n); };

    double lo = std::max(opt.k_lo, kMinModulus);
    double hi = std::min(opt.k_hi, kMaxModulus);
    double f_lo = I(lo);
    double f_hi = I(hi);
    bool lo_done = lo <= kMinModulus;
    bool hi_done = hi >= kMaxModulus;
    // A degenerate wave (phi''(0) -> 0 as the dnoidal wave flattens) ends expansion on that side.
    auto step = [&](double& edge, double& value, bool& done, double target) {
        const double next = edge < target ? std::min(target, edge + kExpandStep) : std::max(target, edge - kExpandStep);
        try {
            value = I(next);
            edge = next;
            done = edge == target;
        } catch (const DegenerateProfileError&) {
            done = true;
        } catch (const KernelError&) {
            done = true;
        }
    };
    while (!(f_lo < 0.0 && f_hi > 0.0)) {
        if (lo_done && hi_done) {
            std::ostringstream msg;
            msg.precision(6);
            msg << "no sign change of <L^-1 1,1> for " << family_name(family) << " at L=" << L
                << " on k in [" << lo << ", " << hi << "]: I(lo)=" << f_lo << ", I(hi)=" << f_hi;
            throw NoThreshold(msg.str());
        }
        if (!lo_done)
            step(lo, f_lo, lo_done, kMinModulus);
        if (!hi_done)
            step(hi, f_hi, hi_done, kMaxModulus);
    }

    ThresholdResult r;
    r.family = family;
    r.L = L;
    if (opt.scan) {
        double prev = f_lo;
        for (int i = 1; i <= kScanPoints; ++i) {
            const double k = lo + (hi - lo) * static_cast<double>(i) / kScanPoints;
            const double cur = i == kScanPoints ? f_hi : I(k);
            if ((prev < 0.0) != (cur < 0.0))
                ++r.sign_changes;
            prev = cur;
        }
    }
    while (hi - lo >= opt.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (I(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
        ++r.iterations;
    }
    r.k_lo = lo;
    r.k_hi = hi;
    r.k0 = 0.5 * (lo + hi);
    r.omega_at_k0 = omega_of_k(family, L, r.k0);
    return r;
}

} // namespace wavespec
