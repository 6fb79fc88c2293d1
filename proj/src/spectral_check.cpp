#include "wavespec/spectral_check.hpp"

#include "wavespec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace wavespec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCoefficientFloor = 1e-12;
constexpr int kMaxSweeps = 60;

double frobenius(const SymmetricMatrix& m)
{
    double s = 0.0;
    for (double v : m.a)
        s += v * v;
    return std::sqrt(s);
}

double off_diagonal(const SymmetricMatrix& m)
{
    double s = 0.0;
    for (std::size_t i = 0; i < m.n; ++i)
        for (std::size_t j = 0; j < m.n; ++j)
            if (i != j)
                s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

} // namespace

EigenSystem eigen_symmetric(const SymmetricMatrix& input, bool want_vectors)
{
    const std::size_t n = input.n;
    const double norm = frobenius(input);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(input(i, j) - input(j, i)) > 1e-12 * std::max(1.0, norm))
                throw ContractError("eigen_symmetric: matrix is not symmetric");

    SymmetricMatrix a = input;
    SymmetricMatrix v(want_vectors ? n : 0);
    for (std::size_t i = 0; i < v.n; ++i)
        v(i, i) = 1.0;

    EigenSystem out;
    const double target = 1e-12 * norm;
    while (off_diagonal(a) > target) {
        if (out.sweeps == kMaxSweeps)
            throw NumericError("eigen_symmetric: Jacobi sweeps did not converge");
        ++out.sweeps;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0)
                    continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Rutishauser's stable form of the rotation angle.
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = std::copysign(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = a(p, r);
                    const double aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t r = 0; r < v.n; ++r) {
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
    out.values.resize(n);
    out.vectors = SymmetricMatrix(v.n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t r = 0; r < v.n; ++r)
            out.vectors(r, j) = v(r, order[j]);
    }
    return out;
}

FourierHillMatrix assemble_hill(const std::function<double(double)>& V, double c0, double L, std::size_t N)
{
    if (N < 32)
        throw ContractError("assemble: need at least 32 Fourier modes");
    if (!(L > 0.0))
        throw ContractError("assemble: period must be positive");

    const std::size_t samples = 8 * N;
    std::vector<double> vals(samples);
    for (std::size_t s = 0; s < samples; ++s)
        vals[s] = V(L * static_cast<double>(s) / static_cast<double>(samples));

    // V even: V(x) = sum_j c_j exp(2 pi i j x / L) with real c_j = c_{-j}.
    FourierHillMatrix out;
    out.L = L;
    out.N = N;
    out.coefficients.assign(2 * N + 1, 0.0);
    double peak = 0.0;
    for (std::size_t j = 0; j <= 2 * N; ++j) {
        double sum = 0.0;
        for (std::size_t s = 0; s < samples; ++s)
            sum += vals[s] * std::cos(kTwoPi * static_cast<double>((j * s) % samples) / static_cast<double>(samples));
        out.coefficients[j] = sum / static_cast<double>(samples);
        peak = std::max(peak, std::abs(out.coefficients[j]));
    }
    double tail = 0.0;
    for (std::size_t j = N; j <= 2 * N; ++j)
        tail = std::max(tail, std::abs(out.coefficients[j]));
    if (tail > kCoefficientFloor * std::max(1.0, peak))
        throw ResolutionError("potential Fourier coefficients have not decayed below 1e-12 by mode " +
                                  std::to_string(N),
                              2 * N);

    const std::size_t size = 2 * N + 1;
    out.M = SymmetricMatrix(size);
    for (std::size_t i = 0; i < size; ++i) {
        const double m = static_cast<double>(i) - static_cast<double>(N);
        const double wave = kTwoPi * m / L;
        for (std::size_t j = 0; j < size; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            out.M(i, j) = -out.coefficients[d];
        }
        out.M(i, i) += wave * wave + c0;
    }
    return out;
}

FourierHillMatrix assemble(const WaveProfile& p, std::size_t N)
{
    return assemble_hill([&p](double x) { return nonlinearity_prime(p.family, eval_phi(p, x).phi); }, p.omega,
                         p.L, N);
}

InertialIndex inertial_index(const std::vector<double>& eigs, double scale)
{
    InertialIndex idx;
    idx.z_tol = 1e-6 * scale;
    for (double e : eigs) {
        if (e < -idx.z_tol)
            ++idx.n_neg;
        else if (e < idx.z_tol)
            ++idx.n_zero;
    }
    for (std::size_t i = 0; i < std::min<std::size_t>(5, eigs.size()); ++i)
        idx.eigensample.push_back(eigs[i]);
    return idx;
}

void check_theta_correspondence(const InertialIndex& idx, double theta)
{
    const int predicted = theta < 0.0 ? 1 : 2;
    if (idx.n_zero != 1 || idx.n_neg != predicted)
        throw ConsistencyError("inertial index (" + std::to_string(idx.n_neg) + "," + std::to_string(idx.n_zero) +
                               ") disagrees with theta sign prediction (" + std::to_string(predicted) + ",1)");
}

ParityBlocks parity_blocks(const FourierHillMatrix& m)
{
    const std::size_t N = m.N;
    const auto& c = m.coefficients;
    auto diag = [&](std::size_t k) { return m.M(N + k, N + k) + c[0]; };
    ParityBlocks b{SymmetricMatrix(N + 1), SymmetricMatrix(N)};
    const double root2 = std::numbers::sqrt2;
    b.even(0, 0) = diag(0) - c[0];
    for (std::size_t j = 1; j <= N; ++j) {
        b.even(0, j) = -root2 * c[j];
        b.even(j, 0) = -root2 * c[j];
    }
    for (std::size_t i = 1; i <= N; ++i) {
        for (std::size_t j = 1; j <= N; ++j) {
            const std::size_t d = i > j ? i - j : j - i;
            const double plain = (i == j ? diag(i) : 0.0) - c[d];
            b.even(i, j) = plain - c[i + j];
            b.odd(i - 1, j - 1) = plain + c[i + j];
        }
    }
    return b;
}

SpectralResult spectral_check(const WaveProfile& p, std::size_t N, std::size_t max_modes)
{
    SpectralResult out;
    for (;;) {
        try {
            out.matrix = assemble(p, N);
            break;
        } catch (const ResolutionError& e) {
            if (e.suggested_modes() > max_modes)
                throw;
            N = e.suggested_modes();
        }
    }
    const ParityBlocks blocks = parity_blocks(out.matrix);
    out.even = eigen_symmetric(blocks.even);
    out.odd = eigen_symmetric(blocks.odd);
    out.eigenvalues = out.even.values;
    out.eigenvalues.insert(out.eigenvalues.end(), out.odd.values.begin(), out.odd.values.end());
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

    double q_max = 0.0;
    for (std::size_t s = 0; s < 512; ++s) {
        const double x = p.L * static_cast<double>(s) / 512.0;
        q_max = std::max(q_max, std::abs(hill_potential(p, x)));
    }
    out.index = inertial_index(out.eigenvalues, q_max);

    // The constant is the first cosine basis vector.
    for (std::size_t j = 0; j < out.even.values.size(); ++j) {
        const double lambda = out.even.values[j];
        if (std::abs(lambda) >= out.index.z_tol) {
            const double v0 = out.even.vectors(0, j);
            out.lone_one += v0 * v0 / lambda;
        }
    }
    out.lone_one *= p.L;

    // Synthesize the eigenvector closest to zero and correlate it with phi'.
    const EigenSystem* block = nullptr;
    std::size_t column = 0;
    double best = out.index.z_tol;
    for (const EigenSystem* b : {&out.even, &out.odd})
        for (std::size_t j = 0; j < b->values.size(); ++j)
            if (std::abs(b->values[j]) < best) {
                best = std::abs(b->values[j]);
                block = b;
                column = j;
            }
    if (block) {
        const bool odd = block == &out.odd;
        const std::size_t samples = 512;
        double dot = 0.0, nn = 0.0, dd = 0.0;
        for (std::size_t s = 0; s < samples; ++s) {
            const double x = p.L * static_cast<double>(s) / static_cast<double>(samples);
            double u = 0.0;
            for (std::size_t r = 0; r < block->values.size(); ++r) {
                const double m = static_cast<double>(odd ? r + 1 : r);
                const double arg = kTwoPi * m * x / p.L;
                u += block->vectors(r, column) * (odd ? std::sin(arg) : std::cos(arg));
            }
            const double d = eval_phi(p, x).dphi;
            dot += u * d;
            nn += u * u;
            dd += d * d;
        }
        out.kernel_correlation = (nn > 0.0 && dd > 0.0) ? std::abs(dot) / std::sqrt(nn * dd) : 0.0;
    }
    return out;
}

} // namespace wavespec
