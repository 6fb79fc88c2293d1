#ifndef WAVESPEC_ERRORS_HPP
#define WAVESPEC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wavespec {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (k >= 1, beta > pi/2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite or non-convergent intermediate result.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Requested wave speed lies outside the admissible interval of a family.
class RangeError : public Error {
public:
    RangeError(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// Caller broke a precondition that is not a mathematical domain issue
/// (non-uniform grid, non-symmetric matrix, malformed configuration).
class ContractError : public Error {
public:
    using Error::Error;
};

/// phi''(0) vanishes, so the normalisation of the auxiliary solution is undefined.
class DegenerateProfileError : public Error {
public:
    using Error::Error;
};

/// |theta| below tolerance: the zero eigenvalue cannot be certified simple.
class KernelError : public Error {
public:
    using Error::Error;
};

/// I or det(D) too close to zero for the index count to be meaningful.
class AtThreshold : public Error {
public:
    using Error::Error;
};

/// No sign change of I inside the admissible modulus range.
class NoThreshold : public Error {
public:
    using Error::Error;
};

/// Two independent determinations of the same structural quantity disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// Fourier truncation too coarse for the potential; carries a suggested mode count.
class ResolutionError : public Error {
public:
    ResolutionError(const std::string& what, std::size_t suggested)
        : Error(what), suggested_(suggested) {}
    std::size_t suggested_modes() const noexcept { return suggested_; }

private:
    std::size_t suggested_;
};

} // namespace wavespec

#endif
