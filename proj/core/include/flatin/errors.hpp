#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace flatin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A state lies outside the domain an operation requires (D_o, D_c, or the
/// canonical-coordinate band |xi3| < 1).
class DomainError : public Error {
   public:
    using Error::Error;
};

/// Non-finite intermediate value. Carries the last finite state if known.
class NumericsError : public Error {
   public:
    explicit NumericsError(const std::string& what, std::vector<double> last_valid = {})
        : Error(what), last_valid_(std::move(last_valid)) {}

    const std::vector<double>& last_valid_state() const { return last_valid_; }

   private:
    std::vector<double> last_valid_;
};

/// Observability matrix is not regular at the evaluation point.
class SingularityError : public Error {
   public:
    SingularityError(const std::string& what, double det) : Error(what), det_(det) {}
    double det() const { return det_; }

   private:
    double det_;
};

/// The free factor alpha(x) of the flat input vanished.
class InvalidFactorError : public Error {
   public:
    using Error::Error;
};

/// |p_f| fell below the controller guard.
class PfSingularError : public Error {
   public:
    PfSingularError(const std::string& what, double pf) : Error(what), pf_(pf) {}
    double pf() const { return pf_; }

   private:
    double pf_;
};

/// Denominator of the discrete compensator fell below its guard.
class CompensatorSingularError : public Error {
   public:
    CompensatorSingularError(const std::string& what, double denominator)
        : Error(what), denominator_(denominator) {}
    double denominator() const { return denominator_; }

   private:
    double denominator_;
};

/// Controller gains do not define a Hurwitz error polynomial.
class InvalidGainsError : public Error {
   public:
    using Error::Error;
};

/// Malformed simulation or trajectory configuration.
class InvalidConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace flatin
