#pragma once

#include <string>

namespace pscat {

// m : [0, inf) -> [1, inf).  Three families:
//   constant      m(t) = c, c >= 1
//   log power     m(t) = 1 + C ln(1+t)^a, C >= 0, a >= 0
//   power         m(t) = 1 + C t^a, C >= 0, 0 <= a < 1
// All are non-decreasing, which the spectrum sampler relies on.
class MultiplicityFunction {
public:
    enum class Kind { constant, log_power, power };

    static MultiplicityFunction constant(double c);
    static MultiplicityFunction log_power(double C, double a);
    static MultiplicityFunction power(double C, double a);
    // "const:c", "logpow:C,a", "pow:C,a"
    static MultiplicityFunction parse(const std::string& spec);

    Kind kind() const { return kind_; }
    double C() const { return C_; }
    double a() const { return a_; }

    double operator()(double t) const { return value(t); }
    double value(double t) const;
    double derivative(double t) const;
    // int_0^lambda m(t) dt
    double integral(double lambda) const;
    // An exponent beta with m'(t) = O(t^-beta).
    double derivative_decay_exponent() const;
    // nu_m([lo, hi]) = int_lo^hi dt / (16 pi m(t))
    double intensity_mass(double lo, double hi) const;

    std::string to_string() const;

    friend bool operator==(const MultiplicityFunction&, const MultiplicityFunction&) = default;

private:
    MultiplicityFunction(Kind k, double C, double a) : kind_(k), C_(C), a_(a) {}

    Kind kind_;
    double C_;  // c for the constant family
    double a_;
};

}  // namespace pscat
