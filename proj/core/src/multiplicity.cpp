#include "pscat/multiplicity.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <sstream>

#include "pscat/error.hpp"

namespace pscat {

MultiplicityFunction MultiplicityFunction::constant(double c) {
    if (!(c >= 1.0) || !std::isfinite(c)) throw ValidationError("constant multiplicity must be >= 1");
    return {Kind::constant, c, 0.0};
}

MultiplicityFunction MultiplicityFunction::log_power(double C, double a) {
    if (!(C >= 0.0) || !(a >= 0.0) || !std::isfinite(C) || !std::isfinite(a))
        throw ValidationError("logpow multiplicity needs C >= 0 and a >= 0");
    return {Kind::log_power, C, a};
}

MultiplicityFunction MultiplicityFunction::power(double C, double a) {
    if (!(C >= 0.0) || !std::isfinite(C)) throw ValidationError("pow multiplicity needs C >= 0");
    if (!(a >= 0.0 && a < 1.0)) throw ValidationError("pow multiplicity exponent must lie in [0, 1)");
    return {Kind::power, C, a};
}

MultiplicityFunction MultiplicityFunction::parse(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw ValidationError("multiplicity spec needs kind:params: " + spec);
    std::string kind = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    std::function<double(const std::string&)> num = [&](const std::string& s) -> double {
        // "n/d" is accepted so that exponents like 1/3 can be written exactly
        if (auto slash = s.find('/'); slash != std::string::npos) {
            double d = num(s.substr(slash + 1));
            if (d == 0.0) throw ValidationError("zero denominator in multiplicity spec: " + spec);
            return num(s.substr(0, slash)) / d;
        }
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ValidationError("bad number in multiplicity spec: " + spec);
        }
        if (used != s.size()) throw ValidationError("bad number in multiplicity spec: " + spec);
        return v;
    };
    if (kind == "const") return constant(num(rest));
    auto comma = rest.find(',');
    if (comma == std::string::npos) throw ValidationError("multiplicity spec needs C,a: " + spec);
    double C = num(rest.substr(0, comma)), a = num(rest.substr(comma + 1));
    if (kind == "logpow") return log_power(C, a);
    if (kind == "pow") return power(C, a);
    throw ValidationError("unknown multiplicity kind: " + kind);
}

double MultiplicityFunction::value(double t) const {
    switch (kind_) {
    case Kind::constant: return C_;
    case Kind::log_power: return 1.0 + C_ * std::pow(std::log1p(t), a_);
    case Kind::power: return 1.0 + C_ * std::pow(t, a_);
    }
    return 1.0;
}

double MultiplicityFunction::derivative(double t) const {
    switch (kind_) {
    case Kind::constant: return 0.0;
    case Kind::log_power:
        if (a_ == 0.0) return 0.0;
        return C_ * a_ * std::pow(std::log1p(t), a_ - 1.0) / (1.0 + t);
    case Kind::power:
        if (a_ == 0.0) return 0.0;
        return C_ * a_ * std::pow(t, a_ - 1.0);
    }
    return 0.0;
}

double MultiplicityFunction::integral(double lambda) const {
    if (lambda <= 0.0) return 0.0;
    switch (kind_) {
    case Kind::constant: return C_ * lambda;
    case Kind::power: return lambda + C_ * std::pow(lambda, 1.0 + a_) / (1.0 + a_);
    case Kind::log_power: {
        // int_0^lambda ln(1+t)^a dt = int_0^L u^a e^u du, L = ln(1+lambda)
        //                          = sum_n L^{n+a+1} / (n! (n+a+1))
        const double L = std::log1p(lambda);
        double term = std::pow(L, a_ + 1.0);  // L^{n+a+1} / n! at n = 0
        double sum = 0.0;
        for (int n = 0; n < 10000; ++n) {
            double add = term / (n + a_ + 1.0);
            sum += add;
            if (n > L && add < 1e-17 * sum) break;
            term *= L / (n + 1);
        }
        return lambda + C_ * sum;
    }
    }
    return lambda;
}

double MultiplicityFunction::derivative_decay_exponent() const {
    switch (kind_) {
    case Kind::constant: return 1.0;
    case Kind::power: return a_ == 0.0 ? 1.0 : 1.0 - a_;
    case Kind::log_power: return 0.5;  // any beta < 1 works
    }
    return 1.0;
}

double MultiplicityFunction::intensity_mass(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    if (kind_ == Kind::constant) return (hi - lo) / (16.0 * M_PI * C_);
    auto f = [this](double t) { return 1.0 / (16.0 * M_PI * value(t)); };
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-13);
}

std::string MultiplicityFunction::to_string() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
    case Kind::constant: os << "const:" << C_; break;
    case Kind::log_power: os << "logpow:" << C_ << ',' << a_; break;
    case Kind::power: os << "pow:" << C_ << ',' << a_; break;
    }
    return os.str();
}

}  // namespace pscat
