#pragma once

#include <string_view>
#include <variant>
#include <vector>

namespace pagame {

/// value = sum_j c_j t^j
struct Polynomial {
    std::vector<double> coefficients;
    bool operator==(const Polynomial&) const = default;
};

/// value = a + b exp(c t)
struct ExpAffine {
    double a = 0.0, b = 0.0, c = 0.0;
    bool operator==(const ExpAffine&) const = default;
};

/// value = a + b ln(t + c), defined for t + c > 0
struct LogAffine {
    double a = 0.0, b = 0.0, c = 0.0;
    bool operator==(const LogAffine&) const = default;
};

/// value = a (t + c)^gamma, defined for t + c >= 0
struct Power {
    double a = 0.0, gamma = 1.0, c = 0.0;
    bool operator==(const Power&) const = default;
};

/// Monotone cubic Hermite interpolant through (knots, values).
/// Knot slopes are derived data, computed once at construction.
struct Tabulated {
    std::vector<double> knots;
    std::vector<double> values;
    std::vector<double> slopes;
    bool operator==(const Tabulated&) const = default;
};

enum class CurveFamily { Polynomial, ExpAffine, LogAffine, Power, Tabulated };

std::string_view to_string(CurveFamily family) noexcept;

/// A scalar function of one real variable with analytic first and second
/// derivatives. Used for u, v, B and the profile components p_i(e).
///
/// Curves are immutable. Construction validates the parameters; evaluation
/// outside the family's domain (or outside the knot range of a tabulated
/// curve) throws DomainError. No extrapolation is ever performed.
class Curve1D {
public:
    using Params = std::variant<Polynomial, ExpAffine, LogAffine, Power, Tabulated>;

    /// The zero polynomial.
    Curve1D() : params_(Polynomial{{0.0}}) {}

    static Curve1D polynomial(std::vector<double> coefficients);
    static Curve1D exp_affine(double a, double b, double c);
    static Curve1D log_affine(double a, double b, double c);
    static Curve1D power(double a, double gamma, double c);
    static Curve1D tabulated(std::vector<double> knots, std::vector<double> values);
    static Curve1D constant(double value) { return polynomial({value}); }

    double value(double t) const;
    double d1(double t) const;
    double d2(double t) const;

    /// True when value/d1/d2 are all defined at t.
    bool in_domain(double t) const noexcept;

    CurveFamily family() const noexcept;
    const Params& params() const noexcept { return params_; }

    /// Degree of a polynomial curve after dropping trailing zero
    /// coefficients; -1 for non-polynomial families.
    int polynomial_degree() const noexcept;

    bool operator==(const Curve1D&) const = default;

private:
    explicit Curve1D(Params p) : params_(std::move(p)) {}

    Params params_;
};

}  // namespace pagame
