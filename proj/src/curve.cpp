#include "pagame/curve.hpp"

#include "pagame/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace pagame {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw DomainError(std::string("curve parameter '") + what + "' must be finite");
    }
}

[[noreturn]] void domain_fail(std::string_view family, double t) {
    std::ostringstream os;
    os.precision(17);
    os << family << " curve evaluated outside its domain at t=" << t;
    throw DomainError(os.str());
}

double checked(double result, std::string_view family, double t) {
    if (!std::isfinite(result)) {
        domain_fail(family, t);
    }
    return result;
}

// Fritsch-Carlson monotone slopes.
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> secant(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        secant[k] = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    }
    std::vector<double> m(n);
    m.front() = secant.front();
    m.back() = secant.back();
    for (std::size_t k = 1; k + 1 < n; ++k) {
        m[k] = secant[k - 1] * secant[k] <= 0.0 ? 0.0 : 0.5 * (secant[k - 1] + secant[k]);
    }
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (secant[k] == 0.0) {
            m[k] = 0.0;
            m[k + 1] = 0.0;
            continue;
        }
        const double alpha = m[k] / secant[k];
        const double beta = m[k + 1] / secant[k];
        const double r2 = alpha * alpha + beta * beta;
        if (r2 > 9.0) {
            const double tau = 3.0 / std::sqrt(r2);
            m[k] = tau * alpha * secant[k];
            m[k + 1] = tau * beta * secant[k];
        }
    }
    return m;
}

struct HermiteSegment {
    double h, s, y0, y1, m0, m1;
};

HermiteSegment locate(const Tabulated& tab, double t) {
    if (!(t >= tab.knots.front() && t <= tab.knots.back())) {
        domain_fail("tabulated", t);
    }
    auto it = std::upper_bound(tab.knots.begin(), tab.knots.end(), t);
    std::size_t k = static_cast<std::size_t>(it - tab.knots.begin());
    k = std::clamp<std::size_t>(k, 1, tab.knots.size() - 1) - 1;
    const double h = tab.knots[k + 1] - tab.knots[k];
    return {h, (t - tab.knots[k]) / h, tab.values[k], tab.values[k + 1], tab.slopes[k], tab.slopes[k + 1]};
}

}  // namespace

std::string_view to_string(CurveFamily family) noexcept {
    switch (family) {
        case CurveFamily::Polynomial: return "polynomial";
        case CurveFamily::ExpAffine: return "exp_affine";
        case CurveFamily::LogAffine: return "log_affine";
        case CurveFamily::Power: return "power";
        case CurveFamily::Tabulated: return "tabulated";
    }
    return "unknown";
}

Curve1D Curve1D::polynomial(std::vector<double> coefficients) {
    if (coefficients.empty()) {
        throw DomainError("polynomial curve needs at least one coefficient");
    }
    for (double c : coefficients) require_finite(c, "coefficient");
    return Curve1D(Polynomial{std::move(coefficients)});
}

Curve1D Curve1D::exp_affine(double a, double b, double c) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(c, "c");
    return Curve1D(ExpAffine{a, b, c});
}

Curve1D Curve1D::log_affine(double a, double b, double c) {
    require_finite(a, "a");
    require_finite(b, "b");
    require_finite(c, "c");
    return Curve1D(LogAffine{a, b, c});
}

Curve1D Curve1D::power(double a, double gamma, double c) {
    require_finite(a, "a");
    require_finite(gamma, "gamma");
    require_finite(c, "c");
    return Curve1D(Power{a, gamma, c});
}

Curve1D Curve1D::tabulated(std::vector<double> knots, std::vector<double> values) {
    if (knots.size() != values.size()) {
        throw DimensionError("tabulated curve: knots and values differ in length");
    }
    if (knots.size() < 3) {
        throw DomainError("tabulated curve needs at least 3 knots");
    }
    for (std::size_t k = 0; k < knots.size(); ++k) {
        require_finite(knots[k], "knot");
        require_finite(values[k], "value");
        if (k > 0 && !(knots[k] > knots[k - 1])) {
            throw DomainError("tabulated curve knots must be strictly increasing");
        }
    }
    auto slopes = monotone_slopes(knots, values);
    return Curve1D(Tabulated{std::move(knots), std::move(values), std::move(slopes)});
}

CurveFamily Curve1D::family() const noexcept {
    return static_cast<CurveFamily>(params_.index());
}

int Curve1D::polynomial_degree() const noexcept {
    const auto* p = std::get_if<Polynomial>(&params_);
    if (p == nullptr) return -1;
    int degree = static_cast<int>(p->coefficients.size()) - 1;
    while (degree > 0 && p->coefficients[static_cast<std::size_t>(degree)] == 0.0) --degree;
    return degree;
}

bool Curve1D::in_domain(double t) const noexcept {
    if (!std::isfinite(t)) return false;
    try {
        (void)value(t);
        (void)d1(t);
        (void)d2(t);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

double Curve1D::value(double t) const {
    return std::visit(
        overloaded{
            [t](const Polynomial& p) {
                double acc = 0.0;
                for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
                    acc = acc * t + *it;
                }
                return checked(acc, "polynomial", t);
            },
            [t](const ExpAffine& p) { return checked(p.a + p.b * std::exp(p.c * t), "exp_affine", t); },
            [t](const LogAffine& p) {
                if (!(t + p.c > 0.0)) domain_fail("log_affine", t);
                return checked(p.a + p.b * std::log(t + p.c), "log_affine", t);
            },
            [t](const Power& p) {
                if (!(t + p.c >= 0.0)) domain_fail("power", t);
                return checked(p.a * std::pow(t + p.c, p.gamma), "power", t);
            },
            [t](const Tabulated& tab) {
                const auto g = locate(tab, t);
                const double s = g.s, s2 = s * s, s3 = s2 * s;
                return (2 * s3 - 3 * s2 + 1) * g.y0 + (s3 - 2 * s2 + s) * g.h * g.m0 +
                       (-2 * s3 + 3 * s2) * g.y1 + (s3 - s2) * g.h * g.m1;
            },
        },
        params_);
}

double Curve1D::d1(double t) const {
    return std::visit(
        overloaded{
            [t](const Polynomial& p) {
                double acc = 0.0;
                const auto& c = p.coefficients;
                for (std::size_t j = c.size(); j-- > 1;) {
                    acc = acc * t + static_cast<double>(j) * c[j];
                }
                return checked(acc, "polynomial", t);
            },
            [t](const ExpAffine& p) { return checked(p.b * p.c * std::exp(p.c * t), "exp_affine", t); },
            [t](const LogAffine& p) {
                if (!(t + p.c > 0.0)) domain_fail("log_affine", t);
                return checked(p.b / (t + p.c), "log_affine", t);
            },
            [t](const Power& p) {
                if (!(t + p.c >= 0.0)) domain_fail("power", t);
                if (p.gamma == 0.0) return 0.0;
                return checked(p.a * p.gamma * std::pow(t + p.c, p.gamma - 1.0), "power", t);
            },
            [t](const Tabulated& tab) {
                const auto g = locate(tab, t);
                const double s = g.s, s2 = s * s;
                return ((6 * s2 - 6 * s) * g.y0 + (3 * s2 - 4 * s + 1) * g.h * g.m0 +
                        (-6 * s2 + 6 * s) * g.y1 + (3 * s2 - 2 * s) * g.h * g.m1) /
                       g.h;
            },
        },
        params_);
}

double Curve1D::d2(double t) const {
    return std::visit(
        overloaded{
            [t](const Polynomial& p) {
                double acc = 0.0;
                const auto& c = p.coefficients;
                for (std::size_t j = c.size(); j-- > 2;) {
                    acc = acc * t + static_cast<double>(j * (j - 1)) * c[j];
                }
                return checked(acc, "polynomial", t);
            },
            [t](const ExpAffine& p) {
                return checked(p.b * p.c * p.c * std::exp(p.c * t), "exp_affine", t);
            },
            [t](const LogAffine& p) {
                if (!(t + p.c > 0.0)) domain_fail("log_affine", t);
                const double z = t + p.c;
                return checked(-p.b / (z * z), "log_affine", t);
            },
            [t](const Power& p) {
                if (!(t + p.c >= 0.0)) domain_fail("power", t);
                if (p.gamma == 0.0 || p.gamma == 1.0) return 0.0;
                return checked(p.a * p.gamma * (p.gamma - 1.0) * std::pow(t + p.c, p.gamma - 2.0),
                               "power", t);
            },
            [t](const Tabulated& tab) {
                const auto g = locate(tab, t);
                const double s = g.s;
                return ((12 * s - 6) * g.y0 + (6 * s - 4) * g.h * g.m0 + (-12 * s + 6) * g.y1 +
                        (6 * s - 2) * g.h * g.m1) /
                       (g.h * g.h);
            },
        },
        params_);
}

}  // namespace pagame
