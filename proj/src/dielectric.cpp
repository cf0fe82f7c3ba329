#include "casimir/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Beyond this the stable rTM numerator would overflow when squared.
constexpr double kHugeEpsilon = 1e100;

double interpolateLogLog(const TabulatedPermittivity& t, double xi) {
    if (xi == 0.0) {
        if (t.staticEps) return *t.staticEps;
        throw ExtrapolationError("tabulated permittivity has no static (xi = 0) entry");
    }
    if (xi < t.xi.front() || xi > t.xi.back()) {
        std::ostringstream os;
        os << "tabulated permittivity queried at xi = " << xi << " rad/s outside ["
           << t.xi.front() << ", " << t.xi.back() << "]";
        throw ExtrapolationError(os.str());
    }
    auto it = std::upper_bound(t.xi.begin(), t.xi.end(), xi);
    if (it == t.xi.end()) return t.eps.back();
    const auto i = static_cast<std::size_t>(it - t.xi.begin()) - 1;
    const double w = std::log(xi / t.xi[i]) / std::log(t.xi[i + 1] / t.xi[i]);
    return std::exp((1.0 - w) * std::log(t.eps[i]) + w * std::log(t.eps[i + 1]));
}

}  // namespace

std::string describe(const PermittivityModel& model) {
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{
                   [&](const IdealMetal&) { os << "ideal-metal"; },
                   [&](const PlasmaModel& m) { os << "plasma(omega_p=" << m.omegaP << " rad/s)"; },
                   [&](const DrudeModel& m) {
                       os << "drude(omega_p=" << m.omegaP << " rad/s, gamma=" << m.gamma
                          << " rad/s)";
                   },
                   [&](const TabulatedPermittivity& t) {
                       os << "tabulated(" << t.xi.size() << " points"
                          << (t.staticEps ? ", static" : "") << ")";
                   },
               },
               model);
    return os.str();
}

PermittivityModel goldPlasma() { return PlasmaModel{eVToRadPerSecond(kGoldPlasmaEnergyEV)}; }

PermittivityModel goldDrude() {
    return DrudeModel{eVToRadPerSecond(kGoldPlasmaEnergyEV),
                      eVToRadPerSecond(kGoldRelaxationEnergyEV)};
}

void validateModel(const PermittivityModel& model) {
    std::visit(Overloaded{
                   [](const IdealMetal&) {},
                   [](const PlasmaModel& m) {
                       if (!(std::isfinite(m.omegaP) && m.omegaP > 0.0))
                           throw DomainError("plasma model: omega_p must be positive");
                   },
                   [](const DrudeModel& m) {
                       if (!(std::isfinite(m.omegaP) && m.omegaP > 0.0))
                           throw DomainError("Drude model: omega_p must be positive");
                       if (!(std::isfinite(m.gamma) && m.gamma > 0.0))
                           throw DomainError("Drude model: gamma must be positive");
                   },
                   [](const TabulatedPermittivity& t) {
                       if (t.xi.size() != t.eps.size() || t.xi.size() < 2)
                           throw DomainError("tabulated permittivity needs at least 2 points");
                       for (std::size_t i = 0; i < t.xi.size(); ++i) {
                           if (!(t.xi[i] > 0.0) || (i > 0 && !(t.xi[i] > t.xi[i - 1])))
                               throw DomainError("tabulated xi must be positive and increasing");
                           if (!(t.eps[i] >= 1.0) || (i > 0 && t.eps[i] > t.eps[i - 1]))
                               throw DomainError(
                                   "tabulated eps must be >= 1 and non-increasing in xi");
                       }
                       if (t.staticEps && !(*t.staticEps >= t.eps.front()))
                           throw DomainError("static permittivity must be >= eps at the first xi");
                   },
               },
               model);
}

double epsilonAtImaginary(const PermittivityModel& model, double xi) {
    if (!(xi >= 0.0)) throw DomainError("epsilonAtImaginary: xi must be >= 0");
    return std::visit(Overloaded{
                          [](const IdealMetal&) -> double { return INFINITY; },
                          [xi](const PlasmaModel& m) -> double {
                              if (xi == 0.0) return INFINITY;
                              const double r = m.omegaP / xi;
                              return 1.0 + r * r;
                          },
                          [xi](const DrudeModel& m) -> double {
                              if (xi == 0.0) return INFINITY;
                              return 1.0 + m.omegaP * m.omegaP / (xi * (xi + m.gamma));
                          },
                          [xi](const TabulatedPermittivity& t) -> double { return interpolateLogLog(t, xi); },
                      },
                      model);
}

ReflectionAtFrequency::ReflectionAtFrequency(const PermittivityModel& model, double zeta,
                                             double a)
    : branch_(Branch::Finite), zeta_(zeta) {
    if (!(zeta >= 0.0)) throw DomainError("reflection coefficients: zeta must be >= 0");
    if (!(a > 0.0)) throw DomainError("reflection coefficients: separation must be positive");
    using K = PhysicalConstants;

    if (std::holds_alternative<IdealMetal>(model)) {
        branch_ = Branch::Ideal;
        return;
    }
    if (zeta == 0.0) {
        if (const auto* m = std::get_if<PlasmaModel>(&model)) {
            branch_ = Branch::PlasmaStatic;
            const double omega = 2.0 * a * m->omegaP / K::c;
            p_ = omega * omega;
        } else if (std::holds_alternative<DrudeModel>(model)) {
            branch_ = Branch::DrudeStatic;
        } else {
            branch_ = Branch::DielectricStatic;
            eps_ = epsilonAtImaginary(model, 0.0);
        }
        return;
    }

    const double xi = K::c * zeta / (2.0 * a);
    if (const auto* m = std::get_if<PlasmaModel>(&model)) {
        const double omega = 2.0 * a * m->omegaP / K::c;
        p_ = omega * omega;
        epsMinusOne_ = p_ / (zeta * zeta);
    } else if (const auto* m = std::get_if<DrudeModel>(&model)) {
        const double omega = 2.0 * a * m->omegaP / K::c;
        const double g = 2.0 * a * m->gamma / K::c;
        p_ = omega * omega * zeta / (zeta + g);
        epsMinusOne_ = m->omegaP * m->omegaP / (xi * (xi + m->gamma));
    } else {
        epsMinusOne_ = epsilonAtImaginary(model, xi) - 1.0;
        p_ = epsMinusOne_ * zeta * zeta;
    }
    eps_ = 1.0 + epsMinusOne_;
}

ReflectionAtFrequency::Value ReflectionAtFrequency::at(double v) const {
    if (!(v >= zeta_) || v < 0.0) {
        std::ostringstream os;
        os << "reflection coefficients require v >= zeta (v = " << v << ", zeta = " << zeta_ << ")";
        throw DomainError(os.str());
    }
    switch (branch_) {
        case Branch::Ideal: return {1.0, -1.0, 0.0, 0.0};
        case Branch::DrudeStatic: return {1.0, 0.0, 0.0, 1.0};
        case Branch::DielectricStatic:
            return {(eps_ - 1.0) / (eps_ + 1.0), 0.0, 2.0 / (eps_ + 1.0), 1.0};
        case Branch::PlasmaStatic: {
            const double k = std::sqrt(v * v + p_);
            const double s = v + k;
            return {1.0, -p_ / (s * s), 0.0, 2.0 * v / s};
        }
        case Branch::Finite: break;
    }
    const double k = std::sqrt(v * v + p_);
    const double s = v + k;
    Value r;
    r.rTE = -p_ / (s * s);
    r.oneMinusAbsTE = 2.0 * v / s;
    const double denom = eps_ * v + k;
    r.oneMinusTM = 2.0 * k / denom;
    if (eps_ < kHugeEpsilon) {
        r.rTM = epsMinusOne_ * ((eps_ + 1.0) * v * v - zeta_ * zeta_) / (denom * denom);
    } else {
        r.rTM = 1.0 - r.oneMinusTM;
    }
    return r;
}

double ReflectionAtFrequency::logSquaredTM(const Value& r) {
    if (r.oneMinusTM < 0.5) return 2.0 * std::log1p(-r.oneMinusTM);
    return r.rTM == 0.0 ? -INFINITY : 2.0 * std::log(std::abs(r.rTM));
}

double ReflectionAtFrequency::logSquaredTE(const Value& r) {
    if (r.oneMinusAbsTE < 0.5) return 2.0 * std::log1p(-r.oneMinusAbsTE);
    return r.rTE == 0.0 ? -INFINITY : 2.0 * std::log(std::abs(r.rTE));
}

ReflectionPair reflectionCoefficients(const PermittivityModel& model, double zeta, double v,
                                      double a) {
    const auto r = ReflectionAtFrequency(model, zeta, a).at(v);
    return {r.rTM, r.rTE};
}

TabulatedPermittivity parseTabulatedPermittivity(std::istream& in, const std::string& sourceName) {
    TabulatedPermittivity t;
    std::string line;
    int lineNo = 0;
    auto fail = [&](const std::string& msg) {
        std::ostringstream os;
        os << sourceName << ":" << lineNo << ": " << msg;
        throw DomainError(os.str());
    };
    bool anyData = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double xi = 0.0;
        double eps = 0.0;
        if (!(fields >> xi)) {
            std::string rest;
            fields.clear();
            if (fields >> rest) fail("malformed line, expected 'xi epsilon'");
            continue;  // blank
        }
        if (!(fields >> eps)) fail("malformed line, expected 'xi epsilon'");
        std::string extra;
        if (fields >> extra) fail("unexpected extra column '" + extra + "'");
        if (!std::isfinite(xi) || !std::isfinite(eps)) fail("non-finite value");
        if (!(eps >= 1.0)) fail("epsilon must be >= 1 on the imaginary axis");
        if (xi < 0.0) fail("xi must be >= 0");
        if (xi == 0.0) {
            if (anyData) fail("a static (xi = 0) row is only allowed as the first data row");
            t.staticEps = eps;
            anyData = true;
            continue;
        }
        anyData = true;
        if (!t.xi.empty() && !(xi > t.xi.back())) fail("xi grid must be strictly increasing");
        const double prevEps = !t.eps.empty() ? t.eps.back() : t.staticEps.value_or(INFINITY);
        if (eps > prevEps) fail("epsilon must decrease monotonically with xi");
        t.xi.push_back(xi);
        t.eps.push_back(eps);
    }
    if (t.xi.size() < 2) {
        throw DomainError(sourceName + ": tabulated permittivity needs at least 2 points with xi > 0");
    }
    return t;
}

TabulatedPermittivity loadTabulatedPermittivity(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open permittivity table " + path.string());
    return parseTabulatedPermittivity(in, path.string());
}

}  // namespace casimir
