#include "cpmedium/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>

#include "cpmedium/errors.hpp"
#include "parallel.hpp"

namespace cpmedium {

namespace {

// Kronrod abscissae on [0, 1] (descending) and weights; Gauss weights belong to
// the odd-indexed abscissae and the centre.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kNodes = 15;
using Samples = std::array<double, kNodes>;

// Kahan-Babuska-Neumaier compensated sum.
class Neumaier {
public:
    void add(double x) {
        const double t = sum_ + x;
        comp_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Node j of a panel, ascending in x.
double node(double a, double b, int j) {
    const double c = 0.5 * (a + b);
    const double hl = 0.5 * (b - a);
    return j < 7 ? c - hl * kXgk[j] : c + hl * kXgk[14 - j];
}

RuleResult apply_rule(const Samples& f, const Samples& ferr, double a, double b) {
    const double hl = 0.5 * (b - a);
    const double fc = f[7];
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);
    double propagated = kWgk[7] * ferr[7];
    for (int j = 0; j < 7; ++j) {
        const double f1 = f[j], f2 = f[14 - j];
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        propagated += kWgk[j] * (ferr[j] + ferr[14 - j]);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(f[j] - reskh) + std::abs(f[14 - j] - reskh));

    const double ahl = std::abs(hl);
    resabs *= ahl;
    resasc *= ahl;
    double err = std::abs((resk - resg) * hl);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(50.0 * eps * resabs, err);
    return {resk * hl, err + propagated * ahl};
}

// Evaluates f (and an error attached to each value) at the given abscissae.
using BatchEval = std::function<void(std::span<const double>, std::span<double>, std::span<double>)>;

struct Panel {
    double a, b;
    RuleResult rule;
};

struct Adaptive {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
    std::vector<double> level_errors;
};

std::vector<Panel> evaluate_panels(const BatchEval& eval,
                                   const std::vector<std::pair<double, double>>& ranges) {
    std::vector<double> x(ranges.size() * kNodes), f(x.size()), ferr(x.size());
    for (std::size_t p = 0; p < ranges.size(); ++p)
        for (int j = 0; j < kNodes; ++j) x[p * kNodes + j] = node(ranges[p].first, ranges[p].second, j);
    eval(x, f, ferr);
    std::vector<Panel> out;
    out.reserve(ranges.size());
    for (std::size_t p = 0; p < ranges.size(); ++p) {
        Samples fs{}, es{};
        std::copy_n(f.begin() + p * kNodes, kNodes, fs.begin());
        std::copy_n(ferr.begin() + p * kNodes, kNodes, es.begin());
        out.push_back({ranges[p].first, ranges[p].second,
                       apply_rule(fs, es, ranges[p].first, ranges[p].second)});
    }
    return out;
}

// Level-wise refinement: every panel whose error exceeds its share of the
// tolerance (by width) is bisected, then the new halves are evaluated as one
// batch.
Adaptive adaptive(const BatchEval& eval, double a, double b, int initial_panels, double rel_tol,
                  double abs_tol, int max_levels, const std::function<bool()>& out_of_budget) {
    std::vector<std::pair<double, double>> ranges;
    for (int i = 0; i < initial_panels; ++i)
        ranges.emplace_back(a + (b - a) * i / initial_panels,
                            i + 1 == initial_panels ? b : a + (b - a) * (i + 1) / initial_panels);
    std::vector<Panel> panels = evaluate_panels(eval, ranges);

    Adaptive out;
    for (int level = 0;; ++level) {
        Neumaier value, error;
        for (const auto& p : panels) {
            value.add(p.rule.value);
            error.add(p.rule.error);
        }
        out.value = value.value();
        out.error = error.value();
        out.level_errors.push_back(out.error);
        const double tol = std::max(rel_tol * std::abs(out.value), abs_tol);
        if (out.error <= tol) {
            out.converged = true;
            break;
        }
        if (level >= max_levels || (out_of_budget && out_of_budget())) break;

        const double density = tol / (b - a);
        std::vector<char> split(panels.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].rule.error > density * (panels[i].b - panels[i].a)) split[i] = any = true;
        }
        if (!any) {
            const auto worst = std::max_element(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
                return x.rule.error < y.rule.error;
            });
            split[worst - panels.begin()] = 1;
        }
        std::vector<std::pair<double, double>> halves;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (!split[i]) continue;
            const double mid = 0.5 * (panels[i].a + panels[i].b);
            halves.emplace_back(panels[i].a, mid);
            halves.emplace_back(mid, panels[i].b);
        }
        const auto fresh = evaluate_panels(eval, halves);
        std::vector<Panel> next;
        next.reserve(panels.size() + fresh.size() / 2);
        std::size_t h = 0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (split[i]) {
                next.push_back(fresh[h++]);
                next.push_back(fresh[h++]);
            } else {
                next.push_back(panels[i]);
            }
        }
        panels = std::move(next);
    }
    return out;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void QuadratureSettings::validate() const {
    if (!(rel_tol >= 1e-12) || !std::isfinite(rel_tol))
        throw DomainError("rel_tol must be >= 1e-12, got " + fmt(rel_tol));
    if (!(abs_tol >= 0.0) || !std::isfinite(abs_tol))
        throw DomainError("abs_tol must be finite and >= 0, got " + fmt(abs_tol));
    if (max_refinements < 0) throw DomainError("max_refinements must be >= 0");
    if (node_budget < 1000) throw DomainError("node_budget must be >= 1000");
}

RuleResult gauss_kronrod15(const std::function<double(double)>& f, double a, double b) {
    Samples fs{}, es{};
    for (int j = 0; j < kNodes; ++j) fs[j] = f(node(a, b, j));
    return apply_rule(fs, es, a, b);
}

EnergyResult integrate_quarter_plane(const SpectralIntegrand& J, int sign, double alpha,
                                     const QuadratureSettings& settings) {
    settings.validate();
    if (sign != 1 && sign != -1) throw DomainError("sign must be +1 or -1");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw DomainError("alpha must be finite and positive, got " + fmt(alpha));
    const double scale = settings.radial_scale > 0.0 ? settings.radial_scale : 1.0;
    const double prefactor = alpha / std::numbers::pi;
    const double inner_rel = 0.25 * settings.rel_tol;

    // Radial integral at fixed theta over t in (0, 1), rho = t / ((1 - t) s).
    const auto radial = [&](double theta, long& evaluations) {
        const double c = std::cos(theta), s = std::sin(theta);
        const BatchEval eval = [&](std::span<const double> t, std::span<double> f, std::span<double> e) {
            for (std::size_t i = 0; i < t.size(); ++i) {
                const double om = 1.0 - t[i];
                const double rho = t[i] / (om * scale);
                const SpectralPoint pt{rho * c, rho * s};
                const double j = J(pt);
                if (!std::isfinite(j))
                    throw IntegrityError("non-finite integrand at (zeta, k) = (" + fmt(pt.zeta) + ", " +
                                         fmt(pt.k) + ")");
                f[i] = j == 0.0 ? 0.0 : rho * rho * s * j / (om * om * scale);
                e[i] = 0.0;
            }
            evaluations += static_cast<long>(t.size());
        };
        return adaptive(eval, 0.0, 1.0, 4, inner_rel, 0.0, settings.max_refinements, {});
    };

    long evaluations = 0;
    const BatchEval angular = [&](std::span<const double> theta, std::span<double> f, std::span<double> e) {
        std::vector<long> counts(theta.size(), 0);
        detail::parallel_for(theta.size(), [&](std::size_t i) {
            const Adaptive r = radial(theta[i], counts[i]);
            f[i] = r.value;
            e[i] = r.error;
        });
        for (long c : counts) evaluations += c;
    };
    const Adaptive outer =
        adaptive(angular, 0.0, 0.5 * std::numbers::pi, 2, settings.rel_tol,
                 settings.abs_tol / prefactor, settings.max_refinements,
                 [&] { return evaluations >= settings.node_budget; });

    EnergyResult out;
    out.value = sign * prefactor * outer.value;
    out.error_estimate = prefactor * outer.error;
    out.evaluations = evaluations;
    out.converged = outer.converged;
    for (double e : outer.level_errors) out.level_errors.push_back(prefactor * e);
    return out;
}

}  // namespace cpmedium
