#include "cpmedium/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "cpmedium/besselx.hpp"
#include "cpmedium/energy.hpp"
#include "cpmedium/errors.hpp"
#include "cpmedium/exactmodel.hpp"

namespace cpmedium::cli {

std::string format_number(double v) {
    if (v == 0.0) return "0";  // no "-0"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

namespace {

const char* kFigureHeader = "Z_over_a,ratio_numeric,ratio_perturbative,converged";

struct Common {
    double alpha = 1.0;
    double Z = 1.0;
    std::string mode = "TE";
    std::string out_path;
    double rel_tol = QuadratureSettings{}.rel_tol;
    double abs_tol = QuadratureSettings{}.abs_tol;
    long nodes = QuadratureSettings{}.node_budget;
    int max_refinements = QuadratureSettings{}.max_refinements;

    QuadratureSettings settings() const {
        QuadratureSettings s;
        s.rel_tol = rel_tol;
        s.abs_tol = abs_tol;
        s.node_budget = nodes;
        s.max_refinements = max_refinements;
        s.validate();
        return s;
    }
    Mode spectral_mode() const { return mode == "TM" ? Mode::TM : Mode::TE; }
};

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::string quoted(const std::string& s) { return '"' + s + '"'; }

void add_quadrature_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--rel-tol", c.rel_tol, "Relative tolerance of the quadrature");
    cmd->add_option("--abs-tol", c.abs_tol, "Absolute tolerance, energy units");
    cmd->add_option("--nodes", c.nodes, "Integrand evaluation budget");
    cmd->add_option("--max-refinements", c.max_refinements, "Refinement levels per direction");
}

void add_atom_flags(CLI::App* cmd, Common& c, bool with_total) {
    std::vector<std::string> modes{"TE", "TM"};
    if (with_total) modes.push_back("TOTAL");
    cmd->add_option("--mode", c.mode, "Polarization")
        ->required()
        ->transform([](std::string s) { return upper(std::move(s)); })
        ->check(CLI::IsMember(modes));
    cmd->add_option("--alpha", c.alpha, "Static polarizability")->required();
    cmd->add_option("--Z", c.Z, "Distance of the atom from the interface")->required();
    cmd->add_option("--out", c.out_path, "Write the CSV here instead of stdout");
}

// Writes to the --out file if given, otherwise to `out`.
void emit(const Common& c, std::ostream& out, const std::string& text) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open " + c.out_path + " for writing");
    f << text;
}

std::string energy_row(const EnergyResult& r, double ratio) {
    return format_number(r.value) + ',' + format_number(r.error_estimate) + ',' +
           format_number(ratio) + ',' + std::to_string(r.evaluations) + ',' +
           format_number(r.max_wronskian_residual) + ',' + (r.converged ? "1" : "0");
}

bool is_plus_model(const PermittivityProfile& p) {
    return p.kind() == ProfileKind::InverseSquare && p.orientation() == Orientation::Plus;
}

int selftest(std::ostream& out) {
    struct Check {
        const char* name;
        std::function<double()> deviation;
        double tolerance;
    };
    const auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    const double pi = std::numbers::pi;
    const auto minus = PermittivityProfile::inverse_square(1.0, 1.0, Orientation::Minus);
    const std::vector<Check> checks{
        {"bessel half-order closed form",
         [&] {
             const auto b = bessel_pair(0.5, 1.0);
             return std::max(rel(b.scaled_I, std::sqrt(2.0 / pi) * std::sinh(1.0) * std::exp(-1.0)),
                             rel(b.scaled_K, std::sqrt(pi / 2.0)));
         },
         1e-10},
        {"bessel Wronskian",
         [&] {
             const auto b = bessel_pair(3.7, 5.1);
             const double w = std::exp(b.log_scaled_I + b.log_scaled_K) * (b.logderiv_K - b.logderiv_I);
             return rel(w, -1.0 / 5.1);
         },
         1e-12},
        {"vacuum TE wall through the Riccati pipeline",
         [&] {
             const AtomSpec atom{1.0, 1.0};
             return rel(wall_energy(PermittivityProfile::vacuum(), Mode::TE, atom).value,
                        vacuum_cp(Mode::TE, atom));
         },
         1e-5},
        {"constant medium TE wall",
         [&] {
             return rel(wall_energy(PermittivityProfile::constant(4.0), Mode::TE, {1.0, 1.0}).value,
                        -1.0 / (128.0 * pi));
         },
         1e-4},
        {"Riccati vs Bessel integrand",
         [&] {
             const ExactModelSpec spec{1.0, 1.0, Orientation::Minus, Mode::TM};
             return rel(wall_integrand(minus, Mode::TM, 0.1, {1.0, 1.0}),
                        exact_wall_integrand(spec, 0.1, {1.0, 1.0}));
         },
         1e-6},
        {"identical half-spaces cancel",
         [&] {
             const auto c = PermittivityProfile::constant(3.0);
             return std::abs(halfspace_integrand(c, c, Mode::TE, 1.0, {0.7, 0.4}));
         },
         0.0},
        {"Wronskian constancy",
         [&] {
             const std::vector<double> probes{0.0, -0.5, 0.3, 0.6};
             return wronskian_residual(minus, Mode::TM, {1.0, 1.0}, probes);
         },
         1e-8},
    };
    bool all = true;
    for (const auto& c : checks) {
        const double d = c.deviation();
        const bool ok = d <= c.tolerance;
        all = all && ok;
        out << (ok ? "PASS " : "FAIL ") << c.name << " (deviation " << format_number(d)
            << ", tolerance " << format_number(c.tolerance) << ")\n";
    }
    return all ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Casimir-Polder energies of an atom near planar inhomogeneous media", "cpmedium"};
    app.require_subcommand(1);

    Common vac, wall, half, fig;
    auto* vacuum_cmd = app.add_subcommand("vacuum", "Closed-form vacuum (perfect mirror) energy");
    add_atom_flags(vacuum_cmd, vac, true);

    std::string profile_spec, profile1_spec, profile2_spec;
    auto* wall_cmd = app.add_subcommand("wall", "Atom in front of a plate bounding a graded medium");
    wall_cmd->add_option("--profile", profile_spec, "vacuum | constant:EPS | invsq:LAMBDA,A,minus|plus")
        ->required();
    add_atom_flags(wall_cmd, wall, false);
    add_quadrature_flags(wall_cmd, wall);

    auto* half_cmd = app.add_subcommand("halfspace", "Interface between two media, atom in medium 2");
    half_cmd->add_option("--profile1", profile1_spec, "Medium 1 (z < 0)")->required();
    half_cmd->add_option("--profile2", profile2_spec, "Medium 2 (z > 0), holds the atom")->required();
    add_atom_flags(half_cmd, half, false);
    add_quadrature_flags(half_cmd, half);

    int which = 1;
    std::vector<double> grid;
    bool gnuplot = false;
    auto* fig_cmd = app.add_subcommand("figure", "Ratio to vacuum for the solvable models");
    fig_cmd->add_option("which", which, "1: TE minus, 2: TM minus, 3: TE plus")
        ->required()
        ->check(CLI::IsMember(std::vector<int>{1, 2, 3}));
    fig_cmd->add_option("--out", fig.out_path, "CSV path (stdout if omitted)");
    fig_cmd->add_option("--grid", grid, "Comma-separated Z/a values")->delimiter(',');
    fig_cmd->add_flag("--gnuplot", gnuplot, "Also write OUT.gp, a gnuplot script for the CSV");
    add_quadrature_flags(fig_cmd, fig);

    auto* self_cmd = app.add_subcommand("selftest", "Fast subset of the acceptance checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*vacuum_cmd) {
            const AtomSpec atom{vac.alpha, vac.Z};
            const EnergyMode m = vac.mode == "TE" ? EnergyMode::TE
                                 : vac.mode == "TM" ? EnergyMode::TM
                                                    : EnergyMode::Total;
            std::string mode_name = vac.mode == "TOTAL" ? "total" : vac.mode;
            emit(vac, out,
                 "mode,alpha,Z,energy,converged\n" + mode_name + ',' + format_number(atom.alpha) + ',' +
                     format_number(atom.Z) + ',' + format_number(vacuum_cp(m, atom)) + ",1\n");
            return 0;
        }
        if (*wall_cmd) {
            const auto profile = PermittivityProfile::parse(profile_spec);
            const AtomSpec atom{wall.alpha, wall.Z};
            const Mode m = wall.spectral_mode();
            if (is_plus_model(profile) && m == Mode::TM)
                out << "# note: TM for the plus model is an extension (I/K interchange, exponent -1/2)\n";
            const auto r = wall_energy(profile, m, atom, wall.settings());
            emit(wall, out,
                 "profile,mode,alpha,Z,energy,error_estimate,ratio_to_vacuum,evaluations,"
                 "max_wronskian_residual,converged\n" +
                     quoted(profile.to_string()) + ',' + wall.mode + ',' + format_number(atom.alpha) +
                     ',' + format_number(atom.Z) + ',' + energy_row(r, ratio_to_vacuum(r, m, atom)) + '\n');
            return r.converged ? 0 : 2;
        }
        if (*half_cmd) {
            const auto p1 = PermittivityProfile::parse(profile1_spec);
            const auto p2 = PermittivityProfile::parse(profile2_spec);
            const AtomSpec atom{half.alpha, half.Z};
            const Mode m = half.spectral_mode();
            const auto r = halfspace_energy(p1, p2, m, atom, half.settings());
            emit(half, out,
                 "profile1,profile2,mode,alpha,Z,energy,error_estimate,ratio_to_vacuum,evaluations,"
                 "max_wronskian_residual,converged\n" +
                     quoted(p1.to_string()) + ',' + quoted(p2.to_string()) + ',' + half.mode + ',' +
                     format_number(atom.alpha) + ',' + format_number(atom.Z) + ',' +
                     energy_row(r, ratio_to_vacuum(r, m, atom)) + '\n');
            return r.converged ? 0 : 2;
        }
        if (*fig_cmd) {
            if (grid.empty()) grid = default_figure_grid(which);
            if (gnuplot && fig.out_path.empty()) throw DomainError("--gnuplot needs --out");
            static const char* titles[] = {"", "TE, eps = 1/(1 - z)^2", "TM, eps = 1/(1 - z)^2",
                                           "TE, eps = 1/(1 + z)^2"};
            out << "# figure " << which << ": " << titles[which] << ", lambda = a^2 = 1\n";
            if (which == 3)
                out << "# note: the nu integral starts at nu = 1/2, the smallest value of "
                       "sqrt(lambda zeta^2 + 1/4); sqrt(nu^2 - 1/4) is not real below it\n";
            const auto rows = figure_data(which, grid, fig.settings());
            std::string csv = std::string(kFigureHeader) + '\n';
            bool all = true;
            for (const auto& r : rows) {
                csv += format_number(r.Z_over_a) + ',' + format_number(r.ratio_numeric) + ',' +
                       format_number(r.ratio_perturbative) + ',' + (r.converged ? "1" : "0") + '\n';
                all = all && r.converged;
            }
            emit(fig, out, csv);
            if (gnuplot) {
                std::ofstream gp(fig.out_path + ".gp", std::ios::binary);
                if (!gp) throw DomainError("cannot open " + fig.out_path + ".gp for writing");
                gp << "set datafile separator ','\n"
                   << "set key autotitle columnhead\n"
                   << "set xlabel 'Z/a'\nset ylabel 'E / E_vac'\n"
                   << "plot '" << fig.out_path << "' using 1:2 with linespoints, '' using 1:3 with lines\n";
            }
            if (!fig.out_path.empty()) out << "# wrote " << rows.size() << " rows to " << fig.out_path << '\n';
            return all ? 0 : 2;
        }
        if (*self_cmd) return selftest(out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace cpmedium::cli
