#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "fracgreen/field_io.hpp"
#include "fracgreen/gamma.hpp"
#include "fracgreen/green.hpp"
#include "fracgreen/mittag_leffler.hpp"
#include "fracgreen/oracle.hpp"
#include "fracgreen/parallel.hpp"
#include "fracgreen/solver.hpp"

namespace fracgreen::cli {

namespace {

using json = nlohmann::ordered_json;

// bad files, malformed values: exit code 1
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " value '" + s + "'");
    }
}

// "re" or "re,im"
Complex parse_complex(const std::string& s, const std::string& what) {
    const auto parts = split(s, ',');
    if (parts.size() == 1) return {to_double(parts[0], what), 0.0};
    if (parts.size() == 2) return {to_double(parts[0], what), to_double(parts[1], what)};
    throw UsageError(what + " must be 're' or 're,im', got '" + s + "'");
}

// zero | delta[:x0] | gaussian:c,w | box:lo,hi
SourceDescriptor parse_source(const std::string& s) {
    const auto colon = s.find(':');
    const std::string name = s.substr(0, colon);
    const std::vector<std::string> args = colon == std::string::npos ? std::vector<std::string>{}
                                                                        : split(s.substr(colon + 1), ',');
    auto arg = [&](std::size_t i) { return to_double(args.at(i), "source"); };
    if (name == "zero" && args.empty()) return SourceDescriptor::zero();
    if (name == "delta" && args.size() <= 1) return SourceDescriptor::delta(args.empty() ? 0.0 : arg(0));
    if (name == "gaussian" && args.size() == 2) return SourceDescriptor::gaussian(arg(0), arg(1));
    if (name == "box" && args.size() == 2) return SourceDescriptor::box(arg(0), arg(1));
    throw UsageError("unknown source '" + s + "' (zero, delta[:x0], gaussian:c,w, box:lo,hi)");
}

struct SpecArgs {
    double alpha = 1.0, beta = 2.0, gamma = 2.0, theta = 0.0, phi = 0.0;
    std::string lambda = "1", mu = "0", source_mode = "riesz_feller", regime = "auto";
    bool coupled = false;
    std::vector<double> schrodinger;  // m hbar
};

void add_spec_options(CLI::App* app, SpecArgs& a) {
    app->add_option("--alpha", a.alpha, "time order in (0, 2]");
    app->add_option("--beta", a.beta, "space order in (0, 2]");
    app->add_option("--gamma", a.gamma, "source space order in (0, 2]");
    app->add_option("--theta", a.theta, "skewness of the space operator");
    app->add_option("--phi", a.phi, "skewness of the source operator");
    app->add_option("--lambda", a.lambda, "coefficient, 're' or 're,im'");
    app->add_option("--mu", a.mu, "source coefficient, 're' or 're,im'");
    app->add_option("--source-mode", a.source_mode, "riesz_feller or identity");
    app->add_option("--regime", a.regime, "auto, sub (0<alpha<=1) or super (1<alpha<=2)");
    app->add_flag("--coupled", a.coupled, "the source is the solution itself (kernels G3/G4)");
    app->add_option("--schrodinger", a.schrodinger, "mass and hbar; sets lambda = i hbar / (2 m)")->expected(2);
}

ProblemSpec build_spec(const SpecArgs& a) {
    ProblemSpec s;
    s.alpha = a.alpha;
    s.beta = a.beta;
    s.gamma = a.gamma;
    s.theta = a.theta;
    s.phi = a.phi;
    s.lambda = parse_complex(a.lambda, "--lambda");
    s.mu = parse_complex(a.mu, "--mu");
    if (!a.schrodinger.empty()) {
        if (!(a.schrodinger[0] > 0.0)) throw ConstraintError({"--schrodinger mass must be positive"});
        s.lambda = Complex(0.0, a.schrodinger[1] / (2.0 * a.schrodinger[0]));
    }
    try {
        s.source_mode = parse_source_mode(a.source_mode);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (a.regime == "auto") s.regime = Regime::automatic;
    else if (a.regime == "sub") s.regime = Regime::sub;
    else if (a.regime == "super") s.regime = Regime::super;
    else throw UsageError("unknown regime '" + a.regime + "'");
    s.coupled = a.coupled;
    return s;
}

json spec_json(const ProblemSpec& s) {
    auto cplx = [](Complex z) { return json::array({z.real(), z.imag()}); };
    const char* regime = s.regime == Regime::sub ? "sub" : s.regime == Regime::super ? "super" : "auto";
    return {{"alpha", s.alpha}, {"beta", s.beta}, {"gamma", s.gamma}, {"theta", s.theta}, {"phi", s.phi},
            {"lambda", cplx(s.lambda)}, {"mu", cplx(s.mu)}, {"source_mode", to_string(s.source_mode)},
            {"regime", regime}, {"coupled", s.coupled}};
}

struct GridArgs {
    std::vector<double> x_range{-10.0, 10.0};
    Eigen::Index nx = 128;
    std::vector<double> times{1.0};
    double dt = 1.0 / 256;
};

void add_grid_options(CLI::App* app, GridArgs& g) {
    app->add_option("--x-range", g.x_range, "x_min x_max")->expected(2);
    app->add_option("--nx", g.nx, "number of grid nodes");
    app->add_option("--t,--times", g.times, "output times")->expected(1, 1 << 20);
    app->add_option("--dt", g.dt, "oracle / source-integral time step");
}

SpaceTimeGrid build_grid(const GridArgs& a) {
    SpaceTimeGrid g;
    g.x_min = a.x_range.at(0);
    g.x_max = a.x_range.at(1);
    g.nx = a.nx;
    g.times = a.times;
    g.dt_oracle = a.dt;
    return g;
}

json grid_json(const SpaceTimeGrid& g) {
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"nx", g.nx}, {"times", g.times}, {"dt", g.dt_oracle}};
}

void add_quad_options(CLI::App* app, QuadratureConfig& q) {
    app->add_option("--k-max", q.k_max, "Fourier truncation (0 = automatic)");
    app->add_option("--nodes", q.nodes_per_unit, "Gauss nodes per panel");
    app->add_option("--abs-tol", q.abs_tol, "absolute tolerance");
    app->add_option("--rel-tol", q.rel_tol, "relative tolerance");
    app->add_option("--mb-height", q.mb_contour_height, "Mellin-Barnes contour height");
}

json quad_json(const QuadratureConfig& q) {
    return {{"k_max", q.k_max}, {"nodes_per_unit", q.nodes_per_unit}, {"abs_tol", q.abs_tol},
            {"rel_tol", q.rel_tol}, {"mb_contour_height", q.mb_contour_height}};
}

// Data sink: the --out file if given, else `fallback`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

void write_json(const std::string& path, const json& j) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw UsageError("cannot open '" + path + "' for writing");
    os << j.dump(2) << '\n';
}

Field read_field(const std::string& path) {
    try {
        return read_field_csv(path);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

// Appends config entries for options not already on the command line.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    auto it = std::find(args.begin(), args.end(), "--config");
    if (it == args.end()) return args;
    if (it + 1 == args.end()) throw UsageError("--config needs a file name");
    const std::string path = *(it + 1);
    args.erase(it, it + 2);
    for (auto& [key, values] : read_config(path)) {
        const std::string flag = "--" + key;
        if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
        if (values.size() == 1 && (values[0] == "true" || values[0] == "false")) {
            if (values[0] == "true") args.push_back(flag);
            continue;
        }
        args.push_back(flag);
        for (auto& v : values) args.push_back(v);
    }
    return args;
}

}  // namespace

std::vector<std::pair<std::string, std::vector<std::string>>> read_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::vector<std::string>>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        std::istringstream key_stream(line.substr(0, eq));
        std::string key;
        key_stream >> key;
        if (key.empty()) continue;
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
        std::istringstream vs(line.substr(eq + 1));
        std::vector<std::string> values;
        for (std::string tok; vs >> tok;) values.push_back(tok);
        if (values.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty value");
        out.emplace_back(key, values);
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Green functions of space-time fractional diffusion equations", "fracgreen"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(FRACGREEN_VERSION));

    // ml
    double ml_alpha = 1.0, ml_beta = 1.0;
    std::string ml_z = "0";
    auto* ml = app.add_subcommand("ml", "evaluate the Mittag-Leffler function E_{alpha,beta}(z)");
    ml->add_option("--alpha", ml_alpha)->required();
    ml->add_option("--beta", ml_beta)->required();
    ml->add_option("--z", ml_z, "'re' or 're,im'")->required();

    // symbol
    double sym_order = 2.0, sym_skew = 0.0;
    std::vector<double> k_range{-5.0, 5.0};
    Eigen::Index nk = 11;
    std::string sym_out;
    auto* sym = app.add_subcommand("symbol", "tabulate the Riesz-Feller symbol");
    sym->add_option("--order", sym_order);
    sym->add_option("--skew", sym_skew);
    sym->add_option("--k-range", k_range)->expected(2);
    sym->add_option("--nk", nk);
    sym->add_option("--out", sym_out);

    SpecArgs spec_args;
    GridArgs grid_args;
    QuadratureConfig quad;

    // green
    std::string kind_name = "G", method = "quadrature", green_out;
    auto* green = app.add_subcommand("green", "tabulate a Green function on an x grid");
    green->add_option("--kind", kind_name, "G, G1, G2, G3 or G4");
    green->add_option("--method", method, "quadrature or closed");
    green->add_option("--out", green_out);
    add_spec_options(green, spec_args);
    add_grid_options(green, grid_args);
    add_quad_options(green, quad);

    // solve
    std::string f_src = "delta", g_src = "zero", u_src = "zero", solve_out, manifest_out, mode = "fundamental";
    int pad = 2;
    double source_tol = 1e-2;
    auto* solve_cmd = app.add_subcommand("solve", "assemble a full solution field");
    solve_cmd->add_option("--f", f_src, "first initial datum");
    solve_cmd->add_option("--g", g_src, "second initial datum (1 < alpha <= 2)");
    solve_cmd->add_option("--U", u_src, "source term");
    solve_cmd->add_option("--mode", mode, "fundamental (N = G for delta data) or impulse");
    solve_cmd->add_option("--pad", pad, "zero-padding factor of the spectral paths");
    solve_cmd->add_option("--source-tol", source_tol, "step-halving tolerance of the source integral");
    solve_cmd->add_option("--out", solve_out);
    solve_cmd->add_option("--manifest", manifest_out, "JSON run manifest");
    add_spec_options(solve_cmd, spec_args);
    add_grid_options(solve_cmd, grid_args);
    add_quad_options(solve_cmd, quad);

    // oracle
    std::string oracle_out;
    int oracle_pad = 4;
    auto* oracle_cmd = app.add_subcommand("oracle", "reference field by Grünwald-Letnikov stepping");
    oracle_cmd->add_option("--f", f_src);
    oracle_cmd->add_option("--U", u_src);
    oracle_cmd->add_option("--pad", oracle_pad, "periodic window factor");
    oracle_cmd->add_option("--out", oracle_out);
    add_spec_options(oracle_cmd, spec_args);
    add_grid_options(oracle_cmd, grid_args);

    // compare
    std::string cmp_a, cmp_b, cmp_out;
    double cmp_tol = -1.0;
    auto* cmp = app.add_subcommand("compare", "residual norms between two field CSVs");
    cmp->add_option("a", cmp_a)->required();
    cmp->add_option("b", cmp_b, "reference")->required();
    cmp->add_option("--out", cmp_out);
    cmp->add_option("--tol", cmp_tol, "exit 3 if relative_l2 exceeds this");

    // validate
    auto* val = app.add_subcommand("validate", "check parameter constraints");
    add_spec_options(val, spec_args);

    try {
        std::vector<std::string> args = apply_config(raw_args);
        std::vector<const char*> argv{"fracgreen"};
        for (auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? ok : usage;
        }

        if (ml->parsed()) {
            const Complex z = parse_complex(ml_z, "--z");
            const auto r = mittag_leffler_detail(ml_alpha, ml_beta, z);
            out << "re,im\n" << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << '\n';
            return ok;
        }

        if (sym->parsed()) {
            const SymbolParams p{sym_order, sym_skew};
            p.validate();
            if (nk < 2) throw UsageError("--nk must be at least 2");
            Sink sink(sym_out, out);
            *sink << "k,re,im\n";
            for (Eigen::Index i = 0; i < nk; ++i) {
                const double k = k_range[0] + (k_range[1] - k_range[0]) * static_cast<double>(i) / static_cast<double>(nk - 1);
                const Complex v = riesz_feller_symbol(p, k);
                *sink << format_double(k) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
            }
            return ok;
        }

        if (val->parsed()) {
            const ProblemSpec spec = build_spec(spec_args);
            const auto v = validate_spec(spec);
            if (v.empty()) {
                out << "valid\n";
                return ok;
            }
            for (const auto& m : v) err << m << '\n';
            return constraint;
        }

        if (green->parsed()) {
            const ProblemSpec spec = build_spec(spec_args);
            spec.validate();
            const SpaceTimeGrid grid = build_grid(grid_args);
            grid.validate();
            const GreenKind kind = parse_green_kind(kind_name);
            if (method != "quadrature" && method != "closed") throw UsageError("--method must be quadrature or closed");
            const VectorXr x = grid.x();
            const std::size_t nt = grid.times.size(), nx = static_cast<std::size_t>(grid.nx);
            std::vector<Complex> vals(nt * nx);
            std::vector<const char*> used(nt * nx);
            parallel_for(nt * nx, [&](std::size_t idx) {
                const double t = grid.times[idx / nx], xi = x(static_cast<Eigen::Index>(idx % nx));
                if (method == "closed" && xi != 0.0) {
                    vals[idx] = green_point_closed(kind, xi, t, spec, quad);
                    used[idx] = "closed";
                } else {
                    vals[idx] = green_point(kind, xi, t, spec, quad);
                    used[idx] = "quadrature";
                }
            });
            Sink sink(green_out, out);
            *sink << "t,x,re,im,method\n";
            for (std::size_t i = 0; i < vals.size(); ++i)
                *sink << format_double(grid.times[i / nx]) << ',' << format_double(x(static_cast<Eigen::Index>(i % nx)))
                      << ',' << format_double(vals[i].real()) << ',' << format_double(vals[i].imag()) << ','
                      << used[i] << '\n';
            return ok;
        }

        if (solve_cmd->parsed()) {
            const ProblemSpec spec = build_spec(spec_args);
            const SpaceTimeGrid grid = build_grid(grid_args);
            if (mode != "fundamental" && mode != "impulse") throw UsageError("--mode must be fundamental or impulse");
            SolveOptions opts;
            opts.quad = quad;
            opts.fundamental = mode == "fundamental";
            opts.pad_factor = pad;
            opts.source_rel_tol = source_tol;
            const SourceDescriptor f = parse_source(f_src), g = parse_source(g_src), U = parse_source(u_src);
            const Field field = solve(spec, f, g, U, grid, opts);
            for (const auto& w : field.warnings) err << "warning: " << w << '\n';
            {
                Sink sink(solve_out, out);
                write_field_csv(*sink, field);
            }
            if (!manifest_out.empty()) {
                json checks = json::array();
                bool finite = field.values.allFinite();
                checks.push_back({{"name", "finite"}, {"pass", finite}, {"residual", finite ? 0.0 : 1.0}});
                // total mass follows t^(alpha-1)/Gamma(alpha) times the mass of f
                if (finite && U.is_zero() && g.is_zero() && !spec.coupled && spec.lambda.imag() == 0.0) {
                    const double dx = grid.dx();
                    const Complex m0 = f.sample(grid).sum() * dx;
                    double worst = 0.0;
                    for (std::size_t ti = 0; ti < grid.times.size(); ++ti) {
                        const double t = grid.times[ti];
                        const Complex expect = m0 * std::pow(t, spec.alpha - 1.0) * rgamma(spec.alpha);
                        const Complex got = field.values.row(static_cast<Eigen::Index>(ti)).sum() * dx;
                        worst = std::max(worst, std::abs(got - expect) / std::max(std::abs(expect), 1e-300));
                    }
                    checks.push_back({{"name", "mass"}, {"pass", worst <= 1e-3}, {"residual", worst}});
                }
                json m = {{"command", "solve"},
                          {"argv", raw_args},
                          {"spec", spec_json(spec)},
                          {"grid", grid_json(grid)},
                          {"quadrature", quad_json(quad)},
                          {"data", {{"f", f.describe()}, {"g", g.describe()}, {"U", U.describe()}, {"mode", mode},
                                    {"pad", pad}}},
                          {"versions", {{"fracgreen", FRACGREEN_VERSION}}},
                          {"checks", checks},
                          {"warnings", field.warnings}};
                write_json(manifest_out, m);
            }
            return ok;
        }

        if (oracle_cmd->parsed()) {
            const ProblemSpec spec = build_spec(spec_args);
            const SpaceTimeGrid grid = build_grid(grid_args);
            grid.validate();
            OracleConfig cfg;
            cfg.dt = grid.dt_oracle;
            cfg.n_steps = static_cast<Eigen::Index>(std::llround(grid.times.back() / cfg.dt));
            cfg.pad_factor = oracle_pad;
            const Field field = oracle_solve(spec, parse_source(f_src), grid, cfg, parse_source(u_src));
            Sink sink(oracle_out, out);
            write_field_csv(*sink, field);
            return ok;
        }

        if (cmp->parsed()) {
            const Field a = read_field(cmp_a), b = read_field(cmp_b);
            FieldResidual r;
            try {
                r = field_residual(a, b);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            const json j = {{"a", cmp_a}, {"b", cmp_b}, {"relative_l2", r.relative_l2}, {"l2", r.l2},
                            {"max_abs", r.max_abs}};
            if (cmp_out.empty()) out << j.dump(2) << '\n';
            else write_json(cmp_out, j);
            if (cmp_tol >= 0.0 && !(r.relative_l2 <= cmp_tol)) {
                err << "relative_l2 " << format_double(r.relative_l2) << " exceeds " << format_double(cmp_tol) << '\n';
                return tolerance;
            }
            return ok;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const ToleranceError& e) {
        err << "error: " << e.what() << '\n';
        return tolerance;
    } catch (const Error& e) {
        // constraint, regime, domain, pole and Fourier-only failures
        err << "error: " << e.what() << '\n';
        return constraint;
    }
    return usage;
}

}  // namespace fracgreen::cli
