#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "parasharp/closed_forms.hpp"
#include "parasharp/errors.hpp"
#include "parasharp/estimate_engine.hpp"
#include "parasharp/kernels.hpp"
#include "parasharp/mild_solver.hpp"
#include "parasharp/profile_solver.hpp"
#include "parasharp/sharpness_suite.hpp"
#include "parasharp/specfun.hpp"

namespace parasharp::cli {

using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_number(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ConfigError("cannot read " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

void expect_parts(const std::vector<std::string_view>& parts, std::size_t n,
                  std::string_view text) {
  if (parts.size() != n) {
    throw ConfigError("malformed spec '" + std::string(text) + "'");
  }
}

TabulatedData read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("table '" + path + "' is empty");
  if (line != "x,u,du") throw ConfigError("table '" + path + "' must start with header x,u,du");
  TabulatedData t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 3) throw ConfigError("table '" + path + "': expected 3 columns");
    t.grid.push_back(to_number(cols[0], "x"));
    t.values.push_back(to_number(cols[1], "u"));
    t.derivatives.push_back(to_number(cols[2], "du"));
  }
  return t;
}

struct GridOptions {
  double X = 0.0;
  double dx = 0.05;
  int nt = 64;

  GridSpec spec() const {
    GridSpec g;
    g.X = X;
    g.dx = dx;
    g.nt = nt;
    return g;
  }
};

void add_grid_options(CLI::App* sub, GridOptions& g) {
  sub->add_option("--X", g.X, "half-width of the x-grid (0: 8 sqrt(T) + 4)")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--dx", g.dx, "x-grid spacing")->check(CLI::PositiveNumber);
  sub->add_option("--nt", g.nt, "number of time steps")->check(CLI::Range(3, 100000));
}

void write_row(std::ostream& os, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) os << ',';
    os << format_number(v);
    first = false;
  }
  os << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  return f;
}

bool is_power_law(const NonlinearitySpec& f) {
  return std::holds_alternative<PowerLawSource>(f.kind()) ||
         std::holds_alternative<ScaledPowerLawSource>(f.kind());
}

}  // namespace

NonlinearitySpec parse_source(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  if (kind == "zero") {
    expect_parts(parts, 1, text);
    return NonlinearitySpec(ZeroSource{});
  }
  if (kind == "const") {
    expect_parts(parts, 2, text);
    return NonlinearitySpec(ConstantSource{to_number(parts[1], "constant")});
  }
  if (kind == "linear") {
    expect_parts(parts, 2, text);
    return NonlinearitySpec(LinearSource{to_number(parts[1], "gain")});
  }
  if (kind == "power") {
    expect_parts(parts, 2, text);
    return NonlinearitySpec(PowerLawSource{to_number(parts[1], "exponent")});
  }
  if (kind == "scaled-power") {
    expect_parts(parts, 3, text);
    return NonlinearitySpec(
        ScaledPowerLawSource{to_number(parts[1], "scale"), to_number(parts[2], "exponent")});
  }
  throw ConfigError("unknown source '" + std::string(text) + "'");
}

InitialDataSpec parse_data(std::string_view text) {
  const auto parts = split(text, ':');
  const std::string_view kind = parts[0];
  if (kind == "zero") {
    expect_parts(parts, 1, text);
    return InitialDataSpec(ZeroData{});
  }
  if (kind == "sin") {
    expect_parts(parts, 3, text);
    return InitialDataSpec(
        SinusoidData{to_number(parts[1], "amplitude"), to_number(parts[2], "wavenumber")});
  }
  if (kind == "w0") {
    expect_parts(parts, 2, text);
    return InitialDataSpec(ScaledW0Data{to_number(parts[1], "lambda")});
  }
  if (kind == "table") {
    if (text.size() <= 6) throw ConfigError("table spec needs a path");
    return InitialDataSpec(read_table(std::string(text.substr(6))));
  }
  throw ConfigError("unknown initial data '" + std::string(text) + "'");
}

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("grid must be start:step:stop");
  const double a = to_number(parts[0], "grid start");
  const double h = to_number(parts[1], "grid step");
  const double b = to_number(parts[2], "grid stop");
  if (!(h > 0.0) || !(b >= a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw ConfigError("grid needs step > 0 and stop >= start");
  }
  const double count = std::floor((b - a) / h + 1e-9);
  if (count > 1e7) throw ConfigError("grid has too many points");
  std::vector<double> g;
  for (long i = 0; i <= static_cast<long>(count); ++i) g.push_back(a + h * static_cast<double>(i));
  return g;
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derivative estimates and their sharpness for u_t - u_xx = f(u)", "parasharp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "print help for every subcommand");
  std::string output_path;
  app.add_option("-o,--output", output_path, "write results to FILE instead of stdout");

  // profile
  auto* profile = app.add_subcommand("profile", "solve the odd self-similar profile w_p");
  double prof_p = 0.0, prof_tol = 1e-10, prof_eta_max = 12.0;
  int prof_every = 1;
  std::string prof_format = "csv";
  profile->add_option("--p", prof_p, "exponent of the power-law source, 0 < p < 1")->required();
  profile->add_option("--tol", prof_tol, "bisection tolerance on w'(0)")->check(CLI::PositiveNumber);
  profile->add_option("--eta-max", prof_eta_max, "end of the shooting interval")
      ->check(CLI::PositiveNumber);
  profile->add_option("--every", prof_every, "emit every N-th grid point")->check(CLI::Range(1, 1000000));
  profile->add_option("--format", prof_format, "csv (samples) or json (summary)")
      ->check(CLI::IsMember({"csv", "json"}));

  // phi
  auto* phi_cmd = app.add_subcommand("phi", "evaluate phi(p)");
  std::vector<double> phi_p;
  phi_cmd->add_option("--p", phi_p, "one or more exponents in (0, 1)")->required();

  // s0
  auto* s0 = app.add_subcommand("s0", "tabulate the limit profile w0 and its derivative");
  std::string s0_grid;
  s0->add_option("--grid", s0_grid, "start:step:stop with start >= 0")->required();

  // mild-solve
  auto* mild = app.add_subcommand("mild-solve", "Picard iteration for the mild solution");
  std::string mild_f, mild_u0 = "zero", mild_out;
  double mild_T = 0.0;
  bool mild_verify = false;
  GridOptions mild_grid;
  MildConfig mild_cfg;
  mild->add_option("--f", mild_f, "source: zero|const:c|linear:a|power:p|scaled-power:c:p")
      ->required();
  mild->add_option("--u0", mild_u0, "initial data: zero|sin:a:k|w0:lambda|table:path");
  mild->add_option("--T", mild_T, "final time")->required()->check(CLI::PositiveNumber);
  add_grid_options(mild, mild_grid);
  mild->add_option("--max-iter", mild_cfg.max_iterations, "Picard iteration limit")
      ->check(CLI::Range(1, 10000));
  mild->add_option("--tol", mild_cfg.tolerance, "sup-norm change that stops the iteration")
      ->check(CLI::PositiveNumber);
  mild->add_option("--out", mild_out, "write PREFIX_field.csv and PREFIX_deriv.csv");
  mild->add_flag("--verify", mild_verify, "report the Duhamel residual of the result");

  // verify-estimate
  auto* verify = app.add_subcommand("verify-estimate", "compare ||u_x(., t)|| with F_t");
  std::string ver_f, ver_u0 = "zero", ver_source = "auto";
  double ver_T = 0.0, ver_alpha = 0.0;
  int ver_times = 16;
  GridOptions ver_grid;
  verify->add_option("--f", ver_f, "source spec")->required();
  verify->add_option("--u0", ver_u0, "initial data spec");
  verify->add_option("--T", ver_T, "final time")->required()->check(CLI::PositiveNumber);
  verify->add_option("--alpha", ver_alpha, "threshold for ||u_x(., T)||")
      ->required()
      ->check(CLI::PositiveNumber);
  verify->add_option("--times", ver_times, "number of sample times")->check(CLI::Range(1, 1000));
  verify->add_option("--u-source", ver_source,
                     "auto, picard or selfsim (power-law source with zero data)")
      ->check(CLI::IsMember({"auto", "picard", "selfsim"}));
  add_grid_options(verify, ver_grid);

  // gap-sweep
  auto* sweep = app.add_subcommand("gap-sweep", "gap w_p'(0) - phi(p) along p = 1/(2n)");
  int sweep_n = 0;
  double sweep_T = 1.0, sweep_X = 6.0;
  sweep->add_option("--n-max", sweep_n, "largest n (n = 1, 2, 4, ...)")
      ->required()
      ->check(CLI::Range(1, 1 << 20));
  sweep->add_option("--T", sweep_T, "time for the scaled infimum")->check(CLI::PositiveNumber);
  sweep->add_option("--X", sweep_X, "range [0, X] for the distances to w0")
      ->check(CLI::PositiveNumber);

  // construct
  auto* construct = app.add_subcommand("construct", "scaled family with ||u_x(., T)|| -> alpha + 1");
  double con_alpha = 0.0, con_T = 0.0;
  int con_n = 0;
  bool con_field = false;
  GridOptions con_grid;
  construct->add_option("--alpha", con_alpha, "target level")->required()->check(CLI::PositiveNumber);
  construct->add_option("--T", con_T, "final time")->required()->check(CLI::PositiveNumber);
  construct->add_option("--n", con_n, "family index, p = 1/(2n)")
      ->required()
      ->check(CLI::Range(1, 1 << 20));
  construct->add_flag("--field", con_field, "also check the tabulated field");
  add_grid_options(construct, con_grid);

  // specfun
  auto* specfun = app.add_subcommand("specfun", "quadrature tables");
  specfun->require_subcommand(1);
  auto* dump_gh = specfun->add_subcommand("dump-gh", "Gauss-Hermite nodes and weights");
  int gh_order = 0;
  dump_gh->add_option("--order", gh_order, "number of nodes")->required()->check(CLI::Range(1, 400));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  std::ostringstream buf;
  std::ostream& os = buf;
  int status = kExitOk;
  try {
    if (*profile) {
      const ProfileSolution sol = solve_profile(prof_p, prof_tol, prof_eta_max);
      if (!sol.converged) throw SolverError("profile: bisection did not converge");
      if (prof_format == "json") {
        Json j;
        j["p"] = sol.p;
        j["slope0"] = sol.slope0;
        j["bracket"] = {sol.bracket.first, sol.bracket.second};
        j["iterations"] = sol.iterations;
        j["plateau"] = sol.plateau;
        j["splice_eta"] = sol.splice_eta;
        j["phi"] = phi(sol.p);
        j["slope_lower"] = slope_lower(sol.p);
        j["invariant_violations"] = check_profile_invariants(sol);
        os << j.dump(2) << '\n';
      } else {
        os << "# p=" << format_number(sol.p) << " slope0=" << format_number(sol.slope0)
           << " bracket=" << format_number(sol.bracket.first) << ':'
           << format_number(sol.bracket.second) << '\n';
        os << "eta,w,w_prime\n";
        for (std::size_t i = 0; i < sol.grid.size(); i += static_cast<std::size_t>(prof_every)) {
          write_row(os, {sol.grid[i], sol.w[i], sol.w_prime[i]});
        }
      }
    } else if (*phi_cmd) {
      os << "p,phi\n";
      for (double p : phi_p) write_row(os, {p, phi(p)});
    } else if (*s0) {
      const QuadratureConfig q;
      os << "eta,w0,w0_prime,residual\n";
      for (double eta : parse_grid(s0_grid)) {
        write_row(os, {eta, w0_eval(eta, q), w0_deriv(eta, q), s0_residual_closed(eta, q)});
      }
    } else if (*mild) {
      const NonlinearitySpec f = parse_source(mild_f);
      const InitialDataSpec u0 = parse_data(mild_u0);
      const PicardResult res = picard_solve(f, u0, mild_T, mild_grid.spec(), mild_cfg);
      const SpaceTimeField& u = res.field;
      const std::vector<double> ux = derivative_field(f, u0, u, mild_T, mild_cfg);
      Json j;
      j["f"] = f.describe();
      j["u0"] = u0.describe();
      j["T"] = mild_T;
      j["X"] = u.half_width();
      j["dx"] = u.dx();
      j["nx"] = u.nx();
      j["nt"] = u.nt() - 1;
      j["iterations"] = res.iterations;
      j["last_change"] = res.last_change;
      j["converged"] = res.converged;
      j["seeded_selfsim"] = res.seeded_selfsim;
      j["sup_u_T"] = kernels::max_abs(u.row(u.nt() - 1));
      j["sup_ux_T"] = kernels::max_abs(ux);
      if (mild_verify) j["residual"] = duhamel_residual(f, u0, u, mild_cfg);
      if (!mild_out.empty()) {
        std::ofstream field = open_output(mild_out + "_field.csv");
        field << "t,x,u\n";
        for (std::size_t k = 0; k < u.nt(); ++k) {
          for (std::size_t i = 0; i < u.nx(); ++i) write_row(field, {u.t()[k], u.x()[i], u.at(k, i)});
        }
        std::ofstream deriv = open_output(mild_out + "_deriv.csv");
        deriv << "x,u_x\n";
        for (std::size_t i = 0; i < u.nx(); ++i) write_row(deriv, {u.x()[i], ux[i]});
      }
      os << j.dump(2) << '\n';
      if (!res.converged) {
        err << "mild-solve: Picard iteration did not converge\n";
        status = kExitSolver;
      }
    } else if (*verify) {
      const NonlinearitySpec f = parse_source(ver_f);
      const InitialDataSpec u0 = parse_data(ver_u0);
      const bool selfsim_ok = is_power_law(f) && u0.is_zero();
      std::string source = ver_source;
      if (source == "auto") source = selfsim_ok ? "selfsim" : "picard";
      if (source == "selfsim" && !selfsim_ok) {
        throw ConfigError("--u-source selfsim needs a power-law source and zero data");
      }
      SpaceTimeField u = [&] {
        if (source == "selfsim") {
          const ProfileSolution prof = solve_profile(f.power());
          return selfsim_field(prof, f.scale(), ver_T, ver_grid.spec());
        }
        PicardResult res = picard_solve(f, u0, ver_T, ver_grid.spec(), MildConfig{});
        if (!res.converged) throw SolverError("verify-estimate: Picard iteration did not converge");
        return std::move(res.field);
      }();
      const EstimateReport rep = verify_estimate(f, u0, u, default_times(ver_T, ver_times), ver_alpha);
      os << "t,lhs,rhs,gap,ebound\n";
      for (std::size_t k = 0; k < rep.times.size(); ++k) {
        write_row(os, {rep.times[k], rep.lhs[k], rep.rhs[k], rep.gap[k], rep.ebound[k]});
      }
      Json j;
      j["f"] = f.describe();
      j["u0"] = u0.describe();
      j["T"] = ver_T;
      j["u_source"] = source;
      j["alpha"] = rep.alpha;
      j["inf_gap"] = rep.inf_gap;
      j["final_lhs"] = rep.final_lhs;
      j["alpha_flag"] = rep.alpha_flag;
      j["residual"] = rep.residual;
      j["eps_quad"] = rep.eps_quad;
      j["trusted"] = rep.trusted;
      j["violations"] = rep.violations;
      os << '\n' << j.dump(2) << '\n';
    } else if (*sweep) {
      const std::vector<GapRow> rows = gap_sweep(sweep_n, sweep_T, sweep_X);
      os << "n,p,slope0,phi_p,gap,scaled_inf,w0_dist,w0_deriv_dist,ok\n";
      for (const GapRow& r : rows) {
        os << r.n << ',';
        os << format_number(r.p) << ',' << format_number(r.slope0) << ','
           << format_number(r.phi_p) << ',' << format_number(r.gap) << ','
           << format_number(r.scaled_inf) << ',' << format_number(r.w0_dist) << ','
           << format_number(r.w0_deriv_dist) << ',' << (r.ok ? 1 : 0) << '\n';
        if (!r.ok) {
          err << "gap-sweep: n=" << r.n << ": " << r.message << '\n';
          status = kExitSolver;
        }
      }
    } else if (*construct) {
      std::optional<GridSpec> grid;
      if (con_field) grid = con_grid.spec();
      const ConstructionRecord rec = theorem_construction(con_alpha, con_T, con_n, {}, grid);
      Json j;
      j["alpha"] = rec.alpha;
      j["T"] = rec.T;
      j["n"] = rec.n;
      j["p"] = rec.p;
      j["c"] = rec.c;
      j["slope0"] = rec.slope0;
      j["phi_p"] = rec.phi_p;
      j["final_norm"] = rec.final_norm;
      j["alpha_flag"] = rec.alpha_flag;
      j["inf_gap"] = rec.inf_gap;
      if (rec.field) {
        j["field"] = {{"lhs", rec.field->lhs},
                      {"rhs", rec.field->rhs},
                      {"residual", rec.field->residual}};
      }
      os << j.dump(2) << '\n';
    } else if (*dump_gh) {
      const QuadratureRule& gh = gauss_hermite(gh_order);
      os << "i,node,weight\n";
      for (std::size_t i = 0; i < gh.nodes.size(); ++i) {
        os << i << ',' << format_number(gh.nodes[i]) << ',' << format_number(gh.weights[i]) << '\n';
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }

  if (output_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << output_path << "'\n";
      return kExitValidation;
    }
    file << buf.str();
  }
  return status;
}

}  // namespace parasharp::cli
