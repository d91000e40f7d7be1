#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "l2alex/cli.hpp"
#include "l2alex/degree.hpp"
#include "l2alex/error.hpp"
#include "l2alex/io.hpp"
#include "l2alex/mahler.hpp"
#include "l2alex/torsion.hpp"

namespace l2alex::cli {

namespace {

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

DetFunction doc_function(const InputDocument& doc) {
  return index_rescale(det_function(doc.matrix, doc.cls), doc.index_divisor);
}

std::vector<double> parse_phi(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InputError("--phi: '" + item + "' is not a number");
    }
    if (used != item.size()) throw InputError("--phi: '" + item + "' is not a number");
    out.push_back(x);
  }
  if (out.size() != 3) throw InputError("--phi expects three comma-separated values");
  return out;
}

void write_csv(std::ostream& out, const std::vector<double>& grid,
               const std::vector<std::optional<double>>& values) {
  out << "t,value\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out << format_number(grid[k]) << ','
        << (values[k] ? format_number(*values[k]) : std::string("unspecified")) << '\n';
  }
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  std::string s = spec;
  if (const auto pos = s.find("-geometric"); pos != std::string::npos) s.erase(pos);
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InputError("grid must have the form lo:hi:n");
  try {
    std::size_t u0 = 0, u1 = 0, u2 = 0;
    const double lo = std::stod(parts[0], &u0);
    const double hi = std::stod(parts[1], &u1);
    const long long n = std::stoll(parts[2], &u2);
    if (u0 != parts[0].size() || u1 != parts[1].size() || u2 != parts[2].size() || n < 2) {
      throw InputError("grid must have the form lo:hi:n with n >= 2");
    }
    return geometric_grid(lo, hi, static_cast<std::size_t>(n));
  } catch (const std::invalid_argument&) {
    throw InputError("grid must have the form lo:hi:n");
  } catch (const std::out_of_range&) {
    throw InputError("grid value out of range");
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"L2-Alexander torsion and Mahler measure toolkit", "l2alex"};
  app.require_subcommand(1);

  std::string input, grid_spec, phi_spec;
  double tol = 1e-8, conv_tol = 1e-6;
  int sweep = 0;
  bool symmetric = false;

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of a polynomial or of det(matrix)");
  mahler->add_option("--input", input, "JSON document ('-' for stdin)")->required();
  mahler->add_option("--tol", tol, "quadrature tolerance")->check(CLI::PositiveNumber);

  auto* eval_cmd = app.add_subcommand("eval", "sample V(t) on a geometric grid");
  eval_cmd->add_option("--input", input)->required();
  eval_cmd->add_option("--t-grid", grid_spec, "lo:hi:n")->required();
  eval_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);

  auto* degree_cmd = app.add_subcommand("degree", "end exponents and leading coefficients of V");
  degree_cmd->add_option("--input", input)->required();
  degree_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);

  auto* conv_cmd = app.add_subcommand("convexity", "log-log convexity and slope bound of V");
  conv_cmd->add_option("--input", input)->required();
  conv_cmd->add_option("--grid", grid_spec, "lo:hi:n")->required();
  conv_cmd->add_option("--tol", conv_tol, "convexity tolerance")->check(CLI::PositiveNumber);
  conv_cmd->add_option("--quad-tol", tol, "quadrature tolerance")->check(CLI::PositiveNumber);

  auto* tors_cmd = app.add_subcommand("torsion", "sample the torsion function on a geometric grid");
  tors_cmd->add_option("--input", input)->required();
  tors_cmd->add_option("--t-grid", grid_spec, "lo:hi:n")->required();
  tors_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
  tors_cmd->add_flag("--symmetric", symmetric, "divide by t^{(d_plus + d_minus)/2}");

  auto* scen_cmd = app.add_subcommand("scenario", "worked scenarios");
  scen_cmd->require_subcommand(1);
  auto* s9 = scen_cmd->add_subcommand("section9", "three figure-eight knot complements");
  s9->add_option("--phi", phi_spec, "a,b,c with a + b + c = 0")->required();
  s9->add_option("--sweep", sweep, "also report phi * k/n for k = 0..n")
      ->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (mahler->parsed()) {
      const LaurentPoly p = parse_poly_document(read_text(input));
      QuadratureOptions o;
      o.tol = tol;
      MahlerResult r;
      if (p.is_zero()) {
        r.measure = 0.0;
      } else {
        r = mahler_mv(p, o);
      }
      out << dump_rounded(to_json(r)) << '\n';
    } else if (eval_cmd->parsed()) {
      const std::vector<double> grid = parse_grid(grid_spec);
      const DetFunction v = doc_function(parse_input(read_text(input)));
      std::vector<std::optional<double>> values;
      for (double t : grid) values.push_back(eval(v, t, tol));
      write_csv(out, grid, values);
    } else if (degree_cmd->parsed()) {
      const DetFunction v = doc_function(parse_input(read_text(input)));
      out << dump_rounded(to_json(asymptote(v, tol))) << '\n';
    } else if (conv_cmd->parsed()) {
      const std::vector<double> grid = parse_grid(grid_spec);
      const DetFunction v = doc_function(parse_input(read_text(input)));
      out << dump_rounded(to_json(convexity_check(v, grid, conv_tol, tol))) << '\n';
    } else if (tors_cmd->parsed()) {
      const std::vector<double> grid = parse_grid(grid_spec);
      const InputDocument doc = parse_input(read_text(input));
      TorsionFunction tau =
          torsion_from_presentation({doc.matrix, doc.cls, doc.pairs, doc.index_divisor, ""});
      if (symmetric) tau = symmetric_representative(tau, tol);
      std::vector<std::optional<double>> values;
      for (double t : grid) values.push_back(tau.eval(t, tol));
      write_csv(out, grid, values);
    } else if (s9->parsed()) {
      const std::vector<double> v = parse_phi(phi_spec);
      const std::array<double, 3> phi{v[0], v[1], v[2]};
      if (sweep == 0) {
        out << dump_rounded(to_json(section9(phi))) << '\n';
      } else {
        Json rows = Json::array();
        for (int k = 0; k <= sweep; ++k) {
          const double s = static_cast<double>(k) / sweep;
          rows.push_back(to_json(section9({phi[0] * s, phi[1] * s, phi[2] * s})));
        }
        out << dump_rounded(rows) << '\n';
      }
    }
  } catch (const DocumentError& e) {
    err << "error [input " << static_cast<int>(e.code()) << "]: " << e.what() << '\n';
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << " (best estimate " << format_number(e.best_estimate())
        << ", achieved tolerance " << format_number(e.achieved_tolerance()) << ")\n";
    return kExitBudget;
  } catch (const DegeneracyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  }
  return kExitOk;
}

}  // namespace l2alex::cli
