#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "etale/census.hpp"
#include "etale/covering_count.hpp"
#include "etale/eigen_oracle.hpp"
#include "etale/errors.hpp"
#include "etale/matrix.hpp"
#include "etale/poly.hpp"
#include "etale/symplectic.hpp"

namespace etale::cli {
namespace {

using nlohmann::ordered_json;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "text";
  std::string out_path;
  std::uint64_t budget = kDefaultEnumerationBudget;
};

void emit(const Globals& globals, std::ostream& out, const std::string& payload) {
  if (globals.out_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream file(globals.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot open '" + globals.out_path + "' for writing");
  file << payload;
  file.flush();
  if (!file) throw IoFailure("write to '" + globals.out_path + "' failed");
}

std::string render_count_text(const CoverCountReport& r) {
  std::ostringstream s;
  s << "g=" << r.g << " m=" << r.m << " n=" << r.n << "\n";
  s << "T        " << r.T << "\n";
  s << "N_cyclic " << r.N_cyclic << "\n";
  s << "C_total  " << r.C_total << "\n";
  s << "per_prime\n";
  for (const auto& pp : r.per_prime) {
    s << "  p=" << pp.p << " e=" << pp.e << " lf_count=" << pp.lf_count
      << " pev_count=" << pp.pev_count << "\n";
  }
  return s.str();
}

std::string render_row(const Globals& globals, const CensusRow& row, const std::string& text) {
  if (globals.format == "json") return row_to_json(row, 2) + "\n";
  if (globals.format == "csv") return census_to_csv({row});
  return text;
}

int cmd_count(const Globals& globals, int g, std::int64_t m, std::int64_t n, std::ostream& out) {
  const CoverCountReport report = count_total(g, m, n);
  emit(globals, out, render_row(globals, make_row(report), render_count_text(report)));
  return kOk;
}

int cmd_census(const Globals& globals, int g, std::int64_t m_max, std::int64_t n_max,
               bool run_verification, std::ostream& out) {
  VerifyOptions options;
  options.budget = globals.budget;
  const auto rows = build_census(g, m_max, n_max, run_verification, options);
  emit(globals, out, globals.format == "json" ? census_to_json(rows) : census_to_csv(rows));
  const bool all_match = std::none_of(rows.begin(), rows.end(),
                                      [](const CensusRow& r) { return r.verified == Verified::False; });
  return all_match ? kOk : kMismatch;
}

int cmd_verify(const Globals& globals, int g, std::int64_t m, std::int64_t n, bool corrupt,
               std::ostream& out) {
  validate_cover_parameters(g, m, n);
  VerifyOptions options;
  options.budget = globals.budget;
  if (corrupt) {
    options.enumeration_matrix_hook = [](IntMatrix& matrix) { matrix = IntMatrix::identity(matrix.dimension()); };
  }
  const VerifyVerdict verdict = verify(g, m, static_cast<int>(n), options);
  const CoverCountReport report = count_total(g, m, n);

  std::ostringstream s;
  s << "g=" << g << " m=" << m << " n=" << n << "\n";
  s << "formula      " << verdict.formula << "\n";
  s << "kernel       " << verdict.kernel << "\n";
  if (verdict.enumeration) {
    s << "enumeration  " << *verdict.enumeration << "\n";
    s << "enumeration (lambda != 1 mod every prime) " << *verdict.enumeration_strict << "\n";
    s << "orbit size violations " << verdict.orbit_size_violations << "\n";
  } else {
    s << "enumeration skipped: " << verdict.required_candidates << " candidates exceed budget "
      << globals.budget << "\n";
  }
  s << "method " << verdict.method() << "\n";
  s << (verdict.match ? "MATCH " : "MISMATCH ") << verdict.formula << "\n";
  emit(globals, out, render_row(globals, make_row(report, verdict), s.str()));
  return verdict.match ? kOk : kMismatch;
}

int cmd_factor(const Globals& globals, int n, std::int64_t p, unsigned e, std::ostream& out) {
  if (n < 2) throw DomainError("n must be >= 2");
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw DomainError("p must be prime");
  if (e < 1) throw DomainError("e must be >= 1");
  if (std::gcd(static_cast<std::int64_t>(n), p) != 1) {
    throw DomainError("coprimality required: gcd(n, p) must be 1");
  }
  const auto prime = static_cast<std::uint64_t>(p);
  const std::uint64_t pe = ipow(prime, e);
  const ModPoly f = geometric_series(n);
  std::vector<HenselTrace> traces;
  for (Residue r : linear_roots_mod_p(f, prime)) traces.push_back(hensel_lift_trace(f, r, prime, e));
  std::sort(traces.begin(), traces.end(),
            [](const HenselTrace& a, const HenselTrace& b) { return a.lifted < b.lifted; });

  if (globals.format == "json") {
    ordered_json j;
    j["params"] = {{"n", std::to_string(n)}, {"p", std::to_string(p)}, {"e", std::to_string(e)}};
    j["roots"] = ordered_json::array();
    for (const auto& t : traces) {
      ordered_json steps = ordered_json::array();
      for (const auto& st : t.steps) {
        steps.push_back({{"precision", std::to_string(st.precision)}, {"value", std::to_string(st.value)}});
      }
      j["roots"].push_back({{"root_mod_p", std::to_string(t.root_mod_p)},
                            {"lifted", std::to_string(t.lifted)},
                            {"order", std::to_string(multiplicative_order(t.lifted, pe))},
                            {"f_value", std::to_string(f.evaluate_mod(t.lifted, pe))},
                            {"trace", steps}});
    }
    emit(globals, out, j.dump(2) + "\n");
    return kOk;
  }

  std::ostringstream s;
  s << "f(x) = 1 + x + ... + x^" << n - 1 << " over Z/" << pe << "Z\n";
  s << "linear factors: " << traces.size() << "\n";
  if (!traces.empty()) s << "root_mod_p lifted order f(lifted) mod " << pe << " trace\n";
  for (const auto& t : traces) {
    s << t.root_mod_p << " " << t.lifted << " " << multiplicative_order(t.lifted, pe) << " "
      << f.evaluate_mod(t.lifted, pe) << " ";
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      s << (i ? " -> " : "") << p << "^" << t.steps[i].precision << ":" << t.steps[i].value;
    }
    s << "\n";
  }
  emit(globals, out, s.str());
  return kOk;
}

std::vector<std::int64_t> parse_delta(const std::string& csv) {
  std::vector<std::int64_t> values;
  std::istringstream in(csv);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw DomainError("delta entry is not an integer: '" + cell + "'");
    }
  }
  return values;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

int cmd_symplectic(const Globals& globals, int g, std::int64_t n, const std::string& delta_csv,
                   std::ostream& out) {
  if (g < 1) throw DomainError("genus must be >= 1");
  if (n < 2) throw DomainError("n must be >= 2");
  const auto values = parse_delta(delta_csv);
  if (values.size() != static_cast<std::size_t>(2 * g)) {
    throw DomainError("delta must have 2g = " + std::to_string(2 * g) + " entries");
  }
  const ModVector delta(factorize(n), values);
  const SymplecticBasisCert cert = adapt_basis(delta, g);
  const auto checks = check_certificate(cert, delta);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const CertificateCheck& c) { return c.passed; });

  if (globals.format == "json") {
    ordered_json j;
    j["params"] = {{"g", std::to_string(g)}, {"n", std::to_string(n)}};
    j["basis"] = ordered_json::object();
    for (int i = 1; i <= g; ++i) {
      auto as_strings = [](const std::vector<std::int64_t>& v) {
        std::vector<std::string> s;
        for (auto x : v) s.push_back(std::to_string(x));
        return s;
      };
      j["basis"]["x" + std::to_string(i)] = as_strings(cert.x(i));
      j["basis"]["y" + std::to_string(i)] = as_strings(cert.y(i));
    }
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}});
    emit(globals, out, j.dump(2) + "\n");
    return ok ? kOk : kIntegrity;
  }

  std::ostringstream s;
  s << "g=" << g << " n=" << n << " delta=" << join(values) << "\n";
  for (int i = 1; i <= g; ++i) {
    s << "x" << i << " = " << join(cert.x(i)) << "  delta=" << cert.delta_values[2 * (i - 1)] << "\n";
    s << "y" << i << " = " << join(cert.y(i)) << "  delta=" << cert.delta_values[2 * (i - 1) + 1] << "\n";
  }
  s << "change of basis (columns x1,y1,...):\n" << cert.change_of_basis.to_string();
  if (!s.str().ends_with('\n')) s << "\n";
  for (const auto& c : checks) s << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
  emit(globals, out, s.str());
  return ok ? kOk : kIntegrity;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counts of etale Z/m x| Z/n covers of genus-g curves", "etale-census"};
  app.require_subcommand(1);
  Globals globals;
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--out", globals.out_path, "Write output to PATH instead of stdout");
  app.add_option("--budget", globals.budget, "Enumeration candidate budget for verify");

  int g = 0;
  std::int64_t m = 0, n = 0, p = 0, m_max = 0, n_max = 0;
  unsigned e = 1;
  bool run_verification = false, corrupt = false;
  std::string delta;

  auto* count = app.add_subcommand("count", "T, N_cyclic and C_total for one (g, m, n)");
  count->add_option("--g", g)->required();
  count->add_option("--m", m)->required();
  count->add_option("--n", n)->required();

  auto* census = app.add_subcommand("census", "Counts over every coprime 2 <= m <= m_max, 2 <= n <= n_max");
  census->add_option("--g", g)->required();
  census->add_option("--m-max", m_max)->required();
  census->add_option("--n-max", n_max)->required();
  census->add_flag("--verify", run_verification, "Run the eigenvector oracles on every row");

  auto* verify_cmd = app.add_subcommand("verify", "Compare the closed form with the eigenvector oracles");
  verify_cmd->add_option("--g", g)->required();
  verify_cmd->add_option("--m", m)->required();
  verify_cmd->add_option("--n", n)->required();
  verify_cmd->add_flag("--corrupt-enumeration-matrix", corrupt)->group("");

  auto* factor = app.add_subcommand("factor", "Roots of 1 + x + ... + x^{n-1} mod p^e with Hensel traces");
  factor->add_option("--n", n)->required();
  factor->add_option("--p", p)->required();
  factor->add_option("--e", e)->required();

  auto* symplectic = app.add_subcommand("symplectic", "Symplectic basis adapted to delta: Z^{2g} -> Z/nZ");
  symplectic->add_option("--g", g)->required();
  symplectic->add_option("--n", n)->required();
  symplectic->add_option("--delta", delta, "Comma-separated 2g residues")->required();

  for (auto* sub : {count, census, verify_cmd, factor, symplectic}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    if (count->parsed()) return cmd_count(globals, g, m, n, out);
    if (census->parsed()) return cmd_census(globals, g, m_max, n_max, run_verification, out);
    if (verify_cmd->parsed()) return cmd_verify(globals, g, m, n, corrupt, out);
    if (factor->parsed()) return cmd_factor(globals, static_cast<int>(n), p, e, out);
    if (symplectic->parsed()) return cmd_symplectic(globals, g, n, delta, out);
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const IoFailure& e) {
    err << "i/o failure: " << e.what() << "\n";
    return kIoFailure;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const LiftError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const BudgetError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  }
  return kInvalidInput;
}

}  // namespace etale::cli
