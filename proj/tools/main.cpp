// thetaforms command-line front end.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "output.hpp"
#include "thetaforms/genus.hpp"
#include "thetaforms/prover.hpp"
#include "thetaforms/registry.hpp"
#include "thetaforms/verify.hpp"

namespace tf = thetaforms;
using tf::cli::Format;
using tf::cli::Table;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  tf::VerifyConfig verify;
  std::string registry;
  Format format = Format::table;
};

// key = value lines; '#' starts a comment.
void apply_config_file(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto eq = line.find('=');
    auto trim = [](std::string x) {
      const auto b = x.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return x.substr(b, x.find_last_not_of(" \t\r") - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw UsageError(fmt::format("{}:{}: expected key = value", path, line_no));
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    try {
      if (key == "terms") s.verify.truncation = std::stoul(value);
      else if (key == "mmax") s.verify.mmax = std::stoll(value);
      else if (key == "limit") s.verify.limit = std::stoul(value);
      else if (key == "modeq_terms") s.verify.modeq_truncation = std::stoul(value);
      else if (key == "jobs") s.verify.jobs = static_cast<unsigned>(std::stoul(value));
      else if (key == "registry") s.registry = value;
      else if (key == "format") {
        if (value != "table" && value != "csv") throw UsageError("format must be table or csv");
        s.format = value == "csv" ? Format::csv : Format::table;
      } else {
        throw UsageError(fmt::format("{}:{}: unknown key '{}'", path, line_no, key));
      }
    } catch (const std::logic_error&) {
      throw UsageError(fmt::format("{}:{}: bad value '{}' for {}", path, line_no, value, key));
    }
  }
}

void check_settings(const Settings& s) {
  if (s.verify.truncation < 1) throw UsageError("terms must be at least 1");
  if (s.verify.mmax < 1) throw UsageError("mmax must be at least 1");
  if (s.verify.limit < 1) throw UsageError("limit must be at least 1");
}

std::vector<tf::IdentitySpec> load(const Settings& s) {
  const std::string path = s.registry.empty() ? tf::default_registry_path() : s.registry;
  std::ifstream probe(path);
  if (!probe) throw UsageError("registry file '" + path + "' does not exist");
  try {
    return tf::load_registry(path);
  } catch (const tf::RegistryError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

const tf::IdentitySpec& find(const std::vector<tf::IdentitySpec>& specs, const std::string& id) {
  for (const auto& s : specs)
    if (s.name == id) return s;
  throw UsageError("no identity named '" + id + "' in the registry");
}

std::string fraction(const tf::Rational& r) { return r.get_str(); }

int cmd_expand(const Settings& s, const std::string& func, std::size_t n) {
  tf::SeriesExprPtr e;
  try {
    e = tf::parse_series_expression(func);
  } catch (const tf::RegistryError& err) {
    throw UsageError(std::string("--func: ") + err.what());
  }
  tf::i64 offset = 0;
  tf::Series series;
  if (e->kind == tf::SeriesExpr::Kind::eta) {
    auto x = tf::expand_eta_quotient(e->eta, n);
    offset = x.offset;
    series = x.series;
  } else {
    series = tf::evaluate(*e, n);
  }
  Table t({"exponent", "coefficient"});
  for (std::size_t k = 0; k < series.truncation(); ++k)
    t.add({std::to_string(offset + static_cast<tf::i64>(k)), series[k].get_str()});
  t.print(std::cout, s.format);
  return kOk;
}

void print_rows(const std::vector<tf::ReportRow>& rows, Format format) {
  Table t({"name", "mode", "params", "verdict", "witness", "ms"});
  for (const auto& r : rows)
    t.add({r.name, tf::mode_name(r.mode), r.params, tf::status_name(r.status), r.witness,
           fmt::format("{:.1f}", r.elapsed_ms)});
  t.print(std::cout, format);
}

int cmd_verify(const Settings& s, const std::string& id) {
  const auto specs = load(s);
  const auto& spec = find(specs, id);
  const tf::ReportRow row = tf::verify_entry(spec, s.verify, specs);
  print_rows({row}, s.format);
  return row.status == tf::Status::pass ? kOk : kFail;
}

int cmd_prove(const Settings& s, const std::string& id) {
  const auto specs = load(s);
  const auto& spec = find(specs, id);
  if (spec.mode != tf::Mode::eta_valence) throw UsageError("'" + id + "' is not an eta-valence entry");
  const tf::ProofCertificate cert = tf::verify_eta(spec);
  std::cout << cert.serialize();
  return cert.verdict == tf::Verdict::proved ? kOk : kFail;
}

int cmd_forms(const Settings& s, tf::i64 disc, bool genera) {
  if (disc < 1) throw UsageError("--disc must be positive");
  if (!genera) {
    Table t({"form", "aut", "16/aut"});
    for (const auto& f : tf::enumerate_ternary_classes(disc)) {
      const auto aut = tf::aut_count(f);
      tf::Rational w(16, static_cast<unsigned long>(aut));
      w.canonicalize();
      t.add({"(" + f.to_string() + ")", std::to_string(aut), fraction(w)});
    }
    t.print(std::cout, s.format);
    return kOk;
  }
  Table t({"genus", "form", "aut", "16/aut", "symbol"});
  int index = 0;
  for (const auto& g : tf::genus_partition(disc)) {
    ++index;
    for (const auto& f : g.classes) {
      const auto aut = tf::aut_count(f);
      tf::Rational w(16, static_cast<unsigned long>(aut));
      w.canonicalize();
      t.add({std::to_string(index), "(" + f.to_string() + ")", std::to_string(aut), fraction(w),
             g.symbol.to_string()});
    }
  }
  t.print(std::cout, s.format);
  return kOk;
}

int cmd_repcount(const Settings&, const std::string& form, tf::i64 m) {
  tf::TernaryForm f;
  try {
    f = tf::TernaryForm::parse(form);
  } catch (const std::exception& e) {
    throw UsageError(std::string("--form: ") + e.what());
  }
  if (!f.is_positive_definite()) throw UsageError("--form: not positive definite");
  if (m < 0) throw UsageError("--m must be nonnegative");
  std::cout << tf::repcount(f, m) << '\n';
  return kOk;
}

int cmd_sgenus(const Settings& s, tf::i64 S) {
  if (S < 3 || S % 2 == 0 || !tf::is_squarefree(S)) throw UsageError("--s must be odd, squarefree and at least 3");
  const tf::SGenus sg = tf::build_sgenus(S);
  std::vector<std::string> header{"genus", "binary", "classes"};
  for (tf::i64 p : sg.primes) header.push_back(fmt::format("eps{}", p));
  header.insert(header.end(), {"mass", "mass_formula"});
  Table t(header);
  const auto rows = tf::sgenus_report(sg);
  bool masses_agree = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    std::string binary, classes;
    for (const auto& b : sg.binary_genera[i]) binary += (binary.empty() ? "" : " ") + ("[" + b.to_string() + "]");
    for (const auto& f : r.classes) classes += (classes.empty() ? "" : " ") + ("(" + f.to_string() + ")");
    std::vector<std::string> row{fmt::format("TG{}", r.index), binary, classes};
    for (const auto& [p, e] : r.eps) row.push_back(std::to_string(e));
    row.push_back(std::to_string(r.mass_direct));
    row.push_back(std::to_string(r.mass_formula));
    masses_agree = masses_agree && r.mass_direct == r.mass_formula;
    t.add(row);
  }
  t.print(std::cout, s.format);
  const tf::i64 total = tf::sgenus_mass(sg);
  bool orthogonal = true;
  for (const auto& [w, eps] : sg.epsilon)
    if (w >= 2) orthogonal = orthogonal && tf::orthogonality_check(sg, w);
  std::cout << fmt::format("total mass {} (S = {}): {}\n", total, S, total == S ? "ok" : "MISMATCH");
  std::cout << fmt::format("per-genus mass formula: {}\n", masses_agree ? "ok" : "MISMATCH");
  std::cout << fmt::format("orthogonality: {}\n", orthogonal ? "ok" : "MISMATCH");
  return total == S && masses_agree && orthogonal ? kOk : kFail;
}

int cmd_positivity(const Settings& s, tf::i64 S) {
  if (S < 2) throw UsageError("--s must be at least 2");
  const auto c = tf::scan_positivity(tf::positivity_series(S, s.verify.limit));
  Table t({"S", "limit", "verdict", "witness"});
  t.add({std::to_string(S), std::to_string(s.verify.limit), c.nonnegative ? "pass" : "fail",
         c.witness ? fmt::format("q^{}: {}", *c.witness, c.value.get_str()) : ""});
  t.print(std::cout, s.format);
  return c.nonnegative ? kOk : kFail;
}

int cmd_suite(const Settings& s, const std::string& mode) {
  const auto all = load(s);
  auto specs = all;
  if (!mode.empty()) {
    std::erase_if(specs, [&](const tf::IdentitySpec& x) { return tf::mode_name(x.mode) != mode; });
    if (specs.empty()) throw UsageError("no entries of mode '" + mode + "'");
  }
  const tf::SuiteReport report = tf::run_suite(specs, s.verify, &all);
  print_rows(report.rows, s.format);
  std::cout << fmt::format("{}/{}/{}", report.passed, report.failed, report.total());
  if (report.unsupported) std::cout << fmt::format(" ({} unsupported)", report.unsupported);
  std::cout << '\n';
  return report.failed == 0 ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of theta-function and ternary-form identities"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings settings;
  std::string config_path, format_name;
  std::optional<std::size_t> terms, limit;
  std::optional<tf::i64> mmax;
  std::optional<unsigned> jobs;
  std::string registry_flag;
  app.add_option("--registry", registry_flag, "Registry file (default: $THETAFORMS_REGISTRY or the bundled file)");
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--format", format_name, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  app.add_option("--jobs", jobs, "Worker threads for the suite");

  auto* expand = app.add_subcommand("expand", "Coefficients of a named function, expression or eta-quotient");
  std::string func;
  std::size_t expand_n = 20;
  expand->add_option("--func", func, "e.g. phi, psi(q^2), f(q,q^5), eta[1^-2,2^5,4^-2]")->required();
  expand->add_option("--n", expand_n, "Number of coefficients")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "Verify one registry entry");
  std::string id;
  verify->add_option("--id", id, "Identity name")->required();
  verify->add_option("--terms", terms, "Series truncation");
  verify->add_option("--mmax", mmax, "Largest M for ternary identities");
  verify->add_option("--limit", limit, "Coefficients scanned for positivity");

  auto* prove = app.add_subcommand("prove-eta", "Prove an eta-quotient identity and print the certificate");
  prove->add_option("--id", id, "Identity name")->required();

  auto* forms = app.add_subcommand("forms", "Classes of positive ternary forms of a discriminant");
  tf::i64 disc = 0;
  bool genera = false;
  forms->add_option("--disc", disc, "Discriminant")->required();
  forms->add_flag("--genera", genera, "Group classes by genus");

  auto* rep = app.add_subcommand("repcount", "Number of representations of m by a ternary form");
  std::string form;
  tf::i64 m = 0;
  rep->add_option("--form", form, "a,b,c,d,e,f")->required();
  rep->add_option("--m", m, "Represented integer")->required();

  auto* sgen = app.add_subcommand("sgenus", "S-genus report");
  tf::i64 S = 0;
  sgen->add_option("--s", S, "Odd squarefree S >= 3")->required();

  auto* pos = app.add_subcommand("positivity", "Scan psi(q)(phi(q)^2 - phi(q^S)^2) for negative coefficients");
  pos->add_option("--s", S, "S")->required();
  pos->add_option("--limit", limit, "Number of coefficients");

  auto* suite = app.add_subcommand("suite", "Verify every registry entry");
  std::string mode;
  suite->add_option("--terms", terms, "Series truncation");
  suite->add_option("--mmax", mmax, "Largest M for ternary identities");
  suite->add_option("--limit", limit, "Coefficients scanned for positivity");
  suite->add_option("--mode", mode, "Only entries of this mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    settings.verify.jobs = std::max(1u, std::thread::hardware_concurrency());
    if (!config_path.empty()) apply_config_file(config_path, settings);
    if (const char* env = std::getenv("THETAFORMS_REGISTRY"); env && *env && settings.registry.empty())
      settings.registry = env;
    if (!registry_flag.empty()) settings.registry = registry_flag;
    if (!format_name.empty()) settings.format = format_name == "csv" ? Format::csv : Format::table;
    if (terms) settings.verify.truncation = *terms;
    if (mmax) settings.verify.mmax = *mmax;
    if (limit) settings.verify.limit = *limit;
    if (jobs) settings.verify.jobs = std::max(1u, *jobs);
    check_settings(settings);

    if (*expand) return cmd_expand(settings, func, expand_n);
    if (*verify) return cmd_verify(settings, id);
    if (*prove) return cmd_prove(settings, id);
    if (*forms) return cmd_forms(settings, disc, genera);
    if (*rep) return cmd_repcount(settings, form, m);
    if (*sgen) return cmd_sgenus(settings, S);
    if (*pos) return cmd_positivity(settings, S);
    if (*suite) return cmd_suite(settings, mode);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
