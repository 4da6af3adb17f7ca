#pragma once

// Verification of registry entries in each mode, and the suite runner.

#include <optional>
#include <string>
#include <vector>

#include "thetaforms/prover.hpp"
#include "thetaforms/rational_function.hpp"
#include "thetaforms/registry.hpp"

namespace thetaforms {

struct VerifyConfig {
  std::size_t truncation = 500;        // series and sift
  i64 mmax = 10000;                    // ternary
  std::size_t limit = 1000;            // positivity
  std::size_t modeq_truncation = 300;  // theta cross-check of modular equations
  unsigned jobs = 1;
};

struct SeriesCheck {
  bool pass = false;
  std::optional<std::size_t> mismatch;  // first differing exponent
  Integer lhs, rhs;                     // coefficients there
};

SeriesCheck verify_series(const IdentitySpec& id, std::size_t truncation);

struct TernaryCheck {
  bool pass = false;
  std::size_t checked = 0;  // qualifying M
  std::optional<i64> violation;
  Rational lhs, rhs;
};

TernaryCheck verify_ternary(const IdentitySpec& id, i64 mmax);

// Both sides of a ternary entry at one M (conditions are not consulted).
std::pair<Rational, Rational> evaluate_ternary(const IdentitySpec& id, i64 M);

struct PositivityCheck {
  bool nonnegative = false;
  std::optional<std::size_t> witness;  // exponent of a negative coefficient
  Integer value;
};

// Entries with option expect=negative are controls: they pass when a
// negative coefficient is found.
PositivityCheck scan_positivity(const Series& s);
PositivityCheck verify_positivity(const IdentitySpec& id, std::size_t limit);
// psi(q) (phi(q)^2 - phi(q^S)^2) to the given number of coefficients.
Series positivity_series(i64 S, std::size_t limit);

enum class ModeqStatus { pass, refuted, unsupported };

struct ModeqCheck {
  ModeqStatus status = ModeqStatus::unsupported;
  RationalFunction lhs, rhs;
  std::string message;
};

// Substitutes the parametrization in p; each monomial m^k alpha^x beta^y
// needs alpha^(8x) beta^(8y) to be an exact 8th power.
ModeqCheck verify_modeq3(const IdentitySpec& id);

Combination eta_combination(const IdentitySpec& id);
ProofCertificate verify_eta(const IdentitySpec& id);

enum class Status { pass, fail, unsupported, error };
std::string status_name(Status s);

struct ReportRow {
  std::string name;
  Mode mode = Mode::series;
  std::string params;
  Status status = Status::error;
  std::string witness;
  double elapsed_ms = 0;
};

// Runs one entry in its mode. `all` resolves theta cross-check links.
ReportRow verify_entry(const IdentitySpec& id, const VerifyConfig& config, const std::vector<IdentitySpec>& all);

// Name order with digit runs compared numerically: 1.9 < 1.10 < 2.4.
bool name_less(std::string_view a, std::string_view b);

struct SuiteReport {
  std::vector<ReportRow> rows;  // sorted by name_less
  // Unsupported rows (modular equations outside the parametrization) are
  // neither passed nor failed.
  std::size_t passed = 0, failed = 0, unsupported = 0;
  std::size_t total() const { return rows.size(); }
};

// `all` resolves cross-check links when specs is a subset of the registry.
SuiteReport run_suite(const std::vector<IdentitySpec>& specs, const VerifyConfig& config,
                      const std::vector<IdentitySpec>* all = nullptr);

}  // namespace thetaforms
