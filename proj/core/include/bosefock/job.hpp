#pragma once

// Job configs and reports for the command-line front end.  Configs arrive as
// UTF-8 JSON with unknown keys rejected and complex numbers written as
// [re, im] pairs; reports serialize to JSON or flattened CSV with a fixed
// field set, deterministically for a given (config, seed).

#include "bosefock/basis.hpp"
#include "bosefock/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bosefock {

enum class JobCommand { partition, gibbs, weyl, trace_mc, sobolev, hermite, verify };

// "partition", "gibbs", "weyl", "trace-mc", "sobolev", "hermite", "verify".
JobCommand parse_command_name(const std::string& name);
std::string command_name(JobCommand command);

struct JobConfig {
  int modes = 1;
  int cutoff = 0;
  std::vector<std::vector<cplx>> hamiltonian; // square Hermitian, complex as [re, im]
  double beta = 1.0;
  double mu = 0.0;
  std::map<std::string, ModeVector> vectors;  // named smearing vectors
  std::string expression;                     // gibbs / trace-mc operator word
  std::string weyl_vector;                    // weyl: vector-table name
  std::uint64_t seed = 0;
  std::uint64_t samples = 10000;
  bool antithetic = false;
  int mc_modes = 0;                           // 0 means all modes
  std::vector<int> mode_list;                 // trace-mc partial-trace reporting
  std::vector<std::pair<OccupationIndex, cplx>> state; // sobolev input coefficients
  int sobolev_order = 2;
  bool include_constant_term = true;
  int degree = 0;                             // hermite
  double point = 0.0;                         // hermite
};

// Parses and validates the JSON text (or the file at `path`).  Unknown keys,
// type mismatches, and malformed complex pairs raise std::invalid_argument
// with the offending key in the message.
JobConfig parse_job_config(const std::string& json_text);
JobConfig load_job_config(const std::string& path);

struct Report {
  cplx value{0.0, 0.0};
  std::optional<cplx> closed_form;
  std::optional<double> std_error;
  double truncation_tail = 0.0;
  std::uint64_t seed = 0;
  int basis_modes = 0;
  int basis_cutoff = 0;
  int basis_dim = 0;
  std::string note; // omitted from serialized output when empty
};

// Executes one command against the config.  Throws std::invalid_argument with
// an actionable message when the config lacks what the command needs.
Report run_job(JobCommand command, const JobConfig& config);

// {value, closed_form, std_error, truncation_tail, seed, basis:{modes,
// cutoff, dim}} plus "note" when present; closed_form and std_error are null
// when absent, complex values are [re, im] pairs.
std::string report_to_json(const Report& report);

// Two-line CSV (header + row) flattening the same fields with dotted paths:
// value.re, value.im, closed_form.re, ...; empty cells for nulls.
std::string report_to_csv(const Report& report);

// Dispatch on "json" | "csv"; anything else throws std::invalid_argument.
std::string format_report(const Report& report, const std::string& format);

} // namespace bosefock
