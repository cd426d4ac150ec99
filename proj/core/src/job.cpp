#include "bosefock/job.hpp"

#include "bosefock/checks.hpp"
#include "bosefock/expr.hpp"
#include "bosefock/gibbs.hpp"
#include "bosefock/hermite.hpp"
#include "bosefock/linalg.hpp"
#include "bosefock/quantization.hpp"
#include "bosefock/sobolev.hpp"
#include "bosefock/trace.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bosefock {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

cplx parse_complex_pair(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("config key '" + where +
                                "': complex values are [re, im] number pairs");
  }
  return cplx(j[0].get<double>(), j[1].get<double>());
}

int parse_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer()) {
    throw std::invalid_argument("config key '" + where + "' must be an integer");
  }
  return j.get<int>();
}

double parse_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) {
    throw std::invalid_argument("config key '" + where + "' must be a number");
  }
  return j.get<double>();
}

std::uint64_t parse_u64(const nlohmann::json& j, const std::string& where) {
  if (!(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0))) {
    throw std::invalid_argument("config key '" + where +
                                "' must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

bool parse_bool(const nlohmann::json& j, const std::string& where) {
  if (!j.is_boolean()) {
    throw std::invalid_argument("config key '" + where + "' must be a boolean");
  }
  return j.get<bool>();
}

std::string parse_string(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) {
    throw std::invalid_argument("config key '" + where + "' must be a string");
  }
  return j.get<std::string>();
}

} // namespace

JobCommand parse_command_name(const std::string& name) {
  if (name == "partition") return JobCommand::partition;
  if (name == "gibbs") return JobCommand::gibbs;
  if (name == "weyl") return JobCommand::weyl;
  if (name == "trace-mc") return JobCommand::trace_mc;
  if (name == "sobolev") return JobCommand::sobolev;
  if (name == "hermite") return JobCommand::hermite;
  if (name == "verify") return JobCommand::verify;
  throw std::invalid_argument("unknown command '" + name + "'");
}

std::string command_name(JobCommand command) {
  switch (command) {
    case JobCommand::partition: return "partition";
    case JobCommand::gibbs: return "gibbs";
    case JobCommand::weyl: return "weyl";
    case JobCommand::trace_mc: return "trace-mc";
    case JobCommand::sobolev: return "sobolev";
    case JobCommand::hermite: return "hermite";
    case JobCommand::verify: return "verify";
  }
  throw std::logic_error("unreachable");
}

JobConfig parse_job_config(const std::string& json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }

  JobConfig config;
  for (const auto& [key, value] : root.items()) {
    if (key == "modes") {
      config.modes = parse_int(value, key);
    } else if (key == "cutoff") {
      config.cutoff = parse_int(value, key);
    } else if (key == "hamiltonian") {
      if (!value.is_array()) {
        throw std::invalid_argument("config key 'hamiltonian' must be an array of rows");
      }
      config.hamiltonian.clear();
      for (const auto& row : value) {
        if (!row.is_array()) {
          throw std::invalid_argument("config key 'hamiltonian': each row is an array");
        }
        std::vector<cplx> parsed;
        for (const auto& entry : row) {
          parsed.push_back(parse_complex_pair(entry, "hamiltonian"));
        }
        config.hamiltonian.push_back(std::move(parsed));
      }
    } else if (key == "beta") {
      config.beta = parse_number(value, key);
    } else if (key == "mu") {
      config.mu = parse_number(value, key);
    } else if (key == "vectors") {
      if (!value.is_object()) {
        throw std::invalid_argument(
            "config key 'vectors' must be an object of named vectors");
      }
      for (const auto& [name, vec] : value.items()) {
        if (!vec.is_array()) {
          throw std::invalid_argument("config vector '" + name +
                                      "' must be an array of [re, im] pairs");
        }
        ModeVector parsed;
        for (const auto& entry : vec) {
          parsed.push_back(parse_complex_pair(entry, "vectors." + name));
        }
        config.vectors[name] = std::move(parsed);
      }
    } else if (key == "expression") {
      config.expression = parse_string(value, key);
    } else if (key == "weyl_vector") {
      config.weyl_vector = parse_string(value, key);
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "samples") {
      config.samples = parse_u64(value, key);
    } else if (key == "antithetic") {
      config.antithetic = parse_bool(value, key);
    } else if (key == "mc_modes") {
      config.mc_modes = parse_int(value, key);
    } else if (key == "mode_list") {
      if (!value.is_array()) {
        throw std::invalid_argument("config key 'mode_list' must be an array of integers");
      }
      config.mode_list.clear();
      for (const auto& entry : value) {
        config.mode_list.push_back(parse_int(entry, "mode_list"));
      }
    } else if (key == "state") {
      if (!value.is_array()) {
        throw std::invalid_argument(
            "config key 'state' must be an array of [multi-index, [re, im]] pairs");
      }
      config.state.clear();
      for (const auto& entry : value) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_array()) {
          throw std::invalid_argument(
              "config key 'state': each element is [multi-index, [re, im]]");
        }
        OccupationIndex index;
        for (const auto& occupancy : entry[0]) {
          const int o = parse_int(occupancy, "state");
          if (o < 0) {
            throw std::invalid_argument("config key 'state': occupancies are >= 0");
          }
          index.push_back(o);
        }
        config.state.emplace_back(std::move(index), parse_complex_pair(entry[1], "state"));
      }
    } else if (key == "sobolev_order") {
      config.sobolev_order = parse_int(value, key);
    } else if (key == "include_constant_term") {
      config.include_constant_term = parse_bool(value, key);
    } else if (key == "degree") {
      config.degree = parse_int(value, key);
    } else if (key == "point") {
      config.point = parse_number(value, key);
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  return config;
}

JobConfig load_job_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_job_config(buffer.str());
}

namespace {

OneBodyOperator one_body_from_config(const JobConfig& config) {
  const std::size_t n = static_cast<std::size_t>(config.modes);
  if (config.hamiltonian.empty()) {
    throw std::invalid_argument("this command needs a 'hamiltonian' in the config");
  }
  if (config.hamiltonian.size() != n) {
    throw std::invalid_argument("hamiltonian has " +
                                std::to_string(config.hamiltonian.size()) +
                                " rows, config declares modes = " + std::to_string(n));
  }
  DenseMatrix h(config.modes);
  for (std::size_t r = 0; r < n; ++r) {
    if (config.hamiltonian[r].size() != n) {
      throw std::invalid_argument("hamiltonian row " + std::to_string(r) + " has " +
                                  std::to_string(config.hamiltonian[r].size()) +
                                  " entries, expected " + std::to_string(n));
    }
    for (std::size_t c = 0; c < n; ++c) {
      h.at(static_cast<int>(r), static_cast<int>(c)) = config.hamiltonian[r][c];
    }
  }
  return OneBodyOperator(h);
}

const ModeVector& vector_from_config(const JobConfig& config, const std::string& name,
                                     const char* command) {
  auto it = config.vectors.find(name);
  if (it == config.vectors.end()) {
    throw std::invalid_argument(std::string(command) + ": vector '" + name +
                                "' is not in the config's vector table");
  }
  if (static_cast<int>(it->second.size()) != config.modes) {
    throw std::invalid_argument(std::string(command) + ": vector '" + name + "' has " +
                                std::to_string(it->second.size()) +
                                " modes, config declares " + std::to_string(config.modes));
  }
  return it->second;
}

Report base_report(const JobConfig& config, const TruncatedBasis& basis) {
  Report report;
  report.seed = config.seed;
  report.basis_modes = basis.n_modes();
  report.basis_cutoff = basis.cutoff();
  report.basis_dim = basis.dim();
  return report;
}

Report run_partition(const JobConfig& config) {
  const TruncatedBasis basis(config.modes, config.cutoff);
  const ThermalSpectrum spectrum =
      thermal_spectrum(one_body_from_config(config), config.beta, config.mu);
  const GibbsContext ctx = make_gibbs_context(basis, spectrum);
  Report report = base_report(config, basis);
  report.value = cplx(partition_truncated(ctx), 0.0);
  report.closed_form = cplx(partition_closed(spectrum), 0.0);
  report.truncation_tail =
      truncation_tail(basis.n_modes(), basis.cutoff(), 0, spectrum.lambda_max());
  report.note =
      "closed form is the product of (1 - lambda_j)^{-1}; see "
      "docs/normalization.md for the square-root variant and why it is not used";
  return report;
}

Report run_gibbs(const JobConfig& config) {
  if (config.expression.empty()) {
    throw std::invalid_argument("gibbs needs an 'expression' in the config");
  }
  const TruncatedBasis basis(config.modes, config.cutoff);
  const ThermalSpectrum spectrum =
      thermal_spectrum(one_body_from_config(config), config.beta, config.mu);
  const GibbsContext ctx = make_gibbs_context(basis, spectrum);
  const ExprAst ast = parse_expr(config.expression);

  // A single Weyl factor (with scalar/identity dressing) streams through the
  // direct trace instead of materializing the Weyl matrix.
  cplx scale(1.0, 0.0);
  const ExprTerm* lone_weyl = nullptr;
  bool streamable = true;
  for (const ExprTerm& term : ast.terms) {
    if (term.kind == ExprKind::scalar) {
      scale *= term.scalar;
    } else if (term.kind == ExprKind::weyl && lone_weyl == nullptr) {
      lone_weyl = &term;
    } else if (term.kind != ExprKind::identity) {
      streamable = false;
    }
  }

  Report report = base_report(config, basis);
  if (streamable && lone_weyl != nullptr) {
    const ModeVector& f = vector_from_config(config, lone_weyl->ref, "gibbs");
    report.value = scale * gibbs_weyl_direct(ctx, f);
  } else {
    const OneBodyOperator one_body = one_body_from_config(config);
    report.value =
        gibbs_expectation(ctx, eval_expr(ast, basis, config.vectors, &one_body));
  }
  if (auto closed = gibbs_closed_form(ast, spectrum, config.vectors)) {
    report.closed_form = *closed;
  }
  report.truncation_tail = truncation_tail(basis.n_modes(), basis.cutoff(),
                                           ladder_factor_count(ast), spectrum.lambda_max());
  return report;
}

Report run_weyl(const JobConfig& config) {
  if (config.weyl_vector.empty()) {
    throw std::invalid_argument(
        "weyl needs 'weyl_vector' naming an entry of the config's vector table");
  }
  const TruncatedBasis basis(config.modes, config.cutoff);
  const ThermalSpectrum spectrum =
      thermal_spectrum(one_body_from_config(config), config.beta, config.mu);
  const GibbsContext ctx = make_gibbs_context(basis, spectrum);
  const ModeVector& f = vector_from_config(config, config.weyl_vector, "weyl");

  Report report = base_report(config, basis);
  report.value = gibbs_weyl_direct(ctx, f);
  report.closed_form = cplx(weyl_gibbs_closed(spectrum, f), 0.0);
  report.truncation_tail =
      truncation_tail(basis.n_modes(), basis.cutoff(), 0, spectrum.lambda_max());
  return report;
}

Report run_trace_mc(const JobConfig& config) {
  if (config.expression.empty()) {
    throw std::invalid_argument("trace-mc needs an 'expression' in the config");
  }
  if (config.samples == 0) {
    throw std::invalid_argument("trace-mc needs 'samples' >= 1");
  }
  const TruncatedBasis basis(config.modes, config.cutoff);
  const ExprAst ast = parse_expr(config.expression);
  SparseOperator x(basis.dim());
  if (config.hamiltonian.empty()) {
    x = eval_expr(ast, basis, config.vectors);
  } else {
    const OneBodyOperator one_body = one_body_from_config(config);
    x = eval_expr(ast, basis, config.vectors, &one_body);
  }
  const int m_modes = config.mc_modes == 0 ? basis.n_modes() : config.mc_modes;
  const TraceReport trace =
      trace_coherent_mc(basis, x, m_modes, config.samples, config.seed, config.antithetic);

  Report report = base_report(config, basis);
  report.value = trace.estimate;
  report.closed_form = trace.exact;
  report.std_error = trace.std_error;
  report.truncation_tail = trace.reject_bias_bound;
  std::string note = "samples=" + std::to_string(trace.samples) +
                     " rejected=" + std::to_string(trace.rejected) +
                     " antithetic=" + (config.antithetic ? "1" : "0");
  if (!config.mode_list.empty()) {
    for (const auto& [m, partial] : trace_mode_convergence(basis, x, config.mode_list)) {
      note += " partial[" + std::to_string(m) + "]=" + format_double(partial.real());
      if (partial.imag() != 0.0) note += "+" + format_double(partial.imag()) + "i";
    }
  }
  report.note = note;
  return report;
}

Report run_sobolev(const JobConfig& config) {
  if (config.state.empty()) {
    throw std::invalid_argument(
        "sobolev needs a 'state' (array of [multi-index, [re, im]] coefficients)");
  }
  const TruncatedBasis basis(config.modes, config.cutoff);
  const StateVector p = bargmann_transform_map(basis, config.state);
  const int r = config.sobolev_order;
  const double chain = sobolev_norm_chain(basis, p, r, config.include_constant_term);
  const double level = sobolev_norm_level(basis, p, r);

  Report report = base_report(config, basis);
  report.value = cplx(chain, 0.0);

  // Closed form for a state supported on a single level k: the chain sums
  // telescope to falling factorials, so the norm is sum_m sqrt(k!/(k-m)!) ||p||.
  int level_of_state = -1;
  bool homogeneous = true;
  for (const auto& [index, value] : config.state) {
    if (value == cplx(0.0, 0.0)) continue;
    const int k = occupation_level(index);
    if (level_of_state < 0) {
      level_of_state = k;
    } else if (k != level_of_state) {
      homogeneous = false;
      break;
    }
  }
  if (homogeneous && level_of_state >= 0) {
    const double pn = norm(p);
    double closed = config.include_constant_term ? 1.0 : 0.0;
    double falling = 1.0;
    for (int m = 1; m <= r; ++m) {
      falling *= static_cast<double>(level_of_state - m + 1);
      if (falling <= 0.0) break;
      closed += std::sqrt(falling);
    }
    report.closed_form = cplx(closed * pn, 0.0);
  }
  report.note = "level_norm=" + format_double(level);
  return report;
}

Report run_hermite(const JobConfig& config) {
  const double value = hermite_eval(config.degree, config.point);
  Report report;
  report.seed = config.seed;
  report.basis_modes = config.modes;
  report.basis_cutoff = config.cutoff;
  report.basis_dim =
      static_cast<int>(TruncatedBasis::dimension_of(config.modes, config.cutoff));
  report.value = cplx(value, 0.0);
  report.note = "degree=" + std::to_string(config.degree) +
                " point=" + format_double(config.point);
  if (config.degree >= 1) {
    report.note += " derivative_residual=" +
                   format_double(hermite_derivative_check(config.degree, config.point));
  }
  return report;
}

Report run_verify(const JobConfig& config) {
  const std::vector<CheckResult> results = run_all_checks();
  std::size_t failed = 0;
  std::string note;
  for (const CheckResult& result : results) {
    if (!result.passed) ++failed;
    if (!note.empty()) note += "\n";
    note += format_check_line(result);
  }
  Report report;
  report.seed = config.seed;
  report.basis_modes = config.modes;
  report.basis_cutoff = config.cutoff;
  report.basis_dim =
      static_cast<int>(TruncatedBasis::dimension_of(config.modes, config.cutoff));
  report.value = cplx(static_cast<double>(failed), 0.0);
  report.closed_form = cplx(0.0, 0.0); // the expected failure count
  report.note = std::to_string(results.size() - failed) + "/" +
                std::to_string(results.size()) + " checks passed\n" + note;
  return report;
}

} // namespace

Report run_job(JobCommand command, const JobConfig& config) {
  switch (command) {
    case JobCommand::partition: return run_partition(config);
    case JobCommand::gibbs: return run_gibbs(config);
    case JobCommand::weyl: return run_weyl(config);
    case JobCommand::trace_mc: return run_trace_mc(config);
    case JobCommand::sobolev: return run_sobolev(config);
    case JobCommand::hermite: return run_hermite(config);
    case JobCommand::verify: return run_verify(config);
  }
  throw std::logic_error("unreachable");
}

std::string report_to_json(const Report& report) {
  ordered_json j;
  j["value"] = ordered_json::array({report.value.real(), report.value.imag()});
  if (report.closed_form) {
    j["closed_form"] =
        ordered_json::array({report.closed_form->real(), report.closed_form->imag()});
  } else {
    j["closed_form"] = nullptr;
  }
  if (report.std_error) {
    j["std_error"] = *report.std_error;
  } else {
    j["std_error"] = nullptr;
  }
  j["truncation_tail"] = report.truncation_tail;
  j["seed"] = report.seed;
  j["basis"] = ordered_json{{"modes", report.basis_modes},
                            {"cutoff", report.basis_cutoff},
                            {"dim", report.basis_dim}};
  if (!report.note.empty()) j["note"] = report.note;
  return j.dump(2) + "\n";
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

} // namespace

std::string report_to_csv(const Report& report) {
  std::string header =
      "value.re,value.im,closed_form.re,closed_form.im,std_error,"
      "truncation_tail,seed,basis.modes,basis.cutoff,basis.dim,note";
  std::string row = format_double(report.value.real()) + "," +
                    format_double(report.value.imag()) + ",";
  if (report.closed_form) {
    row += format_double(report.closed_form->real()) + "," +
           format_double(report.closed_form->imag());
  } else {
    row += ",";
  }
  row += ",";
  if (report.std_error) row += format_double(*report.std_error);
  row += "," + format_double(report.truncation_tail);
  row += "," + std::to_string(report.seed);
  row += "," + std::to_string(report.basis_modes);
  row += "," + std::to_string(report.basis_cutoff);
  row += "," + std::to_string(report.basis_dim);
  row += "," + csv_escape(report.note);
  return header + "\n" + row + "\n";
}

std::string format_report(const Report& report, const std::string& format) {
  if (format == "json") return report_to_json(report);
  if (format == "csv") return report_to_csv(report);
  throw std::invalid_argument("unknown report format '" + format +
                              "' (expected json or csv)");
}

} // namespace bosefock
