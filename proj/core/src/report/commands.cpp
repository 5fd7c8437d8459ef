#include "abtrap/report/commands.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "abtrap/algebra/expression_io.hpp"
#include "abtrap/algebra/phase_space.hpp"
#include "abtrap/gauge/gauge.hpp"
#include "abtrap/reduction/reduced_model.hpp"
#include "abtrap/report/acceptance.hpp"
#include "abtrap/spectral/analysis.hpp"
#include "abtrap/support/parallel.hpp"

namespace abtrap::report {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using algebra::RationalFunction;
using reduction::TrapLimit;

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"reduce",       "spectrum", "residual-scan",
                                                 "gauge-check", "secular",  "verify-all"};
  return names;
}

namespace {

class Output {
 public:
  Output(const CommandOptions& o, std::string hash) : dir_(o.out), format_(o.format), hash_(std::move(hash)) {
    fs::create_directories(dir_);
  }

  const std::string& hash() const { return hash_; }
  Format format() const { return format_; }

  void document(const std::string& name, json doc) {
    doc["config_hash"] = hash_;
    write(name + ".json", doc.dump(2) + "\n");
  }

  /// JSON lines or CSV with the columns of the first record.
  void records(const std::string& name, const std::vector<json>& rows) {
    std::string text;
    if (format_ == Format::json) {
      for (auto row : rows) {
        row["config_hash"] = hash_;
        text += row.dump() + "\n";
      }
      write(name + ".jsonl", text);
      return;
    }
    if (!rows.empty()) {
      std::vector<std::string> cols;
      for (const auto& item : rows.front().items()) cols.push_back(item.key());
      cols.push_back("config_hash");
      for (std::size_t i = 0; i < cols.size(); ++i) text += (i ? "," : "") + cols[i];
      text += "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i + 1 < cols.size(); ++i) {
          const auto& v = row.at(cols[i]);
          text += (i ? "," : "") + (v.is_string() ? v.get<std::string>() : v.dump());
        }
        text += "," + hash_ + "\n";
      }
    }
    write(name + ".csv", text);
  }

  void raw(const std::string& file, const std::string& text) { write(file, text); }

 private:
  void write(const std::string& file, const std::string& text) {
    std::ofstream out(dir_ / file, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + (dir_ / file).string());
  }

  fs::path dir_;
  Format format_;
  std::string hash_;
};

algebra::NumericPoint numeric_point(const TrapConfig& t) {
  namespace p = algebra::param;
  auto q = [](double v) {
    algebra::Rational r(v);
    r.canonicalize();
    return r;
  };
  return {{algebra::Symbol(p::mu), q(t.mu)},       {algebra::Symbol(p::omega_c), q(t.omega_c)},
          {algebra::Symbol(p::omega_P), q(t.omega_P)}, {algebra::Symbol(p::a), q(t.a)},
          {algebra::Symbol(p::omega_0), q(t.omega_0())}, {algebra::Symbol(p::alpha), q(t.alpha)}};
}

double numeric(const RationalFunction& f, const TrapConfig& t) {
  return algebra::evaluate(f, numeric_point(t)).get_d();
}

TrapLimit limit_of(const TrapConfig& t) {
  if (t.omega_c == 0.0) return TrapLimit::no_uniform_field;
  return t.alpha == 0.0 ? TrapLimit::no_flux : TrapLimit::full;
}

json matrix_json(const reduction::RfMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& e : row) r.push_back(algebra::to_string(e));
    out.push_back(r);
  }
  return out;
}

void cmd_reduce(const RunConfig& rc, Output& out, std::ostream& log) {
  const TrapLimit limit = limit_of(rc.trap);
  const auto cs = reduction::kinetic_constraints(rc.orientation, limit);
  json doc;
  doc["command"] = "reduce";
  doc["orientation"] = reduction::to_string(rc.orientation);
  doc["limit"] = reduction::to_string(limit);
  json phis = json::array();
  for (const auto& phi : cs.constraints()) phis.push_back(algebra::to_string(phi));
  doc["constraints"] = phis;
  const auto matrix = reduction::constraint_matrix(cs);
  doc["constraint_matrix"] = matrix_json(matrix.entries);
  doc["classification"] = reduction::to_string(matrix.classification);
  if (matrix.classification == reduction::Classification::degenerate) {
    const reduction::ReductionImpossible err(matrix);
    doc["outcome"] = "REDUCTION_IMPOSSIBLE";
    doc["message"] = err.what();
    out.document("reduce", doc);
    throw err;
  }
  const reduction::DiracStructure ds(cs);
  const auto table = ds.table();
  json t = json::array();
  for (const auto& row : table) {
    json r = json::array();
    for (const auto& e : row) r.push_back(algebra::to_string(e));
    t.push_back(r);
  }
  doc["dirac_brackets"] = {{"basis", {"x1", "x2", "p1", "p2"}}, {"table", t}};

  const auto rm = reduction::reduce_trap(rc.orientation, limit);
  const auto q = reduction::quantize(rm);
  doc["reduced_model"] = {{"x", algebra::to_string(rm.x)},
                          {"p", algebra::to_string(rm.p)},
                          {"bracket_x1_x2", algebra::to_string(rm.bracket_x1_x2)},
                          {"effective_mass", algebra::to_string(rm.effective_mass)},
                          {"effective_frequency", algebra::to_string(rm.effective_frequency)},
                          {"surface_hamiltonian", algebra::to_string(rm.surface_hamiltonian)},
                          {"surface_Jz", algebra::to_string(rm.surface_jz)},
                          {"J_AB", algebra::to_string(rm.j_ab)}};
  json levels = json::array();
  for (unsigned n = 0; n < 4; ++n) {
    levels.push_back({{"n", n},
                      {"energy", numeric(q.energy(n), rc.trap)},
                      {"Jz", numeric(q.canonical_jz(n), rc.trap)}});
  }
  doc["quantized"] = {{"annihilation_operator", reduction::ReducedSpectrum::annihilation_operator()},
                      {"Jz_operator", reduction::ReducedSpectrum::jz_operator()},
                      {"zero_point_Jz_symbolic", algebra::to_string(q.zero_point_jz())},
                      {"zero_point_Jz", numeric(q.zero_point_jz(), rc.trap)},
                      {"J_AB", numeric(q.j_ab, rc.trap)},
                      {"effective_mass", numeric(rm.effective_mass, rc.trap)},
                      {"effective_frequency", numeric(rm.effective_frequency, rc.trap)},
                      {"levels", levels}};
  const auto leg = reduction::legendre_check(rc.orientation, limit);
  doc["legendre"] = {{"passed", leg.passed},
                     {"legendre_hamiltonian", algebra::to_string(leg.legendre_hamiltonian)},
                     {"difference", algebra::to_string(leg.hamiltonian_difference)}};
  doc["outcome"] = "reduced";
  out.document("reduce", doc);
  log << "reduce: " << reduction::to_string(limit) << ", zero-point J_z = " << algebra::to_string(q.zero_point_jz())
      << " = " << numeric(q.zero_point_jz(), rc.trap) << "\n";
}

json state_record(int m, const spectral::ResidualEntry& e, const RunConfig& rc, const TrapConfig& t) {
  json r;
  r["m"] = m;
  r["n"] = e.n;
  r["E"] = e.energy;
  if (rc.solver.options.model == spectral::RadialModel::flux_line) r["E_closed_form"] = spectral::fock_darwin_energy(t, e.n, m);
  r["rho2"] = e.rho2;
  r["Ek"] = e.kinetic;
  r["residual"] = e.residual;
  r["bound"] = e.bound;
  r["within_bound"] = e.within_bound;
  r["Jz_canonical"] = m;
  r["model"] = spectral::to_string(rc.solver.options.model);
  return r;
}

void cmd_spectrum(const RunConfig& rc, Output& out, unsigned threads, std::ostream& log) {
  const auto results =
      spectral::solve_sectors(rc.trap, rc.solver.sectors, rc.solver.states, rc.solver.options, threads);
  std::vector<json> rows;
  for (const auto& r : results) {
    for (const auto& e : spectral::residual_identity(r, rc.trap)) rows.push_back(state_record(r.m, e, rc, rc.trap));
  }
  out.records("spectrum", rows);
  log << "spectrum: " << rows.size() << " states in " << results.size() << " sectors\n";
}

void cmd_residual_scan(const RunConfig& rc, Output& out, unsigned threads, std::ostream& log) {
  struct Point {
    double ratio, alpha;
  };
  std::vector<Point> grid;
  for (double ratio : rc.sweep.ratios) {
    for (double alpha : rc.sweep.alphas) grid.push_back({ratio, alpha});
  }
  const auto blocks = support::parallel_map<std::vector<json>>(grid.size(), threads, [&](std::size_t i) {
    TrapConfig t = rc.trap;
    t.omega_c = grid[i].ratio * t.omega_P;
    t.alpha = grid[i].alpha;
    std::vector<json> rows;
    for (const auto& r : spectral::solve_sectors(t, rc.sweep.sectors, rc.solver.states, rc.solver.options, 1)) {
      for (const auto& e : spectral::residual_identity(r, t)) {
        json row;
        row["ratio"] = grid[i].ratio;
        row["alpha"] = grid[i].alpha;
        const json record = state_record(r.m, e, rc, t);
        for (const auto& item : record.items()) row[item.key()] = item.value();
        rows.push_back(std::move(row));
      }
    }
    return rows;
  });
  std::vector<json> rows;
  std::size_t violations = 0;
  for (const auto& b : blocks) {
    for (const auto& r : b) {
      violations += r["within_bound"].get<bool>() ? 0 : 1;
      rows.push_back(r);
    }
  }
  out.records("residual_scan", rows);
  log << "residual-scan: " << rows.size() << " states, " << violations << " outside the bound\n";
}

void cmd_gauge(const RunConfig& rc, Output& out, std::ostream& log) {
  const TrapConfig& t = rc.trap;
  const auto pure = gauge::check_pure_gauge(t, gauge::exterior_samples(t, 64, 0x9a09e), rc.orientation);
  const double scale = t.a > 0.0 ? t.a : 1.0;
  json circ = json::array();
  double circ_mean = 0.0;
  for (double k : {1.5, 3.0, 10.0}) {
    const double v = gauge::circulation_over_2pi(t, k * scale, 10000, rc.orientation);
    circ.push_back({{"radius", k * scale}, {"circulation_over_2pi", v}});
    circ_mean += v / 3.0;
  }
  double gap = 0.0;
  json sectors = json::array();
  for (int m : rc.solver.sectors) {
    const auto rep = gauge::gauge_spectrum_equivalence(t, m, rc.solver.states, rc.solver.options);
    gap = std::max(gap, rep.max_relative_gap);
    sectors.push_back({{"m", m}, {"flux", rep.flux}, {"twisted", rep.twisted}, {"max_relative_gap", rep.max_relative_gap}});
  }
  const auto jz = gauge::gauge_invariance_of_jz(t, rc.orientation);
  json doc;
  doc["command"] = "gauge-check";
  doc["gauge"] = {{"max_pure_gauge_residual", pure.max_residual},
                  {"max_curl", pure.max_curl},
                  {"circulation_over_2pi", circ_mean},
                  {"spectrum_gap", gap},
                  {"symbolic_pass", jz.passed}};
  doc["circulation"] = circ;
  doc["spectrum"] = sectors;
  doc["symbolic"] = {{"transformed", algebra::to_string(jz.transformed)},
                     {"untransformed", algebra::to_string(jz.untransformed)},
                     {"expected", algebra::to_string(jz.expected)}};
  out.document("gauge", doc);
  log << "gauge-check: pure-gauge residual " << pure.max_residual << ", circulation/2pi " << circ_mean
      << ", spectrum gap " << gap << ", symbolic " << (jz.passed ? "pass" : "fail") << "\n";
}

std::string csv_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void cmd_secular(const RunConfig& rc, Output& out, std::ostream& log) {
  if (!rc.secular) throw ConfigParseError(0, "", "secular needs a [drive] section");
  const auto& s = *rc.secular;
  const double omega_p = s.drive.omega_P(rc.trap.mu);
  secular::IntegrationOptions o;
  o.duration = s.periods * 2.0 * std::numbers::pi / omega_p;
  o.dt = 2.0 * std::numbers::pi / (s.steps_per_period * s.drive.Omega_rf);
  o.stride = static_cast<std::size_t>(s.steps_per_period) * static_cast<std::size_t>(s.decimation);
  o.average_window = true;
  const auto tr = secular::integrate_trajectory(s.start, rc.trap, s.drive, o);
  // the uniform field splits the radial secular mode; the axial one is untouched
  const bool axial = rc.trap.omega_c != 0.0;
  const double expected = axial ? 2.0 * omega_p : omega_p;
  const auto est = secular::extract_secular_frequency(tr, axial ? 2 : 0);
  const double l0 = secular::canonical_angular_momentum(s.start, rc.trap);
  double l_drift = 0.0;
  for (const auto& q : tr.samples) {
    const double scale = l0 != 0.0 ? std::abs(l0) : 1.0;
    l_drift = std::max(l_drift, std::abs(secular::canonical_angular_momentum(q, rc.trap) - l0) / scale);
  }
  const auto veff = secular::effective_potential_check();

  std::string csv = "t,x1,x2,z,v1,v2,vz\n";
  for (const auto& q : tr.samples) {
    csv += csv_number(q.t);
    for (double v : q.x) csv += "," + csv_number(v);
    for (double v : q.v) csv += "," + csv_number(v);
    csv += "\n";
  }
  out.raw("trajectory.csv", csv);

  json doc;
  doc["command"] = "secular";
  doc["omega_P"] = omega_p;
  doc["adiabaticity"] = s.drive.adiabaticity(rc.trap.mu);
  doc["marginal"] = s.drive.marginal(rc.trap.mu);
  doc["estimate"] = {{"omega", est.omega},
                     {"uncertainty", est.uncertainty},
                     {"interpolated", est.interpolated},
                     {"band_limit", est.band_limit},
                     {"samples", est.samples},
                     {"component", axial ? "z" : "x1"},
                     {"expected", expected},
                     {"relative_error", std::abs(est.omega - expected) / expected}};
  doc["secular_energy_drift"] = tr.secular_energy_drift;
  doc["angular_momentum"] = {{"initial", l0}, {"max_relative_drift", l_drift}, {"left_exterior", tr.left_exterior}};
  doc["effective_potential"] = {{"passed", veff.passed},
                                {"effective", algebra::to_string(veff.effective)},
                                {"expected", algebra::to_string(veff.expected)}};
  doc["trajectory"] = {{"file", "trajectory.csv"}, {"rows", tr.samples.size()}, {"row_average_rf_periods", s.decimation}};
  out.document("secular", doc);
  log << "secular: " << (axial ? "z" : "x1") << " frequency " << est.omega << " vs " << expected << " ("
      << std::abs(est.omega - expected) / expected << " relative)\n";
}

int dispatch(const std::string& command, const RunConfig& rc, const CommandOptions& options, std::ostream& log);

/// Everything verify-all writes except criterion 10.
bool write_verify_tree(const RunConfig& rc, const CommandOptions& options, std::ostream& log,
                       std::vector<Criterion>& criteria) {
  bool commands_ok = true;
  for (const char* cmd : {"reduce", "spectrum", "residual-scan", "gauge-check", "secular"}) {
    if (std::string(cmd) == "secular" && !rc.secular) continue;
    const int code = dispatch(cmd, rc, options, log);
    if (code == kReductionImpossible && limit_of(rc.trap) == TrapLimit::no_uniform_field) continue;
    commands_ok = commands_ok && code == kOk;
  }
  criteria = evaluate_criteria(options.threads);
  json doc;
  doc["command"] = "verify-all";
  json list = json::array();
  for (const auto& c : criteria) {
    json item;
    item["id"] = c.id;
    item["title"] = c.title;
    item["passed"] = c.passed;
    json metrics;
    for (const auto& [k, v] : c.metrics) metrics[k] = v;
    json notes;
    for (const auto& [k, v] : c.notes) notes[k] = v;
    item["metrics"] = metrics;
    item["notes"] = notes;
    list.push_back(item);
  }
  doc["criteria"] = list;
  doc["commands_ok"] = commands_ok;
  Output(options, config_hash(rc)).document("acceptance", doc);
  return commands_ok;
}

void cmd_verify(const RunConfig& rc, const CommandOptions& options, std::ostream& log, bool& passed) {
  std::vector<Criterion> criteria;
  std::ostringstream quiet;
  const bool commands_ok = write_verify_tree(rc, options, log, criteria);

  const fs::path twin = fs::temp_directory_path() /
                        ("abtrap-verify-" + config_hash(rc) + "-" + std::to_string(std::random_device{}()));
  CommandOptions again = options;
  again.out = twin;
  std::vector<Criterion> ignored;
  write_verify_tree(rc, again, quiet, ignored);
  std::string detail;
  const bool same = identical_trees(options.out, twin, detail);
  std::error_code ec;
  fs::remove_all(twin, ec);
  criteria.push_back(criterion_determinism(same, same ? "two runs byte-identical" : detail));

  passed = commands_ok;
  for (const auto& c : criteria) {
    log << summary_line(c) << "\n";
    passed = passed && c.passed;
  }
  // criterion 10 is appended after the comparison so both trees stay comparable
  std::ifstream in(options.out / "acceptance.json");
  json doc = json::parse(in);
  const auto& c10 = criteria.back();
  doc["criteria"].push_back({{"id", c10.id},
                             {"title", c10.title},
                             {"passed", c10.passed},
                             {"metrics", json::object()},
                             {"notes", {{"tree", c10.notes.front().second}}}});
  doc["passed"] = passed;
  std::ofstream(options.out / "acceptance.json", std::ios::binary | std::ios::trunc) << doc.dump(2) << "\n";
}

int dispatch(const std::string& command, const RunConfig& rc, const CommandOptions& options, std::ostream& log) {
  try {
    Output out(options, config_hash(rc));
    if (command == "reduce") cmd_reduce(rc, out, log);
    else if (command == "spectrum") cmd_spectrum(rc, out, options.threads, log);
    else if (command == "residual-scan") cmd_residual_scan(rc, out, options.threads, log);
    else if (command == "gauge-check") cmd_gauge(rc, out, log);
    else if (command == "secular") cmd_secular(rc, out, log);
    else if (command == "verify-all") {
      bool passed = false;
      cmd_verify(rc, options, log, passed);
      return passed ? kOk : kAcceptanceFailed;
    } else {
      log << "error: unknown command '" << command << "'\n";
      return kConfigError;
    }
    return kOk;
  } catch (const reduction::ReductionImpossible& e) {
    log << "REDUCTION_IMPOSSIBLE: " << e.what() << "\n";
    return kReductionImpossible;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const spectral::GridError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const secular::DriveError& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const secular::StepTooLarge& e) {
    log << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    log << "numerical failure: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

}  // namespace

int run_command(const std::string& command, const RunConfig& config, const CommandOptions& options,
                std::ostream& log) {
  return dispatch(command, config, options, log);
}

bool identical_trees(const fs::path& a, const fs::path& b, std::string& detail) {
  auto listing = [](const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root));
    }
    std::sort(files.begin(), files.end());
    return files;
  };
  const auto fa = listing(a);
  const auto fb = listing(b);
  if (fa != fb) {
    detail = "file lists differ";
    return false;
  }
  for (const auto& f : fa) {
    std::ifstream ia(a / f, std::ios::binary), ib(b / f, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(ia)), {});
    const std::string sb((std::istreambuf_iterator<char>(ib)), {});
    if (sa != sb) {
      detail = "content differs: " + f.string();
      return false;
    }
  }
  detail = std::to_string(fa.size()) + " files identical";
  return true;
}

}  // namespace abtrap::report
