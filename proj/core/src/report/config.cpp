#include "abtrap/report/config.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace abtrap::report {

ConfigParseError::ConfigParseError(int line, std::string key, const std::string& message)
    : ConfigError((line > 0 ? "line " + std::to_string(line) + ", " : std::string()) +
                  (key.empty() ? std::string() : "key '" + key + "': ") + message),
      line_(line),
      key_(std::move(key)) {}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  int line;
  std::string value;
};

using Section = std::map<std::string, Entry>;

double to_double(const std::string& key, const Entry& e) {
  double v = 0.0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigParseError(e.line, key, "expected a number, got '" + e.value + "'");
  if (!std::isfinite(v)) throw ConfigParseError(e.line, key, "value must be finite");
  return v;
}

long to_integer(const std::string& key, const Entry& e) {
  long v = 0;
  const char* first = e.value.data();
  const char* last = first + e.value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigParseError(e.line, key, "expected an integer, got '" + e.value + "'");
  return v;
}

std::vector<std::string> split_list(const std::string& key, const Entry& e) {
  std::vector<std::string> out;
  std::string_view rest = e.value;
  while (true) {
    const auto comma = rest.find(',');
    const auto item = trim(rest.substr(0, comma));
    if (item.empty()) throw ConfigParseError(e.line, key, "empty list item");
    out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::vector<double> to_doubles(const std::string& key, const Entry& e) {
  std::vector<double> out;
  for (auto& s : split_list(key, e)) out.push_back(to_double(key, Entry{e.line, s}));
  return out;
}

std::vector<int> to_integers(const std::string& key, const Entry& e) {
  std::vector<int> out;
  for (auto& s : split_list(key, e)) {
    const long v = to_integer(key, Entry{e.line, s});
    if (v < -100000 || v > 100000) throw ConfigParseError(e.line, key, "sector out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

bool to_bool(const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  throw ConfigParseError(e.line, key, "expected true or false");
}

class Reader {
 public:
  Reader(const std::string& name, const Section& section) : name_(name), section_(section) {}

  const Entry* get(const std::string& key) {
    used_.insert(key);
    const auto it = section_.find(key);
    return it == section_.end() ? nullptr : &it->second;
  }

  template <class T, class F>
  void read(const std::string& key, T& target, F convert) {
    if (const Entry* e = get(key)) target = convert(key, *e);
  }

  void finish() const {
    for (const auto& [key, e] : section_) {
      if (!used_.count(key)) throw ConfigParseError(e.line, key, "unknown key in [" + name_ + "]");
    }
  }

 private:
  std::string name_;
  const Section& section_;
  std::set<std::string> used_;
};

void require(bool ok, const Entry* e, const std::string& key, const std::string& message) {
  if (!ok) throw ConfigParseError(e ? e->line : 0, key, message);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  static const std::set<std::string> known = {"trap", "drive", "solver", "sweep"};
  std::map<std::string, Section> sections;
  std::map<std::string, int> section_lines;
  std::string current = "trap";
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    const auto hash = raw.find_first_of("#;");
    const auto line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigParseError(lineno, "", "unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known.count(current)) throw ConfigParseError(lineno, "", "unknown section [" + current + "]");
      if (section_lines.count(current)) throw ConfigParseError(lineno, "", "section [" + current + "] repeated");
      section_lines[current] = lineno;
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigParseError(lineno, "", "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigParseError(lineno, "", "missing key before '='");
    if (value.empty()) throw ConfigParseError(lineno, key, "missing value");
    auto& sec = sections[current];
    if (sec.count(key)) throw ConfigParseError(lineno, key, "key repeated in [" + current + "]");
    sec.emplace(key, Entry{lineno, value});
  }

  RunConfig rc;
  {
    Reader r("trap", sections["trap"]);
    const Entry* omega_P = r.get("omega_P");
    require(omega_P != nullptr, nullptr, "omega_P", "mandatory key missing in [trap]");
    rc.trap.omega_P = to_double("omega_P", *omega_P);
    require(rc.trap.omega_P > 0.0, omega_P, "omega_P", "omega_P > 0 required");
    const Entry* mu = r.get("mu");
    if (mu) rc.trap.mu = to_double("mu", *mu);
    require(rc.trap.mu > 0.0, mu, "mu", "mu > 0 required");
    const Entry* wc = r.get("omega_c");
    if (wc) rc.trap.omega_c = to_double("omega_c", *wc);
    require(rc.trap.omega_c >= 0.0, wc, "omega_c", "omega_c >= 0 required");
    const Entry* a = r.get("a");
    if (a) rc.trap.a = to_double("a", *a);
    require(rc.trap.a >= 0.0, a, "a", "a >= 0 required");
    const Entry* alpha = r.get("alpha");
    if (alpha) rc.trap.alpha = to_double("alpha", *alpha);
    if (const Entry* w0 = r.get("omega_0")) {
      const double omega_0 = to_double("omega_0", *w0);
      require(rc.trap.a > 0.0, w0, "omega_0", "omega_0 needs a solenoid radius a > 0");
      const double implied = 0.5 * rc.trap.mu * omega_0 * rc.trap.a * rc.trap.a;
      if (alpha) {
        const double scale = std::max({std::abs(implied), std::abs(rc.trap.alpha), 1e-300});
        if (std::abs(implied - rc.trap.alpha) > 1e-12 * scale) {
          std::ostringstream os;
          os.precision(17);
          os << "alpha = " << rc.trap.alpha << " contradicts mu*omega_0*a^2/2 = " << implied;
          throw ConfigParseError(alpha->line, "alpha", os.str());
        }
      }
      rc.trap.alpha = implied;
    }
    if (const Entry* o = r.get("orientation")) {
      if (o->value == "standard") rc.orientation = reduction::Orientation::standard;
      else if (o->value == "reversed") rc.orientation = reduction::Orientation::reversed;
      else throw ConfigParseError(o->line, "orientation", "expected standard or reversed");
    }
    r.finish();
  }
  {
    Reader r("solver", sections["solver"]);
    auto& s = rc.solver;
    const Entry* n = r.get("N");
    if (n) s.options.N = static_cast<int>(to_integer("N", *n));
    require(s.options.N >= 200 && s.options.N <= 2000000, n, "N", "N must be in [200, 2000000]");
    if (const Entry* R = r.get("R"); R && R->value != "auto") {
      s.options.R = to_double("R", *R);
      require(*s.options.R > rc.trap.a, R, "R", "R must exceed a");
    }
    r.read("richardson", s.options.richardson, to_bool);
    const Entry* tail = r.get("tail_threshold");
    if (tail) s.options.tail_threshold = to_double("tail_threshold", *tail);
    require(s.options.tail_threshold > 0.0 && s.options.tail_threshold < 1.0, tail, "tail_threshold",
            "tail_threshold must be in (0, 1)");
    if (const Entry* m = r.get("model")) {
      if (m->value == "flux_line") s.options.model = spectral::RadialModel::flux_line;
      else if (m->value == "finite_solenoid") s.options.model = spectral::RadialModel::finite_solenoid;
      else throw ConfigParseError(m->line, "model", "expected flux_line or finite_solenoid");
      require(s.options.model == spectral::RadialModel::flux_line || rc.trap.a > 0.0, m, "model",
              "finite_solenoid needs a > 0");
    }
    const Entry* k = r.get("states");
    if (k) s.states = static_cast<int>(to_integer("states", *k));
    require(s.states >= 1 && s.states <= 200, k, "states", "states must be in [1, 200]");
    const Entry* sectors = r.get("sectors");
    if (sectors) s.sectors = to_integers("sectors", *sectors);
    r.finish();
  }
  {
    Reader r("sweep", sections["sweep"]);
    const Entry* ratios = r.get("ratios");
    if (ratios) {
      rc.sweep.ratios = to_doubles("ratios", *ratios);
      for (double v : rc.sweep.ratios) require(v >= 0.0, ratios, "ratios", "ratios must be >= 0");
    }
    r.read("alphas", rc.sweep.alphas, to_doubles);
    r.read("sectors", rc.sweep.sectors, to_integers);
    r.finish();
  }
  if (sections.count("drive")) {
    Reader r("drive", sections["drive"]);
    SecularSettings s;
    const Entry* V = r.get("V");
    const Entry* rf = r.get("Omega_rf");
    require(V && rf, nullptr, V ? "Omega_rf" : "V", "mandatory key missing in [drive]");
    s.drive.V = to_double("V", *V);
    s.drive.Omega_rf = to_double("Omega_rf", *rf);
    r.read("d", s.drive.d, to_double);
    require(s.drive.V != 0.0, V, "V", "V must be nonzero");
    try {
      s.drive.validate(rc.trap.mu);
    } catch (const secular::DriveError& e) {
      throw ConfigParseError(rf->line, "Omega_rf", e.what());
    }
    const double drive_omega = s.drive.omega_P(rc.trap.mu);
    require(std::abs(drive_omega - rc.trap.omega_P) <= 1e-6 * rc.trap.omega_P, V, "V",
            "drive secular frequency " + std::to_string(drive_omega) + " differs from [trap] omega_P");
    const std::array<const char*, 6> names = {"x1", "x2", "z", "v1", "v2", "vz"};
    for (std::size_t i = 0; i < 3; ++i) {
      r.read(names[i], s.start.x[i], to_double);
      r.read(names[i + 3], s.start.v[i], to_double);
    }
    const Entry* periods = r.get("periods");
    if (periods) s.periods = to_double("periods", *periods);
    require(s.periods >= 20.0 && s.periods <= 1000.0, periods, "periods", "periods must be in [20, 1000]");
    const Entry* spp = r.get("steps_per_period");
    if (spp) s.steps_per_period = static_cast<int>(to_integer("steps_per_period", *spp));
    require(s.steps_per_period >= 40 && s.steps_per_period <= 10000, spp, "steps_per_period",
            "steps_per_period must be in [40, 10000]");
    const Entry* dec = r.get("decimation");
    if (dec) s.decimation = static_cast<int>(to_integer("decimation", *dec));
    require(s.decimation >= 1 && s.decimation <= 1000000, dec, "decimation", "decimation must be >= 1");
    r.finish();
    rc.secular = s;
  }
  try {
    rc.trap.validate();
  } catch (const ConfigError& e) {
    throw ConfigParseError(0, "", e.what());
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigParseError(0, "", "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

std::string num(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
std::string list(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_integral_v<T>) {
      out += std::to_string(xs[i]);
    } else {
      out += num(xs[i]);
    }
  }
  return out;
}

}  // namespace

std::string canonical_text(const RunConfig& c) {
  std::ostringstream os;
  os << "[trap]\n"
     << "mu = " << num(c.trap.mu) << "\nomega_c = " << num(c.trap.omega_c) << "\nomega_P = " << num(c.trap.omega_P)
     << "\na = " << num(c.trap.a) << "\nalpha = " << num(c.trap.alpha)
     << "\norientation = " << (c.orientation == reduction::Orientation::standard ? "standard" : "reversed") << "\n";
  os << "[solver]\nN = " << c.solver.options.N << "\nR = " << (c.solver.options.R ? num(*c.solver.options.R) : "auto")
     << "\nrichardson = " << (c.solver.options.richardson ? "true" : "false")
     << "\ntail_threshold = " << num(c.solver.options.tail_threshold)
     << "\nmodel = " << spectral::to_string(c.solver.options.model) << "\nstates = " << c.solver.states
     << "\nsectors = " << list(c.solver.sectors) << "\n";
  os << "[sweep]\nratios = " << list(c.sweep.ratios) << "\nalphas = " << list(c.sweep.alphas)
     << "\nsectors = " << list(c.sweep.sectors) << "\n";
  if (c.secular) {
    const auto& s = *c.secular;
    os << "[drive]\nV = " << num(s.drive.V) << "\nd = " << num(s.drive.d) << "\nOmega_rf = " << num(s.drive.Omega_rf)
       << "\nx1 = " << num(s.start.x[0]) << "\nx2 = " << num(s.start.x[1]) << "\nz = " << num(s.start.x[2])
       << "\nv1 = " << num(s.start.v[0]) << "\nv2 = " << num(s.start.v[1]) << "\nvz = " << num(s.start.v[2])
       << "\nperiods = " << num(s.periods) << "\nsteps_per_period = " << s.steps_per_period
       << "\ndecimation = " << s.decimation << "\n";
  }
  return os.str();
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : canonical_text(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace abtrap::report
