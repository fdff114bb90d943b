// Copyright 2026 The lindlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lindlearn/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lindlearn/errors.hpp"
#include "lindlearn/text.hpp"

namespace lindlearn {

namespace {

using text::format_double;

struct Field {
  std::string section;
  std::string key;
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view)> set;
};

template <class T>
Field real_field(std::string section, std::string key, T RunConfig::*member) {
  return {std::move(section), std::move(key), [member](const RunConfig& c) { return format_double(c.*member); },
          [member](RunConfig& c, std::string_view v) { c.*member = text::parse_double(v); }};
}

Field size_field(std::string section, std::string key, std::size_t RunConfig::*member) {
  return {std::move(section), std::move(key), [member](const RunConfig& c) { return std::to_string(c.*member); },
          [member](RunConfig& c, std::string_view v) {
            const long long x = text::parse_int(v);
            if (x < 0) throw std::invalid_argument("must be >= 0");
            c.*member = static_cast<std::size_t>(x);
          }};
}

Field int_field(std::string section, std::string key, int RunConfig::*member) {
  return {std::move(section), std::move(key), [member](const RunConfig& c) { return std::to_string(c.*member); },
          [member](RunConfig& c, std::string_view v) { c.*member = static_cast<int>(text::parse_int(v)); }};
}

Field string_field(std::string section, std::string key, std::string RunConfig::*member) {
  return {std::move(section), std::move(key), [member](const RunConfig& c) { return c.*member; },
          [member](RunConfig& c, std::string_view v) { c.*member = std::string(v); }};
}

Field optional_field(std::string section, std::string key, std::optional<double> RunConfig::*member) {
  return {std::move(section), std::move(key),
          [member](const RunConfig& c) { return (c.*member) ? format_double(*(c.*member)) : std::string("auto"); },
          [member](RunConfig& c, std::string_view v) {
            if (v == "auto") {
              c.*member = std::nullopt;
            } else {
              c.*member = text::parse_double(v);
            }
          }};
}

std::string move_key(MoveKind k) {
  static constexpr std::array<const char*, kMoveKindCount> kKeys = {
      "move_rate",    "move_birth_h", "move_death_h",    "move_swap_h",     "move_birth_l",
      "move_death_l", "move_swap_l",  "move_birth_conj", "move_death_conj", "move_swap_conj"};
  return kKeys[static_cast<std::size_t>(k)];
}

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = [] {
    std::vector<Field> f;
    f.push_back(int_field("system", "dim", &RunConfig::dim));
    f.push_back(int_field("system", "complexity", &RunConfig::complexity));
    f.push_back(real_field("prior", "eta_h", &RunConfig::eta_h));
    f.push_back(real_field("prior", "eta_l", &RunConfig::eta_l));
    f.push_back(real_field("prior", "eta_c", &RunConfig::eta_c));
    f.push_back(real_field("prior", "rate_mean", &RunConfig::rate_mean));
    f.push_back(real_field("prior", "rate_variance", &RunConfig::rate_variance));
    f.push_back(optional_field("prior", "beta_lt_shape", &RunConfig::beta_lt_shape));
    f.push_back(optional_field("prior", "beta_lt_rate", &RunConfig::beta_lt_rate));
    f.push_back(optional_field("prior", "beta_g2_shape", &RunConfig::beta_g2_shape));
    f.push_back(optional_field("prior", "beta_g2_rate", &RunConfig::beta_g2_rate));
    f.push_back({"sampler", "steps", [](const RunConfig& c) { return std::to_string(c.sampler.steps); },
                 [](RunConfig& c, std::string_view v) {
                   const long long x = text::parse_int(v);
                   if (x < 0) throw std::invalid_argument("must be >= 0");
                   c.sampler.steps = static_cast<std::size_t>(x);
                 }});
    f.push_back({"sampler", "proposal_variance",
                 [](const RunConfig& c) { return format_double(c.sampler.proposal_variance); },
                 [](RunConfig& c, std::string_view v) { c.sampler.proposal_variance = text::parse_double(v); }});
    f.push_back({"sampler", "burn_in", [](const RunConfig& c) { return format_double(c.sampler.burn_in); },
                 [](RunConfig& c, std::string_view v) { c.sampler.burn_in = text::parse_double(v); }});
    f.push_back({"sampler", "thinning", [](const RunConfig& c) { return std::to_string(c.sampler.thinning); },
                 [](RunConfig& c, std::string_view v) {
                   const long long x = text::parse_int(v);
                   if (x < 1) throw std::invalid_argument("must be >= 1");
                   c.sampler.thinning = static_cast<std::size_t>(x);
                 }});
    f.push_back({"sampler", "seed", [](const RunConfig& c) { return std::to_string(c.sampler.seed); },
                 [](RunConfig& c, std::string_view v) {
                   std::uint64_t x = 0;
                   auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
                   if (ec != std::errc() || p != v.data() + v.size()) throw std::invalid_argument("not an unsigned integer");
                   c.sampler.seed = x;
                 }});
    f.push_back({"sampler", "n_start", [](const RunConfig& c) { return std::to_string(c.sampler.n_start); },
                 [](RunConfig& c, std::string_view v) {
                   const long long x = text::parse_int(v);
                   if (x < 0) throw std::invalid_argument("must be >= 0");
                   c.sampler.n_start = static_cast<std::size_t>(x);
                 }});
    f.push_back({"sampler", "max_move_draws",
                 [](const RunConfig& c) { return std::to_string(c.sampler.max_move_draws); },
                 [](RunConfig& c, std::string_view v) {
                   c.sampler.max_move_draws = static_cast<int>(text::parse_int(v));
                 }});
    f.push_back(size_field("sampler", "chains", &RunConfig::chains));
    for (MoveKind k : kAllMoves) {
      f.push_back({"sampler", move_key(k), [k](const RunConfig& c) { return format_double(c.sampler.moves[k]); },
                   [k](RunConfig& c, std::string_view v) { c.sampler.moves[k] = text::parse_double(v); }});
    }
    f.push_back(string_field("data", "lt_path", &RunConfig::lt_path));
    f.push_back(string_field("data", "g2_path", &RunConfig::g2_path));
    f.push_back(real_field("data", "lt_multiplier", &RunConfig::lt_multiplier));
    f.push_back(real_field("data", "g2_multiplier", &RunConfig::g2_multiplier));
    f.push_back(real_field("instrument", "irf_fwhm", &RunConfig::irf_fwhm));
    f.push_back(real_field("instrument", "g2_weight_width", &RunConfig::g2_weight_width));
    f.push_back(real_field("instrument", "poisson_scale", &RunConfig::poisson_scale));
    f.push_back(real_field("instrument", "g2_beta_boost", &RunConfig::g2_beta_boost));
    f.push_back({"instrument", "strip_hamiltonian_drive",
                 [](const RunConfig& c) { return std::string(c.strip_hamiltonian_drive ? "true" : "false"); },
                 [](RunConfig& c, std::string_view v) { c.strip_hamiltonian_drive = text::parse_bool(v); }});
    f.push_back({"grid", "lt_start", [](const RunConfig& c) { return format_double(c.grid.lt_start); },
                 [](RunConfig& c, std::string_view v) { c.grid.lt_start = text::parse_double(v); }});
    f.push_back({"grid", "lt_stop", [](const RunConfig& c) { return format_double(c.grid.lt_stop); },
                 [](RunConfig& c, std::string_view v) { c.grid.lt_stop = text::parse_double(v); }});
    f.push_back({"grid", "lt_dt", [](const RunConfig& c) { return format_double(c.grid.lt_dt); },
                 [](RunConfig& c, std::string_view v) { c.grid.lt_dt = text::parse_double(v); }});
    f.push_back({"grid", "g2_tmax", [](const RunConfig& c) { return format_double(c.grid.g2_tmax); },
                 [](RunConfig& c, std::string_view v) { c.grid.g2_tmax = text::parse_double(v); }});
    f.push_back({"grid", "g2_dt", [](const RunConfig& c) { return format_double(c.grid.g2_dt); },
                 [](RunConfig& c, std::string_view v) { c.grid.g2_dt = text::parse_double(v); }});
    f.push_back({"grid", "rebin", [](const RunConfig& c) { return std::string(c.grid.rebin ? "true" : "false"); },
                 [](RunConfig& c, std::string_view v) { c.grid.rebin = text::parse_bool(v); }});
    f.push_back(real_field("analysis", "subsample", &RunConfig::subsample));
    f.push_back(size_field("analysis", "k_max", &RunConfig::k_max));
    f.push_back(real_field("analysis", "variance_target", &RunConfig::variance_target));
    f.push_back(size_field("analysis", "kmeans_restarts", &RunConfig::kmeans_restarts));
    f.push_back(size_field("analysis", "mse_samples", &RunConfig::mse_samples));
    f.push_back(real_field("simulate", "noise_scale", &RunConfig::noise_scale));
    return f;
  }();
  return kFields;
}

[[noreturn]] void config_fail(const std::string& source, std::size_t line, const std::string& what) {
  throw ConfigError(source + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void data_fail(const std::string& source, std::size_t line, const std::string& what) {
  throw DataError(source + ":" + std::to_string(line) + ": " + what);
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + " " + what);
}

}  // namespace

PriorConfig RunConfig::prior() const {
  PriorConfig p;
  p.eta_h = eta_h;
  p.eta_l = eta_l;
  p.eta_c = eta_c;
  p.rate_prior = GammaPrior::from_moments(rate_mean, rate_variance);
  return p;
}

SimulationOptions RunConfig::simulation() const {
  SimulationOptions o;
  o.irf_fwhm = irf_fwhm;
  o.strip_hamiltonian_drive = strip_hamiltonian_drive;
  return o;
}

void RunConfig::validate() const {
  require(dim == 2 || dim == 4, "system.dim", "must be 2 or 4");
  require(complexity >= 1, "system.complexity", "must be >= 1");
  require(eta_h > 0.0, "prior.eta_h", "must be positive");
  require(eta_l > 0.0, "prior.eta_l", "must be positive");
  require(eta_c > 0.0, "prior.eta_c", "must be positive");
  require(rate_mean > 0.0, "prior.rate_mean", "must be positive");
  require(rate_variance > 0.0, "prior.rate_variance", "must be positive");
  for (const auto* v : {&beta_lt_shape, &beta_lt_rate, &beta_g2_shape, &beta_g2_rate}) {
    require(!*v || **v > 0.0, "prior.beta_*", "must be positive or auto");
  }
  require(beta_lt_shape.has_value() == beta_lt_rate.has_value(), "prior.beta_lt_*", "must be set together");
  require(beta_g2_shape.has_value() == beta_g2_rate.has_value(), "prior.beta_g2_*", "must be set together");
  try {
    sampler.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("sampler: ") + e.what());
  }
  require(chains >= 1, "sampler.chains", "must be >= 1");
  require(lt_multiplier > 0.0, "data.lt_multiplier", "must be positive");
  require(g2_multiplier > 0.0, "data.g2_multiplier", "must be positive");
  require(irf_fwhm >= 0.0, "instrument.irf_fwhm", "must be >= 0");
  require(g2_weight_width > 0.0, "instrument.g2_weight_width", "must be positive");
  require(poisson_scale > 0.0, "instrument.poisson_scale", "must be positive");
  require(g2_beta_boost > 0.0, "instrument.g2_beta_boost", "must be positive");
  require(grid.lt_dt > 0.0 && grid.lt_stop > grid.lt_start && grid.lt_start >= 0.0, "grid.lt_*",
          "must describe a non-negative increasing grid");
  require(grid.g2_dt > 0.0 && grid.g2_tmax > 0.0, "grid.g2_*", "must be positive");
  require(subsample > 0.0 && subsample <= 1.0, "analysis.subsample", "must lie in (0, 1]");
  require(k_max >= 1, "analysis.k_max", "must be >= 1");
  require(variance_target > 0.0 && variance_target <= 1.0, "analysis.variance_target", "must lie in (0, 1]");
  require(kmeans_restarts >= 1, "analysis.kmeans_restarts", "must be >= 1");
  require(noise_scale > 0.0, "simulate.noise_scale", "must be positive");
}

RunConfig read_config(std::istream& is, const std::string& source) {
  RunConfig c;
  std::string section;
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ++n;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = text::trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') config_fail(source, n, "malformed section header");
      section = std::string(text::trim(s.substr(1, s.size() - 2)));
      const bool known = std::any_of(fields().begin(), fields().end(),
                                     [&](const Field& f) { return f.section == section; });
      if (!known) config_fail(source, n, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) config_fail(source, n, "expected key = value");
    const std::string key(text::trim(s.substr(0, eq)));
    const std::string_view value = text::trim(s.substr(eq + 1));
    auto it = std::find_if(fields().begin(), fields().end(),
                           [&](const Field& f) { return f.section == section && f.key == key; });
    if (it == fields().end()) config_fail(source, n, "unknown key " + section + "." + key);
    try {
      it->set(c, value);
    } catch (const std::invalid_argument& e) {
      config_fail(source, n, section + "." + key + ": " + e.what());
    } catch (const std::out_of_range&) {
      config_fail(source, n, section + "." + key + ": value out of range");
    }
  }
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  return read_config(in, path);
}

void write_config(std::ostream& os, const RunConfig& config) {
  std::string section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      if (!section.empty()) os << '\n';
      section = f.section;
      os << '[' << section << "]\n";
    }
    os << f.key << " = " << f.get(config) << '\n';
  }
}

std::string config_to_string(const RunConfig& config) {
  std::ostringstream os;
  write_config(os, config);
  return os.str();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  for (const auto& f : fields()) {
    if (f.get(a) != f.get(b)) return false;
  }
  return true;
}

RawTrace read_raw_trace(std::istream& is, const std::string& source) {
  RawTrace t;
  std::string line;
  std::size_t n = 0;
  bool header_allowed = true;
  while (std::getline(is, line)) {
    ++n;
    std::string_view s = line;
    if (auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = text::trim(s);
    if (s.empty()) continue;
    const auto cols = text::split(s, " \t,;");
    if (cols.size() != 2) data_fail(source, n, "expected two columns (tau_ns, counts)");
    double tau = 0.0;
    double counts = 0.0;
    try {
      tau = text::parse_double(cols[0]);
      counts = text::parse_double(cols[1]);
    } catch (const std::exception&) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      data_fail(source, n, "non-numeric value");
    }
    header_allowed = false;
    if (!std::isfinite(tau) || !std::isfinite(counts)) data_fail(source, n, "non-finite value");
    if (counts < 0.0) data_fail(source, n, "negative counts");
    if (!t.tau.empty() && !(tau > t.tau.back())) data_fail(source, n, "tau must be strictly increasing");
    t.tau.push_back(tau);
    t.counts.push_back(counts);
  }
  if (t.tau.empty()) throw DataError(source + ": no data rows");
  return t;
}

RawTrace load_raw_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open data file " + path);
  return read_raw_trace(in, path);
}

void write_trace(std::ostream& os, std::span<const double> tau, std::span<const double> values,
                 const std::string& value_header) {
  if (tau.size() != values.size()) throw std::invalid_argument("grid and values differ in length");
  os << "tau_ns," << value_header << '\n';
  for (std::size_t i = 0; i < tau.size(); ++i) {
    os << format_double(tau[i]) << ',' << format_double(values[i]) << '\n';
  }
}

std::vector<double> rebin_counts(const RawTrace& raw, std::span<const double> grid) {
  check_uniform_grid(grid);
  std::vector<double> out(grid.size(), 0.0);
  if (grid.empty()) return out;
  const double dt = grid.size() > 1 ? grid[1] - grid[0] : 1.0;
  const double lo = grid.front() - 0.5 * dt;
  for (std::size_t i = 0; i < raw.tau.size(); ++i) {
    const double pos = (raw.tau[i] - lo) / dt;
    if (pos < 0.0) continue;
    // Small tolerance so points exactly on a grid node land in its bin.
    const auto j = static_cast<std::size_t>(std::floor(pos + 1e-9));
    if (j >= grid.size()) continue;
    out[j] += raw.counts[i];
  }
  return out;
}

ExperimentTrace prepare_trace(TraceKind kind, const RawTrace& raw, const RunConfig& config) {
  ExperimentTrace t;
  t.kind = kind;
  std::vector<double> counts;
  if (config.grid.rebin) {
    t.tau = kind == TraceKind::kLifetime ? uniform_grid(config.grid.lt_start, config.grid.lt_stop, config.grid.lt_dt)
                                         : symmetric_grid(config.grid.g2_tmax, config.grid.g2_dt);
    counts = rebin_counts(raw, t.tau);
  } else {
    t.tau = raw.tau;
    counts = raw.counts;
  }
  check_uniform_grid(t.tau);
  if (kind == TraceKind::kLifetime) {
    t.values = normalize_lifetime(counts);
    t.weights = weight_lt(t.values, t.tau);
  } else {
    t.values = normalize_g2(counts, t.tau);
    t.weights = weight_g2(t.tau, config.g2_weight_width);
  }
  t.validate();
  return t;
}

Experiment make_experiment(ExperimentTrace trace, const RunConfig& config) {
  Experiment e;
  const bool lt = trace.kind == TraceKind::kLifetime;
  e.multiplier = lt ? config.lt_multiplier : config.g2_multiplier;
  const auto& shape = lt ? config.beta_lt_shape : config.beta_g2_shape;
  const auto& rate = lt ? config.beta_lt_rate : config.beta_g2_rate;
  if (shape && rate) {
    e.beta_prior = GammaPrior{*shape, *rate};
  } else {
    e.beta_prior = default_beta_prior(trace, config.poisson_scale, lt ? 1.0 : config.g2_beta_boost);
  }
  e.data = std::move(trace);
  return e;
}

std::vector<Experiment> load_experiments(const RunConfig& config) {
  std::vector<Experiment> out;
  auto load = [&](TraceKind kind, const std::string& path) {
    if (path.empty()) return;
    const RawTrace raw = load_raw_trace(path);
    try {
      out.push_back(make_experiment(prepare_trace(kind, raw, config), config));
    } catch (const std::invalid_argument& e) {
      throw DataError(path + ": " + e.what());
    }
  };
  load(TraceKind::kLifetime, config.lt_path);
  load(TraceKind::kG2, config.g2_path);
  if (out.empty()) throw ConfigError("no data files configured (data.lt_path, data.g2_path)");
  return out;
}

void write_library(std::ostream& os, const LibraryBuild& build, int dim, int complexity) {
  os << "# lindlearn operator library\n";
  os << "dim = " << dim << '\n';
  os << "complexity = " << complexity << '\n';
  os << "candidates = " << build.candidates << '\n';
  os << "operators = " << build.operators.size() << '\n';
  for (const auto& line : build.dedup_log) os << "# removed " << line << '\n';
  for (const auto& op : build.operators) {
    os << "op " << op.label() << " hermitian=" << (op.hermitian() ? "true" : "false")
       << " class=" << to_string(op.optical_class()) << " entries=";
    bool first = true;
    const auto& m = op.matrix();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (m(r, c) == Complex(0.0, 0.0)) continue;
        if (!first) os << ';';
        first = false;
        os << r << ',' << c << ':' << format_double(m(r, c).real());
        if (m(r, c).imag() != 0.0) os << (m(r, c).imag() > 0 ? "+" : "") << format_double(m(r, c).imag()) << 'i';
      }
    }
    os << '\n';
  }
}

void write_chain_record(std::ostream& os, const ChainRecord& r) {
  os << "# lindlearn chain record\n";
  os << "chain = " << r.chain_index << '\n';
  os << "seed = " << r.seed << '\n';
  os << "steps = " << r.steps << '\n';
  os << "burn_in_steps = " << r.burn_in_steps << '\n';
  os << "thinning = " << r.thinning << '\n';
  os << "redraws = " << r.redraws << '\n';
  os << "aborted = " << r.aborted << '\n';
  for (MoveKind k : kAllMoves) {
    const auto& m = r.moves[static_cast<std::size_t>(k)];
    os << "move " << to_string(k) << ' ' << m.proposed << ' ' << m.accepted << ' ' << m.out_of_support << '\n';
  }
  std::istringstream snapshot(r.config_snapshot);
  for (std::string line; std::getline(snapshot, line);) os << "config " << line << '\n';
  for (const auto& s : r.samples) {
    os << "sample " << s.step << ' ' << format_double(s.log_posterior) << ' ' << s.beta.size();
    for (double b : s.beta) os << ' ' << format_double(b);
    os << ' ' << format_double(s.model.background());
    os << " H " << s.model.hamiltonian().size();
    for (const auto& p : s.model.hamiltonian()) os << ' ' << p.op.label() << ' ' << format_double(p.rate);
    os << " L " << s.model.lindblad().size();
    for (const auto& p : s.model.lindblad()) os << ' ' << p.op.label() << ' ' << format_double(p.rate);
    os << '\n';
  }
}

ChainRecord read_chain_record(std::istream& is, int dim, const std::string& source) {
  ChainRecord r;
  std::string line;
  std::size_t n = 0;
  std::string snapshot;
  while (std::getline(is, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    try {
      if (line.rfind("config", 0) == 0 && (line.size() == 6 || line[6] == ' ')) {
        snapshot += line.size() > 7 ? line.substr(7) : std::string();
        snapshot += '\n';
        continue;
      }
      const auto tok = text::split(line, " ");
      if (tok.empty()) continue;
      if (tok[0] == "move") {
        if (tok.size() != 5) data_fail(source, n, "malformed move line");
        auto kind = move_from_string(tok[1]);
        if (!kind) data_fail(source, n, "unknown move " + std::string(tok[1]));
        auto& m = r.moves[static_cast<std::size_t>(*kind)];
        m.proposed = static_cast<std::size_t>(text::parse_int(tok[2]));
        m.accepted = static_cast<std::size_t>(text::parse_int(tok[3]));
        m.out_of_support = static_cast<std::size_t>(text::parse_int(tok[4]));
      } else if (tok[0] == "sample") {
        std::size_t i = 1;
        auto next = [&]() -> std::string_view {
          if (i >= tok.size()) data_fail(source, n, "truncated sample line");
          return tok[i++];
        };
        ChainSample s{0, Model(dim), {}, 0.0};
        s.step = static_cast<std::size_t>(text::parse_int(next()));
        s.log_posterior = text::parse_double(next());
        const auto n_beta = text::parse_int(next());
        for (long long b = 0; b < n_beta; ++b) s.beta.push_back(text::parse_double(next()));
        s.model.set_background(text::parse_double(next()));
        for (ProcessKind kind : {ProcessKind::kHamiltonian, ProcessKind::kLindblad}) {
          const std::string_view tag = next();
          if (tag != (kind == ProcessKind::kHamiltonian ? "H" : "L")) data_fail(source, n, "malformed sample line");
          const auto count = text::parse_int(next());
          for (long long p = 0; p < count; ++p) {
            auto op = ProcessOperator::from_label(dim, next());
            s.model.add(kind, std::move(op), text::parse_double(next()));
          }
        }
        if (i != tok.size()) data_fail(source, n, "trailing tokens on sample line");
        r.samples.push_back(std::move(s));
      } else if (tok.size() == 3 && tok[1] == "=") {
        const auto v = tok[2];
        if (tok[0] == "chain") r.chain_index = static_cast<std::size_t>(text::parse_int(v));
        else if (tok[0] == "seed") r.seed = std::stoull(std::string(v));
        else if (tok[0] == "steps") r.steps = static_cast<std::size_t>(text::parse_int(v));
        else if (tok[0] == "burn_in_steps") r.burn_in_steps = static_cast<std::size_t>(text::parse_int(v));
        else if (tok[0] == "thinning") r.thinning = static_cast<std::size_t>(text::parse_int(v));
        else if (tok[0] == "redraws") r.redraws = static_cast<std::size_t>(text::parse_int(v));
        else if (tok[0] == "aborted") r.aborted = static_cast<std::size_t>(text::parse_int(v));
        else data_fail(source, n, "unknown field " + std::string(tok[0]));
      } else {
        data_fail(source, n, "unrecognized line");
      }
    } catch (const DataError&) {
      throw;
    } catch (const std::exception& e) {
      data_fail(source, n, e.what());
    }
  }
  r.config_snapshot = std::move(snapshot);
  return r;
}

ChainRecord load_chain_record(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open chain record " + path);
  return read_chain_record(in, dim, path);
}

}  // namespace lindlearn
