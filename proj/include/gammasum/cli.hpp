#pragma once

// Job description shared by the command-line tool and config files, plus the
// runner that evaluates a job over its grid and writes CSV or JSON.
//
// Config files are JSON:
//
//   {
//     "command": "ber",
//     "branches": {"m": [0.6, 1.1, 2], "omega": [1, 1, 1]},
//     "modulations": ["cbpsk", {"p": 0.5, "q": 2}],
//     "grid": {"start": 0, "stop": 20, "points": 41, "unit": "snr_db"},
//     "output": {"path": "fig6.csv", "format": "csv"},
//     "contour": {"rel_tol": 1e-10}
//   }
//
// Missing keys take the defaults of JobSpec.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "gammasum/errors.hpp"
#include "gammasum/fox_h.hpp"
#include "gammasum/gamma_sum.hpp"
#include "gammasum/monte_carlo.hpp"
#include "gammasum/mrc.hpp"
#include "gammasum/parallel.hpp"

namespace gammasum::cli {

using json = nlohmann::ordered_json;

enum class Command { Pdf, Cdf, Outage, Ber, Hfun, Validate };
enum class GridUnit { LinearY, SnrDb };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoConvergence = 2;
inline constexpr int kExitInvalid = 3;

inline std::string_view to_string(Command c) {
  switch (c) {
    case Command::Pdf: return "pdf";
    case Command::Cdf: return "cdf";
    case Command::Outage: return "outage";
    case Command::Ber: return "ber";
    case Command::Hfun: return "hfun";
    case Command::Validate: return "validate";
  }
  return "?";
}

inline std::optional<Command> parse_command(std::string_view s) {
  for (auto c : {Command::Pdf, Command::Cdf, Command::Outage, Command::Ber,
                 Command::Hfun, Command::Validate}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

inline std::string_view to_string(GridUnit u) {
  return u == GridUnit::SnrDb ? "snr_db" : "y";
}
inline std::string_view to_string(Format f) { return f == Format::Json ? "json" : "csv"; }

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;

  std::vector<double> values() const {
    std::vector<double> v;
    for (int i = 0; i < points; ++i) {
      v.push_back(points == 1 ? start : start + (stop - start) * i / (points - 1));
    }
    return v;
  }
  bool operator==(const Grid&) const = default;
};

// "start:stop:points" or a single value.
inline Grid parse_grid(std::string_view text) {
  Grid g;
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  try {
    if (parts.size() == 1) {
      g.start = g.stop = std::stod(parts[0]);
      g.points = 1;
    } else if (parts.size() == 3) {
      g.start = std::stod(parts[0]);
      g.stop = std::stod(parts[1]);
      g.points = std::stoi(parts[2]);
    } else {
      throw ParseError("grid: expected start:stop:points");
    }
  } catch (const std::logic_error&) {
    throw ParseError("grid: cannot parse '" + std::string(text) + "'");
  }
  return g;
}

struct ContourOverrides {
  std::optional<double> anchor;
  std::optional<double> height;
  std::optional<double> bend;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::optional<int> max_refinements;

  bool operator==(const ContourOverrides&) const = default;
};

struct HfunSpec {
  HKind kind = HKind::MeijerG;
  int m = 1;
  int n = 0;
  std::vector<HParam> upper;
  std::vector<HParam> lower;
  double z = 1.0;

  bool operator==(const HfunSpec&) const = default;
};

struct JobSpec {
  Command command = Command::Pdf;
  std::vector<double> m;
  std::vector<double> omega;  // empty: equal-SNR sweep (ber) / all ones
  std::vector<Modulation> modulations;
  std::optional<Grid> grid;
  GridUnit grid_unit = GridUnit::LinearY;
  std::string output;  // empty: standard output
  Format format = Format::Csv;
  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 1'000'000;
  bool force_general = false;
  ContourOverrides contour;
  HfunSpec hfun;

  bool operator==(const JobSpec&) const = default;
};

// ---------------------------------------------------------------------------
// Validation

inline void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ParseError(field + ": " + what);
}

inline std::string modulation_names() {
  std::string s;
  for (const auto& mod : kNamedModulations) {
    if (!s.empty()) s += ", ";
    s += mod.name();
  }
  return s;
}

inline void validate(const JobSpec& job) {
  if (job.command != Command::Hfun) {
    require(!job.m.empty(), "branches.m", "at least one branch is required");
    for (std::size_t l = 0; l < job.m.size(); ++l) {
      require(job.m[l] > 0.0 && std::isfinite(job.m[l]),
              "branches.m[" + std::to_string(l) + "]", "must be > 0");
    }
    require(job.omega.empty() || job.omega.size() == job.m.size(), "branches.omega",
            "must have as many entries as branches.m");
    for (std::size_t l = 0; l < job.omega.size(); ++l) {
      require(job.omega[l] > 0.0 && std::isfinite(job.omega[l]),
              "branches.omega[" + std::to_string(l) + "]", "must be > 0");
    }
  }
  if (job.grid) {
    const Grid& g = *job.grid;
    require(g.points >= 1, "grid.points", "must be >= 1");
    if (g.points == 1) {
      require(g.start == g.stop, "grid", "a single point needs start == stop");
    } else {
      require(g.start < g.stop, "grid", "start must be < stop");
    }
  }
  switch (job.command) {
    case Command::Pdf:
    case Command::Cdf:
    case Command::Outage:
      require(job.grid.has_value(), "grid", "required for this command");
      require(job.grid_unit == GridUnit::LinearY, "grid.unit", "must be y");
      require(job.grid->start >= 0.0, "grid.start", "must be >= 0");
      if (job.command == Command::Pdf) {
        require(job.grid->start > 0.0, "grid.start", "pdf needs y > 0");
      }
      break;
    case Command::Ber:
      require(!job.modulations.empty(), "modulations",
              "ber requires at least one of: " + modulation_names());
      require(!job.grid || job.grid_unit == GridUnit::SnrDb, "grid.unit",
              "ber sweeps are in snr_db");
      break;
    case Command::Validate:
      require(job.seed.has_value(), "seed", "validate requires a seed");
      require(job.samples >= 1, "samples", "must be >= 1");
      if (job.grid) {
        require(job.grid_unit == GridUnit::LinearY, "grid.unit", "must be y");
        require(job.grid->points >= 2, "grid.points", "validate needs >= 2 points");
        require(job.grid->start >= 0.0, "grid.start", "must be >= 0");
      }
      break;
    case Command::Hfun: {
      const auto& h = job.hfun;
      require(h.z > 0.0 && std::isfinite(h.z), "hfun.z", "must be > 0");
      require(h.m >= 0 && h.m <= static_cast<int>(h.lower.size()), "hfun.m",
              "must satisfy 0 <= m <= q");
      require(h.n >= 0 && h.n <= static_cast<int>(h.upper.size()), "hfun.n",
              "must satisfy 0 <= n <= p");
      require(!h.upper.empty() || !h.lower.empty(), "hfun", "no parameters");
      break;
    }
  }
  if (job.contour.rel_tol) require(*job.contour.rel_tol > 0.0, "contour.rel_tol", "must be > 0");
  if (job.contour.abs_tol) require(*job.contour.abs_tol > 0.0, "contour.abs_tol", "must be > 0");
  if (job.contour.height) require(*job.contour.height > 0.0, "contour.height", "must be > 0");
  if (job.contour.bend) require(*job.contour.bend >= 0.0, "contour.bend", "must be >= 0");
  if (job.contour.max_refinements) {
    require(*job.contour.max_refinements >= 0, "contour.max_refinements", "must be >= 0");
  }
}

// ---------------------------------------------------------------------------
// JSON mapping

inline json to_json(const Modulation& mod) {
  if (mod.kind != ModulationKind::Custom) return mod.name();
  return json{{"p", mod.p}, {"q", mod.q}};
}

inline json to_json(const HParam& e) { return json::array({e.offset, e.scale, e.exponent}); }

inline json to_json(const JobSpec& job) {
  json j;
  j["command"] = to_string(job.command);
  j["branches"] = {{"m", job.m}, {"omega", job.omega}};
  json mods = json::array();
  for (const auto& mod : job.modulations) mods.push_back(to_json(mod));
  j["modulations"] = mods;
  if (job.grid) {
    j["grid"] = {{"start", job.grid->start},
                 {"stop", job.grid->stop},
                 {"points", job.grid->points},
                 {"unit", to_string(job.grid_unit)}};
  }
  j["output"] = {{"path", job.output}, {"format", to_string(job.format)}};
  if (job.seed) j["seed"] = *job.seed;
  j["samples"] = job.samples;
  j["force_general"] = job.force_general;
  json c = json::object();
  if (job.contour.anchor) c["anchor"] = *job.contour.anchor;
  if (job.contour.height) c["height"] = *job.contour.height;
  if (job.contour.bend) c["bend"] = *job.contour.bend;
  if (job.contour.rel_tol) c["rel_tol"] = *job.contour.rel_tol;
  if (job.contour.abs_tol) c["abs_tol"] = *job.contour.abs_tol;
  if (job.contour.max_refinements) c["max_refinements"] = *job.contour.max_refinements;
  j["contour"] = c;
  if (job.command == Command::Hfun) {
    json up = json::array();
    json lo = json::array();
    for (const auto& e : job.hfun.upper) up.push_back(to_json(e));
    for (const auto& e : job.hfun.lower) lo.push_back(to_json(e));
    j["hfun"] = {{"kind", to_string(job.hfun.kind)},
                 {"m", job.hfun.m},
                 {"n", job.hfun.n},
                 {"upper", up},
                 {"lower", lo},
                 {"z", job.hfun.z}};
  }
  return j;
}

inline std::string serialize(const JobSpec& job) { return to_json(job).dump(2) + "\n"; }

namespace detail {

inline const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline double get_number(const json& v, const std::string& field) {
  require(v.is_number(), field, "expected a number");
  return v.get<double>();
}

inline int get_int(const json& v, const std::string& field) {
  require(v.is_number_integer(), field, "expected an integer");
  return v.get<int>();
}

inline std::vector<double> get_numbers(const json& v, const std::string& field) {
  require(v.is_array(), field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline Modulation get_modulation(const json& v, const std::string& field) {
  if (v.is_string()) {
    const auto mod = modulation_from_name(v.get<std::string>());
    require(mod.has_value(), field,
            "unknown modulation '" + v.get<std::string>() + "' (expected one of " +
                modulation_names() + ", or {\"p\": .., \"q\": ..})");
    return *mod;
  }
  require(v.is_object(), field, "expected a modulation name or {\"p\", \"q\"}");
  const json* p = find(v, "p");
  const json* q = find(v, "q");
  require(p && q, field, "custom modulation needs p and q");
  const double pv = get_number(*p, field + ".p");
  const double qv = get_number(*q, field + ".q");
  require(pv > 0.0, field + ".p", "must be > 0");
  require(qv > 0.0, field + ".q", "must be > 0");
  return Modulation::custom(pv, qv);
}

inline HParam get_hparam(const json& v, const std::string& field) {
  const auto xs = get_numbers(v, field);
  require(xs.size() == 3, field, "expected [offset, scale, exponent]");
  return {xs[0], xs[1], xs[2]};
}

inline void check_keys(const json& obj, const std::string& field,
                       std::initializer_list<const char*> allowed) {
  for (const auto& [key, _] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    require(known, field.empty() ? key : field + "." + key, "unknown key");
  }
}

}  // namespace detail

inline JobSpec from_json(const json& j) {
  using namespace detail;
  require(j.is_object(), "<root>", "expected an object");
  check_keys(j, "", {"command", "branches", "modulations", "grid", "output", "seed",
                     "samples", "force_general", "contour", "hfun"});
  JobSpec job;
  const json* cmd = find(j, "command");
  require(cmd && cmd->is_string(), "command", "required string");
  const auto c = parse_command(cmd->get<std::string>());
  require(c.has_value(), "command",
          "unknown command '" + cmd->get<std::string>() +
              "' (expected pdf, cdf, outage, ber, hfun or validate)");
  job.command = *c;

  if (const json* b = find(j, "branches")) {
    require(b->is_object(), "branches", "expected an object");
    check_keys(*b, "branches", {"m", "omega"});
    if (const json* m = find(*b, "m")) job.m = get_numbers(*m, "branches.m");
    if (const json* o = find(*b, "omega")) job.omega = get_numbers(*o, "branches.omega");
  }
  if (const json* mods = find(j, "modulations")) {
    require(mods->is_array(), "modulations", "expected an array");
    for (std::size_t i = 0; i < mods->size(); ++i) {
      job.modulations.push_back(
          get_modulation((*mods)[i], "modulations[" + std::to_string(i) + "]"));
    }
  }
  if (const json* g = find(j, "grid")) {
    require(g->is_object(), "grid", "expected an object");
    check_keys(*g, "grid", {"start", "stop", "points", "unit"});
    Grid grid;
    const json* start = find(*g, "start");
    require(start != nullptr, "grid.start", "required");
    grid.start = get_number(*start, "grid.start");
    const json* stop = find(*g, "stop");
    grid.stop = stop ? get_number(*stop, "grid.stop") : grid.start;
    const json* points = find(*g, "points");
    grid.points = points ? get_int(*points, "grid.points") : 1;
    if (const json* u = find(*g, "unit")) {
      require(u->is_string(), "grid.unit", "expected \"y\" or \"snr_db\"");
      const auto s = u->get<std::string>();
      require(s == "y" || s == "snr_db", "grid.unit", "expected \"y\" or \"snr_db\"");
      job.grid_unit = s == "snr_db" ? GridUnit::SnrDb : GridUnit::LinearY;
    } else if (job.command == Command::Ber) {
      job.grid_unit = GridUnit::SnrDb;
    }
    job.grid = grid;
  }
  if (const json* o = find(j, "output")) {
    require(o->is_object(), "output", "expected an object");
    check_keys(*o, "output", {"path", "format"});
    if (const json* p = find(*o, "path")) {
      require(p->is_string(), "output.path", "expected a string");
      job.output = p->get<std::string>();
    }
    if (const json* f = find(*o, "format")) {
      require(f->is_string(), "output.format", "expected \"csv\" or \"json\"");
      const auto s = f->get<std::string>();
      require(s == "csv" || s == "json", "output.format", "expected \"csv\" or \"json\"");
      job.format = s == "json" ? Format::Json : Format::Csv;
    }
  }
  if (const json* s = find(j, "seed")) {
    require(s->is_number_unsigned(), "seed", "expected a non-negative integer");
    job.seed = s->get<std::uint64_t>();
  }
  if (const json* s = find(j, "samples")) {
    require(s->is_number_unsigned(), "samples", "expected a positive integer");
    job.samples = s->get<std::uint64_t>();
  }
  if (const json* f = find(j, "force_general")) {
    require(f->is_boolean(), "force_general", "expected true or false");
    job.force_general = f->get<bool>();
  }
  if (const json* c2 = find(j, "contour")) {
    require(c2->is_object(), "contour", "expected an object");
    check_keys(*c2, "contour",
               {"anchor", "height", "bend", "rel_tol", "abs_tol", "max_refinements"});
    auto& o = job.contour;
    if (const json* v = find(*c2, "anchor")) o.anchor = get_number(*v, "contour.anchor");
    if (const json* v = find(*c2, "height")) o.height = get_number(*v, "contour.height");
    if (const json* v = find(*c2, "bend")) o.bend = get_number(*v, "contour.bend");
    if (const json* v = find(*c2, "rel_tol")) o.rel_tol = get_number(*v, "contour.rel_tol");
    if (const json* v = find(*c2, "abs_tol")) o.abs_tol = get_number(*v, "contour.abs_tol");
    if (const json* v = find(*c2, "max_refinements")) {
      o.max_refinements = get_int(*v, "contour.max_refinements");
    }
  }
  if (const json* h = find(j, "hfun")) {
    require(h->is_object(), "hfun", "expected an object");
    check_keys(*h, "hfun", {"kind", "m", "n", "upper", "lower", "z"});
    auto& spec = job.hfun;
    if (const json* k = find(*h, "kind")) {
      require(k->is_string(), "hfun.kind", "expected g, h, hbar or hhat");
      const auto kind = parse_hkind(k->get<std::string>());
      require(kind.has_value(), "hfun.kind", "expected g, h, hbar or hhat");
      spec.kind = *kind;
    }
    if (const json* v = find(*h, "m")) spec.m = get_int(*v, "hfun.m");
    if (const json* v = find(*h, "n")) spec.n = get_int(*v, "hfun.n");
    if (const json* v = find(*h, "z")) spec.z = get_number(*v, "hfun.z");
    for (auto [key, list] : {std::pair{"upper", &spec.upper}, std::pair{"lower", &spec.lower}}) {
      if (const json* v = find(*h, key)) {
        const std::string field = std::string("hfun.") + key;
        require(v->is_array(), field, "expected an array of triplets");
        for (std::size_t i = 0; i < v->size(); ++i) {
          list->push_back(get_hparam((*v)[i], field + "[" + std::to_string(i) + "]"));
        }
      }
    }
  }
  validate(job);
  return job;
}

inline JobSpec parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // byte offset -> line number
    std::size_t line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
  return from_json(j);
}

inline JobSpec parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Running

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, double>> summary;
};

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

inline void write_table(const JobSpec& job, const Table& t, std::ostream& out) {
  if (job.format == Format::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? "," : "") << t.columns[i];
    }
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << (i ? "," : "") << format_number(row[i]);
      }
      out << "\n";
    }
    for (const auto& [key, value] : t.summary) {
      out << "# " << key << "=" << format_number(value) << "\n";
    }
    return;
  }
  json meta = to_json(job);
  meta.erase("output");
  for (const auto& [key, value] : t.summary) meta[key] = value;
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
    rows.push_back(r);
  }
  out << json{{"meta", meta}, {"rows", rows}}.dump(2) << "\n";
}

inline EvalOptions eval_options(const JobSpec& job) {
  EvalOptions opt;
  opt.force_general = job.force_general;
  opt.anchor = job.contour.anchor;
  opt.height = job.contour.height;
  opt.bend = job.contour.bend;
  if (job.contour.rel_tol) opt.rel_tol = *job.contour.rel_tol;
  if (job.contour.abs_tol) opt.abs_tol = *job.contour.abs_tol;
  if (job.contour.max_refinements) opt.max_refinements = *job.contour.max_refinements;
  return opt;
}

inline BranchParams branches(const JobSpec& job, double omega_scale = 1.0) {
  std::vector<Branch> b;
  for (std::size_t l = 0; l < job.m.size(); ++l) {
    const double w = job.omega.empty() ? 1.0 : job.omega[l];
    b.push_back({job.m[l], w * omega_scale});
  }
  return BranchParams(std::move(b));
}

inline Table evaluate(const JobSpec& job) {
  validate(job);
  Table t;
  const EvalOptions opt = eval_options(job);
  switch (job.command) {
    case Command::Pdf:
    case Command::Cdf:
    case Command::Outage: {
      const BranchParams params = branches(job);
      const auto ys = job.grid->values();
      t.columns = {"y", "value", "est_abs_error"};
      t.rows.resize(ys.size());
      parallel_for(ys.size(), [&](std::size_t i) {
        const EvalResult r = job.command == Command::Pdf ? pdf_result(params, ys[i], opt)
                                                         : cdf_result(params, ys[i], opt);
        t.rows[i] = {ys[i], r.value, r.est_abs_error};
      });
      break;
    }
    case Command::Ber: {
      const auto snrs = job.grid ? job.grid->values() : std::vector<double>{0.0};
      t.columns = {"snr_db"};
      for (const auto& mod : job.modulations) {
        t.columns.push_back("ber_" + (mod.kind == ModulationKind::Custom
                                          ? "p" + format_number(mod.p) + "_q" + format_number(mod.q)
                                          : mod.name()));
      }
      const std::size_t k = job.modulations.size();
      t.rows.assign(snrs.size(), std::vector<double>(k + 1));
      parallel_for(snrs.size() * k, [&](std::size_t idx) {
        const std::size_t i = idx / k;
        const std::size_t j = idx % k;
        const BranchParams params = branches(job, std::pow(10.0, snrs[i] / 10.0));
        t.rows[i][0] = snrs[i];
        t.rows[i][j + 1] = ber(params, job.modulations[j], opt);
      });
      break;
    }
    case Command::Hfun: {
      HFamilySpec spec{job.hfun.kind, job.hfun.m, job.hfun.n, job.hfun.upper,
                       job.hfun.lower, Argument::from_value(job.hfun.z)};
      std::optional<ContourSpec> c;
      if (job.contour.anchor || job.contour.height || job.contour.bend ||
          job.contour.rel_tol || job.contour.abs_tol || job.contour.max_refinements) {
        ContourSpec cs = default_contour(to_terms(spec));
        if (job.contour.anchor) cs.anchor = *job.contour.anchor;
        if (job.contour.height) cs.height = *job.contour.height;
        if (job.contour.bend) cs.bend = *job.contour.bend;
        cs.rel_tol = opt.rel_tol;
        cs.abs_tol = opt.abs_tol;
        cs.max_refinements = opt.max_refinements;
        c = cs;
      }
      const EvalResult r = eval_h(spec, c);
      t.columns = {"z", "value", "est_abs_error", "n_evals"};
      t.rows.push_back({job.hfun.z, r.value, r.est_abs_error, static_cast<double>(r.n_evals)});
      break;
    }
    case Command::Validate: {
      const BranchParams params = branches(job);
      SimConfig cfg;
      cfg.n_samples = job.samples;
      cfg.seed = *job.seed;
      if (job.grid) {
        cfg.histogram_bins = job.grid->points - 1;
        cfg.y_range = {job.grid->start, job.grid->stop};
      }
      const CdfComparison cmp = cdf_comparison(params, cfg);
      t.columns = {"y", "empirical", "analytic", "abs_diff"};
      for (const auto& row : cmp.rows) {
        t.rows.push_back({row.y, row.empirical, row.analytic, row.diff});
      }
      t.summary = {{"ks", cmp.ks.ks}, {"n", static_cast<double>(cmp.ks.n)}};
      break;
    }
  }
  return t;
}

// Runs the job; diagnostics go to `err`. Returns the process exit code.
inline int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
  try {
    const Table t = evaluate(job);
    if (job.output.empty() || job.output == "-") {
      write_table(job, t, out);
    } else {
      std::ofstream file(job.output);
      if (!file) {
        err << "error: cannot write " << job.output << "\n";
        return kExitInvalid;
      }
      write_table(job, t, file);
    }
    return kExitOk;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const OracleDiverged& e) {
    err << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace gammasum::cli
