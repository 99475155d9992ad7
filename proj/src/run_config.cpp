// Copyright (c) 2026 The lpeirl1 Authors.
// SPDX-License-Identifier: Apache-2.0

#include "run_config.hpp"

#include <cmath>
#include <set>

#include "error.hpp"
#include "io.hpp"

namespace lpeirl1 {

using Json = nlohmann::json;

namespace {

const std::set<std::string, std::less<>> kTopLevelKeys = {
    "m",     "n",       "K",        "sigma2", "p",     "lambda",  "trials",
    "seed",  "beta",    "mu",       "eps0",   "alpha", "opttol",  "max_iter",
    "trace", "solver",  "solvers",  "alphas", "x0",    "snapshot_stride"};

// Keys that may also appear inside an entry of "solvers".
const std::set<std::string, std::less<>> kSolverKeys = {
    "alpha", "beta", "mu", "eps0", "opttol", "max_iter", "trace", "snapshot_stride"};

const std::set<std::string, std::less<>> kIntegerKeys = {
    "m", "n", "K", "trials", "seed", "max_iter", "snapshot_stride"};

[[noreturn]] void field_error(std::string_view field, const std::string &what) {
  fail(ErrorKind::Config, "field '" + std::string(field) + "': " + what);
}

double number_field(const Json &obj, std::string_view key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end())
    return fallback;
  if (!it->is_number())
    field_error(key, "expected a number");
  const double v = it->get<double>();
  if (!std::isfinite(v))
    field_error(key, "must be finite");
  return v;
}

std::uint64_t uint_field(const Json &obj, std::string_view key,
                         std::uint64_t fallback) {
  auto it = obj.find(key);
  if (it == obj.end())
    return fallback;
  if (it->is_number_unsigned())
    return it->get<std::uint64_t>();
  if (it->is_number_integer()) {
    field_error(key, "expected a non-negative integer");
  }
  if (it->is_number_float()) {
    const double v = it->get<double>();
    if (v >= 0.0 && std::floor(v) == v && v < 1.8e19)
      return static_cast<std::uint64_t>(v);
  }
  field_error(key, "expected a non-negative integer");
}

std::string string_field(const Json &obj, std::string_view key,
                         const std::string &fallback) {
  auto it = obj.find(key);
  if (it == obj.end())
    return fallback;
  if (!it->is_string())
    field_error(key, "expected a string");
  return it->get<std::string>();
}

AlphaSchedule alpha_value(const Json &value, std::string_view where) {
  try {
    if (value.is_string())
      return parse_alpha(value.get<std::string>());
    if (value.is_number())
      return AlphaSchedule::constant(value.get<double>());
  } catch (const Error &e) {
    field_error(where, e.what());
  }
  field_error(where, "expected a number in [0,1) or \"nesterov\"");
}

template <class Fn> auto with_field(std::string_view field, Fn fn) {
  try {
    return fn();
  } catch (const Error &e) {
    const std::string msg = e.what();
    if (msg.rfind("field '", 0) == 0)
      throw;
    field_error(field, msg);
  }
}

SolverConfig solver_config(const Json &top, const Json &entry, SolverKind kind) {
  auto pick = [&](std::string_view key) -> const Json & {
    return entry.contains(key) ? entry : top;
  };
  SolverConfig c;
  c.beta = number_field(pick("beta"), "beta", c.beta);
  c.mu = number_field(pick("mu"), "mu", c.mu);
  c.eps0 = number_field(pick("eps0"), "eps0", c.eps0);
  c.opttol = number_field(pick("opttol"), "opttol", c.opttol);
  c.max_iter = static_cast<long>(
      uint_field(pick("max_iter"), "max_iter", static_cast<std::uint64_t>(c.max_iter)));
  c.snapshot_stride = static_cast<long>(uint_field(
      pick("snapshot_stride"), "snapshot_stride",
      static_cast<std::uint64_t>(c.snapshot_stride)));
  c.trace_level = with_field("trace", [&] {
    return parse_trace_level(string_field(pick("trace"), "trace", "full"));
  });

  // Unaccelerated baselines default to alpha = 0 unless told otherwise.
  switch (kind) {
  case SolverKind::Eirl1:
    if (pick("alpha").contains("alpha"))
      c.alpha_schedule = alpha_value(pick("alpha").at("alpha"), "alpha");
    break;
  case SolverKind::Irl2:
    c.alpha_schedule = pick("alpha").contains("alpha")
                           ? alpha_value(pick("alpha").at("alpha"), "alpha")
                           : AlphaSchedule::constant(0.0);
    break;
  case SolverKind::Irl1:
  case SolverKind::Ijt:
    c.alpha_schedule = AlphaSchedule::constant(0.0);
    break;
  }
  with_field("solver", [&] {
    c.validate();
    return 0;
  });
  return c;
}

void check_keys(const Json &obj, const std::set<std::string, std::less<>> &allowed,
                const std::string &where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      fail(ErrorKind::Config, where + "unknown field '" + it.key() + "'");
}

Json flag_value(const std::string &key, std::string_view value) {
  Json v;
  if (key == "alpha") {
    v = value == "nesterov" ? Json("nesterov") : Json(parse_double(value, key));
  } else if (key == "alphas") {
    v = Json::array();
    std::size_t start = 0;
    while (start <= value.size()) {
      const auto comma = value.find(',', start);
      const auto item = value.substr(
          start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      v.push_back(item == "nesterov" ? Json("nesterov") : Json(parse_double(item, key)));
      if (comma == std::string_view::npos)
        break;
      start = comma + 1;
    }
  } else if (key == "trace" || key == "solver" || key == "x0") {
    v = std::string(value);
  } else if (kIntegerKeys.count(key)) {
    const double d = parse_double(value, key);
    if (d < 0.0 || std::floor(d) != d)
      field_error(key, "expected a non-negative integer");
    v = static_cast<std::uint64_t>(d);
  } else {
    v = parse_double(value, key);
  }

  return v;
}

} // namespace

AlphaSchedule parse_alpha(std::string_view text) {
  if (text == "nesterov")
    return AlphaSchedule::nesterov();
  return AlphaSchedule::constant(parse_double(text, "alpha"));
}

ConfigDocument ConfigDocument::parse(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error &e) {
    fail(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    fail(ErrorKind::Config, "config: top level must be a JSON object");
  check_keys(doc, kTopLevelKeys, "config: ");
  ConfigDocument out(std::move(doc));
  out.resolve(); // surface field errors at load time
  return out;
}

ConfigDocument ConfigDocument::load(const std::filesystem::path &path) {
  return parse(read_text_file(path));
}

void ConfigDocument::set(std::string_view key_in, std::string_view value) {
  std::string key(key_in);
  if (key == "max-iter")
    key = "max_iter";
  if (!kTopLevelKeys.count(key) || key == "solvers")
    fail(ErrorKind::Usage, "unknown configuration key '" + key + "'");

  Json v;
  try {
    v = flag_value(key, value);
  } catch (const Error &e) {
    const std::string msg = e.what();
    if (msg.rfind("field '", 0) == 0)
      throw;
    field_error(key, msg);
  }

  doc_[key] = v;
  if (key == "solver") {
    doc_["solvers"] = Json::array({Json{{"solver", std::string(value)}}});
  } else if (kSolverKeys.count(key) && doc_.contains("solvers")) {
    for (auto &entry : doc_["solvers"])
      if (entry.is_object())
        entry.erase(key);
  }
}

RunConfig ConfigDocument::resolve() const {
  const Json &d = doc_;
  RunConfig rc;
  auto &spec = rc.spec;

  spec.m = static_cast<Index>(uint_field(d, "m", 256));
  spec.n = static_cast<Index>(uint_field(d, "n", 512));
  spec.K = static_cast<Index>(uint_field(d, "K", 25));
  spec.sigma2 = number_field(d, "sigma2", 1e-4);
  spec.trials = static_cast<long>(uint_field(d, "trials", 20));
  spec.base_seed = uint_field(d, "seed", 0);
  const double p = number_field(d, "p", 0.5);
  const double lambda = number_field(d, "lambda", 0.05);
  if (!(p > 0.0 && p < 1.0))
    field_error("p", "must lie in (0,1)");
  if (!(lambda > 0.0))
    field_error("lambda", "must be positive");
  spec.reg = RegParams(p, lambda);

  rc.solver = with_field("solver", [&] {
    return parse_solver_kind(string_field(d, "solver", "eirl1"));
  });
  rc.solver_config = solver_config(d, Json::object(), rc.solver);
  rc.x0 = string_field(d, "x0", "gaussian");

  spec.solver_set.clear();
  if (auto it = d.find("solvers"); it != d.end()) {
    if (!it->is_array() || it->empty())
      field_error("solvers", "expected a non-empty array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json &raw = (*it)[i];
      Json entry = raw.is_string() ? Json{{"solver", raw}} : raw;
      const std::string where = "solvers[" + std::to_string(i) + "]";
      if (!entry.is_object())
        field_error(where, "expected a solver name or object");
      for (auto e = entry.begin(); e != entry.end(); ++e)
        if (!kSolverKeys.count(e.key()) && e.key() != "solver" && e.key() != "label")
          field_error(where, "unknown field '" + e.key() + "'");
      SolverEntry se;
      se.kind = with_field(where + ".solver", [&] {
        return parse_solver_kind(string_field(entry, "solver", "eirl1"));
      });
      se.config = solver_config(d, entry, se.kind);
      se.label = string_field(entry, "label", "");
      spec.solver_set.push_back(std::move(se));
    }
  } else {
    spec.solver_set.push_back(SolverEntry{rc.solver, rc.solver_config, ""});
  }

  if (auto it = d.find("alphas"); it != d.end()) {
    if (!it->is_array() || it->empty())
      field_error("alphas", "expected a non-empty array");
    std::vector<AlphaSchedule> alphas;
    for (const auto &a : *it)
      alphas.push_back(alpha_value(a, "alphas"));
    rc.alphas = std::move(alphas);
  }

  try {
    spec.validate();
  } catch (const Error &e) {
    // Messages from validate() start with the field name.
    fail(e.kind(), std::string("config: ") + e.what());
  }
  return rc;
}

} // namespace lpeirl1
