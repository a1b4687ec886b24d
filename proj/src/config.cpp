#include "emfield/config.hpp"

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"  // vendored single header
#endif

#include <fstream>
#include <set>
#include <sstream>

namespace emfield {

using nlohmann::json;

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  return j.get<double>();
}

Complex get_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(where + ": expected [re, im]");
  }
  return {get_number(j[0], where), get_number(j[1], where)};
}

AntisymTensor2 parse_amplitude(const json& j, const std::string& where) {
  if (j.is_object()) {
    // six independent components
    require_keys(j, where, {"A01", "A02", "A03", "A12", "A13", "A23"});
    std::array<Complex, 6> c{};
    const std::array<const char*, 6> keys{"A01", "A02", "A03", "A12", "A13", "A23"};
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (j.contains(keys[i])) c[i] = get_complex(j[keys[i]], where);
    }
    return AntisymTensor2::from_components(c);
  }
  if (j.is_array()) {
    // full 4x4 of [re, im]; must already be antisymmetric
    if (j.size() != 4) throw ConfigError(where + ": expected a 4x4 array");
    std::array<std::array<Complex, 4>, 4> m{};
    double scale = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
      if (!j[r].is_array() || j[r].size() != 4)
        throw ConfigError(where + ": expected a 4x4 array");
      for (std::size_t c = 0; c < 4; ++c) {
        m[r][c] = get_complex(j[r][c], where);
        scale = std::max(scale, std::abs(m[r][c]));
      }
    }
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        if (std::abs(m[r][c] + m[c][r]) > 1e-12 * std::max(scale, 1e-300))
          throw ConfigError(where + ": matrix is not antisymmetric");
    return AntisymTensor2::antisymmetrize(m);
  }
  throw ConfigError(where + ": expected component object or 4x4 array");
}

FourVector parse_four_vector(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ConfigError(where + ": expected 4 numbers");
  FourVector v;
  for (int i = 0; i < 4; ++i) v[i] = get_number(j[static_cast<std::size_t>(i)], where);
  return v;
}

FunctionDecl parse_function(const json& j, const std::string& where) {
  require_keys(j, where,
               {"name", "family", "amplitude", "center", "sigma", "realSymmetrized"});
  FunctionDecl decl;
  if (!j.contains("name") || !j["name"].is_string())
    throw ConfigError(where + ": function needs a string 'name'");
  decl.name = j["name"].get<std::string>();
  const std::string family =
      j.contains("family") ? j["family"].get<std::string>() : "gaussian";
  if (family != "gaussian") {
    throw ConfigError(where + ": unknown family '" + family + "'");
  }
  if (!j.contains("amplitude")) throw ConfigError(where + ": missing 'amplitude'");
  decl.packet.amplitude = parse_amplitude(j["amplitude"], where + ".amplitude");
  if (!j.contains("center")) throw ConfigError(where + ": missing 'center'");
  decl.packet.center = parse_four_vector(j["center"], where + ".center");
  if (!j.contains("sigma")) throw ConfigError(where + ": missing 'sigma'");
  decl.packet.sigma = get_number(j["sigma"], where + ".sigma");
  if (!(decl.packet.sigma > 0.0)) throw ConfigError(where + ": sigma must be positive");
  if (j.contains("realSymmetrized")) {
    if (!j["realSymmetrized"].is_boolean())
      throw ConfigError(where + ": realSymmetrized must be a boolean");
    decl.packet.real_symmetrized = j["realSymmetrized"].get<bool>();
  }
  return decl;
}

LadderOp parse_ladder_op(const std::string& text, const RunConfig& config,
                         const std::string& where) {
  const auto space = text.find(' ');
  if (space == std::string::npos) {
    throw ConfigError(where + ": expected \"create <name>\" or \"annihilate <name>\"");
  }
  const std::string verb = text.substr(0, space);
  const std::string name = text.substr(space + 1);
  LadderOp op;
  if (verb == "create") {
    op.kind = OpKind::create;
  } else if (verb == "annihilate") {
    op.kind = OpKind::annihilate;
  } else {
    throw ConfigError(where + ": unknown operator kind '" + verb + "'");
  }
  op.label = config.function_index(name);
  return op;
}

FieldKind parse_field_kind(const std::string& text, const std::string& where) {
  if (text == "phi") return FieldKind::phi;
  if (text == "chi") return FieldKind::chi;
  if (text == "xi") return FieldKind::xi;
  throw ConfigError(where + ": unknown field kind '" + text + "'");
}

json amplitude_to_json(const AntisymTensor2& a) {
  json out = json::object();
  const std::array<std::pair<const char*, std::pair<int, int>>, 6> comps{
      {{"A01", {0, 1}}, {"A02", {0, 2}}, {"A03", {0, 3}},
       {"A12", {1, 2}}, {"A13", {1, 3}}, {"A23", {2, 3}}}};
  for (const auto& [key, idx] : comps) {
    const Complex v = a(idx.first, idx.second);
    out[key] = {v.real(), v.imag()};
  }
  return out;
}

}  // namespace

int RunConfig::function_index(const std::string& name) const {
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].name == name) return static_cast<int>(i);
  }
  throw ConfigError("unknown function label '" + name + "'");
}

RunConfig default_config() {
  RunConfig config;
  config.grid = GridSpec{8, 0.05, 6.0, AngularScheme::oct26};

  auto decl = [](std::string name, std::array<Complex, 6> amp, FourVector center,
                 double sigma, bool real) {
    FunctionDecl d;
    d.name = std::move(name);
    d.packet.amplitude = AntisymTensor2::from_components(amp);
    d.packet.center = center;
    d.packet.sigma = sigma;
    d.packet.real_symmetrized = real;
    return d;
  };
  using namespace std::complex_literals;
  // Generic complex pair. Centers keep both frequency sheets populated, which
  // keeps the phi commutator visibly nonzero, and sigma = 1.2 keeps the
  // radial quadrature in its fast-convergence regime on (0.05, 6).
  config.functions.push_back(decl(
      "f1",
      {1.0 + 0.25i, 0.3 - 0.1i, -0.15 + 0.35i, 0.2 + 0.4i, 0.1i, 0.05 - 0.2i},
      FourVector{{0.3, 0.0, 0.0, 1.0}}, 1.2, false));
  config.functions.push_back(decl(
      "f2",
      {0.4 - 0.3i, -0.7 + 0.2i, 0.25 + 0.1i, 0.6 - 0.15i, -0.2 + 0.3i, 0.35 + 0.05i},
      FourVector{{-0.2, 0.2, 0.1, 0.8}}, 1.2, false));
  // Real (star-fixed) set for covariance and sampling.
  config.functions.push_back(decl("r1", {1.0, 0.0, 0.0, 0.5i, 0.0, 0.25},
                                  FourVector{{0.2, 0.0, 0.0, 0.9}}, 1.2, true));
  config.functions.push_back(decl("r2", {0.3 + 0.4i, -0.5, 0.2, 0.0, 0.6i, -0.1},
                                  FourVector{{-0.1, 0.3, 0.0, 0.7}}, 1.2, true));
  config.functions.push_back(decl("r3", {0.0, 0.7 - 0.2i, 0.1, -0.4, 0.2, 0.5i},
                                  FourVector{{0.0, 0.1, -0.2, 0.8}}, 1.2, true));

  config.words.push_back(
      {"a(f1) adag(f2)",
       {{OpKind::annihilate, 0}, {OpKind::create, 1}}});
  config.words.push_back(
      {"a(f1) a(f2) adag(f1) adag(f2)",
       {{OpKind::annihilate, 0}, {OpKind::annihilate, 1},
        {OpKind::create, 0}, {OpKind::create, 1}}});
  config.field_products.push_back(
      {"chi(f1) chi(f2)", {{FieldKind::chi, 0}, {FieldKind::chi, 1}}});
  config.field_products.push_back(
      {"chi(r1) chi(r2) chi(r1) chi(r2)",
       {{FieldKind::chi, 2}, {FieldKind::chi, 3}, {FieldKind::chi, 2},
        {FieldKind::chi, 3}}});
  return config;
}

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  require_keys(j, "config",
               {"grid", "constants", "functions", "suites", "seed", "deterministic",
                "jobs", "tolerances", "convergenceLevels", "rapidities", "sampleCount",
                "words", "fieldProducts"});
  RunConfig config = default_config();
  config.words.clear();
  config.field_products.clear();

  if (j.contains("grid")) {
    const auto& g = j["grid"];
    require_keys(g, "grid", {"radialNodes", "kMin", "kMax", "angularScheme"});
    if (g.contains("radialNodes"))
      config.grid.radial_nodes = static_cast<int>(get_number(g["radialNodes"], "grid.radialNodes"));
    if (g.contains("kMin")) config.grid.k_min = get_number(g["kMin"], "grid.kMin");
    if (g.contains("kMax")) config.grid.k_max = get_number(g["kMax"], "grid.kMax");
    if (g.contains("angularScheme")) {
      try {
        config.grid.scheme = parse_angular_scheme(
            static_cast<int>(get_number(g["angularScheme"], "grid.angularScheme")));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    try {
      config.grid.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("grid: ") + e.what());
    }
  }
  if (j.contains("constants")) {
    require_keys(j["constants"], "constants", {"hbar"});
    if (j["constants"].contains("hbar")) {
      config.constants.hbar = get_number(j["constants"]["hbar"], "constants.hbar");
      if (!(config.constants.hbar > 0.0)) throw ConfigError("constants.hbar must be positive");
    }
  }
  if (j.contains("functions")) {
    if (!j["functions"].is_array()) throw ConfigError("functions: expected an array");
    config.functions.clear();
    int index = 0;
    for (const auto& f : j["functions"]) {
      config.functions.push_back(
          parse_function(f, "functions[" + std::to_string(index++) + "]"));
    }
    std::set<std::string> seen;
    for (const auto& f : config.functions) {
      if (!seen.insert(f.name).second)
        throw ConfigError("duplicate function name '" + f.name + "'");
    }
  }
  if (j.contains("suites")) {
    if (!j["suites"].is_array()) throw ConfigError("suites: expected an array");
    config.suites.clear();
    for (const auto& s : j["suites"]) {
      if (!s.is_string()) throw ConfigError("suites: expected strings");
      config.suites.push_back(s.get<std::string>());
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ConfigError("seed: expected an integer");
    config.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("deterministic")) {
    if (!j["deterministic"].is_boolean())
      throw ConfigError("deterministic: expected a boolean");
    config.deterministic = j["deterministic"].get<bool>();
  }
  if (j.contains("jobs")) {
    config.jobs = static_cast<int>(get_number(j["jobs"], "jobs"));
    if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
  }
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    require_keys(t, "tolerances",
                 {"algebraic", "maps", "commutator", "boostRel", "convergenceFinal",
                  "gramPsd"});
    auto opt = [&](const char* key, double& out) {
      if (t.contains(key)) out = get_number(t[key], std::string("tolerances.") + key);
    };
    opt("algebraic", config.tolerances.algebraic);
    opt("maps", config.tolerances.maps);
    opt("commutator", config.tolerances.commutator);
    opt("boostRel", config.tolerances.boost_rel);
    opt("convergenceFinal", config.tolerances.convergence_final);
    opt("gramPsd", config.tolerances.gram_psd);
  }
  if (j.contains("convergenceLevels")) {
    if (!j["convergenceLevels"].is_array())
      throw ConfigError("convergenceLevels: expected an array");
    config.convergence_levels.clear();
    for (const auto& lvl : j["convergenceLevels"])
      config.convergence_levels.push_back(
          static_cast<int>(get_number(lvl, "convergenceLevels")));
  }
  if (j.contains("rapidities")) {
    if (!j["rapidities"].is_array()) throw ConfigError("rapidities: expected an array");
    config.rapidities.clear();
    for (const auto& r : j["rapidities"])
      config.rapidities.push_back(get_number(r, "rapidities"));
  }
  if (j.contains("sampleCount")) {
    config.sample_count = static_cast<int>(get_number(j["sampleCount"], "sampleCount"));
    if (config.sample_count < 1) throw ConfigError("sampleCount must be positive");
  }
  if (j.contains("words")) {
    if (!j["words"].is_array()) throw ConfigError("words: expected an array");
    int index = 0;
    for (const auto& w : j["words"]) {
      const std::string where = "words[" + std::to_string(index++) + "]";
      if (!w.is_array()) throw ConfigError(where + ": expected an array of strings");
      WordSpec spec;
      std::ostringstream label;
      for (const auto& op : w) {
        if (!op.is_string()) throw ConfigError(where + ": expected strings");
        spec.ops.push_back(parse_ladder_op(op.get<std::string>(), config, where));
        label << (spec.ops.size() > 1 ? " " : "") << op.get<std::string>();
      }
      spec.name = label.str();
      config.words.push_back(std::move(spec));
    }
  }
  if (j.contains("fieldProducts")) {
    if (!j["fieldProducts"].is_array())
      throw ConfigError("fieldProducts: expected an array");
    int index = 0;
    for (const auto& p : j["fieldProducts"]) {
      const std::string where = "fieldProducts[" + std::to_string(index++) + "]";
      if (!p.is_array()) throw ConfigError(where + ": expected an array");
      FieldProductSpec spec;
      std::ostringstream label;
      for (const auto& sym : p) {
        require_keys(sym, where, {"kind", "label"});
        if (!sym.contains("kind") || !sym.contains("label"))
          throw ConfigError(where + ": each symbol needs 'kind' and 'label'");
        FieldSymbol s;
        s.kind = parse_field_kind(sym["kind"].get<std::string>(), where);
        s.label = config.function_index(sym["label"].get<std::string>());
        spec.symbols.push_back(s);
        label << (spec.symbols.size() > 1 ? " " : "") << sym["kind"].get<std::string>()
              << "(" << sym["label"].get<std::string>() << ")";
      }
      spec.name = label.str();
      config.field_products.push_back(std::move(spec));
    }
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_json(buffer.str());
}

std::string config_to_json(const RunConfig& config) {
  json j;
  j["grid"] = {{"radialNodes", config.grid.radial_nodes},
               {"kMin", config.grid.k_min},
               {"kMax", config.grid.k_max},
               {"angularScheme", static_cast<int>(config.grid.scheme)}};
  j["constants"] = {{"hbar", config.constants.hbar}};
  j["seed"] = config.seed;
  j["deterministic"] = config.deterministic;
  j["functions"] = json::array();
  for (const auto& f : config.functions) {
    j["functions"].push_back({{"name", f.name},
                              {"family", "gaussian"},
                              {"amplitude", amplitude_to_json(f.packet.amplitude)},
                              {"center",
                               {f.packet.center[0], f.packet.center[1],
                                f.packet.center[2], f.packet.center[3]}},
                              {"sigma", f.packet.sigma},
                              {"realSymmetrized", f.packet.real_symmetrized}});
  }
  return j.dump(2);
}

}  // namespace emfield
