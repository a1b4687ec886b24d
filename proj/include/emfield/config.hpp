#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "emfield/grid.hpp"
#include "emfield/ladder.hpp"
#include "emfield/pairing.hpp"
#include "emfield/testfunction.hpp"

namespace emfield {

/// Schema violations in run configurations; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File-system failures; the CLI maps these to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FunctionDecl {
  std::string name;
  GaussianPacketParams packet;
};

struct WordSpec {
  std::string name;
  OperatorWord ops;                 // labels are indices into RunConfig::functions
};

struct FieldProductSpec {
  std::string name;
  std::vector<FieldSymbol> symbols;  // labels as above
};

struct Tolerances {
  double algebraic = 1e-12;      // generic algebraic identities, relative
  double maps = 1e-13;           // projection/map identities, relative
  double commutator = 1e-13;     // commutator vanishing, relative to scale
  double boost_rel = 1e-3;       // boost covariance at the 32 x 98 grid
  double convergence_final = 1e-6;
  double gram_psd = 1e-10;       // relative eigenvalue floor
};

struct RunConfig {
  GridSpec grid;
  PhysicalConstants constants;
  std::vector<FunctionDecl> functions;
  std::vector<std::string> suites{"all"};
  std::uint64_t seed = 20090529;
  bool deterministic = false;
  int jobs = 1;
  Tolerances tolerances;
  std::vector<int> convergence_levels{8, 16, 32};
  std::vector<double> rapidities{0.3};
  int sample_count = 200000;
  std::vector<WordSpec> words;
  std::vector<FieldProductSpec> field_products;

  int function_index(const std::string& name) const;  // throws ConfigError
};

/// Built-in defaults: the 8 x 26 desk grid, two generic complex packets and
/// three real ones, plus a couple of illustrative words and field products.
RunConfig default_config();

/// Strict parse: unknown keys anywhere are rejected.
RunConfig parse_config_json(const std::string& text);
RunConfig load_config_file(const std::string& path);

/// The config rendered back to JSON (used in report environment blocks).
std::string config_to_json(const RunConfig& config);

}  // namespace emfield
