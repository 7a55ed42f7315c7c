#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lcap/mesh.hpp"
#include "lcap/theorems.hpp"

namespace lcap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

/// Ordered key/value pairs written at the top of every output file.
using Echo = std::vector<std::pair<std::string, std::string>>;

std::string echo_header(const std::string& command, const Echo& echo);

/// Output directory (flag, then LCAP_OUTPUT_DIR, then the working directory) and log stream.
struct Output {
  std::filesystem::path dir = ".";
  std::ostream* log = nullptr;

  static Output resolve(const std::optional<std::string>& flag, std::ostream& log);
  std::filesystem::path file(const std::string& name) const;
  std::ostream& out() const;
};

struct SupportOptions {
  std::string kind = "pseudosphere";
  std::string center = "0,0,0";
  double radius = 1.0;
  std::string normal = "0,0,1";
  std::string branch = "upper";

  SupportSurface build() const;
  void append(Echo& e) const;
};

struct GenConfig {
  std::string surface = "cap";  // cap | disc | rotprofile
  double r = 1.0;
  double c = -1.4142135623730951;
  double h = 0.0;
  double H = 1.0;
  double c_int = 0.5;
  double rho0 = 0.3;
  double rho1 = 1.2;
  int res = 32;
  std::string name = "gen";

  Echo echo() const;
};

struct SolveConfig {
  SupportOptions support;
  double lambda = 1.0;
  std::optional<double> H;
  std::optional<double> volume;
  std::string init = "cap";  // cap | disc | waist-disc | file
  double init_r = 1.0;
  double init_c = -1.4142135623730951;
  double init_h = 0.0;
  double init_radius = 1.0;  // disc radius on a plane support
  std::string init_file;
  double amplitude = 0.0;
  std::uint64_t seed = 0;
  int res = 32;
  int max_iters = 100;
  double tol = 1e-8;
  double step0 = 1e-3;
  std::string name = "solve";

  Echo echo() const;
};

struct VerifyConfig {
  std::string suite = "all";
  std::string name = "verify";

  Echo echo() const;
};

struct HopfConfig {
  std::string surface = "cap";  // cap | rotprofile
  double r = 1.0;
  double c = -1.4142135623730951;
  double H = 1.0;
  double c_int = 0.5;
  double rho0 = 0.3;
  double rho1 = 1.2;
  int rings = 64;
  int sectors = 128;
  std::string name = "hopf";

  Echo echo() const;
};

struct ExportConfig {
  std::string input;
  std::string format = "csv";  // csv | obj | profile
  std::string name = "export";

  Echo echo() const;
};

struct ReportConfig {
  std::string input;
  std::string name = "report";

  Echo echo() const;
};

int cmd_gen(const GenConfig& cfg, const Output& out);
int cmd_solve(const SolveConfig& cfg, const Output& out);
int cmd_verify(const VerifyConfig& cfg, const Output& out);
int cmd_hopf(const HopfConfig& cfg, const Output& out);
int cmd_export(const ExportConfig& cfg, const Output& out);
int cmd_report(const ReportConfig& cfg, const Output& out);

/// Parses arguments (and an optional INI/TOML file via --config) and dispatches.
int run(int argc, const char* const* argv, std::ostream& log, std::ostream& err);

// --- suites -------------------------------------------------------------------------

std::vector<std::string> suite_names();
/// Throws Error for an unknown name; "all" concatenates every suite.
std::vector<Verdict> run_suite(const std::string& name);

// --- mesh files -------------------------------------------------------------------

/// OBJ text with the echo header and "#@ domain" / "#@ support" metadata lines.
std::string obj_text(const SpacelikeGraph& g, const std::string& header);
void write_text(const std::filesystem::path& p, const std::string& text);
SpacelikeGraph read_obj(const std::filesystem::path& p);

}  // namespace lcap::cli
