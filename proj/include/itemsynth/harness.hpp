#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "itemsynth/iim.hpp"
#include "itemsynth/lda.hpp"

namespace itemsynth {

inline constexpr char kToolName[] = "itemsynth";
inline constexpr char kToolVersion[] = "0.1.0";

// Grid spec: either "start:end:step" (inclusive) or a comma list; all values
// must lie in (0, 1).
std::vector<double> parse_support_grid(const std::string& spec);

// Replaces every `--config FILE` / `--config=FILE` token with the file's
// key=value lines rewritten as `--key=value`, in place, so flags given after
// the config override it. Presets are plain key=value with '#' comments.
std::vector<std::string> expand_config_args(const std::vector<std::string>& args);

// Shell-style expansion of '*' and '?' in the filename component; results are
// sorted so downstream processing is deterministic.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

struct MineOptions {
  std::filesystem::path input;
  double minsup = 0.0;
  std::filesystem::path output;
  bool allow_empty = false;
};

struct LearnOptions {
  std::filesystem::path input;
  std::string model;  // igm | lda | iim
  std::optional<double> minsup;
  std::filesystem::path out_dir;
  std::string label;
  std::optional<std::uint64_t> seed;
  bool allow_empty = false;
  std::string noise_universe = "effective";  // igm
  LdaLearnConfig lda;
  IimLearnConfig iim;
};

struct GenerateOptions {
  std::filesystem::path model_file;
  std::size_t n = 0;  // 0 = model source size
  int replicas = 10;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir;
  std::string label;
  int threads = 0;
  std::optional<bool> retry_empty;  // default depends on model kind
};

struct EvaluateOptions {
  std::filesystem::path original;
  std::string replica_glob;
  std::string suite = "all";  // characteristics | patterns | privacy | all
  std::vector<double> grid;   // empty = default 10%..90%
  std::filesystem::path out_dir;
  std::string label;
  std::string model;  // optional generator tag; report groups runs by it
  bool allow_empty = false;
  int threads = 0;
};

struct ReportOptions {
  std::vector<std::filesystem::path> manifests;  // files or directories
  std::filesystem::path out_dir;
  std::string format = "csv";  // csv | json
};

// Each command returns a process exit code (0 ok, 1 I/O, 2 usage, 3 model
// degeneracy) and reports through the given streams.
int cmd_mine(const MineOptions& opts, std::ostream& out, std::ostream& err);
int cmd_learn(const LearnOptions& opts, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace itemsynth
