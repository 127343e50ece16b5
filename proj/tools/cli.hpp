#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadspect/aspects.hpp"

namespace quadspect::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerifyFailed = 3;

struct RunConfig {
  std::string mechanism = "m1";
  std::vector<double> lengths;
  Space space = Space::JointSpace;
  int depth = 6;
  std::vector<int> depths;
  std::string working_mode;
  std::string assembly_mode;
  std::string out;
  std::string format = "qt";
  std::string refine_from;
  std::vector<double> box;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::uint64_t samples = 10000;
};

/// Resolves --mechanism / --lengths. Throws UsageError.
FiveBarGeometry resolve_geometry(const RunConfig& cfg);
/// Both mode flags or neither. Throws UsageError.
std::optional<ModeCombo> resolve_combo(const RunConfig& cfg);

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int cmd_space(const RunConfig& cfg, std::ostream& out);
int cmd_aspects(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, std::ostream& out);
int cmd_render(const std::string& input, const RunConfig& cfg, bool show_undetermined, bool labels,
               bool complement);
int cmd_verify(const RunConfig& cfg, std::ostream& out);

/// Parses arguments (without the program name) and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quadspect::cli
