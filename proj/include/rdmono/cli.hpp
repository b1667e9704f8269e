#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rdmono/compare.hpp"
#include "rdmono/scenario.hpp"
#include "rdmono/stepper.hpp"

namespace rdmono {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitBlowup = 2,
  kExitOrdering = 3,
  kExitAssumption = 4,
  kExitSolver = 5,
};

int exit_code(RunStatus status);

struct CsvMeta {
  std::string scenario;
  std::string origin;
  int components = 1;
  /// Emit Sample::extra[0..1] in the y and z columns.
  bool yz = false;
};

/// Header comments, then `t,dt,supnorm_k1..,y,z,status`, one row per sample,
/// then `# status=<status> T_b=<estimate or none>`.
void write_csv(const Trajectory& traj, std::ostream& os, const CsvMeta& meta);
/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const Trajectory& traj, const std::string& path, const CsvMeta& meta);

/// key = value text.
std::string format_report(const ComparisonReport& rep, const std::string& name);

/// Each command prints key = value lines to `out`, writes its files under
/// `out_dir` (created when missing) and returns an ExitCode.
int cmd_run(const Scenario& s, const std::string& out_dir, std::ostream& out);
int cmd_compare(const Scenario& s, const std::string& out_dir, std::ostream& out);
int cmd_eigen(const Scenario& s, const std::string& out_dir, std::ostream& out);
int cmd_bound(const Scenario& s, const std::string& out_dir, std::ostream& out);

}  // namespace rdmono
