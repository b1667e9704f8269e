#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "rdmono/cli.hpp"

namespace rdmono {

namespace {

void put(std::ostream& os, double v) {
  if (std::isnan(v)) return;
  os << v;
}

}  // namespace

void write_csv(const Trajectory& traj, std::ostream& os, const CsvMeta& meta) {
  const auto old = os.precision(15);
  os << "# rdmono " << kVersion << "\n";
  os << "# scenario=" << meta.scenario;
  if (!meta.origin.empty()) os << " preset=" << meta.origin;
  os << "\n";
  os << "t,dt";
  for (int k = 1; k <= meta.components; ++k) os << ",supnorm_k" << k;
  os << ",y,z,status\n";
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& s = traj.samples[i];
    os << s.t << "," << s.dt;
    for (int k = 0; k < meta.components; ++k) {
      os << ",";
      if (k < static_cast<int>(s.sup.size())) put(os, s.sup[k]);
    }
    os << ",";
    if (meta.yz && s.extra.size() >= 1) put(os, s.extra[0]);
    os << ",";
    if (meta.yz && s.extra.size() >= 2) put(os, s.extra[1]);
    const bool last = i + 1 == traj.samples.size();
    os << "," << (last ? to_string(traj.status) : "running") << "\n";
  }
  os << "# status=" << to_string(traj.status) << " T_b=";
  if (std::isfinite(traj.t_b)) {
    os << traj.t_b;
  } else {
    os << "none";
  }
  os << "\n";
  os.precision(old);
}

void write_csv(const Trajectory& traj, const std::string& path, const CsvMeta& meta) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(traj, f, meta);
  f.flush();
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace rdmono
