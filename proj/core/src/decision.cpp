#include "msim/decision.hpp"

#include <algorithm>

namespace msim {

void Decision::resize(int num_tus, int num_subchannels) {
  y.assign(num_tus, 0);
  z.assign(num_tus, std::vector<std::uint8_t>(num_subchannels, 0));
  f.assign(num_tus, 0.0);
  m.assign(num_tus, 0);
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool check_feasible(const Decision& d, int num_subchannels, std::string* why) {
  const int m_k = d.num_tus();
  if (static_cast<int>(d.z.size()) != m_k ||
      static_cast<int>(d.f.size()) != m_k ||
      static_cast<int>(d.m.size()) != m_k)
    return fail(why, "inconsistent decision vector sizes");
  double f_sum = 0.0;
  for (int i = 0; i < m_k; ++i) {
    if (d.y[i] > 1) return fail(why, "y not binary (C5)");
    if (d.f[i] < 0.0 || d.f[i] > 1.0) return fail(why, "f out of [0,1] (C4)");
    if (d.m[i] < 0) return fail(why, "negative migration count");
    if (static_cast<int>(d.z[i].size()) != num_subchannels)
      return fail(why, "z row size mismatch");
    f_sum += d.f[i];
  }
  if (f_sum > 1.0 + 1e-9) return fail(why, "sum of f exceeds 1 (C3)");
  for (int n = 0; n < num_subchannels; ++n) {
    int users = 0;
    for (int i = 0; i < m_k; ++i) {
      if (d.z[i][n] > 1) return fail(why, "z not binary (C7)");
      users += d.z[i][n];
    }
    if (users > 1) return fail(why, "subchannel shared by multiple TUs (C6)");
  }
  return true;
}

bool check_migration_bound(const std::vector<std::int64_t>& m,
                           const std::vector<std::int64_t>& theta,
                           const std::vector<std::int64_t>& mu,
                           std::string* why) {
  for (size_t i = 0; i < m.size(); ++i) {
    const std::int64_t cap = std::max<std::int64_t>(0, theta[i] - mu[i]);
    if (m[i] < 0 || m[i] > cap)
      return fail(why, "migration count outside [0, theta-mu] (C11)");
  }
  return true;
}

}  // namespace msim
