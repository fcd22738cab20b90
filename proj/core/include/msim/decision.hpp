#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace msim {

/// One slot's control action for a single MIS; indices are local TU
/// positions under that MIS.
struct Decision {
  std::vector<std::uint8_t> y;                  // offload bits
  std::vector<std::vector<std::uint8_t>> z;     // [tu][subchannel] bits
  std::vector<double> f;                        // compute shares
  std::vector<std::int64_t> m;                  // migrated tasks

  void resize(int num_tus, int num_subchannels);
  int num_tus() const { return static_cast<int>(y.size()); }
};

/// Checks C3-C7: z column-exclusive, f in [0,1] with sum <= 1, y/z binary.
/// C11 depends on theta/mu and is checked by check_migration_bound.
bool check_feasible(const Decision& d, int num_subchannels,
                    std::string* why = nullptr);

bool check_migration_bound(const std::vector<std::int64_t>& m,
                           const std::vector<std::int64_t>& theta,
                           const std::vector<std::int64_t>& mu,
                           std::string* why = nullptr);

}  // namespace msim
