#include <doctest.h>

#include "msim/decision.hpp"

using namespace msim;

TEST_CASE("feasibility checks") {
  Decision d;
  d.resize(2, 3);
  std::string why;
  CHECK(check_feasible(d, 3, &why));

  SUBCASE("compute shares must sum to at most 1") {
    d.f = {0.7, 0.7};
    CHECK_FALSE(check_feasible(d, 3, &why));
  }
  SUBCASE("compute share range") {
    d.f[0] = -0.1;
    CHECK_FALSE(check_feasible(d, 3));
    d.f[0] = 1.1;
    CHECK_FALSE(check_feasible(d, 3));
  }
  SUBCASE("subchannel exclusivity") {
    d.z[0][1] = 1;
    d.z[1][1] = 1;
    CHECK_FALSE(check_feasible(d, 3, &why));
  }
  SUBCASE("binary variables") {
    d.y[0] = 2;
    CHECK_FALSE(check_feasible(d, 3));
  }
  SUBCASE("negative migration") {
    d.m[0] = -1;
    CHECK_FALSE(check_feasible(d, 3));
  }
}

TEST_CASE("migration bound m <= max(0, theta - mu)") {
  std::string why;
  CHECK(check_migration_bound({3}, {5}, {2}, &why));
  CHECK_FALSE(check_migration_bound({4}, {5}, {2}, &why));
  CHECK(check_migration_bound({0}, {1}, {5}, &why));  // theta < mu forces 0
  CHECK_FALSE(check_migration_bound({1}, {1}, {5}, &why));
}
