/* Copyright 2026 The Nevo Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <doctest.h>

#include "properties.h"

namespace nevo::testing {
namespace {

void require_ok(const PropertyOutcome& outcome) {
  INFO(outcome.name, ": ", outcome.first_failure);
  CHECK(outcome.failures == 0);
  CHECK(outcome.cases > 0);
}

TEST_CASE("oracle sanity") {
  CHECK(brute_force_distance({0, 10}, {3}, {5, 9}) == textscan::Coverage{5, {0, 5}});
  CHECK_FALSE(brute_force_distance({}, {1}, {2}).has_value());
  CHECK(oracle_percent(5, 7) == "71.4%");
  CHECK(oracle_percent(1, 8) == "12.5%");
  CHECK(oracle_percent(0, 0) == "n/a");
}

TEST_CASE("distance suites") {
  require_ok(check_distance_oracle(7, 300));
  require_ok(check_distance_zero(7, 100));
}

TEST_CASE("invariant suites") {
  for (const auto& outcome : run_invariant_suites(11, 200)) require_ok(outcome);
}

}  // namespace
}  // namespace nevo::testing
