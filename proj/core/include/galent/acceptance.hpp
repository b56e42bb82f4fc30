#pragma once

// The acceptance matrix: numbered criteria with fixed runtime budgets, shared
// by the `verify-paper` subcommand and the acceptance test binary.

#include <functional>
#include <string>
#include <vector>

#include "galent/entangle.hpp"

namespace galent {

struct CriterionResult {
  std::string id;    // "1" .. "8", or "4s-7" style ids for stretch targets
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;  // 0: unbounded
  std::string detail;
};

struct AcceptanceOptions {
  bool stretch = false;
  std::uint64_t seed = 20240601;
  SubgroupEnumerator enumerate;  // empty: enumerate_subgroups without a cache
};

// Runs every criterion in order, calling `on_result` as each finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS 2  Ent set, surjective (2,q) ... 0.41s (budget 1s)  detail"
std::string format_result(const CriterionResult& r);

struct NamedContext {
  std::string name;
  EntContext context;
};

// S3 x_{Z/2} S3 realized mod 10 from GL2(2) and <σ', τ'> mod 5.
EntContext s3_fiber_s3_context();

// Contexts covering both branches of the cyclic witness construction.
std::vector<NamedContext> fixture_contexts();

// The catalog plus small abelian groups, for pairwise oracle checks.
std::vector<std::pair<std::string, GroupPtr>> small_test_groups();

}  // namespace galent
