#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tad/netgen/netgen.h"

namespace tad {

// Network families each seed is expanded into.
enum class VerifyVariant { kMixed, kClosure, kDense, kZeroBuffer };

std::string_view to_string(VerifyVariant);

// Generator recipe of one grid point.
GenParams verify_params(std::uint64_t seed, VerifyVariant variant);

struct VerifyOptions {
  std::uint64_t first_seed{1};
  std::size_t seed_count{100};
  std::size_t queries{12};
  // Runs TAD with the test-only pruning fault; the battery should fail.
  bool inject_fault{false};
};

struct PropertyFailure {
  std::string property;
  std::string detail;
};

// Runs every property on one network. Returns the first failure.
std::optional<PropertyFailure> check_network(GenParams const& params,
                                             std::size_t queries,
                                             bool inject_fault);

struct VerifyFailure {
  std::uint64_t seed;
  VerifyVariant variant;
  PropertyFailure failure;
  GenParams minimized;  // smallest params found that still fail
};

struct VerifyReport {
  std::size_t networks{0};
  std::vector<VerifyFailure> failures;
  bool passed() const { return failures.empty(); }
};

// Greedily shrinks counts while check_network keeps failing on the same
// property.
GenParams shrink(GenParams params, std::string const& property,
                 std::size_t queries, bool inject_fault);

VerifyReport run_verify(
    VerifyOptions const& options,
    std::function<void(std::uint64_t seed)> const& on_seed = {});

}  // namespace tad
