#ifndef PSH_VERIFY_HPP
#define PSH_VERIFY_HPP

#include <string>
#include <vector>

#include "psh/derived.hpp"
#include "psh/lcc_interface.hpp"

namespace psh {

/// A base category together with a pool of named presheaves on it; the unit of
/// work every check runs on.
struct Instance {
  std::string descriptor;
  BasePtr base;
  std::vector<std::pair<std::string, Presheaf>> objects;
};

enum class Verdict { pass, fail, budget_exceeded };

std::string verdict_name(Verdict v);

struct CheckResult {
  std::string check_id;
  std::string instance;
  Verdict verdict = Verdict::pass;
  std::uint32_t configurations = 0;  // non-vacuous configurations exercised
  std::string witness;               // replayable description, set on fail
  double millis = 0.0;               // informational; never serialized
};

struct CheckOptions {
  LccContext ctx;
  std::uint32_t max_configs = 4;  // cap on drawn configurations per family
};

struct Bounds {
  std::uint32_t max_objects = 2;
  std::uint32_t max_morphisms = 6;
  std::uint32_t max_carrier = 3;
};

struct InstanceGenerator {
  std::uint64_t seed = 0;
  Bounds bounds;
  std::uint32_t count = 200;
};

/// Check ids in catalog order.
const std::vector<std::string>& check_catalog();
bool check_exists(const std::string& id);
std::string check_description(const std::string& id);

std::vector<Instance> curated_instances();

/// Deterministic stream: identical seed and bounds give identical instances.
std::vector<Instance> generate_instances(const InstanceGenerator& gen);

/// One result per instance; throws Error on unknown check ids.
std::vector<CheckResult> run_check(const std::string& check_id,
                                   const std::vector<Instance>& instances,
                                   const CheckOptions& opts);

// --- native colimit oracle ----------------------------------------------------
// Ground truth for coproducts: the pointwise tagged union. This is the only
// place in the artifact where a colimit is built natively; the derived module
// never touches it.

struct NativeCoproduct {
  Presheaf object;
  PresheafMorphism inj_left;
  PresheafMorphism inj_right;
};

NativeCoproduct native_coproduct_oracle(const Presheaf& a, const Presheaf& b);

/// Case analysis along the tagged union.
PresheafMorphism native_copair(const NativeCoproduct& n,
                               const PresheafMorphism& f,
                               const PresheafMorphism& g);

// --- negative controls ---------------------------------------------------------

/// A backend whose dependent product drops elements; the law suite must catch it.
Backend corrupted_pushforward_backend(std::uint64_t budget = kDefaultBudget);

/// A backend whose hom-set enumeration emits a non-natural transformation.
Backend corrupted_hom_backend(std::uint64_t budget = kDefaultBudget);

}  // namespace psh

#endif
