#ifndef PSH_WORKSPACE_HPP
#define PSH_WORKSPACE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psh/presheaf.hpp"

namespace psh {

struct WorkspaceConfig {
  std::uint64_t seed = 0;
  std::uint32_t max_objects = 2;
  std::uint32_t max_morphisms = 6;
  std::uint32_t max_carrier = 3;
  std::uint64_t budget = kDefaultBudget;
  std::uint32_t instances = 200;
  bool operator==(const WorkspaceConfig&) const = default;
};

/// Named declarations loaded from the line-oriented workspace format.
/// Everything is fully validated at load time; a workspace value never holds
/// a broken category, presheaf, morphism or subobject.
struct Workspace {
  struct PresheafDecl {
    std::string name;
    std::string base;
    Presheaf value;
  };
  struct MorphismDecl {
    std::string name;
    std::string src;
    std::string dst;
    PresheafMorphism value;
  };
  struct SubDecl {
    std::string name;
    std::string ambient;
    SubPresheaf value;
  };

  std::vector<std::pair<std::string, BasePtr>> bases;
  std::vector<PresheafDecl> presheaves;
  std::vector<MorphismDecl> morphisms;
  std::vector<SubDecl> subs;
  WorkspaceConfig config;

  const BasePtr* find_base(const std::string& name) const;
  const PresheafDecl* find_presheaf(const std::string& name) const;
  const MorphismDecl* find_morphism(const std::string& name) const;
  const SubDecl* find_sub(const std::string& name) const;

  bool operator==(const Workspace& o) const;  // structural, names included
};

struct ParseError {
  std::uint32_t line = 0;
  std::uint32_t col = 0;
  std::string message;
};

struct ParseResult {
  std::optional<Workspace> workspace;  // set iff errors is empty
  std::vector<ParseError> errors;
};

ParseResult parse_workspace(std::string_view text);

std::string print_workspace(const Workspace& ws);
std::string print_base_decl(const std::string& name, const FinCategory& c);
std::string print_presheaf_decl(const std::string& name,
                                const std::string& base_name,
                                const Presheaf& p);
std::string print_morphism_decl(const std::string& name, const std::string& src,
                                const std::string& dst,
                                const PresheafMorphism& m);
std::string print_sub_decl(const std::string& name, const std::string& ambient,
                           const SubPresheaf& s);

}  // namespace psh

#endif
