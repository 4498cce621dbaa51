#ifndef PSH_FINCAT_HPP
#define PSH_FINCAT_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "psh/types.hpp"

namespace psh {

struct Presheaf;

/// A finite category given by explicit composition tables. Objects and
/// morphisms carry dense integer ids; the table stores g∘f at
/// [g * num_morphisms + f] and kNoMor for non-composable pairs.
struct FinCategory {
  std::uint32_t num_objects = 0;
  std::vector<ObjId> mor_src;
  std::vector<ObjId> mor_dst;
  std::vector<MorId> identity;  // per object
  std::vector<MorId> table;
  std::vector<std::string> object_names;  // optional presentation data
  std::vector<std::string> mor_names;

  std::uint32_t num_morphisms() const {
    return static_cast<std::uint32_t>(mor_src.size());
  }
  bool composable(MorId g, MorId f) const { return mor_dst[f] == mor_src[g]; }
  MorId compose(MorId g, MorId f) const {
    return table[static_cast<std::size_t>(g) * num_morphisms() + f];
  }
  bool is_identity(MorId m) const { return identity[mor_src[m]] == m; }
  std::vector<MorId> morphisms_into(ObjId c) const;
  std::vector<MorId> morphisms_from(ObjId c) const;
  std::string object_name(ObjId c) const;
  std::string mor_name(MorId m) const;

  // Structural equality; presentation names are ignored.
  bool operator==(const FinCategory& o) const {
    return num_objects == o.num_objects && mor_src == o.mor_src &&
           mor_dst == o.mor_dst && identity == o.identity && table == o.table;
  }
};

using BasePtr = std::shared_ptr<const FinCategory>;

inline bool same_base(const BasePtr& a, const BasePtr& b) {
  return a == b || (a && b && *a == *b);
}

struct Violation {
  std::string code;
  std::string detail;
  std::vector<MorId> involved;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// Checks every category axiom. Violations are data, not errors; an empty
/// report means the tables present a category.
ValidationReport validate_category(const FinCategory& c);

struct FinFunctor {
  BasePtr source;
  BasePtr target;
  std::vector<ObjId> obj_map;
  std::vector<MorId> mor_map;
};

ValidationReport validate_functor(const FinFunctor& f);

/// Incremental construction helper. Objects get their identity morphism on
/// creation; identity composites are filled automatically.
struct CategoryBuilder {
  ObjId add_object(std::string name);
  MorId add_morphism(std::string name, ObjId src, ObjId dst);
  void set_compose(MorId g, MorId f, MorId gf);
  // Finishes the table (identity composites) and freezes the value. Does not
  // validate; run validate_category on the result where that matters.
  BasePtr build();

 private:
  FinCategory cat_;
  std::vector<std::tuple<MorId, MorId, MorId>> composes_;
};

BasePtr terminal_category();
BasePtr arrow_category();  // objects a, b; one morphism f : a -> b
BasePtr graph_category();  // objects V, E; morphisms s, t : V -> E

/// The category of elements of a presheaf: objects are pairs (c, x ∈ P(c)),
/// morphisms (c,x) → (c',x') correspond to base morphisms φ: c → c' with
/// x = x'·φ; comes with the projection functor to the base.
struct ElementsData {
  BasePtr category;
  FinFunctor projection;
  // object k of `category` is the pair (object_elem[k])
  std::vector<std::pair<ObjId, Elem>> object_elems;
  // non-identity bookkeeping: morphism k corresponds to (mor_of[k], elem_at_dst[k])
  std::vector<std::pair<MorId, Elem>> mor_elems;
};

ElementsData category_of_elements(const Presheaf& p);

}  // namespace psh

#endif
