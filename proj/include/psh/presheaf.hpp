#ifndef PSH_PRESHEAF_HPP
#define PSH_PRESHEAF_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "psh/fincat.hpp"
#include "psh/types.hpp"

namespace psh {

/// A finite-set-valued contravariant functor on a finite base category.
/// carrier(c) is {0, …, card[c]-1}; action[m] sends carrier(dst m) to
/// carrier(src m).
struct Presheaf {
  BasePtr base;
  std::vector<std::uint32_t> card;
  std::vector<std::vector<Elem>> action;
  std::vector<std::vector<std::string>> elem_names;  // optional

  Elem act(MorId m, Elem x) const { return action[m][x]; }
  std::string elem_name(ObjId c, Elem x) const;
  std::vector<std::string> validate() const;  // empty iff functorial
  bool operator==(const Presheaf& o) const {
    return same_base(base, o.base) && card == o.card && action == o.action;
  }
};

bool same_base(const Presheaf& a, const Presheaf& b);

/// Natural transformation between presheaves on a shared base.
struct PresheafMorphism {
  Presheaf src;
  Presheaf dst;
  std::vector<std::vector<Elem>> comp;  // per object, size src.card[c]

  Elem operator()(ObjId c, Elem x) const { return comp[c][x]; }
  std::vector<std::string> validate() const;  // empty iff natural
  bool operator==(const PresheafMorphism& o) const {
    return src == o.src && dst == o.dst && comp == o.comp;
  }
};

PresheafMorphism identity_morphism(const Presheaf& p);
PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f);

/// An object of the slice over proj.dst.
struct SliceObject {
  Presheaf total;
  PresheafMorphism proj;
  std::vector<std::string> validate() const;
  bool operator==(const SliceObject& o) const {
    return total == o.total && proj == o.proj;
  }
};

SliceObject identity_slice(const Presheaf& a);
SliceObject as_slice(const PresheafMorphism& proj);

/// A morphism of slices: proj_dst ∘ map = proj_src.
struct SliceMorphism {
  SliceObject src;
  SliceObject dst;
  PresheafMorphism map;
  std::vector<std::string> validate() const;
  bool operator==(const SliceMorphism& o) const {
    return src == o.src && dst == o.dst && map == o.map;
  }
};

SliceMorphism compose(const SliceMorphism& g, const SliceMorphism& f);

/// Restriction-closed family of subsets of a presheaf's carriers; the
/// skeletal representation of a subobject.
struct SubPresheaf {
  Presheaf ambient;
  std::vector<std::vector<bool>> selected;

  bool contains(ObjId c, Elem x) const { return selected[c][x]; }
  std::vector<std::string> validate() const;  // empty iff restriction-closed
  bool operator==(const SubPresheaf& o) const {
    return ambient == o.ambient && selected == o.selected;
  }
};

// --- limits -----------------------------------------------------------------

struct TerminalData {
  Presheaf object;
};

TerminalData terminal(const BasePtr& base);
PresheafMorphism bang(const Presheaf& a);  // unique map A → 1

/// Pullback of a cospan f : X → Z ← Y : g. Carrier at c is the list of pairs
/// (x, y) with f(x) = g(y) in lexicographic order.
struct PullbackData {
  Presheaf object;
  PresheafMorphism p1;  // → dom f
  PresheafMorphism p2;  // → dom g
  PresheafMorphism f;
  PresheafMorphism g;
  std::vector<std::map<std::pair<Elem, Elem>, Elem>> index;

  Elem pair_index(ObjId c, Elem x, Elem y) const;
  /// Unique filler for a cone (u, v); throws ConeError when f∘u ≠ g∘v.
  PresheafMorphism mediate(const PresheafMorphism& u,
                           const PresheafMorphism& v) const;
};

PullbackData pullback(const PresheafMorphism& f, const PresheafMorphism& g);

/// Binary product, computed as the pullback over the terminal object.
struct ProductData {
  Presheaf object;
  PresheafMorphism p1;
  PresheafMorphism p2;
  PullbackData pb;

  Elem pair_index(ObjId c, Elem x, Elem y) const {
    return pb.pair_index(c, x, y);
  }
  PresheafMorphism mediate(const PresheafMorphism& u,
                           const PresheafMorphism& v) const {
    return pb.mediate(u, v);
  }
};

ProductData product(const Presheaf& x, const Presheaf& y);

// --- hom-sets ---------------------------------------------------------------

/// Complete duplicate-free enumeration of natural transformations F → G in
/// lexicographic order of flattened component tuples.
std::vector<PresheafMorphism> hom_set(const Presheaf& f, const Presheaf& g,
                                      std::uint64_t budget = kDefaultBudget);

/// hom_set restricted by prescribed component values (c, x, required image).
std::vector<PresheafMorphism> hom_set_pinned(
    const Presheaf& f, const Presheaf& g,
    const std::vector<std::tuple<ObjId, Elem, Elem>>& pins,
    std::uint64_t budget = kDefaultBudget, std::size_t max_results = 0);

std::vector<SliceMorphism> hom_set_slice(const SliceObject& x,
                                         const SliceObject& y,
                                         std::uint64_t budget = kDefaultBudget);

struct MorphismPredicates {
  bool is_iso = false;
  bool is_mono = false;
  bool dst_is_terminal = false;
};

/// is_mono is decided both via the diagonal A → A×_B A being an iso and via
/// componentwise injectivity; disagreement raises BackendError.
MorphismPredicates morphism_predicates(const PresheafMorphism& f);

bool presheaf_is_terminal(const Presheaf& p);

/// Componentwise inverse of an isomorphism; BackendError when not bijective.
PresheafMorphism invert(const PresheafMorphism& f);

// --- exponentials -----------------------------------------------------------

Presheaf yoneda(const BasePtr& base, ObjId c);

/// F^G with carrier at c the natural transformations y(c)×G → F; action by
/// precomposition, eval and transpose satisfying the exponential laws.
struct ExponentialData {
  Presheaf object;  // F^G
  Presheaf domain;  // G
  Presheaf codomain;  // F
  ProductData eval_product;  // (F^G) × G
  PresheafMorphism eval;
  std::vector<ProductData> yc_product;                  // y(c) × G per object
  std::vector<std::vector<PresheafMorphism>> elements;  // carrier decode
};

ExponentialData exponential(const Presheaf& g, const Presheaf& f,
                            std::uint64_t budget = kDefaultBudget);

/// Transpose of h : H×G → F against the product data for H×G.
PresheafMorphism exp_transpose(const ExponentialData& e, const ProductData& hg,
                               const PresheafMorphism& h);

// --- subobject classifier ---------------------------------------------------

/// The sieve presheaf with its true and false points. Carrier at c enumerates
/// the restriction-closed sets of morphisms into c, as bitmasks over
/// morphisms_into(c) in ascending mask order (so the empty sieve is index 0).
struct OmegaStructure {
  Presheaf omega;
  PresheafMorphism tt;
  PresheafMorphism ff;
  std::vector<std::vector<MorId>> into;
  std::vector<std::vector<std::uint64_t>> sieves;

  Elem sieve_index(ObjId c, std::uint64_t mask) const;
  Elem top_index(ObjId c) const;
};

OmegaStructure omega(const BasePtr& base);

PresheafMorphism classify(const OmegaStructure& om, const SubPresheaf& m);
SubPresheaf unclassify(const OmegaStructure& om, const PresheafMorphism& chi);

// --- the adjoint triple on slices --------------------------------------------

/// f* : slice over A → slice over B for f : B → A.
SliceObject pullback_functor(const PresheafMorphism& f, const SliceObject& y);
/// f_! : postcomposition.
SliceObject postcompose(const PresheafMorphism& f, const SliceObject& x);
/// f_* : dependent product, via the pointwise right Kan extension formula.
SliceObject pushforward(const PresheafMorphism& f, const SliceObject& x,
                        std::uint64_t budget = kDefaultBudget);

SliceMorphism pullback_map(const PresheafMorphism& f, const SliceMorphism& m);
SliceMorphism postcompose_map(const PresheafMorphism& f, const SliceMorphism& m);
SliceMorphism pushforward_map(const PresheafMorphism& f, const SliceMorphism& m,
                              std::uint64_t budget = kDefaultBudget);

// Canonical structure maps of the adjunctions, built from mediators and the
// dependent-product layout (never by search).
SliceMorphism shriek_unit(const PresheafMorphism& f, const SliceObject& x);
SliceMorphism shriek_counit(const PresheafMorphism& f, const SliceObject& y);
SliceMorphism star_unit_against(const PresheafMorphism& f, const SliceObject& y,
                                const SliceObject& built,
                                std::uint64_t budget = kDefaultBudget);
SliceMorphism star_counit_against(const PresheafMorphism& f,
                                  const SliceObject& x,
                                  const SliceObject& built,
                                  std::uint64_t budget = kDefaultBudget);
SliceMorphism star_unit(const PresheafMorphism& f, const SliceObject& y,
                        std::uint64_t budget = kDefaultBudget);
SliceMorphism star_counit(const PresheafMorphism& f, const SliceObject& x,
                          std::uint64_t budget = kDefaultBudget);

}  // namespace psh

#endif
