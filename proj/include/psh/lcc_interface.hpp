#ifndef PSH_LCC_INTERFACE_HPP
#define PSH_LCC_INTERFACE_HPP

#include <functional>

#include "psh/presheaf.hpp"
#include "psh/sublattice.hpp"

namespace psh {

/// Replaceable primitive operations of a presheaf-topos backend. Verification
/// code swaps entries to model corrupted backends; the default wiring is the
/// presheaf module.
struct Backend {
  std::uint64_t budget = kDefaultBudget;
  std::function<SliceObject(const PresheafMorphism&, const SliceObject&,
                            std::uint64_t)>
      pushforward;
  std::function<std::vector<PresheafMorphism>(const Presheaf&, const Presheaf&,
                                              std::uint64_t)>
      hom_set;
  Backend();
};

/// The hypothesis-level capability surface: finite limits, exponentials, the
/// subobject classifier, the adjoint triple on slices and the Sub(-)
/// operations. It deliberately contains nothing that builds coproducts,
/// initial objects or any other colimit; the derived layer works against this
/// interface alone.
struct LccContext {
  std::uint64_t budget = kDefaultBudget;

  std::function<TerminalData(const BasePtr&)> terminal;
  std::function<PresheafMorphism(const Presheaf&)> bang;
  std::function<PullbackData(const PresheafMorphism&, const PresheafMorphism&)>
      pullback;
  std::function<ProductData(const Presheaf&, const Presheaf&)> product;
  std::function<ExponentialData(const Presheaf&, const Presheaf&)> exponential;
  std::function<PresheafMorphism(const ExponentialData&, const ProductData&,
                                 const PresheafMorphism&)>
      exp_transpose;
  std::function<OmegaStructure(const BasePtr&)> omega;
  std::function<PresheafMorphism(const OmegaStructure&, const SubPresheaf&)>
      classify;
  std::function<SubPresheaf(const OmegaStructure&, const PresheafMorphism&)>
      unclassify;
  std::function<std::vector<PresheafMorphism>(const Presheaf&, const Presheaf&)>
      hom_set;
  std::function<std::vector<PresheafMorphism>(
      const Presheaf&, const Presheaf&,
      const std::vector<std::tuple<ObjId, Elem, Elem>>&, std::size_t)>
      hom_set_pinned;
  std::function<std::vector<SliceMorphism>(const SliceObject&,
                                           const SliceObject&)>
      hom_set_slice;
  std::function<MorphismPredicates(const PresheafMorphism&)> predicates;
  std::function<PresheafMorphism(const PresheafMorphism&)> invert;

  std::function<SliceObject(const PresheafMorphism&, const SliceObject&)>
      pullback_functor, postcompose, pushforward;
  std::function<SliceMorphism(const PresheafMorphism&, const SliceMorphism&)>
      pullback_map, postcompose_map, pushforward_map;
  std::function<SliceMorphism(const PresheafMorphism&, const SliceObject&)>
      shriek_unit, shriek_counit, star_unit, star_counit;

  std::function<bool(const SubPresheaf&, const SubPresheaf&)> sub_leq;
  std::function<SubPresheaf(const SubPresheaf&, const SubPresheaf&)> sub_meet,
      sub_implies;
  std::function<SubPresheaf(const Presheaf&)> sub_top;
  std::function<SubPresheaf(const PresheafMorphism&, const SubPresheaf&)>
      sub_forall, sub_pullback;
  std::function<SubPresheaf(const PresheafMorphism&)> mono_image;
  std::function<SubDomain(const SubPresheaf&)> sub_domain;
};

/// Exposes exactly the hypothesis-level operations of a backend.
LccContext restrict_backend(const Backend& backend);
LccContext restrict_backend(std::uint64_t budget = kDefaultBudget);

// --- canonical constructions over the interface -------------------------------

struct SliceIso {
  SliceMorphism forward;
  SliceMorphism backward;
};

bool slice_morphism_is_iso(const SliceMorphism& m);

/// Canonical iso w*(f* y) ≅ (f∘w)* y for w : P → B, f : B → A, built from
/// pullback mediators in both directions.
SliceIso compose_pullback_iso(const LccContext& ctx, const PresheafMorphism& w,
                              const PresheafMorphism& f, const SliceObject& y);

/// Transpose of m : f* y → x under f* ⊣ f_*, namely f_*(m) ∘ unit.
SliceMorphism star_transpose(const LccContext& ctx, const PresheafMorphism& f,
                             const SliceObject& y, const SliceMorphism& m);

/// Left Beck-Chevalley comparison h_!(k* x) → f*(g_! x) for the pullback
/// square on the cospan f : A → C ← B : g, with x a slice over B.
SliceMorphism bc_left(const LccContext& ctx, const PresheafMorphism& f,
                      const PresheafMorphism& g, const SliceObject& x);

/// Right Beck-Chevalley comparison (the mate) f*(g_* x) → h_*(k* x).
SliceMorphism bc_right(const LccContext& ctx, const PresheafMorphism& f,
                       const PresheafMorphism& g, const SliceObject& x);

/// Exponential h^g in the slice over A, computed as g_*(g* h).
SliceObject slice_exponential(const LccContext& ctx, const SliceObject& g,
                              const SliceObject& h);

/// Canonical comparison f*(h^g) → (f* h)^(f* g) over B for f : B → A.
SliceMorphism exp_pullback_comparison(const LccContext& ctx,
                                      const PresheafMorphism& f,
                                      const SliceObject& g,
                                      const SliceObject& h);

}  // namespace psh

#endif
