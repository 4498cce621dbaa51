#ifndef PSH_DERIVED_HPP
#define PSH_DERIVED_HPP

#include "psh/lcc_interface.hpp"

namespace psh {

// Constructions available in any locally cartesian closed category with a
// subobject classifier, performed here exclusively through LccContext: no
// native colimit of the presheaf backend is ever touched.

/// An explicit isomorphism pair; both composites are identities on the nose.
struct IsoWitness {
  PresheafMorphism forward;
  PresheafMorphism backward;
};

/// Validates the composite identities; BackendError when they fail.
IsoWitness make_iso_witness(PresheafMorphism forward, PresheafMorphism backward);

/// The subterminal measuring contractibility of the slice x, computed as the
/// image of p_!(π_* δ) for the fiberwise diagonal δ and first projection π.
SubPresheaf is_contr_over(const LccContext& ctx, const SliceObject& x);

/// isContr(A) as a subobject of the terminal object.
SubPresheaf is_contr(const LccContext& ctx, const Presheaf& a);

/// Least subobject of A: ∀_{π₁} π₂* tt over A×Ω.
SubPresheaf bottom_subobject(const LccContext& ctx, const Presheaf& a);

/// Least upper bound in Sub(A):
/// ∀_{π₁}((π₁*U ⇒ π₂*tt) ∧ (π₁*V ⇒ π₂*tt) ⇒ π₂*tt).
SubPresheaf join_subobjects(const LccContext& ctx, const SubPresheaf& u,
                            const SubPresheaf& v);

/// The strict initial object, as the domain of the least subobject of 1.
struct InitialData {
  Presheaf object;
  SubPresheaf subterminal;  // the least subobject of 1 it came from
};
InitialData initial_object(const LccContext& ctx, const BasePtr& base);

/// The unique morphism 0 → A, certified by exhaustive hom-set scan.
PresheafMorphism initial_to(const LccContext& ctx, const InitialData& zero,
                            const Presheaf& a);

/// Ā = domain of tt_*(A → 1), with disjoint embeddings of A and 1.
struct PartialMapClassifier {
  Presheaf object;               // Ā
  PresheafMorphism classifier;   // ā : Ā → Ω
  PresheafMorphism eta;          // A ↣ Ā
  PresheafMorphism point;        // 1 ↣ Ā
  Presheaf disjointness_pullback;
  IsoWitness disjointness;       // pullback of (eta, point) ≅ 0
};
PartialMapClassifier partial_map_classifier(const LccContext& ctx,
                                            const Presheaf& a);

/// A + B carved out of Sub(Ā×B̄) as the join of the two disjoint embeddings.
struct CoproductData {
  Presheaf object;  // C
  PresheafMorphism inj_left;
  PresheafMorphism inj_right;
  Presheaf disjointness_pullback;
  IsoWitness disjointness;  // pullback of the injections ≅ 0
  Presheaf pmc_left;        // Ā
  Presheaf pmc_right;       // B̄
  Presheaf ambient;         // Ā × B̄
  PresheafMorphism embed_left;   // A ↣ Ā×B̄
  PresheafMorphism embed_right;  // B ↣ Ā×B̄
  SubPresheaf sub_left, sub_right, sub_join;
};
CoproductData binary_coproduct(const LccContext& ctx, const Presheaf& a,
                               const Presheaf& b);

/// The unique h : C → X with h∘i = f and h∘j = g, certified by exhaustive
/// scan; CopairError carries the number of candidates when it is not one.
PresheafMorphism copair(const LccContext& ctx, const CoproductData& data,
                        const PresheafMorphism& f, const PresheafMorphism& g);

/// Left fold of binary coproducts; the empty family yields the initial object.
struct FiniteCoproductData {
  Presheaf object;
  std::vector<PresheafMorphism> injections;
  std::vector<CoproductData> steps;
};
FiniteCoproductData finite_coproduct(const LccContext& ctx, const BasePtr& base,
                                     const std::vector<Presheaf>& parts);

}  // namespace psh

#endif
