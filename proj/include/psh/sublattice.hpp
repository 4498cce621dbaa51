#ifndef PSH_SUBLATTICE_HPP
#define PSH_SUBLATTICE_HPP

#include "psh/presheaf.hpp"

namespace psh {

// Sub(A) as a Heyting semilattice in the skeletal representation: subobjects
// are restriction-closed element selections, so order, meet and top are
// pointwise, and implication and universal quantification follow the
// Kripke-Joyal forcing clauses.

bool sub_leq(const SubPresheaf& u, const SubPresheaf& v);
bool sub_eq(const SubPresheaf& u, const SubPresheaf& v);
SubPresheaf sub_meet(const SubPresheaf& u, const SubPresheaf& v);
SubPresheaf sub_top(const Presheaf& a);
SubPresheaf sub_empty(const Presheaf& a);

/// a ∈ (U ⇒ V)(c) iff every restriction of a that lands in U lands in V.
SubPresheaf sub_implies(const SubPresheaf& u, const SubPresheaf& v);

/// Right adjoint to sub_pullback along f : B → A.
/// a ∈ ∀_f(U)(c) iff every b over any restriction of a lies in U.
SubPresheaf sub_forall(const PresheafMorphism& f, const SubPresheaf& u);

/// Preimage: f* on subobjects.
SubPresheaf sub_pullback(const PresheafMorphism& f, const SubPresheaf& u);

/// Normalizes a monomorphism to its image subobject; BackendError when the
/// morphism is not mono.
SubPresheaf mono_image(const PresheafMorphism& m);

/// Materializes the subobject as a presheaf with its inclusion mono.
struct SubDomain {
  Presheaf object;
  PresheafMorphism inclusion;
};
SubDomain sub_domain(const SubPresheaf& u);

/// All subobjects of A in a canonical order (selection masks enumerated
/// lexicographically by object, filtered by restriction closure).
std::vector<SubPresheaf> enumerate_subobjects(
    const Presheaf& a, std::uint64_t budget = kDefaultBudget);

}  // namespace psh

#endif
