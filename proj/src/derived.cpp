#include "psh/derived.hpp"

namespace psh {

namespace {

bool is_identity_comp(const PresheafMorphism& m) {
  if (!(m.src == m.dst)) return false;
  for (ObjId c = 0; c < m.comp.size(); ++c)
    for (Elem x = 0; x < m.comp[c].size(); ++x)
      if (m.comp[c][x] != x) return false;
  return true;
}

}  // namespace

IsoWitness make_iso_witness(PresheafMorphism forward,
                            PresheafMorphism backward) {
  if (!is_identity_comp(compose(backward, forward)) ||
      !is_identity_comp(compose(forward, backward)))
    throw BackendError("iso witness: composites are not identities");
  return IsoWitness{std::move(forward), std::move(backward)};
}

SubPresheaf is_contr_over(const LccContext& ctx, const SliceObject& x) {
  const PresheafMorphism& p = x.proj;
  PullbackData kernel = ctx.pullback(p, p);  // X ×_I X
  PresheafMorphism delta =
      kernel.mediate(identity_morphism(x.total), identity_morphism(x.total));
  SliceObject diag{x.total, delta};            // over X ×_I X
  SliceObject pi_star = ctx.pushforward(kernel.p1, diag);  // over X
  SliceObject over_base = ctx.postcompose(p, pi_star);      // over I
  if (!ctx.predicates(over_base.proj).is_mono)
    throw BackendError("is_contr: contractibility object is not subterminal");
  return ctx.mono_image(over_base.proj);
}

SubPresheaf is_contr(const LccContext& ctx, const Presheaf& a) {
  return is_contr_over(ctx, SliceObject{a, ctx.bang(a)});
}

SubPresheaf bottom_subobject(const LccContext& ctx, const Presheaf& a) {
  OmegaStructure om = ctx.omega(a.base);
  ProductData prod = ctx.product(a, om.omega);
  SubPresheaf tt_sub = ctx.mono_image(om.tt);
  return ctx.sub_forall(prod.p1, ctx.sub_pullback(prod.p2, tt_sub));
}

SubPresheaf join_subobjects(const LccContext& ctx, const SubPresheaf& u,
                            const SubPresheaf& v) {
  if (!(u.ambient == v.ambient))
    throw Error("join_subobjects: ambient presheaves differ");
  const Presheaf& a = u.ambient;
  OmegaStructure om = ctx.omega(a.base);
  ProductData prod = ctx.product(a, om.omega);
  SubPresheaf t = ctx.sub_pullback(prod.p2, ctx.mono_image(om.tt));
  SubPresheaf pu = ctx.sub_pullback(prod.p1, u);
  SubPresheaf pv = ctx.sub_pullback(prod.p1, v);
  SubPresheaf body = ctx.sub_implies(
      ctx.sub_meet(ctx.sub_implies(pu, t), ctx.sub_implies(pv, t)), t);
  return ctx.sub_forall(prod.p1, body);
}

InitialData initial_object(const LccContext& ctx, const BasePtr& base) {
  Presheaf one = ctx.terminal(base).object;
  SubPresheaf bottom = bottom_subobject(ctx, one);
  SubDomain dom = ctx.sub_domain(bottom);
  return InitialData{std::move(dom.object), std::move(bottom)};
}

PresheafMorphism initial_to(const LccContext& ctx, const InitialData& zero,
                            const Presheaf& a) {
  auto homs = ctx.hom_set(zero.object, a);
  if (homs.size() != 1)
    throw BackendError("initial object is not initial: |hom(0, A)| = " +
                       std::to_string(homs.size()));
  return homs.front();
}

PartialMapClassifier partial_map_classifier(const LccContext& ctx,
                                            const Presheaf& a) {
  const BasePtr& base = a.base;
  OmegaStructure om = ctx.omega(base);
  SliceObject a_over_1{a, ctx.bang(a)};

  PartialMapClassifier out;
  SliceObject abar = ctx.pushforward(om.tt, a_over_1);  // over Ω
  out.object = abar.total;
  out.classifier = abar.proj;

  // eta: invert the counit tt*(tt_* a) → a of the reflection along the mono tt
  // and continue to Ā with the pullback projection.
  SliceMorphism counit = ctx.star_counit(om.tt, a_over_1);
  if (!slice_morphism_is_iso(counit))
    throw BackendError("partial_map_classifier: reflection counit is not iso");
  PullbackData pb_tt = ctx.pullback(out.classifier, om.tt);
  out.eta = compose(pb_tt.p1, ctx.invert(counit.map));

  // point: the pullback of ā along ff has an invertible projection to 1.
  PullbackData pb_ff = ctx.pullback(out.classifier, om.ff);
  PresheafMorphism j = pb_ff.p2;
  if (!ctx.predicates(j).is_iso)
    throw BackendError("partial_map_classifier: false-fiber is not terminal");
  out.point = compose(pb_ff.p1, ctx.invert(j));

  if (!ctx.predicates(out.eta).is_mono || !ctx.predicates(out.point).is_mono)
    throw BackendError("partial_map_classifier: embedding is not mono");

  PullbackData disj = ctx.pullback(out.eta, out.point);
  out.disjointness_pullback = disj.object;
  InitialData zero = initial_object(ctx, base);
  PresheafMorphism from_zero = initial_to(ctx, zero, disj.object);
  auto to_zero = ctx.hom_set(disj.object, zero.object);
  if (to_zero.size() != 1)
    throw BackendError(
        "partial_map_classifier: embeddings of A and 1 are not disjoint");
  out.disjointness = make_iso_witness(to_zero.front(), from_zero);
  return out;
}

namespace {

// Corestriction of a mono m : X ↣ Amb to the domain of a subobject containing
// its image; every component value is looked up inside the selection.
PresheafMorphism corestrict(const PresheafMorphism& m, const SubDomain& dom) {
  PresheafMorphism out{m.src, dom.object, {}};
  out.comp.resize(m.comp.size());
  for (ObjId c = 0; c < m.comp.size(); ++c) {
    out.comp[c].resize(m.comp[c].size());
    for (Elem x = 0; x < m.comp[c].size(); ++x) {
      const auto& inc = dom.inclusion.comp[c];
      Elem target = m.comp[c][x];
      Elem found = kNoMor;
      for (Elem i = 0; i < inc.size(); ++i)
        if (inc[i] == target) {
          found = i;
          break;
        }
      if (found == kNoMor)
        throw BackendError("corestrict: image escapes the subobject");
      out.comp[c][x] = found;
    }
  }
  return out;
}

}  // namespace

CoproductData binary_coproduct(const LccContext& ctx, const Presheaf& a,
                               const Presheaf& b) {
  if (!same_base(a, b)) throw Error("binary_coproduct: bases differ");
  const BasePtr& base = a.base;

  PartialMapClassifier pa = partial_map_classifier(ctx, a);
  PartialMapClassifier pb = partial_map_classifier(ctx, b);

  CoproductData out;
  out.pmc_left = pa.object;
  out.pmc_right = pb.object;
  ProductData amb = ctx.product(pa.object, pb.object);
  out.ambient = amb.object;

  // transposed-product embeddings: A ↦ (eta_A, point_B ∘ !), B ↦ (point_A ∘ !, eta_B)
  out.embed_left =
      amb.mediate(pa.eta, compose(pb.point, ctx.bang(a)));
  out.embed_right =
      amb.mediate(compose(pa.point, ctx.bang(b)), pb.eta);
  if (!ctx.predicates(out.embed_left).is_mono ||
      !ctx.predicates(out.embed_right).is_mono)
    throw BackendError("binary_coproduct: embedding is not mono");

  out.sub_left = ctx.mono_image(out.embed_left);
  out.sub_right = ctx.mono_image(out.embed_right);

  SubPresheaf meet = ctx.sub_meet(out.sub_left, out.sub_right);
  SubPresheaf amb_bottom = bottom_subobject(ctx, out.ambient);
  if (!(ctx.sub_leq(meet, amb_bottom) && ctx.sub_leq(amb_bottom, meet)))
    throw BackendError("binary_coproduct: embeddings are not disjoint");

  out.sub_join = join_subobjects(ctx, out.sub_left, out.sub_right);
  SubDomain dom = ctx.sub_domain(out.sub_join);
  out.object = dom.object;
  out.inj_left = corestrict(out.embed_left, dom);
  out.inj_right = corestrict(out.embed_right, dom);
  if (!ctx.predicates(out.inj_left).is_mono ||
      !ctx.predicates(out.inj_right).is_mono)
    throw BackendError("binary_coproduct: injection is not mono");

  // the premises of the join-to-coproduct lemma, in Sub(C)
  SubPresheaf ci = ctx.mono_image(out.inj_left);
  SubPresheaf cj = ctx.mono_image(out.inj_right);
  SubPresheaf c_meet = ctx.sub_meet(ci, cj);
  SubPresheaf c_bottom = bottom_subobject(ctx, out.object);
  if (!(ctx.sub_leq(c_meet, c_bottom) && ctx.sub_leq(c_bottom, c_meet)))
    throw BackendError("binary_coproduct: injections do not meet in bottom");
  SubPresheaf c_join = join_subobjects(ctx, ci, cj);
  if (!sub_eq(c_join, ctx.sub_top(out.object)))
    throw BackendError("binary_coproduct: injections do not cover");

  PullbackData disj = ctx.pullback(out.inj_left, out.inj_right);
  out.disjointness_pullback = disj.object;
  InitialData zero = initial_object(ctx, base);
  PresheafMorphism from_zero = initial_to(ctx, zero, disj.object);
  auto to_zero = ctx.hom_set(disj.object, zero.object);
  if (to_zero.size() != 1)
    throw BackendError("binary_coproduct: injection pullback is not initial");
  out.disjointness = make_iso_witness(to_zero.front(), from_zero);
  return out;
}

PresheafMorphism copair(const LccContext& ctx, const CoproductData& data,
                        const PresheafMorphism& f, const PresheafMorphism& g) {
  if (!(f.dst == g.dst)) throw Error("copair: codomains differ");
  if (!(f.src == data.inj_left.src) || !(g.src == data.inj_right.src))
    throw Error("copair: legs do not match the coproduct summands");

  // Exhaustive scan of hom(C, X) restricted to h∘i = f, h∘j = g. The pinned
  // search is complete: pruning only removes candidates violating the pins.
  std::vector<std::tuple<ObjId, Elem, Elem>> pins;
  for (ObjId c = 0; c < f.comp.size(); ++c) {
    for (Elem x = 0; x < f.comp[c].size(); ++x)
      pins.emplace_back(c, data.inj_left.comp[c][x], f.comp[c][x]);
    for (Elem y = 0; y < g.comp[c].size(); ++y)
      pins.emplace_back(c, data.inj_right.comp[c][y], g.comp[c][y]);
  }
  auto candidates = ctx.hom_set_pinned(data.object, f.dst, pins, 2);
  if (candidates.empty())
    throw CopairError(0, "copair: no mediating morphism exists");
  if (candidates.size() > 1)
    throw CopairError(candidates.size(),
                      "copair: mediating morphism is not unique");
  return candidates.front();
}

FiniteCoproductData finite_coproduct(const LccContext& ctx, const BasePtr& base,
                                     const std::vector<Presheaf>& parts) {
  FiniteCoproductData out;
  if (parts.empty()) {
    out.object = initial_object(ctx, base).object;
    return out;
  }
  out.object = parts.front();
  out.injections = {identity_morphism(parts.front())};
  for (std::size_t k = 1; k < parts.size(); ++k) {
    CoproductData step = binary_coproduct(ctx, out.object, parts[k]);
    for (auto& inj : out.injections) inj = compose(step.inj_left, inj);
    out.injections.push_back(step.inj_right);
    out.object = step.object;
    out.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace psh
