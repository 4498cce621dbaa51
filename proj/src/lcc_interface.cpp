#include "psh/lcc_interface.hpp"

namespace psh {

Backend::Backend()
    : pushforward([](const PresheafMorphism& f, const SliceObject& x,
                     std::uint64_t b) { return psh::pushforward(f, x, b); }),
      hom_set([](const Presheaf& f, const Presheaf& g, std::uint64_t b) {
        return psh::hom_set(f, g, b);
      }) {}

LccContext restrict_backend(const Backend& backend) {
  LccContext ctx;
  ctx.budget = backend.budget;
  const std::uint64_t bud = backend.budget;
  auto pf = backend.pushforward;
  auto hs = backend.hom_set;

  ctx.terminal = [](const BasePtr& b) { return psh::terminal(b); };
  ctx.bang = [](const Presheaf& a) { return psh::bang(a); };
  ctx.pullback = [](const PresheafMorphism& f, const PresheafMorphism& g) {
    return psh::pullback(f, g);
  };
  ctx.product = [](const Presheaf& x, const Presheaf& y) {
    return psh::product(x, y);
  };
  ctx.exponential = [bud](const Presheaf& g, const Presheaf& f) {
    return psh::exponential(g, f, bud);
  };
  ctx.exp_transpose = [](const ExponentialData& e, const ProductData& hg,
                         const PresheafMorphism& h) {
    return psh::exp_transpose(e, hg, h);
  };
  ctx.omega = [](const BasePtr& b) { return psh::omega(b); };
  ctx.classify = [](const OmegaStructure& om, const SubPresheaf& m) {
    return psh::classify(om, m);
  };
  ctx.unclassify = [](const OmegaStructure& om, const PresheafMorphism& chi) {
    return psh::unclassify(om, chi);
  };
  ctx.hom_set = [hs, bud](const Presheaf& f, const Presheaf& g) {
    return hs(f, g, bud);
  };
  ctx.hom_set_pinned =
      [bud](const Presheaf& f, const Presheaf& g,
            const std::vector<std::tuple<ObjId, Elem, Elem>>& pins,
            std::size_t max_results) {
        return psh::hom_set_pinned(f, g, pins, bud, max_results);
      };
  ctx.hom_set_slice = [bud](const SliceObject& x, const SliceObject& y) {
    return psh::hom_set_slice(x, y, bud);
  };
  ctx.predicates = [](const PresheafMorphism& f) {
    return psh::morphism_predicates(f);
  };
  ctx.invert = [](const PresheafMorphism& f) { return psh::invert(f); };

  ctx.pullback_functor = [](const PresheafMorphism& f, const SliceObject& y) {
    return psh::pullback_functor(f, y);
  };
  ctx.postcompose = [](const PresheafMorphism& f, const SliceObject& x) {
    return psh::postcompose(f, x);
  };
  ctx.pushforward = [pf, bud](const PresheafMorphism& f, const SliceObject& x) {
    return pf(f, x, bud);
  };
  ctx.pullback_map = [](const PresheafMorphism& f, const SliceMorphism& m) {
    return psh::pullback_map(f, m);
  };
  ctx.postcompose_map = [](const PresheafMorphism& f, const SliceMorphism& m) {
    return psh::postcompose_map(f, m);
  };
  ctx.pushforward_map = [bud](const PresheafMorphism& f,
                              const SliceMorphism& m) {
    return psh::pushforward_map(f, m, bud);
  };
  ctx.shriek_unit = [](const PresheafMorphism& f, const SliceObject& x) {
    return psh::shriek_unit(f, x);
  };
  ctx.shriek_counit = [](const PresheafMorphism& f, const SliceObject& y) {
    return psh::shriek_counit(f, y);
  };
  // The unit and counit of f* ⊣ f_* are constructed against the object the
  // (possibly corrupted) pushforward handle actually returns.
  ctx.star_unit = [pf, bud](const PresheafMorphism& f, const SliceObject& y) {
    SliceObject built = pf(f, psh::pullback_functor(f, y), bud);
    return psh::star_unit_against(f, y, built, bud);
  };
  ctx.star_counit = [pf, bud](const PresheafMorphism& f, const SliceObject& x) {
    SliceObject built = pf(f, x, bud);
    return psh::star_counit_against(f, x, built, bud);
  };

  ctx.sub_leq = [](const SubPresheaf& u, const SubPresheaf& v) {
    return psh::sub_leq(u, v);
  };
  ctx.sub_meet = [](const SubPresheaf& u, const SubPresheaf& v) {
    return psh::sub_meet(u, v);
  };
  ctx.sub_implies = [](const SubPresheaf& u, const SubPresheaf& v) {
    return psh::sub_implies(u, v);
  };
  ctx.sub_top = [](const Presheaf& a) { return psh::sub_top(a); };
  ctx.sub_forall = [](const PresheafMorphism& f, const SubPresheaf& u) {
    return psh::sub_forall(f, u);
  };
  ctx.sub_pullback = [](const PresheafMorphism& f, const SubPresheaf& u) {
    return psh::sub_pullback(f, u);
  };
  ctx.mono_image = [](const PresheafMorphism& m) { return psh::mono_image(m); };
  ctx.sub_domain = [](const SubPresheaf& u) { return psh::sub_domain(u); };
  return ctx;
}

LccContext restrict_backend(std::uint64_t budget) {
  Backend b;
  b.budget = budget;
  return restrict_backend(b);
}

bool slice_morphism_is_iso(const SliceMorphism& m) {
  if (!m.validate().empty()) return false;
  for (ObjId c = 0; c < m.map.comp.size(); ++c) {
    if (m.src.total.card[c] != m.dst.total.card[c]) return false;
    std::vector<int> hits(m.dst.total.card[c], 0);
    for (Elem v : m.map.comp[c]) ++hits[v];
    for (int h : hits)
      if (h != 1) return false;
  }
  return true;
}

SliceIso compose_pullback_iso(const LccContext& ctx, const PresheafMorphism& w,
                              const PresheafMorphism& f, const SliceObject& y) {
  // iterated route: Pf = f* y over B, then w* of it over P
  PullbackData pf = ctx.pullback(y.proj, f);
  SliceObject fy{pf.object, pf.p2};
  PullbackData pwf = ctx.pullback(fy.proj, w);
  SliceObject wfy{pwf.object, pwf.p2};
  // composite route
  PresheafMorphism fw = compose(f, w);
  PullbackData pc = ctx.pullback(y.proj, fw);
  SliceObject cy{pc.object, pc.p2};

  PresheafMorphism fwd =
      pc.mediate(compose(pf.p1, pwf.p1), pwf.p2);
  PresheafMorphism into_pf = pf.mediate(pc.p1, compose(w, pc.p2));
  PresheafMorphism bwd = pwf.mediate(into_pf, pc.p2);
  return SliceIso{SliceMorphism{wfy, cy, std::move(fwd)},
                  SliceMorphism{cy, wfy, std::move(bwd)}};
}

SliceMorphism star_transpose(const LccContext& ctx, const PresheafMorphism& f,
                             const SliceObject& y, const SliceMorphism& m) {
  SliceMorphism unit = ctx.star_unit(f, y);
  SliceMorphism pushed = ctx.pushforward_map(f, m);
  return compose(pushed, unit);
}

SliceMorphism bc_left(const LccContext& ctx, const PresheafMorphism& f,
                      const PresheafMorphism& g, const SliceObject& x) {
  // square: P = pullback(g, f) with k = p1 : P → B, h = p2 : P → A
  PullbackData sq = ctx.pullback(g, f);
  const PresheafMorphism& k = sq.p1;
  const PresheafMorphism& h = sq.p2;

  SliceObject kx = ctx.pullback_functor(k, x);    // k* x over P
  SliceObject lhs = ctx.postcompose(h, kx);       // h_! k* x over A
  SliceObject gx = ctx.postcompose(g, x);         // g_! x over C
  PullbackData rhs_pb = ctx.pullback(gx.proj, f); // f* g_! x
  SliceObject rhs{rhs_pb.object, rhs_pb.p2};

  // k* x was built as pullback(x.proj, k); its first leg lands in X
  PullbackData kx_pb = ctx.pullback(x.proj, k);
  PresheafMorphism med = rhs_pb.mediate(kx_pb.p1, compose(h, kx_pb.p2));
  return SliceMorphism{lhs, rhs, std::move(med)};
}

SliceMorphism bc_right(const LccContext& ctx, const PresheafMorphism& f,
                       const PresheafMorphism& g, const SliceObject& x) {
  PullbackData sq = ctx.pullback(g, f);
  const PresheafMorphism& k = sq.p1;  // P → B
  const PresheafMorphism& h = sq.p2;  // P → A

  SliceObject gsx = ctx.pushforward(g, x);        // g_* x over C
  SliceObject lhs = ctx.pullback_functor(f, gsx); // f* g_* x over A

  // m̃ : h*(f* g_* x) → k* x over P, assembled from canonical pieces:
  //   h* f* (-) ≅ (f∘h)* (-) = (g∘k)* (-) ≅ k* g* (-), then k* applied to
  //   the counit g* g_* x → x.
  SliceIso left_iso = compose_pullback_iso(ctx, h, f, gsx);
  SliceIso right_iso = compose_pullback_iso(ctx, k, g, gsx);
  SliceMorphism counit = ctx.star_counit(g, x);
  SliceMorphism k_counit = ctx.pullback_map(k, counit);
  SliceMorphism mt =
      compose(k_counit, compose(right_iso.backward, left_iso.forward));
  return star_transpose(ctx, h, lhs, mt);
}

SliceObject slice_exponential(const LccContext& ctx, const SliceObject& g,
                              const SliceObject& h) {
  return ctx.pushforward(g.proj, ctx.pullback_functor(g.proj, h));
}

SliceMorphism exp_pullback_comparison(const LccContext& ctx,
                                      const PresheafMorphism& f,
                                      const SliceObject& g,
                                      const SliceObject& h) {
  // lhs = f*(h^g) = f* (gproj)_* (gproj)* h
  SliceObject gh = ctx.pullback_functor(g.proj, h);  // g* h over G
  SliceMorphism mate = bc_right(ctx, f, g.proj, gh);

  // mate : f* (gproj_* gh) → p2_* (p1* gh) for the square pullback(gproj, f),
  // where p2 is the projection of f* g. The right side is rewritten to
  // (f*g)_* (f*g)* (f* h) through the composite-pullback isos.
  PullbackData sq = ctx.pullback(g.proj, f);
  const PresheafMorphism& k = sq.p1;       // P → G
  const PresheafMorphism& fg = sq.p2;      // P → B, the slice f* g
  SliceIso iso1 = compose_pullback_iso(ctx, k, g.proj, h);   // k*(g* h) ≅ (g∘k)* h
  SliceIso iso2 = compose_pullback_iso(ctx, fg, f, h);       // fg*(f* h) ≅ (f∘fg)* h
  // g∘k = f∘fg on the nose, so iso1.forward lands in the same object that
  // iso2.backward starts from.
  SliceMorphism rewrite = compose(iso2.backward, iso1.forward);
  SliceMorphism pushed = ctx.pushforward_map(fg, rewrite);
  return compose(pushed, mate);
}

}  // namespace psh
