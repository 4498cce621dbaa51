#include "psh/verify.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "psh/workspace.hpp"

namespace psh {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::budget_exceeded: return "budget-exceeded";
  }
  return "?";
}

namespace {

// --- per-instance run state ----------------------------------------------------

struct Run {
  const LccContext& ctx;
  const Instance& inst;
  std::uint32_t cap;
  std::uint32_t configs = 0;
  bool failed = false;
  std::string witness;

  void fail(const std::string& what,
            const std::vector<const PresheafMorphism*>& parts = {}) {
    if (failed) return;
    failed = true;
    std::ostringstream os;
    os << what << "\nreplay:\n" << print_base_decl("B", *inst.base);
    std::vector<const Presheaf*> objs;
    auto obj_name = [&](const Presheaf& p) {
      for (std::size_t i = 0; i < objs.size(); ++i)
        if (*objs[i] == p && objs[i]->elem_names == p.elem_names)
          return "X" + std::to_string(i);
      objs.push_back(&p);
      return "X" + std::to_string(objs.size() - 1);
    };
    std::vector<std::string> mor_lines;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      std::string sn = obj_name(parts[i]->src);
      std::string dn = obj_name(parts[i]->dst);
      mor_lines.push_back(print_morphism_decl("m" + std::to_string(i), sn, dn,
                                              *parts[i]));
    }
    for (std::size_t i = 0; i < objs.size(); ++i)
      os << print_presheaf_decl("X" + std::to_string(i), "B", *objs[i]);
    for (const auto& l : mor_lines) os << l;
    witness = os.str();
  }

  void expect(bool cond, const std::string& what,
              const std::vector<const PresheafMorphism*>& parts = {}) {
    if (!cond) fail(what, parts);
  }
};

std::vector<PresheafMorphism> pool_morphisms(Run& r) {
  std::vector<PresheafMorphism> out;
  for (const auto& [ni, pi] : r.inst.objects)
    for (const auto& [nj, pj] : r.inst.objects)
      for (auto& h : r.ctx.hom_set(pi, pj)) out.push_back(std::move(h));
  return out;
}

std::vector<SliceObject> slices_over(Run& r, const Presheaf& a,
                                     std::uint32_t cap) {
  std::vector<SliceObject> out;
  out.push_back(identity_slice(a));
  for (const auto& [n, p] : r.inst.objects) {
    for (const auto& h : r.ctx.hom_set(p, a)) {
      if (out.size() >= cap) return out;
      out.push_back(SliceObject{p, h});
    }
  }
  return out;
}

// cospans f : A → C ← B : g drawn from the pool, identity targets included
struct Cospan {
  PresheafMorphism f, g;
};
std::vector<Cospan> cospans(const std::vector<PresheafMorphism>& pool,
                            std::uint32_t cap) {
  std::vector<Cospan> out;
  for (const auto& f : pool) {
    for (const auto& g : pool) {
      if (!(f.dst == g.dst)) continue;
      if (out.size() >= cap) return out;
      out.push_back({f, g});
    }
  }
  return out;
}

bool sub_equal(const LccContext& ctx, const SubPresheaf& u,
               const SubPresheaf& v) {
  return ctx.sub_leq(u, v) && ctx.sub_leq(v, u);
}

// --- checks ---------------------------------------------------------------------

void check_bc_left(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& [f, g] : cospans(pool, r.cap)) {
    for (const auto& x : slices_over(r, g.src, 2)) {
      ++r.configs;
      SliceMorphism cmp = bc_left(r.ctx, f, g, x);
      r.expect(cmp.validate().empty() && slice_morphism_is_iso(cmp),
               "left Beck-Chevalley comparison is not an isomorphism",
               {&f, &g, &x.proj});
      if (r.failed) return;
    }
  }
}

void check_bc_right(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& [f, g] : cospans(pool, r.cap)) {
    for (const auto& x : slices_over(r, g.src, 2)) {
      ++r.configs;
      SliceMorphism cmp = bc_right(r.ctx, f, g, x);
      r.expect(cmp.validate().empty() && slice_morphism_is_iso(cmp),
               "right Beck-Chevalley comparison is not an isomorphism",
               {&f, &g, &x.proj});
      if (r.failed) return;
    }
  }
}

void check_exp_pullback(Run& r) {
  auto pool = pool_morphisms(r);
  std::uint32_t used = 0;
  for (const auto& f : pool) {
    if (used >= r.cap) return;
    auto slices = slices_over(r, f.dst, 3);
    for (std::size_t i = 0; i < slices.size() && used < r.cap; ++i)
      for (std::size_t j = 0; j < slices.size() && used < r.cap; ++j) {
        ++r.configs;
        ++used;
        SliceMorphism cmp =
            exp_pullback_comparison(r.ctx, f, slices[i], slices[j]);
        r.expect(cmp.validate().empty() && slice_morphism_is_iso(cmp),
                 "exponential does not commute with pullback",
                 {&f, &slices[i].proj, &slices[j].proj});
        if (r.failed) return;
      }
  }
}

std::vector<PresheafMorphism> pool_monos(Run& r,
                                         const std::vector<PresheafMorphism>& pool,
                                         std::uint32_t cap) {
  std::vector<PresheafMorphism> out;
  for (const auto& m : pool) {
    if (out.size() >= cap) break;
    if (r.ctx.predicates(m).is_mono) out.push_back(m);
  }
  return out;
}

void check_mono_pb_trivial(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& m : pool_monos(r, pool, r.cap)) {
    for (const auto& f : pool) {
      if (!(f.dst == m.src)) continue;
      ++r.configs;
      PullbackData pb = r.ctx.pullback(m, compose(m, f));
      PresheafMorphism med = pb.mediate(f, identity_morphism(f.src));
      r.expect(morphism_predicates(med).is_iso,
               "pullback of a mono along itself is not trivial", {&m, &f});
      if (r.failed) return;
    }
  }
}

void check_mono_corefl(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& m : pool_monos(r, pool, r.cap)) {
    for (const auto& x : slices_over(r, m.src, 2)) {
      ++r.configs;
      SliceMorphism unit = r.ctx.shriek_unit(m, x);
      r.expect(unit.validate().empty() && slice_morphism_is_iso(unit),
               "unit of postcomposition along a mono is not an iso",
               {&m, &x.proj});
      if (r.failed) return;
    }
  }
}

void check_mono_refl(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& m : pool_monos(r, pool, r.cap)) {
    for (const auto& x : slices_over(r, m.src, 2)) {
      ++r.configs;
      SliceMorphism counit = r.ctx.star_counit(m, x);
      r.expect(counit.validate().empty() && slice_morphism_is_iso(counit),
               "counit of the dependent product along a mono is not an iso",
               {&m, &x.proj});
      if (r.failed) return;
    }
  }
}

std::vector<Presheaf> subterminal_pool(Run& r) {
  std::vector<Presheaf> out;
  Presheaf one = r.ctx.terminal(r.inst.base).object;
  for (const SubPresheaf& u : enumerate_subobjects(one))
    out.push_back(r.ctx.sub_domain(u).object);
  for (const auto& [n, p] : r.inst.objects)
    if (r.ctx.predicates(r.ctx.bang(p)).is_mono) out.push_back(p);
  return out;
}

void check_subterm_equiv(Run& r) {
  auto subs = subterminal_pool(r);
  for (const auto& a : subs)
    for (const auto& b : subs) {
      auto fwd = r.ctx.hom_set(a, b);
      auto bwd = r.ctx.hom_set(b, a);
      if (fwd.empty() || bwd.empty()) continue;
      ++r.configs;
      const auto& f = fwd.front();
      const auto& g = bwd.front();
      r.expect(compose(g, f) == identity_morphism(a) &&
                   compose(f, g) == identity_morphism(b),
               "subterminals with maps both ways are not isomorphic", {&f, &g});
      if (r.failed) return;
    }
}

struct Retract {
  PresheafMorphism m, e;  // e ∘ m = id
};
std::vector<Retract> retract_pairs(
                                   const std::vector<PresheafMorphism>& pool,
                                   std::uint32_t cap) {
  std::vector<Retract> out;
  for (const auto& m : pool) {
    if (out.size() >= cap) break;
    if (m.src == m.dst) continue;  // identities are not informative here
    for (const auto& e : pool) {
      if (!(e.src == m.dst) || !(e.dst == m.src)) continue;
      if (compose(e, m) == identity_morphism(m.src)) {
        out.push_back({m, e});
        break;
      }
    }
  }
  return out;
}

void check_section_mono(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& [m, e] : retract_pairs(pool, r.cap)) {
    ++r.configs;
    r.expect(r.ctx.predicates(m).is_mono, "a section is not a monomorphism",
             {&m, &e});
    if (r.failed) return;
  }
}

void check_iscontr_subterm(Run& r) {
  for (const auto& [n, a] : r.inst.objects) {
    ++r.configs;
    // is_contr itself certifies subterminality and throws otherwise
    SubPresheaf sc = is_contr(r.ctx, a);
    r.expect(sc.validate().empty(), "contractibility object is not a subobject");
    if (r.failed) return;
  }
}

void check_iscontr_term(Run& r) {
  for (const auto& [n, a] : r.inst.objects) {
    ++r.configs;
    SubPresheaf sc = is_contr(r.ctx, a);
    bool maximal = sub_equal(r.ctx, sc, r.ctx.sub_top(sc.ambient));
    // terminality as hom-set singletons, quantified over the pool and the
    // object itself (the endomorphism set is what pins rigidity down)
    bool hom_singleton = r.ctx.hom_set(a, a).size() == 1;
    for (const auto& [n2, x] : r.inst.objects)
      if (r.ctx.hom_set(x, a).size() != 1) hom_singleton = false;
    bool terminal_carriers = presheaf_is_terminal(a);
    r.expect(maximal == terminal_carriers && hom_singleton == terminal_carriers,
             "contractibility object disagrees with terminality of " + n);
    if (r.failed) return;
  }
}

void check_iscontr_pb(Run& r) {
  std::uint32_t used = 0;
  for (const auto& [na, a] : r.inst.objects) {
    for (const auto& [nb, b] : r.inst.objects) {
      if (used >= r.cap) return;
      ++used;
      ++r.configs;
      SubPresheaf sc = is_contr(r.ctx, a);
      SubDomain scd = r.ctx.sub_domain(sc);
      ProductData lhs_pr = r.ctx.product(b, scd.object);
      SubPresheaf lhs = r.ctx.mono_image(lhs_pr.p1);
      ProductData ba = r.ctx.product(b, a);
      SubPresheaf rhs = is_contr_over(r.ctx, SliceObject{ba.object, ba.p1});
      r.expect(sub_equal(r.ctx, lhs, rhs),
               "contractibility is not stable under pullback to " + nb);
      if (r.failed) return;
    }
  }
}

void check_omega_u_terminal(Run& r) {
  ++r.configs;
  OmegaStructure om = r.ctx.omega(r.inst.base);
  r.expect(om.omega.validate().empty(), "sieve presheaf is not functorial");
  r.expect(om.tt.validate().empty() && om.ff.validate().empty(),
           "classifier points are not natural");
  r.expect(r.ctx.predicates(om.tt).is_mono, "true point is not mono");
  r.expect(presheaf_is_terminal(om.tt.src),
           "domain of the true point is not terminal");
}

void check_not_retract(Run& r) {
  auto pool = pool_morphisms(r);
  for (const auto& [m, e] : retract_pairs(pool, r.cap)) {
    for (const SubPresheaf& u : enumerate_subobjects(m.dst)) {
      ++r.configs;
      r.expect(r.ctx.sub_leq(r.ctx.sub_forall(e, u), r.ctx.sub_pullback(m, u)),
               "forall along a retraction exceeds pullback along its section",
               {&m, &e});
      if (r.failed) return;
    }
  }
}

void check_sub_join_laws(Run& r) {
  std::uint32_t objs_used = 0;
  for (const auto& [n, a] : r.inst.objects) {
    if (objs_used++ >= 2) break;
    auto subs = enumerate_subobjects(a);
    SubPresheaf bottom = bottom_subobject(r.ctx, a);
    for (const auto& u : subs) {
      r.expect(r.ctx.sub_leq(bottom, u),
               "bottom is not least in Sub(" + n + ")");
      if (r.failed) return;
    }
    std::uint32_t pairs = 0;
    for (const auto& u : subs) {
      for (const auto& v : subs) {
        if (pairs++ >= r.cap * 10) break;
        ++r.configs;
        SubPresheaf j = join_subobjects(r.ctx, u, v);
        bool upper = r.ctx.sub_leq(u, j) && r.ctx.sub_leq(v, j);
        bool least = true;
        for (const auto& w : subs)
          if (r.ctx.sub_leq(u, w) && r.ctx.sub_leq(v, w) &&
              !r.ctx.sub_leq(j, w))
            least = false;
        r.expect(upper && least,
                 "join is not the least upper bound in Sub(" + n + ")");
        if (r.failed) return;
      }
    }
  }
}

void check_initial_equiv(Run& r) {
  InitialData zero = initial_object(r.ctx, r.inst.base);
  for (const auto& [n, a] : r.inst.objects) {
    ++r.configs;
    r.expect(r.ctx.hom_set(zero.object, a).size() == 1,
             "map space out of the initial object is not a singleton at " + n);
    for (const auto& m : r.ctx.hom_set(a, zero.object))
      r.expect(r.ctx.predicates(m).is_iso,
               "a morphism into the initial object is not an iso", {&m});
    if (r.failed) return;
  }
  r.expect(enumerate_subobjects(zero.object).size() == 1,
           "the initial object has a nontrivial subobject lattice");
}

void check_disj_emb(Run& r) {
  std::uint32_t used = 0;
  for (const auto& [n, a] : r.inst.objects) {
    if (used++ >= r.cap) return;
    ++r.configs;
    PartialMapClassifier pmc = partial_map_classifier(r.ctx, a);
    r.expect(r.ctx.predicates(pmc.eta).is_mono &&
                 r.ctx.predicates(pmc.point).is_mono,
             "partial map classifier embeddings are not monos");
    bool empty = true;
    for (auto sz : pmc.disjointness_pullback.card)
      if (sz) empty = false;
    r.expect(empty, "embeddings of " + n + " and 1 are not disjoint");
    if (r.failed) return;
  }
}

void check_cover_contr(Run& r) {
  Presheaf one = r.ctx.terminal(r.inst.base).object;
  auto subterminals = enumerate_subobjects(one);
  SubPresheaf top = r.ctx.sub_top(one);
  for (const auto& u : subterminals) {
    for (const auto& v : subterminals) {
      if (!sub_equal(r.ctx, join_subobjects(r.ctx, u, v), top)) continue;
      SubDomain ud = r.ctx.sub_domain(u);
      SubDomain vd = r.ctx.sub_domain(v);
      for (const auto& [n, a] : r.inst.objects) {
        // premises: U*A contractible over U and V*A contractible over V
        PullbackData ua = r.ctx.pullback(r.ctx.bang(a), ud.inclusion);
        PullbackData va = r.ctx.pullback(r.ctx.bang(a), vd.inclusion);
        if (!r.ctx.predicates(ua.p2).is_iso || !r.ctx.predicates(va.p2).is_iso)
          continue;
        ++r.configs;
        r.expect(presheaf_is_terminal(a),
                 "covering contractibility fails for " + n);
        r.expect(sub_equal(r.ctx, is_contr(r.ctx, a), top),
                 "contractibility object misses a covered object " + n);
        if (r.failed) return;
      }
    }
  }
}

void check_coprod_univ(Run& r) {
  std::uint32_t pairs = 0;
  for (const auto& [na, a] : r.inst.objects) {
    for (const auto& [nb, b] : r.inst.objects) {
      if (pairs++ >= 2) return;
      CoproductData cd = binary_coproduct(r.ctx, a, b);
      std::uint32_t xs = 0;
      for (const auto& [nx, x] : r.inst.objects) {
        if (xs++ >= 2) break;
        auto ha = r.ctx.hom_set(a, x);
        auto hb = r.ctx.hom_set(b, x);
        auto hc = r.ctx.hom_set(cd.object, x);
        ++r.configs;
        r.expect(hc.size() == ha.size() * hb.size(),
                 "map sets out of the coproduct do not multiply for " + nx);
        if (r.failed) return;
        std::uint32_t legs = 0;
        for (const auto& f : ha) {
          for (const auto& g : hb) {
            if (legs++ >= 6) break;
            ++r.configs;
            PresheafMorphism h = copair(r.ctx, cd, f, g);
            r.expect(compose(h, cd.inj_left) == f &&
                         compose(h, cd.inj_right) == g,
                     "copair does not restrict to its legs", {&f, &g});
            if (r.failed) return;
          }
          if (legs >= 6) break;
        }
      }
    }
  }
}

void check_coprod_native_iso(Run& r) {
  std::uint32_t pairs = 0;
  for (const auto& [na, a] : r.inst.objects) {
    for (const auto& [nb, b] : r.inst.objects) {
      if (pairs++ >= 2) return;
      ++r.configs;
      CoproductData cd = binary_coproduct(r.ctx, a, b);
      NativeCoproduct nat = native_coproduct_oracle(a, b);
      PresheafMorphism fwd = copair(r.ctx, cd, nat.inj_left, nat.inj_right);
      PresheafMorphism bwd = native_copair(nat, cd.inj_left, cd.inj_right);
      IsoWitness iso = make_iso_witness(fwd, bwd);
      r.expect(compose(iso.forward, cd.inj_left) == nat.inj_left &&
                   compose(iso.forward, cd.inj_right) == nat.inj_right,
               "iso to the native coproduct does not commute with injections");
      bool empty = true;
      for (auto sz : cd.disjointness_pullback.card)
        if (sz) empty = false;
      r.expect(empty, "injection pullback of " + na + "+" + nb + " not initial");
      if (r.failed) return;
    }
  }
}

void check_descent(Run& r) {
  std::uint32_t pairs = 0;
  for (const auto& [na, a] : r.inst.objects) {
    for (const auto& [nb, b] : r.inst.objects) {
      if (pairs++ >= 1) return;
      CoproductData cd = binary_coproduct(r.ctx, a, b);
      auto slices = slices_over(r, cd.object, 2);
      slices.push_back(SliceObject{a, cd.inj_left});
      for (const auto& x : slices) {
        ++r.configs;
        PullbackData pa = r.ctx.pullback(x.proj, cd.inj_left);
        PullbackData pb = r.ctx.pullback(x.proj, cd.inj_right);
        CoproductData sum = binary_coproduct(r.ctx, pa.object, pb.object);
        // the comparison map and the slice structure over C, both by copair
        PresheafMorphism cmp = copair(r.ctx, sum, pa.p1, pb.p1);
        PresheafMorphism qs =
            copair(r.ctx, sum, compose(cd.inj_left, pa.p2),
                   compose(cd.inj_right, pb.p2));
        r.expect(compose(x.proj, cmp) == qs,
                 "descent comparison is not a slice morphism");
        r.expect(morphism_predicates(cmp).is_iso,
                 "descent comparison is not an iso", {&x.proj});
        if (r.failed) return;
      }
      // slice hom-sets multiply
      std::uint32_t hp = 0;
      for (const auto& x : slices) {
        for (const auto& y : slices) {
          if (hp++ >= 2) break;
          ++r.configs;
          auto ia_x = r.ctx.pullback_functor(cd.inj_left, x);
          auto ia_y = r.ctx.pullback_functor(cd.inj_left, y);
          auto ib_x = r.ctx.pullback_functor(cd.inj_right, x);
          auto ib_y = r.ctx.pullback_functor(cd.inj_right, y);
          r.expect(r.ctx.hom_set_slice(x, y).size() ==
                       r.ctx.hom_set_slice(ia_x, ia_y).size() *
                           r.ctx.hom_set_slice(ib_x, ib_y).size(),
                   "slice hom-sets do not multiply under descent");
          if (r.failed) return;
        }
        if (hp >= 2) break;
      }
    }
  }
}

struct CheckEntry {
  std::string description;
  void (*runner)(Run&);
};

const std::map<std::string, CheckEntry>& catalog() {
  static const std::map<std::string, CheckEntry> table = {
      {"BC_left",
       {"postcomposition commutes with pullback along squares: the canonical "
        "map h_!(k* x) -> f*(g_! x) is an iso",
        check_bc_left}},
      {"BC_right",
       {"the dependent product commutes with pullback along squares: the mate "
        "f*(g_* x) -> h_*(k* x) is an iso",
        check_bc_right}},
      {"EXP_PULLBACK",
       {"slice exponentials are stable under pullback: f*(h^g) -> "
        "(f*h)^(f*g) is an iso",
        check_exp_pullback}},
      {"MONO_PB_TRIVIAL",
       {"pulling a mono back along itself changes nothing: the square on "
        "(id, f) is a pullback",
        check_mono_pb_trivial}},
      {"MONO_COREFL",
       {"for a mono m the unit of m_! -| m* is an iso (coreflection)",
        check_mono_corefl}},
      {"MONO_REFL",
       {"for a mono m the counit of m* -| m_* is an iso (reflection)",
        check_mono_refl}},
      {"SUBTERM_EQUIV",
       {"two subterminal objects with maps both ways are isomorphic",
        check_subterm_equiv}},
      {"SECTION_MONO",
       {"a section of a retraction is a monomorphism", check_section_mono}},
      {"ISCONTR_SUBTERM",
       {"the contractibility object is subterminal", check_iscontr_subterm}},
      {"ISCONTR_TERM",
       {"the contractibility object is maximal exactly for terminal objects",
        check_iscontr_term}},
      {"ISCONTR_PB",
       {"the contractibility object is stable under pullback to slices",
        check_iscontr_pb}},
      {"OMEGA_U_TERMINAL",
       {"the domain of the true point of the sieve classifier is terminal "
        "and the classifier is functorial",
        check_omega_u_terminal}},
      {"NOT_RETRACT",
       {"for a section/retraction pair, forall along the retraction is below "
        "pullback along the section",
        check_not_retract}},
      {"SUB_JOIN_LAWS",
       {"the derived bottom is least and the derived join is the least upper "
        "bound in every subobject lattice",
        check_sub_join_laws}},
      {"INITIAL_EQUIV",
       {"the derived initial object is initial, strict, and has a trivial "
        "subobject lattice",
        check_initial_equiv}},
      {"DISJ_EMB",
       {"the partial map classifier embeds its object and the point "
        "disjointly",
        check_disj_emb}},
      {"COVER_CONTR",
       {"an object contractible over both legs of a covering pair of "
        "subterminals is contractible",
        check_cover_contr}},
      {"COPROD_UNIV",
       {"mapping out of the derived coproduct is a bijection onto pairs of "
        "maps (copair exists uniquely)",
        check_coprod_univ}},
      {"COPROD_NATIVE_ISO",
       {"the derived coproduct is isomorphic to the native pointwise disjoint "
        "union, compatibly with injections",
        check_coprod_native_iso}},
      {"DESCENT",
       {"a slice over A+B decomposes as the coproduct of its restrictions, "
        "and slice hom-sets multiply",
        check_descent}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& check_catalog() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& [id, e] : catalog()) v.push_back(id);
    return v;
  }();
  return ids;
}

bool check_exists(const std::string& id) { return catalog().count(id) > 0; }

std::string check_description(const std::string& id) {
  auto it = catalog().find(id);
  if (it == catalog().end()) throw Error("unknown check id: " + id);
  return it->second.description;
}

std::vector<CheckResult> run_check(const std::string& check_id,
                                   const std::vector<Instance>& instances,
                                   const CheckOptions& opts) {
  auto it = catalog().find(check_id);
  if (it == catalog().end()) throw Error("unknown check id: " + check_id);

  std::vector<CheckResult> out;
  for (const Instance& inst : instances) {
    CheckResult res;
    res.check_id = check_id;
    res.instance = inst.descriptor;
    auto t0 = std::chrono::steady_clock::now();
    Run r{opts.ctx, inst, opts.max_configs, 0, false, {}};
    try {
      it->second.runner(r);
      res.verdict = r.failed ? Verdict::fail : Verdict::pass;
      res.witness = r.witness;
    } catch (const BudgetError& e) {
      res.verdict = Verdict::budget_exceeded;
      res.witness = e.what();
    } catch (const std::exception& e) {
      res.verdict = Verdict::fail;
      res.witness = std::string("construction failed: ") + e.what();
    }
    res.configurations = r.configs;
    res.millis = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - t0)
                     .count();
    out.push_back(std::move(res));
  }
  return out;
}

// --- curated and generated instances ---------------------------------------------

namespace {

Presheaf graph_ps(const BasePtr& g, std::uint32_t nv, std::uint32_t ne,
                  std::vector<Elem> s_ends, std::vector<Elem> t_ends) {
  Presheaf p;
  p.base = g;
  p.card = {nv, ne};
  p.action.resize(g->num_morphisms());
  p.action[0].resize(nv);
  for (Elem x = 0; x < nv; ++x) p.action[0][x] = x;
  p.action[1].resize(ne);
  for (Elem x = 0; x < ne; ++x) p.action[1][x] = x;
  p.action[2] = std::move(s_ends);
  p.action[3] = std::move(t_ends);
  return p;
}

}  // namespace

std::vector<Instance> curated_instances() {
  std::vector<Instance> out;

  {
    BasePtr pt = terminal_category();
    Instance inst;
    inst.descriptor = "curated:terminal";
    inst.base = pt;
    auto set = [&](std::uint32_t n) {
      Presheaf p;
      p.base = pt;
      p.card = {n};
      p.action.resize(1);
      p.action[0].resize(n);
      for (Elem x = 0; x < n; ++x) p.action[0][x] = x;
      return p;
    };
    inst.objects = {{"one", set(1)}, {"two", set(2)}, {"three", set(3)},
                    {"zero", set(0)}};
    out.push_back(std::move(inst));
  }

  {
    BasePtr ar = arrow_category();
    Instance inst;
    inst.descriptor = "curated:arrow";
    inst.base = ar;
    auto mk = [&](std::uint32_t na, std::uint32_t nb, std::vector<Elem> f) {
      Presheaf p;
      p.base = ar;
      p.card = {na, nb};
      p.action.resize(3);
      p.action[0].resize(na);
      for (Elem x = 0; x < na; ++x) p.action[0][x] = x;
      p.action[1].resize(nb);
      for (Elem x = 0; x < nb; ++x) p.action[1][x] = x;
      p.action[2] = std::move(f);
      return p;
    };
    inst.objects = {{"one", mk(1, 1, {0})},
                    {"proj", mk(2, 2, {0, 1})},
                    {"fold", mk(2, 1, {0})},
                    {"points", mk(2, 0, {})}};
    out.push_back(std::move(inst));
  }

  {
    BasePtr g = graph_category();
    Instance inst;
    inst.descriptor = "curated:graph";
    inst.base = g;
    inst.objects = {{"loop", graph_ps(g, 1, 1, {0}, {0})},
                    {"edge", graph_ps(g, 2, 1, {0}, {1})},
                    {"node", graph_ps(g, 1, 0, {}, {})},
                    {"nodes2", graph_ps(g, 2, 0, {}, {})}};
    out.push_back(std::move(inst));
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

BasePtr monoid_base(std::mt19937_64& rng) {
  switch (draw(rng, 4)) {
    case 0: {  // cyclic of order two
      CategoryBuilder b;
      ObjId o = b.add_object("x");
      MorId g = b.add_morphism("g", o, o);
      b.set_compose(g, g, 0);  // g∘g = id
      return b.build();
    }
    case 1: {  // walking idempotent
      CategoryBuilder b;
      ObjId o = b.add_object("x");
      MorId e = b.add_morphism("e", o, o);
      b.set_compose(e, e, e);
      return b.build();
    }
    case 2: {  // cyclic of order three
      CategoryBuilder b;
      ObjId o = b.add_object("x");
      MorId g = b.add_morphism("g", o, o);
      MorId g2 = b.add_morphism("gg", o, o);
      b.set_compose(g, g, g2);
      b.set_compose(g, g2, 0);
      b.set_compose(g2, g, 0);
      b.set_compose(g2, g2, g);
      return b.build();
    }
    default: {  // two left zeros
      CategoryBuilder b;
      ObjId o = b.add_object("x");
      MorId a = b.add_morphism("a", o, o);
      MorId c = b.add_morphism("c", o, o);
      b.set_compose(a, a, a);
      b.set_compose(a, c, a);
      b.set_compose(c, a, c);
      b.set_compose(c, c, c);
      return b.build();
    }
  }
}

BasePtr quiver_base(std::mt19937_64& rng, const Bounds& bounds) {
  std::uint32_t max_edges =
      bounds.max_morphisms >= 3 ? bounds.max_morphisms - 2 : 1;
  std::uint32_t edges =
      1 + static_cast<std::uint32_t>(draw(rng, std::min(max_edges, 4u)));
  CategoryBuilder b;
  ObjId v = b.add_object("V");
  ObjId e = b.add_object("E");
  for (std::uint32_t k = 0; k < edges; ++k)
    b.add_morphism("a" + std::to_string(k), v, e);
  return b.build();
}

BasePtr mset_base(std::mt19937_64& rng) {
  // walking idempotent acting on a small set of arrows
  CategoryBuilder b;
  ObjId s = b.add_object("S");
  ObjId x = b.add_object("x");
  MorId e = b.add_morphism("e", x, x);
  b.set_compose(e, e, e);
  std::uint32_t n = 1 + static_cast<std::uint32_t>(draw(rng, 2));
  std::vector<MorId> arrows;
  for (std::uint32_t k = 0; k < n; ++k)
    arrows.push_back(b.add_morphism("f" + std::to_string(k), s, x));
  // e acts by collapsing every arrow onto the first
  for (MorId a : arrows) b.set_compose(e, a, arrows.front());
  return b.build();
}

Presheaf random_presheaf(std::mt19937_64& rng, const BasePtr& base,
                         std::uint32_t max_carrier) {
  const FinCategory& cat = *base;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Presheaf p;
    p.base = base;
    p.card.resize(cat.num_objects);
    for (ObjId c = 0; c < cat.num_objects; ++c)
      p.card[c] = static_cast<std::uint32_t>(draw(rng, max_carrier + 1));
    bool feasible = true;
    for (MorId m = 0; m < cat.num_morphisms(); ++m)
      if (p.card[cat.mor_dst[m]] > 0 && p.card[cat.mor_src[m]] == 0)
        feasible = false;
    if (!feasible) continue;
    p.action.resize(cat.num_morphisms());
    for (MorId m = 0; m < cat.num_morphisms(); ++m) {
      p.action[m].resize(p.card[cat.mor_dst[m]]);
      if (cat.is_identity(m)) {
        for (Elem x = 0; x < p.action[m].size(); ++x) p.action[m][x] = x;
      } else {
        for (Elem x = 0; x < p.action[m].size(); ++x)
          p.action[m][x] =
              static_cast<Elem>(draw(rng, p.card[cat.mor_src[m]]));
      }
    }
    if (p.validate().empty()) return p;
  }
  return terminal(base).object;
}

}  // namespace

std::vector<Instance> generate_instances(const InstanceGenerator& gen) {
  std::vector<Instance> out;
  for (std::uint32_t i = 0; i < gen.count; ++i) {
    std::mt19937_64 rng(splitmix64(gen.seed ^ splitmix64(i + 1)));
    BasePtr base;
    std::string family;
    std::uint64_t pick =
        gen.bounds.max_objects >= 2 ? draw(rng, 5) : draw(rng, 2);
    switch (pick) {
      case 0:
        base = terminal_category();
        family = "terminal";
        break;
      case 1:
        base = monoid_base(rng);
        family = "monoid";
        break;
      case 2:
        base = arrow_category();
        family = "arrow";
        break;
      case 3:
        base = quiver_base(rng, gen.bounds);
        family = "quiver";
        break;
      default:
        base = mset_base(rng);
        family = "mset";
        break;
    }
    Instance inst;
    inst.base = base;
    inst.descriptor = "gen[seed=" + std::to_string(gen.seed) +
                      ",i=" + std::to_string(i) + ",base=" + family + "]";
    inst.objects.emplace_back("T", terminal(base).object);
    inst.objects.emplace_back("P",
                              random_presheaf(rng, base, gen.bounds.max_carrier));
    inst.objects.emplace_back("Q",
                              random_presheaf(rng, base, gen.bounds.max_carrier));
    out.push_back(std::move(inst));
  }
  return out;
}

// --- native colimit oracle -------------------------------------------------------

NativeCoproduct native_coproduct_oracle(const Presheaf& a, const Presheaf& b) {
  if (!same_base(a, b)) throw Error("native coproduct: bases differ");
  const FinCategory& cat = *a.base;
  NativeCoproduct out;
  Presheaf& p = out.object;
  p.base = a.base;
  p.card.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) p.card[c] = a.card[c] + b.card[c];
  p.action.resize(cat.num_morphisms());
  for (MorId m = 0; m < cat.num_morphisms(); ++m) {
    ObjId from = cat.mor_dst[m];
    ObjId to = cat.mor_src[m];
    p.action[m].resize(p.card[from]);
    for (Elem x = 0; x < a.card[from]; ++x) p.action[m][x] = a.act(m, x);
    for (Elem y = 0; y < b.card[from]; ++y)
      p.action[m][a.card[from] + y] = a.card[to] + b.act(m, y);
  }
  PresheafMorphism il{a, p, {}}, ir{b, p, {}};
  il.comp.resize(cat.num_objects);
  ir.comp.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    il.comp[c].resize(a.card[c]);
    for (Elem x = 0; x < a.card[c]; ++x) il.comp[c][x] = x;
    ir.comp[c].resize(b.card[c]);
    for (Elem y = 0; y < b.card[c]; ++y) ir.comp[c][y] = a.card[c] + y;
  }
  out.inj_left = std::move(il);
  out.inj_right = std::move(ir);
  return out;
}

PresheafMorphism native_copair(const NativeCoproduct& n,
                               const PresheafMorphism& f,
                               const PresheafMorphism& g) {
  if (!(f.dst == g.dst)) throw Error("native copair: codomains differ");
  const Presheaf& a = n.inj_left.src;
  PresheafMorphism h{n.object, f.dst, {}};
  h.comp.resize(n.object.card.size());
  for (ObjId c = 0; c < n.object.card.size(); ++c) {
    h.comp[c].resize(n.object.card[c]);
    for (Elem x = 0; x < n.object.card[c]; ++x)
      h.comp[c][x] =
          x < a.card[c] ? f.comp[c][x] : g.comp[c][x - a.card[c]];
  }
  return h;
}

// --- negative controls -------------------------------------------------------------

Backend corrupted_pushforward_backend(std::uint64_t budget) {
  Backend b;
  b.budget = budget;
  b.pushforward = [](const PresheafMorphism& f, const SliceObject& x,
                     std::uint64_t bud) {
    SliceObject honest = psh::pushforward(f, x, bud);
    const FinCategory& cat = *honest.total.base;
    // locate the last element of the last nonempty carrier
    ObjId cc = cat.num_objects;
    for (ObjId c = 0; c < cat.num_objects; ++c)
      if (honest.total.card[c] > 0) cc = c;
    if (cc == cat.num_objects) return honest;  // nothing to drop

    // drop it together with everything restricting onto it, so the remainder
    // is still a presheaf
    std::vector<std::vector<bool>> keep(cat.num_objects);
    for (ObjId c = 0; c < cat.num_objects; ++c)
      keep[c].assign(honest.total.card[c], true);
    keep[cc][honest.total.card[cc] - 1] = false;
    bool changed = true;
    while (changed) {
      changed = false;
      for (MorId m = 0; m < cat.num_morphisms(); ++m) {
        ObjId from = cat.mor_dst[m];
        ObjId to = cat.mor_src[m];
        for (Elem x = 0; x < honest.total.card[from]; ++x)
          if (keep[from][x] && !keep[to][honest.total.act(m, x)]) {
            keep[from][x] = false;
            changed = true;
          }
      }
    }
    SubPresheaf remaining{honest.total, keep};
    SubDomain dom = sub_domain(remaining);
    return SliceObject{dom.object, compose(honest.proj, dom.inclusion)};
  };
  return b;
}

Backend corrupted_hom_backend(std::uint64_t budget) {
  Backend b;
  b.budget = budget;
  b.hom_set = [](const Presheaf& f, const Presheaf& g, std::uint64_t bud) {
    auto out = psh::hom_set(f, g, bud);
    if (out.empty()) return out;
    PresheafMorphism broken = out.back();
    for (ObjId c = 0; c < broken.comp.size(); ++c)
      for (Elem x = 0; x < broken.comp[c].size(); ++x)
        if (g.card[c] >= 2) {
          broken.comp[c][x] = (broken.comp[c][x] + 1) % g.card[c];
          out.push_back(broken);
          return out;
        }
    return out;
  };
  return b;
}

}  // namespace psh
