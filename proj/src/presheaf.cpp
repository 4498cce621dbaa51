#include "psh/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace psh {

namespace {

std::string obj_label(const Presheaf& p, ObjId c) {
  return p.base->object_name(c);
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

}  // namespace

bool same_base(const Presheaf& a, const Presheaf& b) {
  return same_base(a.base, b.base);
}

std::string Presheaf::elem_name(ObjId c, Elem x) const {
  if (c < elem_names.size() && x < elem_names[c].size() &&
      !elem_names[c][x].empty())
    return elem_names[c][x];
  return "e" + std::to_string(x);
}

std::vector<std::string> Presheaf::validate() const {
  std::vector<std::string> out;
  if (!base) return {"presheaf has no base"};
  const FinCategory& b = *base;
  if (card.size() != b.num_objects) return {"carrier table size mismatch"};
  if (action.size() != b.num_morphisms()) return {"action table size mismatch"};
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    if (action[m].size() != card[b.mor_dst[m]]) {
      out.push_back("action of " + b.mor_name(m) + " has wrong arity");
      return out;
    }
    for (Elem x : action[m])
      if (x >= card[b.mor_src[m]]) {
        out.push_back("action of " + b.mor_name(m) + " is out of range");
        return out;
      }
  }
  for (ObjId c = 0; c < b.num_objects; ++c) {
    MorId id = b.identity[c];
    for (Elem x = 0; x < card[c]; ++x)
      if (action[id][x] != x) {
        out.push_back("action of id_" + b.object_name(c) + " is not identity");
        break;
      }
  }
  for (MorId g = 0; g < b.num_morphisms(); ++g)
    for (MorId f = 0; f < b.num_morphisms(); ++f) {
      if (!b.composable(g, f)) continue;
      MorId gf = b.compose(g, f);
      for (Elem x = 0; x < card[b.mor_dst[g]]; ++x)
        if (action[gf][x] != action[f][action[g][x]]) {
          out.push_back("contravariance fails on (" + b.mor_name(g) + ", " +
                        b.mor_name(f) + ")");
          break;
        }
    }
  return out;
}

std::vector<std::string> PresheafMorphism::validate() const {
  std::vector<std::string> out;
  if (!same_base(src, dst)) return {"source and target live on different bases"};
  const FinCategory& b = *src.base;
  if (comp.size() != b.num_objects) return {"component table size mismatch"};
  for (ObjId c = 0; c < b.num_objects; ++c) {
    if (comp[c].size() != src.card[c]) {
      out.push_back("component at " + obj_label(src, c) + " has wrong arity");
      return out;
    }
    for (Elem v : comp[c])
      if (v >= dst.card[c]) {
        out.push_back("component at " + obj_label(src, c) + " out of range");
        return out;
      }
  }
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    ObjId from = b.mor_dst[m];  // component side where elements start
    ObjId to = b.mor_src[m];
    for (Elem x = 0; x < src.card[from]; ++x)
      if (comp[to][src.act(m, x)] != dst.act(m, comp[from][x])) {
        out.push_back("naturality fails at " + b.mor_name(m) + " on element " +
                      src.elem_name(from, x));
        return out;
      }
  }
  return out;
}

PresheafMorphism identity_morphism(const Presheaf& p) {
  PresheafMorphism m{p, p, {}};
  m.comp.resize(p.card.size());
  for (ObjId c = 0; c < p.card.size(); ++c) {
    m.comp[c].resize(p.card[c]);
    for (Elem x = 0; x < p.card[c]; ++x) m.comp[c][x] = x;
  }
  return m;
}

PresheafMorphism compose(const PresheafMorphism& g, const PresheafMorphism& f) {
  require(f.dst == g.src, "compose: middle objects differ");
  PresheafMorphism out{f.src, g.dst, {}};
  out.comp.resize(f.comp.size());
  for (ObjId c = 0; c < f.comp.size(); ++c) {
    out.comp[c].resize(f.comp[c].size());
    for (Elem x = 0; x < f.comp[c].size(); ++x)
      out.comp[c][x] = g.comp[c][f.comp[c][x]];
  }
  return out;
}

std::vector<std::string> SliceObject::validate() const {
  std::vector<std::string> out = proj.validate();
  if (!(proj.src == total)) out.push_back("slice projection source mismatch");
  return out;
}

SliceObject identity_slice(const Presheaf& a) {
  return SliceObject{a, identity_morphism(a)};
}

SliceObject as_slice(const PresheafMorphism& proj) {
  return SliceObject{proj.src, proj};
}

std::vector<std::string> SliceMorphism::validate() const {
  std::vector<std::string> out = map.validate();
  if (!(map.src == src.total)) out.push_back("slice morphism source mismatch");
  if (!(map.dst == dst.total)) out.push_back("slice morphism target mismatch");
  if (out.empty() && !(compose(dst.proj, map) == src.proj))
    out.push_back("slice morphism does not commute with projections");
  return out;
}

SliceMorphism compose(const SliceMorphism& g, const SliceMorphism& f) {
  require(f.dst == g.src, "compose: middle slices differ");
  return SliceMorphism{f.src, g.dst, compose(g.map, f.map)};
}

std::vector<std::string> SubPresheaf::validate() const {
  std::vector<std::string> out;
  const FinCategory& b = *ambient.base;
  if (selected.size() != b.num_objects) return {"selection table size mismatch"};
  for (ObjId c = 0; c < b.num_objects; ++c)
    if (selected[c].size() != ambient.card[c])
      return {"selection at " + b.object_name(c) + " has wrong arity"};
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    ObjId from = b.mor_dst[m];
    ObjId to = b.mor_src[m];
    for (Elem x = 0; x < ambient.card[from]; ++x)
      if (selected[from][x] && !selected[to][ambient.act(m, x)]) {
        out.push_back("not closed under restriction along " + b.mor_name(m) +
                      " at " + ambient.elem_name(from, x));
        return out;
      }
  }
  return out;
}

// --- limits -----------------------------------------------------------------

TerminalData terminal(const BasePtr& base) {
  Presheaf p;
  p.base = base;
  p.card.assign(base->num_objects, 1);
  p.action.resize(base->num_morphisms());
  for (MorId m = 0; m < base->num_morphisms(); ++m) p.action[m] = {0};
  return TerminalData{std::move(p)};
}

PresheafMorphism bang(const Presheaf& a) {
  PresheafMorphism m{a, terminal(a.base).object, {}};
  m.comp.resize(a.card.size());
  for (ObjId c = 0; c < a.card.size(); ++c) m.comp[c].assign(a.card[c], 0);
  return m;
}

Elem PullbackData::pair_index(ObjId c, Elem x, Elem y) const {
  auto it = index[c].find({x, y});
  if (it == index[c].end())
    throw BackendError("pullback: pair not present at " +
                       object.base->object_name(c));
  return it->second;
}

PresheafMorphism PullbackData::mediate(const PresheafMorphism& u,
                                       const PresheafMorphism& v) const {
  if (!(compose(f, u) == compose(g, v)))
    throw ConeError("pullback mediator: legs do not form a cone");
  PresheafMorphism m{u.src, object, {}};
  m.comp.resize(u.comp.size());
  for (ObjId c = 0; c < u.comp.size(); ++c) {
    m.comp[c].resize(u.comp[c].size());
    for (Elem w = 0; w < u.comp[c].size(); ++w)
      m.comp[c][w] = pair_index(c, u.comp[c][w], v.comp[c][w]);
  }
  return m;
}

PullbackData pullback(const PresheafMorphism& f, const PresheafMorphism& g) {
  require(f.dst == g.dst, "pullback: cospan targets differ");
  const Presheaf& x = f.src;
  const Presheaf& y = g.src;
  const FinCategory& b = *x.base;

  PullbackData out;
  out.f = f;
  out.g = g;
  Presheaf p;
  p.base = x.base;
  p.card.assign(b.num_objects, 0);
  out.index.resize(b.num_objects);
  std::vector<std::vector<std::pair<Elem, Elem>>> elems(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    for (Elem xe = 0; xe < x.card[c]; ++xe)
      for (Elem ye = 0; ye < y.card[c]; ++ye)
        if (f.comp[c][xe] == g.comp[c][ye]) {
          out.index[c][{xe, ye}] = static_cast<Elem>(elems[c].size());
          elems[c].emplace_back(xe, ye);
        }
    p.card[c] = static_cast<std::uint32_t>(elems[c].size());
  }
  p.action.resize(b.num_morphisms());
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    ObjId from = b.mor_dst[m];
    p.action[m].resize(p.card[from]);
    for (Elem e = 0; e < p.card[from]; ++e) {
      auto [xe, ye] = elems[from][e];
      p.action[m][e] =
          out.index[b.mor_src[m]].at({x.act(m, xe), y.act(m, ye)});
    }
  }
  out.object = std::move(p);

  PresheafMorphism p1{out.object, x, {}}, p2{out.object, y, {}};
  p1.comp.resize(b.num_objects);
  p2.comp.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    p1.comp[c].resize(elems[c].size());
    p2.comp[c].resize(elems[c].size());
    for (Elem e = 0; e < elems[c].size(); ++e) {
      p1.comp[c][e] = elems[c][e].first;
      p2.comp[c][e] = elems[c][e].second;
    }
  }
  out.p1 = std::move(p1);
  out.p2 = std::move(p2);
  return out;
}

ProductData product(const Presheaf& x, const Presheaf& y) {
  require(same_base(x, y), "product: bases differ");
  PullbackData pb = pullback(bang(x), bang(y));
  return ProductData{pb.object, pb.p1, pb.p2, std::move(pb)};
}

// --- hom-sets ---------------------------------------------------------------

namespace {

// Complete backtracking search over component tuples in lexicographic order.
// `allowed(c, x, v)` filters candidate values; naturality constraints are
// checked as soon as both endpoints are assigned, so pruning never excludes a
// natural transformation.
std::vector<PresheafMorphism> hom_search(
    const Presheaf& f, const Presheaf& g,
    const std::function<bool(ObjId, Elem, Elem)>& allowed,
    std::uint64_t budget, std::size_t max_results, const char* opname) {
  require(same_base(f, g), "hom_set: bases differ");
  const FinCategory& b = *f.base;
  Budget bud{budget, opname};

  struct Pos {
    ObjId c;
    Elem x;
  };
  std::vector<Pos> pos;
  std::vector<std::vector<std::size_t>> pos_of(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    pos_of[c].resize(f.card[c]);
    for (Elem x = 0; x < f.card[c]; ++x) {
      pos_of[c][x] = pos.size();
      pos.push_back({c, x});
    }
  }

  // naturality edge: h[to_pos] must equal g.act(m, h[from_pos])
  struct EdgeCheck {
    MorId m;
    std::size_t from;  // position at dst(m)
    std::size_t to;    // position at src(m)
  };
  std::vector<std::vector<EdgeCheck>> incident(pos.size());
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    if (b.is_identity(m)) continue;
    ObjId from_obj = b.mor_dst[m];
    for (Elem x = 0; x < f.card[from_obj]; ++x) {
      EdgeCheck e{m, pos_of[from_obj][x], pos_of[b.mor_src[m]][f.act(m, x)]};
      incident[e.from].push_back(e);
      if (e.to != e.from) incident[e.to].push_back(e);
    }
  }

  std::vector<Elem> assign(pos.size(), 0);
  std::vector<PresheafMorphism> results;

  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == pos.size()) {
      PresheafMorphism h{f, g, {}};
      h.comp.resize(b.num_objects);
      for (ObjId c = 0; c < b.num_objects; ++c) h.comp[c].resize(f.card[c]);
      for (std::size_t i = 0; i < pos.size(); ++i)
        h.comp[pos[i].c][pos[i].x] = assign[i];
      results.push_back(std::move(h));
      return max_results != 0 && results.size() >= max_results;
    }
    ObjId c = pos[k].c;
    Elem x = pos[k].x;
    for (Elem v = 0; v < g.card[c]; ++v) {
      bud.tick();
      if (allowed && !allowed(c, x, v)) continue;
      assign[k] = v;
      bool ok = true;
      for (const EdgeCheck& e : incident[k]) {
        if (e.from > k || e.to > k) continue;
        if (assign[e.to] != g.act(e.m, assign[e.from])) {
          ok = false;
          break;
        }
      }
      if (ok && rec(k + 1)) return true;
    }
    return false;
  };
  rec(0);
  return results;
}

}  // namespace

std::vector<PresheafMorphism> hom_set(const Presheaf& f, const Presheaf& g,
                                      std::uint64_t budget) {
  return hom_search(f, g, nullptr, budget, 0, "hom_set");
}

std::vector<PresheafMorphism> hom_set_pinned(
    const Presheaf& f, const Presheaf& g,
    const std::vector<std::tuple<ObjId, Elem, Elem>>& pins,
    std::uint64_t budget, std::size_t max_results) {
  std::map<std::pair<ObjId, Elem>, Elem> pinned;
  for (auto& [c, x, v] : pins) {
    auto [it, fresh] = pinned.insert({{c, x}, v});
    if (!fresh && it->second != v) return {};  // contradictory pins
  }
  auto allowed = [&pinned](ObjId c, Elem x, Elem v) {
    auto it = pinned.find({c, x});
    return it == pinned.end() || it->second == v;
  };
  return hom_search(f, g, allowed, budget, max_results, "hom_set_pinned");
}

std::vector<SliceMorphism> hom_set_slice(const SliceObject& x,
                                         const SliceObject& y,
                                         std::uint64_t budget) {
  require(y.proj.dst == x.proj.dst, "hom_set_slice: slices over different objects");
  const PresheafMorphism& p = x.proj;
  const PresheafMorphism& q = y.proj;
  auto allowed = [&](ObjId c, Elem e, Elem v) {
    return q.comp[c][v] == p.comp[c][e];
  };
  auto homs =
      hom_search(x.total, y.total, allowed, budget, 0, "hom_set_slice");
  std::vector<SliceMorphism> out;
  out.reserve(homs.size());
  for (auto& h : homs) out.push_back(SliceMorphism{x, y, std::move(h)});
  return out;
}

MorphismPredicates morphism_predicates(const PresheafMorphism& f) {
  MorphismPredicates out;

  bool injective = true, bijective = true;
  for (ObjId c = 0; c < f.comp.size(); ++c) {
    std::vector<int> hits(f.dst.card[c], 0);
    for (Elem v : f.comp[c]) ++hits[v];
    for (int h : hits)
      if (h > 1) injective = false;
    if (f.src.card[c] != f.dst.card[c]) bijective = false;
    for (int h : hits)
      if (h != 1) bijective = false;
  }
  bijective = bijective && injective;

  // Second route: the diagonal into the kernel pair must be an iso.
  PullbackData kp = pullback(f, f);
  PresheafMorphism diag =
      kp.mediate(identity_morphism(f.src), identity_morphism(f.src));
  bool diag_iso = true;
  for (ObjId c = 0; c < diag.comp.size(); ++c) {
    if (diag.src.card[c] != diag.dst.card[c]) diag_iso = false;
    std::vector<int> hits(diag.dst.card[c], 0);
    for (Elem v : diag.comp[c]) ++hits[v];
    for (int h : hits)
      if (h != 1) diag_iso = false;
  }
  if (diag_iso != injective)
    throw BackendError(
        "monomorphism criteria disagree (diagonal vs componentwise)");

  out.is_mono = injective;
  out.is_iso = bijective;
  out.dst_is_terminal = presheaf_is_terminal(f.dst);
  return out;
}

bool presheaf_is_terminal(const Presheaf& p) {
  for (auto c : p.card)
    if (c != 1) return false;
  return true;
}

PresheafMorphism invert(const PresheafMorphism& f) {
  PresheafMorphism inv{f.dst, f.src, {}};
  inv.comp.resize(f.comp.size());
  for (ObjId c = 0; c < f.comp.size(); ++c) {
    if (f.src.card[c] != f.dst.card[c])
      throw BackendError("invert: morphism is not an isomorphism");
    inv.comp[c].assign(f.dst.card[c], kNoMor);
    for (Elem x = 0; x < f.comp[c].size(); ++x) {
      if (inv.comp[c][f.comp[c][x]] != kNoMor)
        throw BackendError("invert: morphism is not an isomorphism");
      inv.comp[c][f.comp[c][x]] = x;
    }
    for (Elem v : inv.comp[c])
      if (v == kNoMor)
        throw BackendError("invert: morphism is not an isomorphism");
  }
  return inv;
}

// --- exponentials -----------------------------------------------------------

Presheaf yoneda(const BasePtr& base, ObjId c) {
  const FinCategory& b = *base;
  Presheaf p;
  p.base = base;
  p.card.assign(b.num_objects, 0);
  std::vector<std::vector<MorId>> reps(b.num_objects);
  for (MorId m = 0; m < b.num_morphisms(); ++m)
    if (b.mor_dst[m] == c) reps[b.mor_src[m]].push_back(m);
  std::vector<std::map<MorId, Elem>> idx(b.num_objects);
  for (ObjId d = 0; d < b.num_objects; ++d) {
    p.card[d] = static_cast<std::uint32_t>(reps[d].size());
    for (Elem i = 0; i < reps[d].size(); ++i) idx[d][reps[d][i]] = i;
  }
  p.action.resize(b.num_morphisms());
  for (MorId psi = 0; psi < b.num_morphisms(); ++psi) {
    ObjId from = b.mor_dst[psi];
    ObjId to = b.mor_src[psi];
    p.action[psi].resize(p.card[from]);
    for (Elem i = 0; i < p.card[from]; ++i)
      p.action[psi][i] = idx[to].at(b.compose(reps[from][i], psi));
  }
  p.elem_names.resize(b.num_objects);
  for (ObjId d = 0; d < b.num_objects; ++d)
    for (MorId m : reps[d]) p.elem_names[d].push_back(b.mor_name(m));
  return p;
}

namespace {

// index of id_c inside the yoneda carrier y(c)(c)
Elem yoneda_id_index(const BasePtr& base, ObjId c) {
  const FinCategory& b = *base;
  Elem i = 0;
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    if (b.mor_dst[m] != c || b.mor_src[m] != c) continue;
    if (m == b.identity[c]) return i;
    ++i;
  }
  throw BackendError("yoneda: identity not found");
}

// morphism y(c_src) → y(c_dst) given m : c_src → c_dst, by postcomposition
PresheafMorphism yoneda_action(const BasePtr& base, MorId m,
                               const Presheaf& y_src, const Presheaf& y_dst) {
  const FinCategory& b = *base;
  ObjId c_dst = b.mor_dst[m];
  std::vector<std::vector<MorId>> reps_src(b.num_objects), reps_dst(b.num_objects);
  for (MorId k = 0; k < b.num_morphisms(); ++k) {
    if (b.mor_dst[k] == b.mor_src[m]) reps_src[b.mor_src[k]].push_back(k);
    if (b.mor_dst[k] == c_dst) reps_dst[b.mor_src[k]].push_back(k);
  }
  PresheafMorphism out{y_src, y_dst, {}};
  out.comp.resize(b.num_objects);
  for (ObjId d = 0; d < b.num_objects; ++d) {
    out.comp[d].resize(reps_src[d].size());
    for (Elem i = 0; i < reps_src[d].size(); ++i) {
      MorId composite = b.compose(m, reps_src[d][i]);
      auto it = std::find(reps_dst[d].begin(), reps_dst[d].end(), composite);
      out.comp[d][i] = static_cast<Elem>(it - reps_dst[d].begin());
    }
  }
  return out;
}

Elem find_morphism_index(const std::vector<PresheafMorphism>& list,
                         const PresheafMorphism& m, const char* what) {
  for (Elem i = 0; i < list.size(); ++i)
    if (list[i].comp == m.comp) return i;
  throw BackendError(std::string(what) + ": transformation not in enumeration");
}

}  // namespace

ExponentialData exponential(const Presheaf& g, const Presheaf& f,
                            std::uint64_t budget) {
  require(same_base(g, f), "exponential: bases differ");
  const BasePtr& base = f.base;
  const FinCategory& b = *base;

  ExponentialData out;
  out.domain = g;
  out.codomain = f;
  out.yc_product.resize(b.num_objects);
  out.elements.resize(b.num_objects);

  std::vector<Presheaf> yc(b.num_objects);
  Presheaf exp;
  exp.base = base;
  exp.card.assign(b.num_objects, 0);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    yc[c] = yoneda(base, c);
    out.yc_product[c] = product(yc[c], g);
    out.elements[c] = hom_set(out.yc_product[c].object, f, budget);
    exp.card[c] = static_cast<std::uint32_t>(out.elements[c].size());
  }

  exp.action.resize(b.num_morphisms());
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    ObjId from = b.mor_dst[m];  // alpha lives here
    ObjId to = b.mor_src[m];
    exp.action[m].resize(exp.card[from]);
    if (exp.card[from] == 0) continue;
    PresheafMorphism ym = yoneda_action(base, m, yc[to], yc[from]);
    PresheafMorphism pmap = out.yc_product[from].mediate(
        compose(ym, out.yc_product[to].p1), out.yc_product[to].p2);
    for (Elem a = 0; a < exp.card[from]; ++a) {
      PresheafMorphism restricted = compose(out.elements[from][a], pmap);
      exp.action[m][a] =
          find_morphism_index(out.elements[to], restricted, "exponential");
    }
  }
  out.object = std::move(exp);

  out.eval_product = product(out.object, g);
  PresheafMorphism ev{out.eval_product.object, f, {}};
  ev.comp.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    ev.comp[c].resize(out.eval_product.object.card[c]);
    if (out.eval_product.object.card[c] == 0) continue;
    Elem idc = yoneda_id_index(base, c);
    for (Elem a = 0; a < out.object.card[c]; ++a)
      for (Elem ge = 0; ge < g.card[c]; ++ge) {
        Elem pe = out.eval_product.pair_index(c, a, ge);
        Elem arg = out.yc_product[c].pair_index(c, idc, ge);
        ev.comp[c][pe] = out.elements[c][a].comp[c][arg];
      }
  }
  out.eval = std::move(ev);
  return out;
}

PresheafMorphism exp_transpose(const ExponentialData& e, const ProductData& hg,
                               const PresheafMorphism& h) {
  require(hg.p2.dst == e.domain, "transpose: product right factor is not G");
  require(h.src == hg.object && h.dst == e.codomain,
          "transpose: morphism shape mismatch");
  const Presheaf& hh = hg.p1.dst;
  const FinCategory& b = *hh.base;

  PresheafMorphism out{hh, e.object, {}};
  out.comp.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    out.comp[c].resize(hh.card[c]);
    for (Elem x = 0; x < hh.card[c]; ++x) {
      // the transformation y(c)×G → F, d ↦ ((φ: d→c), g) ↦ h(x·φ, g)
      const Presheaf& ycg = e.yc_product[c].object;
      PresheafMorphism alpha{ycg, e.codomain, {}};
      alpha.comp.resize(b.num_objects);
      std::vector<std::vector<MorId>> reps(b.num_objects);
      for (MorId m = 0; m < b.num_morphisms(); ++m)
        if (b.mor_dst[m] == c) reps[b.mor_src[m]].push_back(m);
      for (ObjId d = 0; d < b.num_objects; ++d) {
        alpha.comp[d].resize(ycg.card[d]);
        for (Elem pi = 0; pi < reps[d].size(); ++pi)
          for (Elem ge = 0; ge < e.domain.card[d]; ++ge) {
            Elem pe = e.yc_product[c].pair_index(d, pi, ge);
            Elem hx = hh.act(reps[d][pi], x);
            alpha.comp[d][pe] = h.comp[d][hg.pair_index(d, hx, ge)];
          }
      }
      out.comp[c][x] = find_morphism_index(e.elements[c], alpha, "transpose");
    }
  }
  return out;
}

// --- subobject classifier ---------------------------------------------------

Elem OmegaStructure::sieve_index(ObjId c, std::uint64_t mask) const {
  auto it = std::lower_bound(sieves[c].begin(), sieves[c].end(), mask);
  if (it == sieves[c].end() || *it != mask)
    throw BackendError("omega: mask is not a sieve");
  return static_cast<Elem>(it - sieves[c].begin());
}

Elem OmegaStructure::top_index(ObjId c) const {
  return static_cast<Elem>(sieves[c].size() - 1);
}

OmegaStructure omega(const BasePtr& base) {
  const FinCategory& b = *base;
  OmegaStructure out;
  out.into.resize(b.num_objects);
  out.sieves.resize(b.num_objects);

  for (ObjId c = 0; c < b.num_objects; ++c) {
    out.into[c] = b.morphisms_into(c);
    std::size_t k = out.into[c].size();
    require(k <= 20, "omega: too many morphisms into one object");
    std::map<MorId, std::size_t> bit_of;
    for (std::size_t i = 0; i < k; ++i) bit_of[out.into[c][i]] = i;
    for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
      bool closed = true;
      for (std::size_t i = 0; i < k && closed; ++i) {
        if (!(mask >> i & 1)) continue;
        MorId phi = out.into[c][i];
        ObjId d = b.mor_src[phi];
        for (MorId psi = 0; psi < b.num_morphisms() && closed; ++psi) {
          if (b.mor_dst[psi] != d) continue;
          std::size_t j = bit_of.at(b.compose(phi, psi));
          if (!(mask >> j & 1)) closed = false;
        }
      }
      if (closed) out.sieves[c].push_back(mask);
    }
  }
  // ascending mask enumeration: empty sieve first, maximal sieve last

  Presheaf om;
  om.base = base;
  om.card.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c)
    om.card[c] = static_cast<std::uint32_t>(out.sieves[c].size());
  om.action.resize(b.num_morphisms());
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    ObjId from = b.mor_dst[m];
    ObjId to = b.mor_src[m];
    om.action[m].resize(om.card[from]);
    for (Elem si = 0; si < om.card[from]; ++si) {
      std::uint64_t s = out.sieves[from][si];
      std::uint64_t pulled = 0;
      for (std::size_t j = 0; j < out.into[to].size(); ++j) {
        MorId phi = out.into[to][j];
        MorId comp = b.compose(m, phi);
        auto it = std::find(out.into[from].begin(), out.into[from].end(), comp);
        std::size_t bit = static_cast<std::size_t>(it - out.into[from].begin());
        if (s >> bit & 1) pulled |= 1ull << j;
      }
      om.action[m][si] = out.sieve_index(to, pulled);
    }
  }
  out.omega = std::move(om);

  Presheaf one = terminal(base).object;
  PresheafMorphism tt{one, out.omega, {}}, ff{one, out.omega, {}};
  tt.comp.resize(b.num_objects);
  ff.comp.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    tt.comp[c] = {out.top_index(c)};
    ff.comp[c] = {0};
  }
  out.tt = std::move(tt);
  out.ff = std::move(ff);
  return out;
}

PresheafMorphism classify(const OmegaStructure& om, const SubPresheaf& m) {
  const Presheaf& a = m.ambient;
  const FinCategory& b = *a.base;
  PresheafMorphism chi{a, om.omega, {}};
  chi.comp.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    chi.comp[c].resize(a.card[c]);
    for (Elem x = 0; x < a.card[c]; ++x) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < om.into[c].size(); ++i) {
        MorId phi = om.into[c][i];
        if (m.contains(b.mor_src[phi], a.act(phi, x))) mask |= 1ull << i;
      }
      chi.comp[c][x] = om.sieve_index(c, mask);
    }
  }
  return chi;
}

SubPresheaf unclassify(const OmegaStructure& om, const PresheafMorphism& chi) {
  require(chi.dst == om.omega, "unclassify: morphism does not land in omega");
  SubPresheaf out{chi.src, {}};
  out.selected.resize(chi.comp.size());
  for (ObjId c = 0; c < chi.comp.size(); ++c) {
    out.selected[c].resize(chi.src.card[c]);
    for (Elem x = 0; x < chi.src.card[c]; ++x)
      out.selected[c][x] = (chi.comp[c][x] == om.top_index(c));
  }
  return out;
}

// --- the adjoint triple on slices --------------------------------------------

SliceObject pullback_functor(const PresheafMorphism& f, const SliceObject& y) {
  PullbackData pb = pullback(y.proj, f);
  return SliceObject{pb.object, pb.p2};
}

SliceObject postcompose(const PresheafMorphism& f, const SliceObject& x) {
  return SliceObject{x.total, compose(f, x.proj)};
}

namespace detail {

struct PfEntry {
  MorId phi;
  Elem b;
};

struct PfFiber {
  Elem a;
  std::vector<PfEntry> idx;
  std::map<std::pair<MorId, Elem>, std::size_t> pos;
  std::vector<std::vector<Elem>> families;
  std::map<std::vector<Elem>, Elem> family_of;
};

struct PfLayout {
  // per object of the base, per element of A(c)
  std::vector<std::vector<PfFiber>> fibers;
  std::vector<std::vector<Elem>> offset;  // global carrier offset of (c, a)

  Elem global(ObjId c, Elem a, Elem local) const {
    return offset[c][a] + local;
  }
  std::pair<Elem, Elem> decode(ObjId c, Elem g) const {
    for (Elem a = 0; a < offset[c].size(); ++a) {
      Elem lo = offset[c][a];
      Elem hi = lo + static_cast<Elem>(fibers[c][a].families.size());
      if (g >= lo && g < hi) return {a, g - lo};
    }
    throw BackendError("pushforward: element decode out of range");
  }
};

PfLayout pushforward_layout(const PresheafMorphism& f, const SliceObject& x,
                            std::uint64_t budget) {
  const Presheaf& bb = f.src;   // B
  const Presheaf& aa = f.dst;   // A
  const Presheaf& xx = x.total;
  const FinCategory& cat = *aa.base;
  Budget bud{budget, "pushforward"};

  // fiber lists of x over elements of B
  std::vector<std::vector<std::vector<Elem>>> xfiber(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    xfiber[c].resize(bb.card[c]);
    for (Elem e = 0; e < xx.card[c]; ++e)
      xfiber[c][x.proj.comp[c][e]].push_back(e);
  }

  PfLayout lay;
  lay.fibers.resize(cat.num_objects);
  lay.offset.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    std::vector<MorId> into = cat.morphisms_into(c);
    Elem off = 0;
    for (Elem a = 0; a < aa.card[c]; ++a) {
      PfFiber fib;
      fib.a = a;
      for (MorId phi : into) {
        ObjId d = cat.mor_src[phi];
        Elem restricted = aa.act(phi, a);
        for (Elem be = 0; be < bb.card[d]; ++be)
          if (f.comp[d][be] == restricted) {
            fib.pos[{phi, be}] = fib.idx.size();
            fib.idx.push_back({phi, be});
          }
      }

      // naturality edges: (φ, b) --ψ--> (φ∘ψ, b·ψ) with value transport X(ψ)
      struct Link {
        std::size_t from, to;
        MorId psi;
      };
      std::vector<std::vector<Link>> touching(fib.idx.size());
      for (std::size_t p = 0; p < fib.idx.size(); ++p) {
        MorId phi = fib.idx[p].phi;
        ObjId d = cat.mor_src[phi];
        for (MorId psi = 0; psi < cat.num_morphisms(); ++psi) {
          if (cat.mor_dst[psi] != d || cat.is_identity(psi)) continue;
          std::size_t q =
              fib.pos.at({cat.compose(phi, psi), bb.act(psi, fib.idx[p].b)});
          Link l{p, q, psi};
          touching[p].push_back(l);
          if (q != p) touching[q].push_back(l);
        }
      }

      std::vector<Elem> fam(fib.idx.size(), 0);
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == fib.idx.size()) {
          fib.family_of[fam] = static_cast<Elem>(fib.families.size());
          fib.families.push_back(fam);
          return;
        }
        const auto& choices = xfiber[cat.mor_src[fib.idx[k].phi]][fib.idx[k].b];
        for (Elem v : choices) {
          bud.tick();
          fam[k] = v;
          bool ok = true;
          for (const auto& l : touching[k]) {
            if (l.from > k || l.to > k) continue;
            if (fam[l.to] != xx.act(l.psi, fam[l.from])) {
              ok = false;
              break;
            }
          }
          if (ok) rec(k + 1);
        }
      };
      rec(0);

      lay.offset[c].push_back(off);
      off += static_cast<Elem>(fib.families.size());
      lay.fibers[c].push_back(std::move(fib));
    }
  }
  return lay;
}

SliceObject assemble_pushforward(const PresheafMorphism& f,
                                 const SliceObject&, const PfLayout& lay) {
  const Presheaf& aa = f.dst;
  const FinCategory& cat = *aa.base;

  Presheaf total;
  total.base = aa.base;
  total.card.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    Elem n = 0;
    for (const auto& fib : lay.fibers[c])
      n += static_cast<Elem>(fib.families.size());
    total.card[c] = n;
  }
  total.action.resize(cat.num_morphisms());
  for (MorId m = 0; m < cat.num_morphisms(); ++m) {
    ObjId from = cat.mor_dst[m];
    ObjId to = cat.mor_src[m];
    total.action[m].resize(total.card[from]);
    for (Elem g = 0; g < total.card[from]; ++g) {
      auto [a, local] = lay.decode(from, g);
      const PfFiber& fib = lay.fibers[from][a];
      Elem a2 = aa.act(m, a);
      const PfFiber& fib2 = lay.fibers[to][a2];
      std::vector<Elem> fam2(fib2.idx.size());
      for (std::size_t k = 0; k < fib2.idx.size(); ++k) {
        MorId composite = cat.compose(m, fib2.idx[k].phi);
        fam2[k] = fib.families[local][fib.pos.at({composite, fib2.idx[k].b})];
      }
      auto it = fib2.family_of.find(fam2);
      if (it == fib2.family_of.end())
        throw BackendError("pushforward: restricted family not enumerated");
      total.action[m][g] = lay.global(to, a2, it->second);
    }
  }

  PresheafMorphism proj{total, aa, {}};
  proj.comp.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    proj.comp[c].resize(total.card[c]);
    for (Elem g = 0; g < total.card[c]; ++g)
      proj.comp[c][g] = lay.decode(c, g).first;
  }
  return SliceObject{std::move(total), std::move(proj)};
}

}  // namespace detail

SliceObject pushforward(const PresheafMorphism& f, const SliceObject& x,
                        std::uint64_t budget) {
  require(x.proj.dst == f.src, "pushforward: slice is not over the source");
  auto lay = detail::pushforward_layout(f, x, budget);
  return detail::assemble_pushforward(f, x, lay);
}

SliceMorphism pullback_map(const PresheafMorphism& f, const SliceMorphism& m) {
  PullbackData pb1 = pullback(m.src.proj, f);
  PullbackData pb2 = pullback(m.dst.proj, f);
  PresheafMorphism med = pb2.mediate(compose(m.map, pb1.p1), pb1.p2);
  return SliceMorphism{SliceObject{pb1.object, pb1.p2},
                       SliceObject{pb2.object, pb2.p2}, std::move(med)};
}

SliceMorphism postcompose_map(const PresheafMorphism& f,
                              const SliceMorphism& m) {
  return SliceMorphism{postcompose(f, m.src), postcompose(f, m.dst), m.map};
}

SliceMorphism pushforward_map(const PresheafMorphism& f, const SliceMorphism& m,
                              std::uint64_t budget) {
  auto lay1 = detail::pushforward_layout(f, m.src, budget);
  auto lay2 = detail::pushforward_layout(f, m.dst, budget);
  SliceObject s1 = detail::assemble_pushforward(f, m.src, lay1);
  SliceObject s2 = detail::assemble_pushforward(f, m.dst, lay2);
  const FinCategory& cat = *f.dst.base;

  PresheafMorphism map{s1.total, s2.total, {}};
  map.comp.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    map.comp[c].resize(s1.total.card[c]);
    for (Elem g = 0; g < s1.total.card[c]; ++g) {
      auto [a, local] = lay1.decode(c, g);
      const auto& fib1 = lay1.fibers[c][a];
      const auto& fib2 = lay2.fibers[c][a];
      std::vector<Elem> fam2(fib2.idx.size());
      for (std::size_t k = 0; k < fib2.idx.size(); ++k) {
        const auto& entry = fib2.idx[k];
        ObjId d = cat.mor_src[entry.phi];
        Elem v1 = fib1.families[local][fib1.pos.at({entry.phi, entry.b})];
        fam2[k] = m.map.comp[d][v1];
      }
      auto it = fib2.family_of.find(fam2);
      if (it == fib2.family_of.end())
        throw BackendError("pushforward_map: image family not enumerated");
      map.comp[c][g] = lay2.global(c, a, it->second);
    }
  }
  return SliceMorphism{std::move(s1), std::move(s2), std::move(map)};
}

SliceMorphism shriek_unit(const PresheafMorphism& f, const SliceObject& x) {
  SliceObject fx = postcompose(f, x);
  PullbackData pb = pullback(fx.proj, f);
  PresheafMorphism med = pb.mediate(identity_morphism(x.total), x.proj);
  return SliceMorphism{x, SliceObject{pb.object, pb.p2}, std::move(med)};
}

SliceMorphism shriek_counit(const PresheafMorphism& f, const SliceObject& y) {
  PullbackData pb = pullback(y.proj, f);
  SliceObject fy{pb.object, pb.p2};
  return SliceMorphism{postcompose(f, fy), y, pb.p1};
}

SliceMorphism star_unit_against(const PresheafMorphism& f, const SliceObject& y,
                                const SliceObject& built,
                                std::uint64_t budget) {
  PullbackData pb = pullback(y.proj, f);
  SliceObject fy{pb.object, pb.p2};
  auto lay = detail::pushforward_layout(f, fy, budget);
  SliceObject expected = detail::assemble_pushforward(f, fy, lay);
  if (expected.total.card != built.total.card)
    throw BackendError(
        "pushforward object does not match the dependent-product layout");

  const Presheaf& aa = f.dst;
  const FinCategory& cat = *aa.base;
  PresheafMorphism map{y.total, built.total, {}};
  map.comp.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    map.comp[c].resize(y.total.card[c]);
    for (Elem e = 0; e < y.total.card[c]; ++e) {
      Elem a = y.proj.comp[c][e];
      const auto& fib = lay.fibers[c][a];
      std::vector<Elem> fam(fib.idx.size());
      for (std::size_t k = 0; k < fib.idx.size(); ++k) {
        const auto& entry = fib.idx[k];
        ObjId d = cat.mor_src[entry.phi];
        fam[k] = pb.pair_index(d, y.total.act(entry.phi, e), entry.b);
      }
      auto it = fib.family_of.find(fam);
      if (it == fib.family_of.end())
        throw BackendError("star_unit: canonical family not enumerated");
      map.comp[c][e] = lay.global(c, a, it->second);
    }
  }
  return SliceMorphism{y, built, std::move(map)};
}

SliceMorphism star_counit_against(const PresheafMorphism& f,
                                  const SliceObject& x,
                                  const SliceObject& built,
                                  std::uint64_t budget) {
  auto lay = detail::pushforward_layout(f, x, budget);
  SliceObject expected = detail::assemble_pushforward(f, x, lay);
  if (expected.total.card != built.total.card)
    throw BackendError(
        "pushforward object does not match the dependent-product layout");

  PullbackData pb = pullback(built.proj, f);
  SliceObject dom{pb.object, pb.p2};
  const FinCategory& cat = *f.src.base;

  PresheafMorphism map{dom.total, x.total, {}};
  map.comp.resize(cat.num_objects);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    map.comp[c].resize(dom.total.card[c]);
    for (Elem e = 0; e < dom.total.card[c]; ++e) {
      Elem t = pb.p1.comp[c][e];
      Elem be = pb.p2.comp[c][e];
      auto [a, local] = lay.decode(c, t);
      const auto& fib = lay.fibers[c][a];
      auto it = fib.pos.find({cat.identity[c], be});
      if (it == fib.pos.end())
        throw BackendError("star_counit: identity entry missing from layout");
      map.comp[c][e] = fib.families[local][it->second];
    }
  }
  return SliceMorphism{dom, x, std::move(map)};
}

SliceMorphism star_unit(const PresheafMorphism& f, const SliceObject& y,
                        std::uint64_t budget) {
  return star_unit_against(f, y, pushforward(f, pullback_functor(f, y), budget),
                           budget);
}

SliceMorphism star_counit(const PresheafMorphism& f, const SliceObject& x,
                          std::uint64_t budget) {
  return star_counit_against(f, x, pushforward(f, x, budget), budget);
}

}  // namespace psh
