#include "psh/sublattice.hpp"

#include <functional>

namespace psh {

namespace {

void require_same_ambient(const SubPresheaf& u, const SubPresheaf& v) {
  if (!(u.ambient == v.ambient))
    throw Error("subobject operation: ambient presheaves differ");
}

}  // namespace

bool sub_leq(const SubPresheaf& u, const SubPresheaf& v) {
  require_same_ambient(u, v);
  for (ObjId c = 0; c < u.selected.size(); ++c)
    for (Elem x = 0; x < u.selected[c].size(); ++x)
      if (u.selected[c][x] && !v.selected[c][x]) return false;
  return true;
}

bool sub_eq(const SubPresheaf& u, const SubPresheaf& v) {
  require_same_ambient(u, v);
  return u.selected == v.selected;
}

SubPresheaf sub_meet(const SubPresheaf& u, const SubPresheaf& v) {
  require_same_ambient(u, v);
  SubPresheaf out = u;
  for (ObjId c = 0; c < out.selected.size(); ++c)
    for (Elem x = 0; x < out.selected[c].size(); ++x)
      out.selected[c][x] = u.selected[c][x] && v.selected[c][x];
  return out;
}

SubPresheaf sub_top(const Presheaf& a) {
  SubPresheaf out{a, {}};
  out.selected.resize(a.card.size());
  for (ObjId c = 0; c < a.card.size(); ++c)
    out.selected[c].assign(a.card[c], true);
  return out;
}

SubPresheaf sub_empty(const Presheaf& a) {
  SubPresheaf out{a, {}};
  out.selected.resize(a.card.size());
  for (ObjId c = 0; c < a.card.size(); ++c)
    out.selected[c].assign(a.card[c], false);
  return out;
}

SubPresheaf sub_implies(const SubPresheaf& u, const SubPresheaf& v) {
  require_same_ambient(u, v);
  const Presheaf& a = u.ambient;
  const FinCategory& b = *a.base;
  SubPresheaf out = sub_top(a);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    std::vector<MorId> into = b.morphisms_into(c);
    for (Elem x = 0; x < a.card[c]; ++x) {
      bool in = true;
      for (MorId phi : into) {
        ObjId d = b.mor_src[phi];
        Elem r = a.act(phi, x);
        if (u.selected[d][r] && !v.selected[d][r]) {
          in = false;
          break;
        }
      }
      out.selected[c][x] = in;
    }
  }
  return out;
}

SubPresheaf sub_forall(const PresheafMorphism& f, const SubPresheaf& u) {
  if (!(u.ambient == f.src))
    throw Error("sub_forall: subobject does not live over the source");
  const Presheaf& aa = f.dst;
  const Presheaf& bb = f.src;
  const FinCategory& cat = *aa.base;
  SubPresheaf out = sub_top(aa);
  for (ObjId c = 0; c < cat.num_objects; ++c) {
    std::vector<MorId> into = cat.morphisms_into(c);
    for (Elem x = 0; x < aa.card[c]; ++x) {
      bool in = true;
      for (MorId phi : into) {
        ObjId d = cat.mor_src[phi];
        Elem r = aa.act(phi, x);
        for (Elem be = 0; be < bb.card[d] && in; ++be)
          if (f.comp[d][be] == r && !u.selected[d][be]) in = false;
        if (!in) break;
      }
      out.selected[c][x] = in;
    }
  }
  return out;
}

SubPresheaf sub_pullback(const PresheafMorphism& f, const SubPresheaf& u) {
  if (!(u.ambient == f.dst))
    throw Error("sub_pullback: subobject does not live over the target");
  SubPresheaf out{f.src, {}};
  out.selected.resize(f.comp.size());
  for (ObjId c = 0; c < f.comp.size(); ++c) {
    out.selected[c].resize(f.src.card[c]);
    for (Elem x = 0; x < f.src.card[c]; ++x)
      out.selected[c][x] = u.selected[c][f.comp[c][x]];
  }
  return out;
}

SubPresheaf mono_image(const PresheafMorphism& m) {
  if (!morphism_predicates(m).is_mono)
    throw BackendError("mono_image: morphism is not a monomorphism");
  SubPresheaf out{m.dst, {}};
  out.selected.resize(m.comp.size());
  for (ObjId c = 0; c < m.comp.size(); ++c) {
    out.selected[c].assign(m.dst.card[c], false);
    for (Elem v : m.comp[c]) out.selected[c][v] = true;
  }
  return out;
}

SubDomain sub_domain(const SubPresheaf& u) {
  const Presheaf& a = u.ambient;
  const FinCategory& b = *a.base;

  std::vector<std::vector<Elem>> old_of(b.num_objects);
  std::vector<std::vector<Elem>> new_of(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c) {
    new_of[c].assign(a.card[c], kNoMor);
    for (Elem x = 0; x < a.card[c]; ++x)
      if (u.selected[c][x]) {
        new_of[c][x] = static_cast<Elem>(old_of[c].size());
        old_of[c].push_back(x);
      }
  }

  Presheaf dom;
  dom.base = a.base;
  dom.card.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c)
    dom.card[c] = static_cast<std::uint32_t>(old_of[c].size());
  dom.action.resize(b.num_morphisms());
  for (MorId m = 0; m < b.num_morphisms(); ++m) {
    ObjId from = b.mor_dst[m];
    ObjId to = b.mor_src[m];
    dom.action[m].resize(dom.card[from]);
    for (Elem x = 0; x < dom.card[from]; ++x) {
      Elem img = new_of[to][a.act(m, old_of[from][x])];
      if (img == kNoMor)
        throw BackendError("sub_domain: selection not restriction-closed");
      dom.action[m][x] = img;
    }
  }
  if (!a.elem_names.empty()) {
    dom.elem_names.resize(b.num_objects);
    for (ObjId c = 0; c < b.num_objects; ++c)
      for (Elem x : old_of[c]) dom.elem_names[c].push_back(a.elem_name(c, x));
  }

  PresheafMorphism inc{dom, a, {}};
  inc.comp = old_of;
  return SubDomain{std::move(dom), std::move(inc)};
}

std::vector<SubPresheaf> enumerate_subobjects(const Presheaf& a,
                                              std::uint64_t budget) {
  const FinCategory& b = *a.base;
  Budget bud{budget, "enumerate_subobjects"};
  std::vector<SubPresheaf> out;

  SubPresheaf cur{a, {}};
  cur.selected.resize(b.num_objects);
  for (ObjId c = 0; c < b.num_objects; ++c)
    cur.selected[c].assign(a.card[c], false);

  std::function<void(ObjId)> rec = [&](ObjId c) {
    if (c == b.num_objects) {
      bud.tick();
      if (cur.validate().empty()) out.push_back(cur);
      return;
    }
    std::uint32_t n = a.card[c];
    if (n > 20) throw BudgetError("enumerate_subobjects", budget);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      bud.tick();
      for (Elem x = 0; x < n; ++x) cur.selected[c][x] = (mask >> x) & 1;
      rec(c + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace psh
