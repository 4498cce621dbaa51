#include "psh/fincat.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "psh/presheaf.hpp"

namespace psh {

std::vector<MorId> FinCategory::morphisms_into(ObjId c) const {
  std::vector<MorId> out;
  for (MorId m = 0; m < num_morphisms(); ++m)
    if (mor_dst[m] == c) out.push_back(m);
  return out;
}

std::vector<MorId> FinCategory::morphisms_from(ObjId c) const {
  std::vector<MorId> out;
  for (MorId m = 0; m < num_morphisms(); ++m)
    if (mor_src[m] == c) out.push_back(m);
  return out;
}

std::string FinCategory::object_name(ObjId c) const {
  if (c < object_names.size() && !object_names[c].empty()) return object_names[c];
  return "o" + std::to_string(c);
}

std::string FinCategory::mor_name(MorId m) const {
  if (m < mor_names.size() && !mor_names[m].empty()) return mor_names[m];
  return "m" + std::to_string(m);
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.code << ": " << v.detail << "\n";
  }
  return os.str();
}

ValidationReport validate_category(const FinCategory& c) {
  ValidationReport rep;
  auto add = [&](std::string code, std::string detail, std::vector<MorId> inv) {
    rep.violations.push_back({std::move(code), std::move(detail), std::move(inv)});
  };
  const std::uint32_t n = c.num_morphisms();

  if (c.identity.size() != c.num_objects) {
    add("identity-table", "identity table size does not match object count", {});
    return rep;
  }
  if (c.mor_src.size() != c.mor_dst.size() || c.table.size() != std::size_t(n) * n) {
    add("table-shape", "morphism or composition table has wrong shape", {});
    return rep;
  }
  for (MorId m = 0; m < n; ++m) {
    if (c.mor_src[m] >= c.num_objects || c.mor_dst[m] >= c.num_objects) {
      add("range", "morphism " + c.mor_name(m) + " has out-of-range endpoint", {m});
      return rep;
    }
  }
  for (ObjId o = 0; o < c.num_objects; ++o) {
    MorId i = c.identity[o];
    if (i >= n) {
      add("identity-range", "identity of " + c.object_name(o) + " out of range", {});
      return rep;
    }
    if (c.mor_src[i] != o || c.mor_dst[i] != o)
      add("identity-endpoints",
          "identity of " + c.object_name(o) + " is not an endomorphism", {i});
  }

  // Composition defined exactly for composable pairs, with correct endpoints.
  for (MorId g = 0; g < n; ++g) {
    for (MorId f = 0; f < n; ++f) {
      MorId gf = c.compose(g, f);
      if (c.composable(g, f)) {
        if (gf == kNoMor) {
          add("compose-missing",
              "composable pair (" + c.mor_name(g) + ", " + c.mor_name(f) +
                  ") has no composite",
              {g, f});
        } else if (gf >= n || c.mor_src[gf] != c.mor_src[f] ||
                   c.mor_dst[gf] != c.mor_dst[g]) {
          add("compose-endpoints",
              "composite of (" + c.mor_name(g) + ", " + c.mor_name(f) +
                  ") has wrong endpoints",
              {g, f, gf});
        }
      } else if (gf != kNoMor) {
        add("compose-spurious",
            "non-composable pair (" + c.mor_name(g) + ", " + c.mor_name(f) +
                ") has a composite",
            {g, f});
      }
    }
  }
  if (!rep.ok()) return rep;

  // Identity laws, naming the offending morphism.
  for (MorId f = 0; f < n; ++f) {
    if (c.compose(c.identity[c.mor_dst[f]], f) != f)
      add("identity-left", "id∘" + c.mor_name(f) + " ≠ " + c.mor_name(f), {f});
    if (c.compose(f, c.identity[c.mor_src[f]]) != f)
      add("identity-right", c.mor_name(f) + "∘id ≠ " + c.mor_name(f), {f});
  }

  // Associativity.
  for (MorId h = 0; h < n; ++h)
    for (MorId g = 0; g < n; ++g) {
      if (!c.composable(h, g)) continue;
      for (MorId f = 0; f < n; ++f) {
        if (!c.composable(g, f)) continue;
        MorId lhs = c.compose(h, c.compose(g, f));
        MorId rhs = c.compose(c.compose(h, g), f);
        if (lhs != rhs)
          add("assoc",
              "associativity fails on (" + c.mor_name(h) + ", " + c.mor_name(g) +
                  ", " + c.mor_name(f) + ")",
              {h, g, f});
      }
    }
  return rep;
}

ValidationReport validate_functor(const FinFunctor& fn) {
  ValidationReport rep;
  auto add = [&](std::string code, std::string detail, std::vector<MorId> inv) {
    rep.violations.push_back({std::move(code), std::move(detail), std::move(inv)});
  };
  const FinCategory& s = *fn.source;
  const FinCategory& t = *fn.target;
  if (fn.obj_map.size() != s.num_objects || fn.mor_map.size() != s.num_morphisms()) {
    add("shape", "functor maps have wrong size", {});
    return rep;
  }
  for (ObjId o = 0; o < s.num_objects; ++o)
    if (fn.obj_map[o] >= t.num_objects) {
      add("range", "object image out of range", {});
      return rep;
    }
  for (MorId m = 0; m < s.num_morphisms(); ++m) {
    MorId im = fn.mor_map[m];
    if (im >= t.num_morphisms()) {
      add("range", "morphism image out of range", {m});
      return rep;
    }
    if (t.mor_src[im] != fn.obj_map[s.mor_src[m]] ||
        t.mor_dst[im] != fn.obj_map[s.mor_dst[m]])
      add("endpoints", "functor breaks endpoints on " + s.mor_name(m), {m});
  }
  for (ObjId o = 0; o < s.num_objects; ++o)
    if (fn.mor_map[s.identity[o]] != t.identity[fn.obj_map[o]])
      add("identity", "functor breaks identity at " + s.object_name(o), {});
  for (MorId g = 0; g < s.num_morphisms(); ++g)
    for (MorId f = 0; f < s.num_morphisms(); ++f) {
      if (!s.composable(g, f)) continue;
      if (fn.mor_map[s.compose(g, f)] !=
          t.compose(fn.mor_map[g], fn.mor_map[f]))
        add("compose",
            "functor breaks composition on (" + s.mor_name(g) + ", " +
                s.mor_name(f) + ")",
            {g, f});
    }
  return rep;
}

ObjId CategoryBuilder::add_object(std::string name) {
  ObjId o = cat_.num_objects++;
  cat_.object_names.push_back(name);
  MorId id = static_cast<MorId>(cat_.mor_src.size());
  cat_.mor_src.push_back(o);
  cat_.mor_dst.push_back(o);
  cat_.mor_names.push_back("id_" + name);
  cat_.identity.push_back(id);
  return o;
}

MorId CategoryBuilder::add_morphism(std::string name, ObjId src, ObjId dst) {
  MorId m = static_cast<MorId>(cat_.mor_src.size());
  cat_.mor_src.push_back(src);
  cat_.mor_dst.push_back(dst);
  cat_.mor_names.push_back(std::move(name));
  return m;
}

void CategoryBuilder::set_compose(MorId g, MorId f, MorId gf) {
  composes_.emplace_back(g, f, gf);
}

BasePtr CategoryBuilder::build() {
  const std::uint32_t n = cat_.num_morphisms();
  cat_.table.assign(std::size_t(n) * n, kNoMor);
  for (MorId g = 0; g < n; ++g)
    for (MorId f = 0; f < n; ++f) {
      if (!cat_.composable(g, f)) continue;
      if (cat_.is_identity(g))
        cat_.table[std::size_t(g) * n + f] = f;
      else if (cat_.is_identity(f))
        cat_.table[std::size_t(g) * n + f] = g;
    }
  for (auto& [g, f, gf] : composes_) cat_.table[std::size_t(g) * n + f] = gf;
  return std::make_shared<const FinCategory>(std::move(cat_));
}

BasePtr terminal_category() {
  CategoryBuilder b;
  b.add_object("pt");
  return b.build();
}

BasePtr arrow_category() {
  CategoryBuilder b;
  ObjId a = b.add_object("a");
  ObjId bb = b.add_object("b");
  b.add_morphism("f", a, bb);
  return b.build();
}

BasePtr graph_category() {
  CategoryBuilder b;
  ObjId v = b.add_object("V");
  ObjId e = b.add_object("E");
  b.add_morphism("s", v, e);
  b.add_morphism("t", v, e);
  return b.build();
}

ElementsData category_of_elements(const Presheaf& p) {
  const FinCategory& base = *p.base;
  ElementsData out;
  CategoryBuilder b;

  std::map<std::pair<ObjId, Elem>, ObjId> obj_of;
  for (ObjId c = 0; c < base.num_objects; ++c)
    for (Elem x = 0; x < p.card[c]; ++x) {
      std::string nm = "(" + base.object_name(c) + "," + p.elem_name(c, x) + ")";
      ObjId o = b.add_object(nm);
      obj_of[{c, x}] = o;
      out.object_elems.emplace_back(c, x);
    }

  // One morphism per (non-identity base morphism φ: c → c', element x' over c').
  struct Gen {
    MorId phi;
    Elem xd;
    MorId id;  // id in the new category
  };
  std::vector<Gen> gens;
  for (MorId phi = 0; phi < base.num_morphisms(); ++phi) {
    if (base.is_identity(phi)) continue;
    ObjId dst = base.mor_dst[phi];
    for (Elem xd = 0; xd < p.card[dst]; ++xd) {
      Elem xs = p.act(phi, xd);
      std::string nm =
          base.mor_name(phi) + "@" + p.elem_name(dst, xd);
      MorId m = b.add_morphism(nm, obj_of[{base.mor_src[phi], xs}],
                               obj_of[{dst, xd}]);
      gens.push_back({phi, xd, m});
    }
  }

  // Composites mirror composition in the base; fill the table after the
  // builder has frozen the identity composites.
  BasePtr built = b.build();
  FinCategory cat = *built;
  std::map<std::pair<MorId, Elem>, MorId> gen_id;
  for (const auto& g : gens) gen_id[{g.phi, g.xd}] = g.id;
  const std::uint32_t n = cat.num_morphisms();
  for (const auto& g2 : gens)
    for (const auto& g1 : gens) {
      if (cat.mor_dst[g1.id] != cat.mor_src[g2.id]) continue;
      if (!(base.mor_dst[g1.phi] == base.mor_src[g2.phi] &&
            g1.xd == p.act(g2.phi, g2.xd)))
        continue;
      MorId comp = base.compose(g2.phi, g1.phi);
      MorId val;
      if (base.is_identity(comp)) {
        val = cat.identity[cat.mor_src[g1.id]];
      } else {
        val = gen_id.at({comp, g2.xd});
      }
      cat.table[std::size_t(g2.id) * n + g1.id] = val;
    }

  out.category = std::make_shared<const FinCategory>(std::move(cat));

  FinFunctor proj;
  proj.source = out.category;
  proj.target = p.base;
  for (auto& [c, x] : out.object_elems) {
    (void)x;
    proj.obj_map.push_back(c);
  }
  proj.mor_map.assign(out.category->num_morphisms(), 0);
  for (ObjId o = 0; o < out.category->num_objects; ++o)
    proj.mor_map[out.category->identity[o]] = base.identity[out.object_elems[o].first];
  out.mor_elems.assign(out.category->num_morphisms(), {kNoMor, 0});
  for (const auto& g : gens) {
    proj.mor_map[g.id] = g.phi;
    out.mor_elems[g.id] = {g.phi, g.xd};
  }
  out.projection = std::move(proj);
  return out;
}

}  // namespace psh
