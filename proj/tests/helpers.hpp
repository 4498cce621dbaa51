#ifndef PSH_TESTS_HELPERS_HPP
#define PSH_TESTS_HELPERS_HPP

#include <map>
#include <set>
#include <vector>

#include "psh/presheaf.hpp"
#include "psh/sublattice.hpp"

namespace psh::testing {

inline Presheaf make_presheaf(
    BasePtr base, std::vector<std::uint32_t> card,
    const std::map<MorId, std::vector<Elem>>& actions = {}) {
  Presheaf p;
  p.base = base;
  p.card = std::move(card);
  p.action.resize(base->num_morphisms());
  for (MorId m = 0; m < base->num_morphisms(); ++m) {
    auto it = actions.find(m);
    if (it != actions.end()) {
      p.action[m] = it->second;
    } else if (base->is_identity(m)) {
      p.action[m].resize(p.card[base->mor_src[m]]);
      for (Elem x = 0; x < p.action[m].size(); ++x) p.action[m][x] = x;
    }
  }
  return p;
}

// finite set as a presheaf over the terminal base
inline Presheaf finset(BasePtr pt, std::uint32_t n) {
  return make_presheaf(pt, {n});
}

inline PresheafMorphism make_morphism(const Presheaf& src, const Presheaf& dst,
                                      std::vector<std::vector<Elem>> comp) {
  return PresheafMorphism{src, dst, std::move(comp)};
}

// map between terminal-base sets
inline PresheafMorphism setmap(const Presheaf& src, const Presheaf& dst,
                               std::vector<Elem> images) {
  return PresheafMorphism{src, dst, {std::move(images)}};
}

// graph-base presheaves: card {V, E}, s-action, t-action (morphism ids 2, 3)
inline Presheaf graph_presheaf(BasePtr g, std::uint32_t nv, std::uint32_t ne,
                               std::vector<Elem> s_ends,
                               std::vector<Elem> t_ends) {
  return make_presheaf(g, {nv, ne}, {{2, std::move(s_ends)}, {3, std::move(t_ends)}});
}

// --- independent oracles ------------------------------------------------------

// Counts natural transformations F → G by enumerating every component tuple
// with a plain odometer and filtering by the full naturality condition; shares
// nothing with hom_set's backtracking.
inline std::size_t brute_hom_count(const Presheaf& f, const Presheaf& g) {
  const FinCategory& b = *f.base;
  std::vector<std::pair<ObjId, Elem>> pos;
  for (ObjId c = 0; c < b.num_objects; ++c)
    for (Elem x = 0; x < f.card[c]; ++x) pos.emplace_back(c, x);

  std::vector<Elem> val(pos.size(), 0);
  for (ObjId c = 0; c < b.num_objects; ++c)
    if (g.card[c] == 0 && f.card[c] > 0) return 0;

  std::size_t count = 0;
  while (true) {
    std::vector<std::vector<Elem>> comp(b.num_objects);
    for (ObjId c = 0; c < b.num_objects; ++c) comp[c].resize(f.card[c]);
    for (std::size_t i = 0; i < pos.size(); ++i)
      comp[pos[i].first][pos[i].second] = val[i];
    bool natural = true;
    for (MorId m = 0; m < b.num_morphisms() && natural; ++m) {
      ObjId from = b.mor_dst[m];
      ObjId to = b.mor_src[m];
      for (Elem x = 0; x < f.card[from]; ++x)
        if (comp[to][f.act(m, x)] != g.act(m, comp[from][x])) {
          natural = false;
          break;
        }
    }
    if (natural) ++count;

    std::size_t i = 0;
    for (; i < pos.size(); ++i) {
      if (++val[i] < g.card[pos[i].first]) break;
      val[i] = 0;
    }
    if (i == pos.size()) break;
    if (pos.empty()) break;
  }
  return count;
}

// Counts the restriction-closed sets of morphisms into c directly on id sets.
inline std::size_t sieve_count_oracle(const FinCategory& b, ObjId c) {
  std::vector<MorId> into;
  for (MorId m = 0; m < b.num_morphisms(); ++m)
    if (b.mor_dst[m] == c) into.push_back(m);

  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (1ull << into.size()); ++mask) {
    std::set<MorId> s;
    for (std::size_t i = 0; i < into.size(); ++i)
      if (mask >> i & 1) s.insert(into[i]);
    bool closed = true;
    for (MorId phi : s)
      for (MorId psi = 0; psi < b.num_morphisms() && closed; ++psi)
        if (b.composable(phi, psi) && !s.count(b.compose(phi, psi)))
          closed = false;
    if (closed) ++count;
  }
  return count;
}

// Pointwise union of selections; over a presheaf base this is the expected
// value of the derived join whenever both arguments are subobjects.
inline SubPresheaf union_oracle(const SubPresheaf& u, const SubPresheaf& v) {
  SubPresheaf out = u;
  for (ObjId c = 0; c < out.selected.size(); ++c)
    for (Elem x = 0; x < out.selected[c].size(); ++x)
      out.selected[c][x] = u.selected[c][x] || v.selected[c][x];
  return out;
}

}  // namespace psh::testing

#endif
