#include "psh/workspace.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace psh {

namespace {

struct Token {
  std::string text;
  std::uint32_t line;
  std::uint32_t col;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  std::uint32_t line_no = 1;
  std::size_t i = 0;
  std::vector<Token> cur;
  std::uint32_t col = 1;
  auto flush_line = [&]() {
    lines.push_back(std::move(cur));
    cur.clear();
    ++line_no;
    col = 1;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      flush_line();
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    std::uint32_t start_col = col;
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      cur.push_back({"->", line_no, start_col});
      i += 2;
      col += 2;
      continue;
    }
    if (c == '{' || c == '}' || c == ':' || c == '=') {
      cur.push_back({std::string(1, c), line_no, start_col});
      ++i;
      ++col;
      continue;
    }
    if (name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && name_char(text[j])) ++j;
      cur.push_back({std::string(text.substr(i, j - i)), line_no, start_col});
      col += static_cast<std::uint32_t>(j - i);
      i = j;
      continue;
    }
    cur.push_back({std::string(1, c), line_no, start_col});
    ++i;
    ++col;
  }
  if (!cur.empty() || !lines.empty()) lines.push_back(std::move(cur));
  return lines;
}

struct Parser {
  std::vector<std::vector<Token>> lines;
  std::vector<ParseError> errors;
  Workspace ws;
  std::map<std::string, std::uint32_t> decl_line;  // for validation positions

  void error(const Token& t, std::string msg) {
    errors.push_back({t.line, t.col, std::move(msg)});
  }
  void error_at(std::uint32_t line, std::string msg) {
    errors.push_back({line, 1, std::move(msg)});
  }

  bool taken(const std::string& name) const {
    return ws.find_base(name) || ws.find_presheaf(name) ||
           ws.find_morphism(name) || ws.find_sub(name);
  }

  // --- block collection -----------------------------------------------------

  // Returns the item lines of a block opened at line index i (the header line
  // must end with '{'); advances i past the closing '}'.
  std::vector<std::vector<Token>> block(std::size_t& i) {
    std::vector<std::vector<Token>> items;
    ++i;
    while (i < lines.size()) {
      const auto& ln = lines[i];
      if (ln.size() == 1 && ln[0].text == "}") {
        ++i;
        return items;
      }
      if (!ln.empty()) items.push_back(ln);
      ++i;
    }
    error_at(static_cast<std::uint32_t>(lines.size()), "missing closing '}'");
    return items;
  }

  void parse_base(const std::vector<Token>& header, std::size_t& i) {
    // base NAME {
    auto items = block(i);
    if (header.size() != 3 || header[2].text != "{") {
      error(header[0], "expected: base <name> {");
      return;
    }
    std::string name = header[1].text;
    if (taken(name)) {
      error(header[1], "duplicate name '" + name + "'");
      return;
    }

    FinCategory cat;
    std::map<std::string, ObjId> obj_of;
    std::map<std::string, MorId> mor_of;
    struct ComposeLine {
      Token g, f, h;
    };
    std::vector<ComposeLine> composes;
    bool bad = false;

    auto add_object = [&](const Token& t) {
      if (obj_of.count(t.text) || mor_of.count(t.text)) {
        error(t, "duplicate object '" + t.text + "'");
        bad = true;
        return;
      }
      ObjId o = cat.num_objects++;
      obj_of[t.text] = o;
      cat.object_names.push_back(t.text);
      MorId id = static_cast<MorId>(cat.mor_src.size());
      cat.mor_src.push_back(o);
      cat.mor_dst.push_back(o);
      cat.mor_names.push_back("id_" + t.text);
      cat.identity.push_back(id);
    };

    for (const auto& ln : items) {
      if (ln[0].text == "objects") {
        for (std::size_t k = 1; k < ln.size(); ++k) add_object(ln[k]);
      } else if (ln[0].text == "mor") {
        // mor f : a -> b
        if (ln.size() != 6 || ln[2].text != ":" || ln[4].text != "->") {
          error(ln[0], "expected: mor <name> : <obj> -> <obj>");
          bad = true;
          continue;
        }
        if (mor_of.count(ln[1].text) || obj_of.count(ln[1].text)) {
          error(ln[1], "duplicate morphism '" + ln[1].text + "'");
          bad = true;
          continue;
        }
        auto s = obj_of.find(ln[3].text);
        auto d = obj_of.find(ln[5].text);
        if (s == obj_of.end() || d == obj_of.end()) {
          error(ln[s == obj_of.end() ? 3 : 5], "unknown object");
          bad = true;
          continue;
        }
        MorId m = static_cast<MorId>(cat.mor_src.size());
        mor_of[ln[1].text] = m;
        cat.mor_src.push_back(s->second);
        cat.mor_dst.push_back(d->second);
        cat.mor_names.push_back(ln[1].text);
      } else if (ln[0].text == "compose") {
        if (ln.size() != 5 || ln[3].text != "=") {
          error(ln[0], "expected: compose <g> <f> = <h>");
          bad = true;
          continue;
        }
        composes.push_back({ln[1], ln[2], ln[4]});
      } else {
        error(ln[0], "unknown base item '" + ln[0].text + "'");
        bad = true;
      }
    }

    const std::uint32_t n = cat.num_morphisms();
    cat.table.assign(std::size_t(n) * n, kNoMor);
    for (MorId g = 0; g < n; ++g)
      for (MorId f = 0; f < n; ++f) {
        if (!cat.composable(g, f)) continue;
        if (cat.is_identity(g))
          cat.table[std::size_t(g) * n + f] = f;
        else if (cat.is_identity(f))
          cat.table[std::size_t(g) * n + f] = g;
      }
    for (const auto& cl : composes) {
      auto g = mor_of.find(cl.g.text);
      auto f = mor_of.find(cl.f.text);
      auto h = mor_of.find(cl.h.text);
      if (g == mor_of.end() || f == mor_of.end() || h == mor_of.end()) {
        const Token& t = g == mor_of.end() ? cl.g : (f == mor_of.end() ? cl.f : cl.h);
        error(t, "unknown morphism '" + t.text + "' (identities are implicit)");
        bad = true;
        continue;
      }
      if (!cat.composable(g->second, f->second)) {
        error(cl.g, "morphisms are not composable");
        bad = true;
        continue;
      }
      cat.table[std::size_t(g->second) * n + f->second] = h->second;
    }
    if (bad) return;

    ValidationReport rep = validate_category(cat);
    if (!rep.ok()) {
      for (const auto& v : rep.violations)
        error(header[1], "base '" + name + "': " + v.detail);
      return;
    }
    decl_line[name] = header[0].line;
    ws.bases.emplace_back(name, std::make_shared<const FinCategory>(std::move(cat)));
  }

  void parse_presheaf(const std::vector<Token>& header, std::size_t& i) {
    // presheaf NAME over BASE {
    auto items = block(i);
    if (header.size() != 5 || header[2].text != "over" || header[4].text != "{") {
      error(header[0], "expected: presheaf <name> over <base> {");
      return;
    }
    std::string name = header[1].text;
    if (taken(name)) {
      error(header[1], "duplicate name '" + name + "'");
      return;
    }
    const BasePtr* basep = ws.find_base(header[3].text);
    if (!basep) {
      error(header[3], "unknown base '" + header[3].text + "'");
      return;
    }
    const FinCategory& cat = **basep;

    std::map<std::string, ObjId> obj_of;
    for (ObjId o = 0; o < cat.num_objects; ++o) obj_of[cat.object_names[o]] = o;
    std::map<std::string, MorId> mor_of;
    for (MorId m = 0; m < cat.num_morphisms(); ++m)
      if (!cat.is_identity(m)) mor_of[cat.mor_names[m]] = m;

    Presheaf p;
    p.base = *basep;
    p.card.assign(cat.num_objects, 0);
    p.elem_names.resize(cat.num_objects);
    std::vector<std::map<std::string, Elem>> elem_of(cat.num_objects);
    struct MapLine {
      Token mor, from, to;
    };
    std::vector<MapLine> maps;
    bool bad = false;

    for (const auto& ln : items) {
      if (ln[0].text == "at") {
        // at OBJ : e1 e2 ...
        if (ln.size() < 3 || ln[2].text != ":") {
          error(ln[0], "expected: at <obj> : <elems...>");
          bad = true;
          continue;
        }
        auto o = obj_of.find(ln[1].text);
        if (o == obj_of.end()) {
          error(ln[1], "unknown object '" + ln[1].text + "'");
          bad = true;
          continue;
        }
        for (std::size_t k = 3; k < ln.size(); ++k) {
          if (elem_of[o->second].count(ln[k].text)) {
            error(ln[k], "duplicate element '" + ln[k].text + "'");
            bad = true;
            continue;
          }
          elem_of[o->second][ln[k].text] = p.card[o->second]++;
          p.elem_names[o->second].push_back(ln[k].text);
        }
      } else if (ln[0].text == "map") {
        // map MOR ELEM = ELEM
        if (ln.size() != 5 || ln[3].text != "=") {
          error(ln[0], "expected: map <mor> <elem> = <elem>");
          bad = true;
          continue;
        }
        maps.push_back({ln[1], ln[2], ln[4]});
      } else {
        error(ln[0], "unknown presheaf item '" + ln[0].text + "'");
        bad = true;
      }
    }

    p.action.resize(cat.num_morphisms());
    for (MorId m = 0; m < cat.num_morphisms(); ++m)
      if (cat.is_identity(m)) {
        p.action[m].resize(p.card[cat.mor_src[m]]);
        for (Elem x = 0; x < p.action[m].size(); ++x) p.action[m][x] = x;
      } else {
        p.action[m].assign(p.card[cat.mor_dst[m]], kNoMor);
      }
    for (const auto& ml : maps) {
      auto m = mor_of.find(ml.mor.text);
      if (m == mor_of.end()) {
        error(ml.mor, "unknown morphism '" + ml.mor.text + "'");
        bad = true;
        continue;
      }
      ObjId from = cat.mor_dst[m->second];
      ObjId to = cat.mor_src[m->second];
      auto fe = elem_of[from].find(ml.from.text);
      auto te = elem_of[to].find(ml.to.text);
      if (fe == elem_of[from].end()) {
        error(ml.from, "unknown element '" + ml.from.text + "' at " +
                           cat.object_name(from));
        bad = true;
        continue;
      }
      if (te == elem_of[to].end()) {
        error(ml.to,
              "unknown element '" + ml.to.text + "' at " + cat.object_name(to));
        bad = true;
        continue;
      }
      p.action[m->second][fe->second] = te->second;
    }
    for (MorId m = 0; m < cat.num_morphisms() && !bad; ++m)
      for (Elem x = 0; x < p.action[m].size(); ++x)
        if (p.action[m][x] == kNoMor) {
          error(header[1], "presheaf '" + name + "': missing map entry for " +
                               cat.mor_name(m) + " at element " +
                               p.elem_name(cat.mor_dst[m], x));
          bad = true;
          break;
        }
    if (bad) return;

    auto problems = p.validate();
    if (!problems.empty()) {
      for (const auto& msg : problems)
        error(header[1], "presheaf '" + name + "': " + msg);
      return;
    }
    decl_line[name] = header[0].line;
    ws.presheaves.push_back({name, header[3].text, std::move(p)});
  }

  void parse_morphism(const std::vector<Token>& header, std::size_t& i) {
    // morphism NAME : P -> Q {
    auto items = block(i);
    if (header.size() != 7 || header[2].text != ":" || header[4].text != "->" ||
        header[6].text != "{") {
      error(header[0], "expected: morphism <name> : <presheaf> -> <presheaf> {");
      return;
    }
    std::string name = header[1].text;
    if (taken(name)) {
      error(header[1], "duplicate name '" + name + "'");
      return;
    }
    const auto* sp = ws.find_presheaf(header[3].text);
    const auto* dp = ws.find_presheaf(header[5].text);
    if (!sp || !dp) {
      error(header[sp ? 5 : 3], "unknown presheaf");
      return;
    }
    if (!same_base(sp->value, dp->value)) {
      error(header[3], "presheaves live over different bases");
      return;
    }
    const FinCategory& cat = *sp->value.base;
    std::map<std::string, ObjId> obj_of;
    for (ObjId o = 0; o < cat.num_objects; ++o) obj_of[cat.object_names[o]] = o;

    PresheafMorphism m{sp->value, dp->value, {}};
    m.comp.resize(cat.num_objects);
    for (ObjId c = 0; c < cat.num_objects; ++c)
      m.comp[c].assign(sp->value.card[c], kNoMor);
    bool bad = false;

    for (const auto& ln : items) {
      // at OBJ ELEM = ELEM
      if (ln.size() != 5 || ln[0].text != "at" || ln[3].text != "=") {
        error(ln[0], "expected: at <obj> <elem> = <elem>");
        bad = true;
        continue;
      }
      auto o = obj_of.find(ln[1].text);
      if (o == obj_of.end()) {
        error(ln[1], "unknown object '" + ln[1].text + "'");
        bad = true;
        continue;
      }
      ObjId c = o->second;
      Elem from = kNoMor, to = kNoMor;
      for (Elem x = 0; x < sp->value.card[c]; ++x)
        if (sp->value.elem_name(c, x) == ln[2].text) from = x;
      for (Elem x = 0; x < dp->value.card[c]; ++x)
        if (dp->value.elem_name(c, x) == ln[4].text) to = x;
      if (from == kNoMor || to == kNoMor) {
        error(ln[from == kNoMor ? 2 : 4], "unknown element");
        bad = true;
        continue;
      }
      m.comp[c][from] = to;
    }
    for (ObjId c = 0; c < cat.num_objects && !bad; ++c)
      for (Elem x = 0; x < m.comp[c].size(); ++x)
        if (m.comp[c][x] == kNoMor) {
          error(header[1], "morphism '" + name + "': no image for element " +
                               sp->value.elem_name(c, x) + " at " +
                               cat.object_name(c));
          bad = true;
          break;
        }
    if (bad) return;

    auto problems = m.validate();
    if (!problems.empty()) {
      for (const auto& msg : problems)
        error(header[1], "morphism '" + name + "': " + msg);
      return;
    }
    decl_line[name] = header[0].line;
    ws.morphisms.push_back(
        {name, header[3].text, header[5].text, std::move(m)});
  }

  void parse_sub(const std::vector<Token>& header, std::size_t& i) {
    // sub NAME of P {
    auto items = block(i);
    if (header.size() != 5 || header[2].text != "of" || header[4].text != "{") {
      error(header[0], "expected: sub <name> of <presheaf> {");
      return;
    }
    std::string name = header[1].text;
    if (taken(name)) {
      error(header[1], "duplicate name '" + name + "'");
      return;
    }
    const auto* ap = ws.find_presheaf(header[3].text);
    if (!ap) {
      error(header[3], "unknown presheaf '" + header[3].text + "'");
      return;
    }
    const FinCategory& cat = *ap->value.base;
    std::map<std::string, ObjId> obj_of;
    for (ObjId o = 0; o < cat.num_objects; ++o) obj_of[cat.object_names[o]] = o;

    SubPresheaf s{ap->value, {}};
    s.selected.resize(cat.num_objects);
    for (ObjId c = 0; c < cat.num_objects; ++c)
      s.selected[c].assign(ap->value.card[c], false);
    bool bad = false;

    for (const auto& ln : items) {
      if (ln.size() < 3 || ln[0].text != "at" || ln[2].text != ":") {
        error(ln[0], "expected: at <obj> : <elems...>");
        bad = true;
        continue;
      }
      auto o = obj_of.find(ln[1].text);
      if (o == obj_of.end()) {
        error(ln[1], "unknown object '" + ln[1].text + "'");
        bad = true;
        continue;
      }
      for (std::size_t k = 3; k < ln.size(); ++k) {
        Elem e = kNoMor;
        for (Elem x = 0; x < ap->value.card[o->second]; ++x)
          if (ap->value.elem_name(o->second, x) == ln[k].text) e = x;
        if (e == kNoMor) {
          error(ln[k], "unknown element '" + ln[k].text + "'");
          bad = true;
          continue;
        }
        s.selected[o->second][e] = true;
      }
    }
    if (bad) return;

    auto problems = s.validate();
    if (!problems.empty()) {
      for (const auto& msg : problems)
        error(header[1], "sub '" + name + "': " + msg);
      return;
    }
    decl_line[name] = header[0].line;
    ws.subs.push_back({name, header[3].text, std::move(s)});
  }

  void parse_config(const std::vector<Token>& header, std::size_t& i) {
    auto items = block(i);
    if (header.size() != 2 || header[1].text != "{") {
      error(header[0], "expected: config {");
      return;
    }
    for (const auto& ln : items) {
      if (ln.size() != 3 || ln[1].text != "=") {
        error(ln[0], "expected: <key> = <value>");
        continue;
      }
      std::uint64_t v = 0;
      try {
        v = std::stoull(ln[2].text);
      } catch (...) {
        error(ln[2], "expected a number");
        continue;
      }
      const std::string& k = ln[0].text;
      if (k == "seed")
        ws.config.seed = v;
      else if (k == "max_objects")
        ws.config.max_objects = static_cast<std::uint32_t>(v);
      else if (k == "max_morphisms")
        ws.config.max_morphisms = static_cast<std::uint32_t>(v);
      else if (k == "max_carrier")
        ws.config.max_carrier = static_cast<std::uint32_t>(v);
      else if (k == "budget")
        ws.config.budget = v;
      else if (k == "instances")
        ws.config.instances = static_cast<std::uint32_t>(v);
      else
        error(ln[0], "unknown config key '" + k + "'");
    }
  }

  void run() {
    std::size_t i = 0;
    while (i < lines.size()) {
      const auto& ln = lines[i];
      if (ln.empty()) {
        ++i;
        continue;
      }
      const std::string& kw = ln[0].text;
      if (kw == "base")
        parse_base(ln, i);
      else if (kw == "presheaf")
        parse_presheaf(ln, i);
      else if (kw == "morphism")
        parse_morphism(ln, i);
      else if (kw == "sub")
        parse_sub(ln, i);
      else if (kw == "config")
        parse_config(ln, i);
      else {
        error(ln[0], "unknown declaration '" + kw + "'");
        // skip to the end of an eventual block
        if (std::find_if(ln.begin(), ln.end(), [](const Token& t) {
              return t.text == "{";
            }) != ln.end())
          block(i);
        else
          ++i;
      }
    }
  }
};

}  // namespace

const BasePtr* Workspace::find_base(const std::string& name) const {
  for (const auto& [n, b] : bases)
    if (n == name) return &b;
  return nullptr;
}

const Workspace::PresheafDecl* Workspace::find_presheaf(
    const std::string& name) const {
  for (const auto& d : presheaves)
    if (d.name == name) return &d;
  return nullptr;
}

const Workspace::MorphismDecl* Workspace::find_morphism(
    const std::string& name) const {
  for (const auto& d : morphisms)
    if (d.name == name) return &d;
  return nullptr;
}

const Workspace::SubDecl* Workspace::find_sub(const std::string& name) const {
  for (const auto& d : subs)
    if (d.name == name) return &d;
  return nullptr;
}

bool Workspace::operator==(const Workspace& o) const {
  if (bases.size() != o.bases.size() || presheaves.size() != o.presheaves.size() ||
      morphisms.size() != o.morphisms.size() || subs.size() != o.subs.size() ||
      !(config == o.config))
    return false;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].first != o.bases[i].first) return false;
    const FinCategory& a = *bases[i].second;
    const FinCategory& b = *o.bases[i].second;
    if (!(a == b) || a.object_names != b.object_names ||
        a.mor_names != b.mor_names)
      return false;
  }
  for (std::size_t i = 0; i < presheaves.size(); ++i) {
    const auto& a = presheaves[i];
    const auto& b = o.presheaves[i];
    if (a.name != b.name || a.base != b.base || !(a.value == b.value) ||
        a.value.elem_names != b.value.elem_names)
      return false;
  }
  for (std::size_t i = 0; i < morphisms.size(); ++i) {
    const auto& a = morphisms[i];
    const auto& b = o.morphisms[i];
    if (a.name != b.name || a.src != b.src || a.dst != b.dst ||
        a.value.comp != b.value.comp)
      return false;
  }
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const auto& a = subs[i];
    const auto& b = o.subs[i];
    if (a.name != b.name || a.ambient != b.ambient ||
        a.value.selected != b.value.selected)
      return false;
  }
  return true;
}

ParseResult parse_workspace(std::string_view text) {
  Parser p;
  p.lines = tokenize(text);
  p.run();
  ParseResult out;
  out.errors = std::move(p.errors);
  if (out.errors.empty()) out.workspace = std::move(p.ws);
  return out;
}

namespace {

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out.push_back(name_char(c) ? c : '_');
  return out.empty() ? "_" : out;
}

}  // namespace

std::string print_base_decl(const std::string& name, const FinCategory& c) {
  std::ostringstream os;
  os << "base " << sanitize(name) << " {\n  objects";
  for (ObjId o = 0; o < c.num_objects; ++o) os << " " << sanitize(c.object_name(o));
  os << "\n";
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    os << "  mor " << sanitize(c.mor_name(m)) << " : "
       << sanitize(c.object_name(c.mor_src[m])) << " -> "
       << sanitize(c.object_name(c.mor_dst[m])) << "\n";
  }
  for (MorId g = 0; g < c.num_morphisms(); ++g) {
    if (c.is_identity(g)) continue;
    for (MorId f = 0; f < c.num_morphisms(); ++f) {
      if (c.is_identity(f) || !c.composable(g, f)) continue;
      os << "  compose " << sanitize(c.mor_name(g)) << " "
         << sanitize(c.mor_name(f)) << " = "
         << sanitize(c.mor_name(c.compose(g, f))) << "\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string print_presheaf_decl(const std::string& name,
                                const std::string& base_name,
                                const Presheaf& p) {
  std::ostringstream os;
  const FinCategory& c = *p.base;
  os << "presheaf " << sanitize(name) << " over " << sanitize(base_name)
     << " {\n";
  for (ObjId o = 0; o < c.num_objects; ++o) {
    if (p.card[o] == 0) continue;
    os << "  at " << sanitize(c.object_name(o)) << " :";
    for (Elem x = 0; x < p.card[o]; ++x) os << " " << sanitize(p.elem_name(o, x));
    os << "\n";
  }
  for (MorId m = 0; m < c.num_morphisms(); ++m) {
    if (c.is_identity(m)) continue;
    for (Elem x = 0; x < p.card[c.mor_dst[m]]; ++x)
      os << "  map " << sanitize(c.mor_name(m)) << " "
         << sanitize(p.elem_name(c.mor_dst[m], x)) << " = "
         << sanitize(p.elem_name(c.mor_src[m], p.act(m, x))) << "\n";
  }
  os << "}\n";
  return os.str();
}

std::string print_morphism_decl(const std::string& name, const std::string& src,
                                const std::string& dst,
                                const PresheafMorphism& m) {
  std::ostringstream os;
  const FinCategory& c = *m.src.base;
  os << "morphism " << sanitize(name) << " : " << sanitize(src) << " -> "
     << sanitize(dst) << " {\n";
  for (ObjId o = 0; o < c.num_objects; ++o)
    for (Elem x = 0; x < m.src.card[o]; ++x)
      os << "  at " << sanitize(c.object_name(o)) << " "
         << sanitize(m.src.elem_name(o, x)) << " = "
         << sanitize(m.dst.elem_name(o, m.comp[o][x])) << "\n";
  os << "}\n";
  return os.str();
}

std::string print_sub_decl(const std::string& name, const std::string& ambient,
                           const SubPresheaf& s) {
  std::ostringstream os;
  const FinCategory& c = *s.ambient.base;
  os << "sub " << sanitize(name) << " of " << sanitize(ambient) << " {\n";
  for (ObjId o = 0; o < c.num_objects; ++o) {
    bool any = false;
    for (Elem x = 0; x < s.ambient.card[o]; ++x)
      if (s.selected[o][x]) any = true;
    if (!any) continue;
    os << "  at " << sanitize(c.object_name(o)) << " :";
    for (Elem x = 0; x < s.ambient.card[o]; ++x)
      if (s.selected[o][x]) os << " " << sanitize(s.ambient.elem_name(o, x));
    os << "\n";
  }
  os << "}\n";
  return os.str();
}

std::string print_workspace(const Workspace& ws) {
  std::ostringstream os;
  for (const auto& [name, base] : ws.bases) os << print_base_decl(name, *base);
  for (const auto& d : ws.presheaves)
    os << print_presheaf_decl(d.name, d.base, d.value);
  for (const auto& d : ws.morphisms)
    os << print_morphism_decl(d.name, d.src, d.dst, d.value);
  for (const auto& d : ws.subs) os << print_sub_decl(d.name, d.ambient, d.value);
  os << "config {\n";
  os << "  seed = " << ws.config.seed << "\n";
  os << "  max_objects = " << ws.config.max_objects << "\n";
  os << "  max_morphisms = " << ws.config.max_morphisms << "\n";
  os << "  max_carrier = " << ws.config.max_carrier << "\n";
  os << "  budget = " << ws.config.budget << "\n";
  os << "  instances = " << ws.config.instances << "\n";
  os << "}\n";
  return os.str();
}

}  // namespace psh
