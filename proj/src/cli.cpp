#include "psh/cli.hpp"

#include <algorithm>
#include <sstream>

#include "psh/verify.hpp"

namespace psh {

namespace {

using nlohmann::json;

json carriers_json(const Presheaf& p) {
  json out = json::object();
  for (ObjId c = 0; c < p.card.size(); ++c)
    out[p.base->object_name(c)] = p.card[c];
  return out;
}

json morphism_json(const PresheafMorphism& m) {
  json out = json::object();
  for (ObjId c = 0; c < m.comp.size(); ++c) {
    json comp = json::array();
    for (Elem x = 0; x < m.comp[c].size(); ++x)
      comp.push_back({{"from", m.src.elem_name(c, x)},
                      {"to", m.dst.elem_name(c, m.comp[c][x])}});
    out[m.src.base->object_name(c)] = comp;
  }
  return out;
}

json config_json(const WorkspaceConfig& c) {
  return json{{"seed", c.seed},
              {"max_objects", c.max_objects},
              {"max_morphisms", c.max_morphisms},
              {"max_carrier", c.max_carrier},
              {"budget", c.budget},
              {"instances", c.instances}};
}

json report_skeleton(const CliRequest& req) {
  return json{{"artifact",
               {{"name", kArtifactName}, {"version", kArtifactVersion}}},
              {"command", req.command},
              {"config", config_json(req.config)}};
}

RunOutcome input_error(const CliRequest& req, const std::string& message) {
  json rep = report_skeleton(req);
  rep["status"] = "input-error";
  rep["error"] = message;
  return RunOutcome{rep, kExitInputError};
}

LccContext context_for(const CliRequest& req) {
  Backend b;
  b.budget = req.config.budget;
  return restrict_backend(b);
}

RunOutcome run_derive_initial(const CliRequest& req, const Workspace& ws) {
  if (req.names.size() != 1)
    return input_error(req, "derive-initial expects: <base>");
  const BasePtr* base = ws.find_base(req.names[0]);
  if (!base) return input_error(req, "unknown base '" + req.names[0] + "'");

  LccContext ctx = context_for(req);
  json rep = report_skeleton(req);
  try {
    InitialData zero = initial_object(ctx, *base);
    OmegaStructure om = ctx.omega(*base);
    rep["result"] = {
        {"base", req.names[0]},
        {"carriers", carriers_json(zero.object)},
        {"subobject_count", enumerate_subobjects(zero.object).size()},
        {"maps_to_omega", ctx.hom_set(zero.object, om.omega).size()}};
    rep["status"] = "pass";
    return RunOutcome{rep, kExitPass};
  } catch (const BudgetError& e) {
    rep["status"] = "budget-exceeded";
    rep["error"] = e.what();
    return RunOutcome{rep, kExitBudget};
  } catch (const std::exception& e) {
    rep["status"] = "fail";
    rep["error"] = e.what();
    return RunOutcome{rep, kExitCheckFailure};
  }
}

json iso_witness_json(const IsoWitness& w) {
  return json{{"forward", morphism_json(w.forward)},
              {"backward", morphism_json(w.backward)}};
}

RunOutcome run_derive_coproduct(const CliRequest& req, const Workspace& ws) {
  if (req.names.size() != 2)
    return input_error(req, "derive-coproduct expects: <A> <B>");
  const auto* a = ws.find_presheaf(req.names[0]);
  const auto* b = ws.find_presheaf(req.names[1]);
  if (!a || !b)
    return input_error(req, "unknown presheaf '" +
                                req.names[a ? 1 : 0] + "'");
  if (!same_base(a->value, b->value))
    return input_error(req, "presheaves live over different bases");

  LccContext ctx = context_for(req);
  json rep = report_skeleton(req);
  try {
    CoproductData cd = binary_coproduct(ctx, a->value, b->value);
    NativeCoproduct nat = native_coproduct_oracle(a->value, b->value);
    PresheafMorphism fwd = copair(ctx, cd, nat.inj_left, nat.inj_right);
    PresheafMorphism bwd = native_copair(nat, cd.inj_left, cd.inj_right);
    IsoWitness iso = make_iso_witness(fwd, bwd);
    bool pullback_empty = true;
    for (auto sz : cd.disjointness_pullback.card)
      if (sz) pullback_empty = false;
    rep["result"] = {
        {"left", {{"name", req.names[0]}, {"carriers", carriers_json(a->value)}}},
        {"right",
         {{"name", req.names[1]}, {"carriers", carriers_json(b->value)}}},
        {"coproduct", {{"carriers", carriers_json(cd.object)}}},
        {"ambient", {{"carriers", carriers_json(cd.ambient)}}},
        {"injection_left", morphism_json(cd.inj_left)},
        {"injection_right", morphism_json(cd.inj_right)},
        {"disjointness",
         {{"pullback_carriers", carriers_json(cd.disjointness_pullback)},
          {"initial", pullback_empty}}},
        {"oracle_iso", iso_witness_json(iso)}};
    rep["status"] = "pass";
    return RunOutcome{rep, kExitPass};
  } catch (const BudgetError& e) {
    rep["status"] = "budget-exceeded";
    rep["error"] = e.what();
    return RunOutcome{rep, kExitBudget};
  } catch (const std::exception& e) {
    rep["status"] = "fail";
    rep["error"] = e.what();
    return RunOutcome{rep, kExitCheckFailure};
  }
}

RunOutcome run_derive_copair(const CliRequest& req, const Workspace& ws) {
  if (req.names.size() != 4)
    return input_error(req, "derive-copair expects: <A> <B> <f> <g>");
  const auto* a = ws.find_presheaf(req.names[0]);
  const auto* b = ws.find_presheaf(req.names[1]);
  const auto* f = ws.find_morphism(req.names[2]);
  const auto* g = ws.find_morphism(req.names[3]);
  if (!a || !b)
    return input_error(req, "unknown presheaf '" + req.names[a ? 1 : 0] + "'");
  if (!f || !g)
    return input_error(req, "unknown morphism '" + req.names[f ? 3 : 2] + "'");
  if (f->src != req.names[0] || g->src != req.names[1])
    return input_error(req, "legs do not start at the chosen summands");
  if (f->dst != g->dst)
    return input_error(req, "legs have different codomains");

  LccContext ctx = context_for(req);
  json rep = report_skeleton(req);
  try {
    CoproductData cd = binary_coproduct(ctx, a->value, b->value);
    PresheafMorphism h = copair(ctx, cd, f->value, g->value);
    rep["result"] = {{"coproduct", {{"carriers", carriers_json(cd.object)}}},
                     {"codomain", f->dst},
                     {"mediator", morphism_json(h)},
                     {"restricts_to_legs",
                      compose(h, cd.inj_left) == f->value &&
                          compose(h, cd.inj_right) == g->value}};
    rep["status"] = "pass";
    return RunOutcome{rep, kExitPass};
  } catch (const BudgetError& e) {
    rep["status"] = "budget-exceeded";
    rep["error"] = e.what();
    return RunOutcome{rep, kExitBudget};
  } catch (const CopairError& e) {
    rep["status"] = "fail";
    rep["error"] = e.what();
    rep["candidates"] = e.candidates;
    return RunOutcome{rep, kExitCheckFailure};
  } catch (const std::exception& e) {
    rep["status"] = "fail";
    rep["error"] = e.what();
    return RunOutcome{rep, kExitCheckFailure};
  }
}

RunOutcome run_verify(const CliRequest& req, const Workspace& ws) {
  std::vector<std::string> suite = req.suite;
  if (suite.empty() || (suite.size() == 1 && suite[0] == "all"))
    suite = check_catalog();
  for (const auto& id : suite)
    if (!check_exists(id))
      return input_error(req, "unknown check id '" + id + "'");
  std::sort(suite.begin(), suite.end());

  InstanceGenerator gen;
  gen.seed = req.config.seed;
  gen.bounds = {req.config.max_objects, req.config.max_morphisms,
                req.config.max_carrier};
  gen.count = req.config.instances;
  std::vector<Instance> instances = generate_instances(gen);
  for (Instance& inst : curated_instances())
    instances.push_back(std::move(inst));
  // workspace-declared bases participate with their declared presheaves
  for (const auto& [name, base] : ws.bases) {
    Instance inst;
    inst.descriptor = "ws:" + name;
    inst.base = base;
    inst.objects.emplace_back("terminal", terminal(base).object);
    for (const auto& d : ws.presheaves)
      if (d.base == name) inst.objects.emplace_back(d.name, d.value);
    instances.push_back(std::move(inst));
  }

  CheckOptions opts{context_for(req), 4};

  json results = json::array();
  std::uint64_t pass = 0, fail = 0, budget = 0;
  for (const auto& id : suite) {
    auto rs = run_check(id, instances, opts);
    std::stable_sort(rs.begin(), rs.end(),
                     [](const CheckResult& x, const CheckResult& y) {
                       return x.instance < y.instance;
                     });
    std::uint64_t cfg = 0, ipass = 0, ifail = 0, ibudget = 0;
    json failures = json::array();
    for (const auto& r : rs) {
      cfg += r.configurations;
      switch (r.verdict) {
        case Verdict::pass: ++ipass; break;
        case Verdict::fail:
          ++ifail;
          failures.push_back({{"instance", r.instance},
                              {"witness", r.witness}});
          break;
        case Verdict::budget_exceeded:
          ++ibudget;
          failures.push_back({{"instance", r.instance},
                              {"verdict", "budget-exceeded"},
                              {"witness", r.witness}});
          break;
      }
    }
    json entry = {{"check", id},
                  {"description", check_description(id)},
                  {"instances", rs.size()},
                  {"configurations", cfg},
                  {"pass", ipass},
                  {"fail", ifail},
                  {"budget_exceeded", ibudget}};
    if (!failures.empty()) entry["failures"] = failures;
    results.push_back(entry);
    pass += ipass;
    fail += ifail;
    budget += ibudget;
  }

  json rep = report_skeleton(req);
  rep["suite"] = suite;
  rep["results"] = results;
  rep["summary"] = {{"checks", suite.size()},
                    {"instances", instances.size()},
                    {"pass", pass},
                    {"fail", fail},
                    {"budget_exceeded", budget}};
  int exit_code = kExitPass;
  std::string status = "pass";
  if (budget > 0) {
    exit_code = kExitBudget;
    status = "budget-exceeded";
  }
  if (fail > 0) {
    exit_code = kExitCheckFailure;
    status = "fail";
  }
  rep["status"] = status;
  return RunOutcome{rep, exit_code};
}

RunOutcome run_explain(const CliRequest& req) {
  if (req.names.size() != 1)
    return input_error(req, "explain expects: <check_id>");
  if (!check_exists(req.names[0]))
    return input_error(req, "unknown check id '" + req.names[0] + "'");
  json rep = report_skeleton(req);
  rep["result"] = {{"check", req.names[0]},
                   {"description", check_description(req.names[0])}};
  rep["status"] = "pass";
  return RunOutcome{rep, kExitPass};
}

void render_text(const json& v, std::ostringstream& os, int indent) {
  std::string pad(std::size_t(indent) * 2, ' ');
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        render_text(it.value(), os, indent + 1);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (item.is_object() || item.is_array()) {
        os << pad << "-\n";
        render_text(item, os, indent + 1);
      } else {
        os << pad << "- " << item.dump() << "\n";
      }
    }
  } else {
    os << pad << v.dump() << "\n";
  }
}

}  // namespace

RunOutcome run_command(const CliRequest& req, const Workspace& ws) {
  if (req.command == "derive-initial") return run_derive_initial(req, ws);
  if (req.command == "derive-coproduct") return run_derive_coproduct(req, ws);
  if (req.command == "derive-copair") return run_derive_copair(req, ws);
  if (req.command == "verify") return run_verify(req, ws);
  if (req.command == "explain") return run_explain(req);
  return input_error(req, "unknown command '" + req.command + "'");
}

std::string render_report(const nlohmann::json& report,
                          const std::string& format) {
  if (format == "text") {
    std::ostringstream os;
    render_text(report, os, 0);
    return os.str();
  }
  return report.dump(2) + "\n";
}

}  // namespace psh
