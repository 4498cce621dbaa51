#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "psh/cli.hpp"

namespace {

int fail_input(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return psh::kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite presheaf topos calculator: derives initial objects and "
               "coproducts through the locally-cartesian-closed interface and "
               "verifies the construction laws on finite instances"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string workspace_path;
  std::string format = "json";
  std::string out_path;
  std::optional<std::uint64_t> seed, budget;
  std::optional<std::uint32_t> max_objects, max_morphisms, max_carrier,
      instances;
  app.add_option("-w,--workspace", workspace_path, "workspace file to load");
  app.add_option("--format", format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the report to a file");
  app.add_option("--seed", seed, "override the instance-generator seed");
  app.add_option("--max-objects", max_objects, "override base object bound");
  app.add_option("--max-morphisms", max_morphisms,
                 "override base morphism bound");
  app.add_option("--max-carrier", max_carrier, "override carrier bound");
  app.add_option("--budget", budget, "override the enumeration budget");
  app.add_option("--instances", instances,
                 "override the generated instance count");

  std::vector<std::string> names;
  std::vector<std::string> suite;

  CLI::App* cmd_initial =
      app.add_subcommand("derive-initial", "derive the strict initial object");
  cmd_initial->add_option("base", names, "base category name")->expected(1);

  CLI::App* cmd_coproduct = app.add_subcommand(
      "derive-coproduct", "derive the binary coproduct of two presheaves");
  cmd_coproduct->add_option("presheaves", names, "summand names")->expected(2);

  CLI::App* cmd_copair = app.add_subcommand(
      "derive-copair", "derive the mediating morphism out of a coproduct");
  cmd_copair->add_option("names", names, "A B f g")->expected(4);

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "run the law-check suite");
  cmd_verify->add_option("--suite", suite,
                         "check ids to run (default: all)")
      ->delimiter(',');

  CLI::App* cmd_explain =
      app.add_subcommand("explain", "describe a check from the catalog");
  cmd_explain->add_option("check", names, "check id")->expected(1);

  CLI11_PARSE(app, argc, argv);

  psh::Workspace ws;
  if (!workspace_path.empty()) {
    std::ifstream in(workspace_path);
    if (!in) return fail_input("cannot read workspace '" + workspace_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    psh::ParseResult parsed = psh::parse_workspace(buf.str());
    if (!parsed.workspace) {
      for (const auto& e : parsed.errors)
        std::cerr << workspace_path << ":" << e.line << ":" << e.col << ": "
                  << e.message << "\n";
      return psh::kExitInputError;
    }
    ws = std::move(*parsed.workspace);
  }

  psh::CliRequest req;
  req.names = names;
  req.suite = suite;
  req.config = ws.config;
  if (seed) req.config.seed = *seed;
  if (budget) req.config.budget = *budget;
  if (max_objects) req.config.max_objects = *max_objects;
  if (max_morphisms) req.config.max_morphisms = *max_morphisms;
  if (max_carrier) req.config.max_carrier = *max_carrier;
  if (instances) req.config.instances = *instances;
  if (cmd_initial->parsed()) req.command = "derive-initial";
  if (cmd_coproduct->parsed()) req.command = "derive-coproduct";
  if (cmd_copair->parsed()) req.command = "derive-copair";
  if (cmd_verify->parsed()) req.command = "verify";
  if (cmd_explain->parsed()) req.command = "explain";

  psh::RunOutcome outcome = psh::run_command(req, ws);
  std::string rendered = psh::render_report(outcome.report, format);
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return fail_input("cannot write '" + out_path + "'");
    out << rendered;
  } else {
    std::cout << rendered;
  }
  return outcome.exit_code;
}
