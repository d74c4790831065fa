// collapse: conjugacy-class analysis, type D search and Nichols algebra
// dimensions from the command line.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <collapse/commands.hpp>

namespace {

  void emit(collapse::CommandOutput const& out, collapse::RunConfig const& cfg) {
    std::string const body = cfg.format == collapse::OutputFormat::Json
                                 ? out.json.dump(2) + "\n"
                                 : out.text;
    if (cfg.out.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      throw collapse::InputError("cannot write " + cfg.out);
    }
    f << body;
    std::cout << out.text;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conjugacy-class collapse checks for pointed Hopf algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  collapse::RunConfig cfg;
  std::string caps_text;
  std::string probe = "on";
  std::string format = "json";

  app.add_option("--group", cfg.group, "fixture name or group file")
      ->capture_default_str();
  app.add_option("--caps", caps_text, "order=,subgroup=,rows=,degree=,work=");
  app.add_option("--probe-hilbert", probe, "on|off")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  app.add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "write the report here; text summary to stdout");
  app.add_option("--threads", cfg.threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* classes = app.add_subcommand("classes", "conjugacy class table");
  auto* analyze = app.add_subcommand("analyze", "full per-class report");
  analyze->add_flag("--timing", cfg.timing, "include wall time (not byte-stable)");

  auto* nichols = app.add_subcommand("nichols", "graded dimensions of a Nichols algebra");
  std::string rack_spec;
  std::string cocycle_spec = "constant:-1";
  std::optional<std::size_t> max_degree;
  std::optional<std::size_t> dump_degree;
  nichols->add_option("--rack", rack_spec,
                      "JSON, file, dihedral:P, abelian:K, O, double:<rack>, "
                      "class:<group>:<class>")
      ->required();
  nichols->add_option("--cocycle", cocycle_spec, "constant:<scalar>, JSON or file")
      ->capture_default_str();
  nichols->add_option("--max-degree", max_degree, "overrides the degree cap");
  nichols->add_option("--dump-matrix", dump_degree, "embed the exact Q_n of this degree");

  auto* typed = app.add_subcommand("typed", "type D witness search");
  std::string selector = "all";
  typed->add_option("class", selector, "class name or 'all'")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const rc = app.exit(e);
    return rc == 0 ? collapse::kExitOk : collapse::kExitInput;
  }

  return collapse::run_guarded([&] {
    cfg.caps = collapse::parse_caps(caps_text);
    cfg.probe_hilbert = probe == "on";
    cfg.format = format == "json" ? collapse::OutputFormat::Json
                                  : collapse::OutputFormat::Text;
    if (max_degree) {
      if (*max_degree == 0) {
        throw collapse::InputError("--max-degree must be positive");
      }
      cfg.caps.degree = *max_degree;
    }

    if (*classes) {
      emit(collapse::cmd_classes(cfg), cfg);
    } else if (*analyze) {
      emit(collapse::cmd_analyze(cfg), cfg);
    } else if (*nichols) {
      emit(collapse::cmd_nichols(cfg, rack_spec, cocycle_spec, dump_degree), cfg);
    } else if (*typed) {
      emit(collapse::cmd_typed(cfg, selector), cfg);
    }
  }, std::cerr);
}
