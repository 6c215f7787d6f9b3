// jetvar: command-line front end over model files.
//
//   jetvar <cmd> --model FILE [--lagrangian NAME] [--symmetry NAME]
//          [--source NAME] [--form NAME] [--max-jet-order K] [--max-degree D]
//          [--format text|json|latex]
//
// Exit status: 0 when a verdict was computed (negative verdicts included),
// 1 on input errors, 3 when an internal identity check fails.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jetvar/commands.hpp"

namespace {

constexpr int kInputError = 1;
constexpr int kIdentityFailure = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace jetvar;

  CLI::App app{"Variational bicomplex computations on jet bundles"};
  app.name("jetvar");
  CommandRequest req;
  std::string model_path;
  std::string format_name;

  app.add_option("command", req.command, "el | split | noether | lie | trivial | helmholtz | master-check | decompose | potential")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("--model", model_path, "Model file")->required();
  app.add_option("--lagrangian", req.lagrangian, "Lagrangian name");
  app.add_option("--symmetry", req.symmetry, "Vertical field name");
  app.add_option("--source", req.source, "Source form name (helmholtz)");
  app.add_option("--form", req.form, "Form name (decompose, potential)");
  app.add_option("--max-jet-order", req.max_jet_order, "Jet order bound of the potential ansatz");
  app.add_option("--max-degree", req.max_degree, "Degree bound of the potential ansatz");
  app.add_option("--format", format_name, "text | json | latex")
      ->envname("JETVAR_FORMAT")
      ->check(CLI::IsMember({"text", "json", "latex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  std::ifstream in(model_path);
  if (!in) {
    std::cerr << "jetvar: cannot open model file " << model_path << '\n';
    return kInputError;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  ModelFile model{BundleSignature({"x"}, {"y"}), {}, {}, {}, {}, {}};
  try {
    model = parse_model(buf.str());
  } catch (const ParseError& e) {
    std::cerr << "jetvar: " << model_path << ':' << e.what() << '\n';
    return kInputError;
  }

  OutputFormat format = model.options.output.value_or(OutputFormat::Text);
  if (!format_name.empty()) format = *parse_output_format(format_name);

  try {
    Report report = run_command(model, req);
    std::cout << render(report, format);
    if (!report.failures.empty()) {
      for (const auto& f : report.failures)
        std::cerr << "jetvar: INTERNAL ERROR: identity check failed: " << f << '\n';
      return kIdentityFailure;
    }
  } catch (const UsageError& e) {
    std::cerr << "jetvar: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "jetvar: " << e.what() << '\n';
    return kInputError;
  } catch (const std::logic_error& e) {
    std::cerr << "jetvar: INTERNAL ERROR: identity check failed: " << e.what() << '\n';
    return kIdentityFailure;
  }
  return 0;
}
