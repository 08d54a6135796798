#include <iostream>
#include <map>

#include "cli.hpp"
#include "cosimplex/error.hpp"

int main(int argc, char** argv) {
  using namespace cosimplex;
  using namespace cosimplex::cli;

  CLI::App app{"Semi-cosimplicial sets, Hilbert towers and spreadable families"};
  app.fallthrough();
  app.require_subcommand(1);

  Options opt;
  const std::map<std::string, Scalar> scalars{{"exact", Scalar::Exact}, {"float", Scalar::Float}};
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"text", Format::Text}, {"dot", Format::Dot}};
  app.add_option("--scalar", opt.scalar, "exact (rationals) or float")
      ->transform(CLI::CheckedTransformer(scalars, CLI::ignore_case));
  app.add_option("--tol", opt.tol, "float tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "json, text or dot")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));

  Dispatch dispatch;
  add_scs_commands(app, opt, dispatch);
  add_tower_commands(app, opt, dispatch);
  add_spread_commands(app, opt, dispatch);
  add_graph_commands(app, opt, dispatch);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }
  if (!dispatch.action) {
    std::cerr << app.help();
    return kBadInput;
  }
  try {
    return dispatch.action();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << '\n';
    return kFail;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kFail;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kBadInput;
  }
}
