#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <omp.h>

#include "specurve/runner.hpp"

namespace {

const std::map<std::string, std::string> kHelp{
    {"vacuum", "vacuum lines and double points inside a window"},
    {"indicator", "smallest singular value over a 2-parameter slice"},
    {"trace", "trace the spectrum as a graph over a rectangle"},
    {"classify", "Handle or Node verdicts at vacuum double points"},
    {"genus", "windowed handle count"},
    {"energy", "Willmore energy from the ends and from the potential"},
    {"section", "kernel sections and the S-map along the graph branch"},
    {"audit", "tube and symmetry checks on traced samples"}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral curves of periodic Dirac operators on a torus"};
  app.set_version_flag("--version", std::string(specurve::kVersion));
  app.require_subcommand(1);

  std::string config, out;
  int threads = 0;
  for (const std::string& name : specurve::task_names()) {
    CLI::App* sub = app.add_subcommand(name, kHelp.at(name));
    sub->add_option("--config", config, "JSON job configuration")->required();
    sub->add_option("--out", out, "result JSON path (CSV tables go next to it); stdout when omitted");
    sub->add_option("--threads", threads, "OpenMP threads, 0 = runtime default")->check(CLI::NonNegativeNumber);
  }
  CLI11_PARSE(app, argc, argv);

  if (threads > 0) omp_set_num_threads(threads);
  const std::string task = app.get_subcommands().front()->get_name();
  return specurve::run(task, config, out, std::cout);
}
